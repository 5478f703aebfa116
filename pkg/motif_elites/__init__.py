"""motif-elites: quality-diversity discovery of DNA binding motifs

MAP-Elites over position weight matrices, with a behavior space built from
motif specificity, nucleotide composition or score-distribution shape, and
per-subset evaluation shared with imported MEME motifs.

Basic Usage:
    from motif_elites.core import Characterization, EvaluationContext, RunConfig, run

    context = EvaluationContext(foreground, background, bg)
    result = run(context, Characterization.CO, RunConfig(generations=200), seed=7)
    print(result.archive.coverage(), result.archive.best_fitness())
"""

__version__ = "0.1.0"
__author__ = "motif-elites developers"

__all__ = ["__version__", "core", "cli"]
