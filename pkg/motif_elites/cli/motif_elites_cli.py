#!/usr/bin/env python
"""
motif-elites - Quality-diversity motif discovery from the command line

Runs MAP-Elites over position weight matrices on every subset of a
foreground FASTA, evaluates MEME motifs on the same subsets, and writes the
archives, metrics and comparison tables an experiment needs.

Commands:
    run        Run every subset x characterization of an experiment config
    eval-meme  Score the motifs of a MEME file on each subset
    synth      Write a planted-motif dataset and a config that runs it
    export     Convert an archive.json snapshot to json/csv/meme/logo
    init       Write an experiment config from a preset

Usage:
    motif-elites synth --out data/
    motif-elites run --config data/experiment.toml --bc co --generations 200
    motif-elites eval-meme meme.txt --config data/experiment.toml
    motif-elites export results/subset-0/ME.CO/archive.json --format meme

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
"""

import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence as SequenceType, Tuple

from rich.console import Console
from rich.table import Table

from ..core.constants import EXIT_CODES
from ..core.descriptors import Characterization
from ..core.errors import ConfigError, DataError, MissingInput, NoScorableSequences
from ..core.logging_config import get_logger
from ..core.meme import read_meme
from ..core.report import (
    EXPORT_FORMATS,
    ArchiveSummary,
    ComparisonEntry,
    comparison_csv,
    comparison_table,
    export_archive,
    load_archive,
    meme_eval_csv,
)
from ..core.scoring import motif_fitness
from .config import ExperimentConfigManager, list_presets
from .experiment import collect_summaries, prepare_subsets, run_experiment
from .synth import DEFAULT_CONSENSUS, SynthParams, generate_synthetic, write_synthetic

logger = get_logger("cli")

MEME_EVAL_FILE = "meme_eval.csv"
COMPARISON_FILES = {"csv": "comparison.csv", "txt": "comparison.txt"}


class MotifElitesArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the configuration exit code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_CODES["USAGE"], f"{self.prog}: error: {message}\n")


def _console(stderr: bool = False) -> Console:
    return Console(stderr=stderr, highlight=False, markup=False, soft_wrap=True)


def _add_config_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config", required=True, metavar="PATH", help="Experiment TOML file (see 'motif-elites init')"
    )


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subcommand per operation."""
    parser = MotifElitesArgumentParser(
        prog="motif-elites",
        description="MAP-Elites motif discovery with per-subset MEME comparison",
        epilog="Examples:\n"
        "  motif-elites synth --out data/                       # Planted-motif dataset\n"
        "  motif-elites run --config data/experiment.toml        # Full experiment\n"
        "  motif-elites run --config data/experiment.toml --bc co --generations 200\n"
        "  motif-elites eval-meme meme.txt --config data/experiment.toml\n"
        "  motif-elites export results/subset-0/ME.CO/archive.json --format logo",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")

    # run
    run_parser = subparsers.add_parser("run", help="Run MAP-Elites on every selected subset")
    _add_config_argument(run_parser)
    run_parser.add_argument("--seed", type=int, help="Master seed (overrides the config)")
    run_parser.add_argument("--out", metavar="DIR", help="Output directory (overrides the config)")
    run_parser.add_argument(
        "--bc",
        choices=["sp", "co", "rb", "all"],
        help="Behavioral characterization to run (default: the config's list)",
    )
    run_parser.add_argument("--generations", type=int, help="Generations per run")
    run_parser.add_argument("--subsets", type=int, metavar="N", help="Number of disjoint subsets")
    run_parser.add_argument("--workers", type=int, metavar="N", help="Runs executed in parallel processes")

    # eval-meme
    meme_parser = subparsers.add_parser("eval-meme", help="Evaluate MEME motifs on every subset")
    meme_parser.add_argument("meme", metavar="MEME", help="MEME minimal-format motif file")
    _add_config_argument(meme_parser)
    meme_parser.add_argument("--seed", type=int, help="Master seed (must match the run being compared)")
    meme_parser.add_argument("--out", metavar="DIR", help="Output directory holding the archives")
    meme_parser.add_argument("--subsets", type=int, metavar="N", help="Number of disjoint subsets")

    # synth
    synth_parser = subparsers.add_parser("synth", help="Write a planted-motif dataset")
    synth_parser.add_argument("--out", required=True, metavar="DIR", help="Directory for the dataset")
    synth_parser.add_argument("--n", type=int, default=200, help="Foreground sequences (default: 200)")
    synth_parser.add_argument("--length", type=int, default=100, help="Sequence length (default: 100)")
    synth_parser.add_argument(
        "--consensus", default=DEFAULT_CONSENSUS, help=f"Planted consensus (default: {DEFAULT_CONSENSUS})"
    )
    synth_parser.add_argument(
        "--plant-rate", type=float, default=0.8, help="Share of sequences carrying the consensus"
    )
    synth_parser.add_argument(
        "--truth-peak", type=float, default=0.85, help="Consensus-base probability of the truth PWM"
    )
    synth_parser.add_argument("--seed", type=int, default=0, help="Seed (default: 0)")
    synth_parser.add_argument(
        "--preset", choices=list_presets(), default="full", help="Preset of the written config"
    )

    # export
    export_parser = subparsers.add_parser("export", help="Convert an archive snapshot")
    export_parser.add_argument("archive", metavar="ARCHIVE", help="archive.json written by 'run'")
    export_parser.add_argument("--format", choices=EXPORT_FORMATS, default="json", help="Output format")
    export_parser.add_argument("--out", metavar="PATH", help="Output file (default: stdout)")

    # init
    init_parser = subparsers.add_parser("init", help="Write an experiment config from a preset")
    init_parser.add_argument("--preset", choices=list_presets(), default="full", help="Preset name")
    init_parser.add_argument("--out", default="experiment.toml", metavar="PATH", help="Config file to write")
    init_parser.add_argument("--foreground", help="Foreground FASTA path")
    init_parser.add_argument("--background", help="Background FASTA path")

    return parser


def _load_manager(args: argparse.Namespace) -> ExperimentConfigManager:
    manager = ExperimentConfigManager(args.config)
    manager.load_config()
    manager.apply_overrides(
        seed=getattr(args, "seed", None),
        output_dir=getattr(args, "out", None),
        bc=getattr(args, "bc", None),
        generations=getattr(args, "generations", None),
        subsets=getattr(args, "subsets", None),
        workers=getattr(args, "workers", None),
    )
    return manager


def _summary_table(summaries: SequenceType[ArchiveSummary]) -> Table:
    table = Table(title="MAP-Elites runs")
    table.add_column("Subset")
    table.add_column("BC")
    table.add_column("Coverage", justify="right")
    table.add_column("Max Fitness", justify="right")
    table.add_column("Avg Fitness", justify="right")
    table.add_column("Best consensus")
    for summary in summaries:
        table.add_row(
            summary.subset or "",
            summary.characterization or "",
            f"{summary.coverage:.3f}",
            "" if summary.max_fitness is None else f"{summary.max_fitness:.4f}",
            "" if summary.mean_fitness is None else f"{summary.mean_fitness:.4f}",
            summary.best_consensus or "",
        )
    return table


def cmd_run(args: argparse.Namespace) -> int:
    config = _load_manager(args).experiment_config()
    summaries = run_experiment(config)
    console = _console()
    console.print(_summary_table(summaries))
    console.print(f"✅ {len(summaries)} run(s) written to {config.output_dir}")
    return EXIT_CODES["OK"]


def _archive_entries(output_dir: Path) -> List[ComparisonEntry]:
    """One comparison entry per characterization with archives under ``output_dir``."""
    entries = []
    grouped = collect_summaries(output_dir)
    for characterization in Characterization:
        summaries = [s for s in grouped.get(characterization.value, []) if s.mean_fitness is not None]
        if summaries:
            entries.append(
                ComparisonEntry(
                    method=characterization.value,
                    values=[s.mean_fitness for s in summaries],
                    peak_values=[s.max_fitness for s in summaries],
                )
            )
    return entries


def cmd_eval_meme(args: argparse.Namespace) -> int:
    meme_path = Path(args.meme)
    if not meme_path.is_file():
        raise MissingInput(meme_path)
    records = read_meme(meme_path)
    config = _load_manager(args).experiment_config()
    subsets = prepare_subsets(config)

    rows: List[Tuple[str, str, Optional[float]]] = []
    per_subset: Dict[str, List[float]] = {}
    for subset in subsets:
        for record in records:
            try:
                value: Optional[float] = motif_fitness(
                    record.to_pwm(), subset.foreground, subset.bg, config.fitness
                )
            except NoScorableSequences:
                logger.warning(f"{record.name} has no scorable window on {subset.label}")
                value = None
            rows.append((record.name, subset.label, value))
            if value is not None:
                per_subset.setdefault(subset.label, []).append(value)

    config.output_dir.mkdir(parents=True, exist_ok=True)
    (config.output_dir / MEME_EVAL_FILE).write_text(meme_eval_csv(rows), encoding="utf-8")
    logger.info(f"Wrote {len(rows)} fitness row(s) to {config.output_dir / MEME_EVAL_FILE}")

    entries = []
    if per_subset:
        entries.append(
            ComparisonEntry(
                method="MEME",
                values=[sum(values) / len(values) for values in per_subset.values()],
                peak_values=[value for values in per_subset.values() for value in values],
            )
        )
    entries.extend(_archive_entries(config.output_dir))
    if not entries:
        logger.warning("No fitness values to compare")
        return EXIT_CODES["OK"]

    (config.output_dir / COMPARISON_FILES["csv"]).write_text(comparison_csv(entries), encoding="utf-8")
    table = comparison_table(entries)
    (config.output_dir / COMPARISON_FILES["txt"]).write_text(table, encoding="utf-8")
    _console().print(table, end="")
    return EXIT_CODES["OK"]


def cmd_synth(args: argparse.Namespace) -> int:
    params = SynthParams(
        n=args.n,
        length=args.length,
        consensus=args.consensus,
        plant_rate=args.plant_rate,
        truth_peak=args.truth_peak,
        seed=args.seed,
    )
    paths = write_synthetic(generate_synthetic(params), Path(args.out), preset=args.preset)
    console = _console()
    for path in paths.values():
        console.print(f"📁 {path}")
    console.print(f"✅ Run it with: motif-elites run --config {paths['config']}")
    return EXIT_CODES["OK"]


def cmd_export(args: argparse.Namespace) -> int:
    path = Path(args.archive)
    if not path.is_file():
        raise MissingInput(path)
    text = export_archive(load_archive(path.read_bytes()), args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        logger.info(f"Exported {path} as {args.format} to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_CODES["OK"]


def cmd_init(args: argparse.Namespace) -> int:
    path = ExperimentConfigManager(args.out).create_from_preset(args.preset, args.foreground, args.background)
    _console().print(f"✅ Wrote {args.preset} config to {path}")
    return EXIT_CODES["OK"]


COMMANDS = {
    "run": cmd_run,
    "eval-meme": cmd_eval_meme,
    "synth": cmd_synth,
    "export": cmd_export,
    "init": cmd_init,
}


def main(argv: Optional[SequenceType[str]] = None) -> int:
    """Entry point for the motif-elites command."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_CODES["USAGE"]

    if not args.command:
        parser.print_help()
        return EXIT_CODES["USAGE"]

    errors = _console(stderr=True)
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as e:
        # Only the config file itself is looked up with open(); inputs raise MissingInput
        errors.print(f"❌ Error: {e}")
        return EXIT_CODES["USAGE"]
    except ConfigError as e:
        errors.print(f"❌ Configuration error: {e}")
        return EXIT_CODES["USAGE"]
    except DataError as e:
        errors.print(f"❌ Data error: {e}")
        return EXIT_CODES["DATA"]


if __name__ == "__main__":
    sys.exit(main())
