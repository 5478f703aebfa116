# motif_elites/cli/experiment.py - Subset preparation and per-run orchestration
# Every run writes into its own directory; nothing is shared between runs.

# --- Standard Library Imports ---
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence as SequenceType, Tuple

# --- Third-Party Imports ---
import toml

# --- Local Imports ---
from ..core.constants import RUN_FILES
from ..core.descriptors import Characterization, EvaluationContext
from ..core.engine import derive_seed, run
from ..core.errors import ConfigError, MissingInput, TooFewSequences
from ..core.logging_config import get_logger
from ..core.monitor import RunMonitor
from ..core.report import ArchiveSummary, consensus, export_archive, heatmap_csv
from ..core.sequences import (
    BackgroundDistribution,
    SequenceRole,
    SequenceSet,
    empirical_background,
    partition_subsets,
    read_fasta,
    shuffle_background,
    write_subset_manifest,
)
from .config.config_manager import ExperimentConfig

logger = get_logger("cli.experiment")

# Seed scheme: derive_seed(master, *key). Key lengths differ between uses, so
# no two streams share a spawn key.
PARTITION_KEY = (1,)
BACKGROUND_PARTITION_KEY = (2,)
_SHUFFLE_KEY = 3
_RUN_KEY = 0

_CHARACTERIZATION_INDEX = {c: i for i, c in enumerate(Characterization)}


def run_seed(master: int, subset: int, characterization: Characterization) -> int:
    """Seed of the (subset, characterization) run under ``master``."""
    return derive_seed(master, _RUN_KEY, subset, _CHARACTERIZATION_INDEX[characterization])


@dataclass(frozen=True, eq=False)
class SubsetData:
    """One evaluation subset with its matched background."""

    index: int
    foreground: SequenceSet
    background: SequenceSet
    bg: BackgroundDistribution

    @property
    def label(self) -> str:
        return self.foreground.subset_label or f"subset-{self.index}"

    def context(self, config: ExperimentConfig) -> EvaluationContext:
        return EvaluationContext(
            foreground=self.foreground,
            background=self.background,
            bg=self.bg,
            support_percentile=config.support_percentile,
            tail=config.tail,
        )


def _require(path: Optional[Path]) -> Path:
    if path is None or not Path(path).is_file():
        raise MissingInput(path)
    return Path(path)


def prepare_subsets(config: ExperimentConfig) -> List[SubsetData]:
    """
    Partition foreground (and background, when given) into matched subsets.

    Without a background file each foreground subset is dinucleotide-shuffled
    to form its own background.
    """
    foreground = read_fasta(_require(config.foreground), SequenceRole.FOREGROUND)
    fg_subsets = partition_subsets(foreground, config.n_subsets, derive_seed(config.seed, *PARTITION_KEY))

    if config.background is not None:
        background = read_fasta(_require(config.background), SequenceRole.BACKGROUND)
        try:
            bg_subsets = partition_subsets(
                background, config.n_subsets, derive_seed(config.seed, *BACKGROUND_PARTITION_KEY)
            )
        except TooFewSequences as e:
            raise ConfigError("experiment.n_subsets", f"background: {e}") from e
    else:
        logger.warning(
            "No background FASTA configured; using dinucleotide shuffles of each foreground subset"
        )
        bg_subsets = [
            shuffle_background(subset, derive_seed(config.seed, _SHUFFLE_KEY, i))
            for i, subset in enumerate(fg_subsets)
        ]

    prepared = []
    for i, (fg, bg_set) in enumerate(zip(fg_subsets, bg_subsets)):
        bg_set = bg_set.with_label(fg.subset_label)
        prepared.append(SubsetData(index=i, foreground=fg, background=bg_set, bg=empirical_background(bg_set)))
        logger.debug(f"{fg.subset_label}: {len(fg)} foreground, {len(bg_set)} background sequences")
    return prepared


def run_directory(config: ExperimentConfig, subset: SubsetData, characterization: Characterization) -> Path:
    return config.output_dir / subset.label / characterization.value


def execute_run(
    config: ExperimentConfig, subset: SubsetData, characterization: Characterization
) -> ArchiveSummary:
    """Run one subset x characterization and write its directory."""
    seed = run_seed(config.seed, subset.index, characterization)
    out_dir = run_directory(config, subset, characterization)
    out_dir.mkdir(parents=True, exist_ok=True)
    label = f"{subset.label}/{characterization.value}"
    logger.info(f"Starting {label} (seed {seed}, {config.generations} generations)")

    with RunMonitor(label) as monitor:
        result = run(
            subset.context(config),
            characterization,
            config.run_config(),
            seed=seed,
            on_generation=lambda _record: monitor.sample(),
        )

    archive = result.archive
    summary = ArchiveSummary.from_archive(archive, subset.label, result.metrics, config.qd_offset)
    best = archive.best_elite()

    files = {
        "archive_json": export_archive(archive, "json"),
        "archive_csv": export_archive(archive, "csv"),
        "heatmap": heatmap_csv(archive),
        "metrics": result.metrics.to_csv(),
        "elites_meme": export_archive(archive, "meme"),
        "summary": summary.to_json(),
        "resources": json.dumps(monitor.usage.to_dict(), indent=2) + "\n",
    }
    if best is not None:
        files["logo"] = export_archive(archive, "logo")
    for key, content in files.items():
        (out_dir / RUN_FILES[key]).write_text(content, encoding="utf-8")

    manifest = config.restricted(subset.index, characterization)
    manifest["run"] = {"subset": subset.label, "characterization": characterization.value, "run_seed": seed}
    with open(out_dir / RUN_FILES["manifest"], "w", encoding="utf-8") as f:
        f.write(f"# Reproduces {label}: motif-elites run --config {RUN_FILES['manifest']}\n\n")
        toml.dump(manifest, f)

    if best is not None:
        logger.info(
            f"{label}: coverage {summary.coverage:.3f}, best fitness {best.fitness:.4f} ({consensus(best.pwm)})"
        )
    return summary


def _execute_task(task: Tuple[ExperimentConfig, SubsetData, Characterization]) -> ArchiveSummary:
    return execute_run(*task)


def write_experiment_manifest(config: ExperimentConfig, subsets: SequenceType[SubsetData]) -> None:
    """Top-level manifest and subset membership; a rerun of a single subset keeps the existing manifest."""
    config.output_dir.mkdir(parents=True, exist_ok=True)
    manifest = config.output_dir / RUN_FILES["manifest"]
    if config.selected_subsets and manifest.exists():
        return
    with open(manifest, "w", encoding="utf-8") as f:
        f.write("# motif-elites experiment manifest\n\n")
        toml.dump(config.to_dict(), f)
    (config.output_dir / "subsets.json").write_text(
        write_subset_manifest(subset.foreground for subset in subsets), encoding="utf-8"
    )


def run_experiment(config: ExperimentConfig) -> List[ArchiveSummary]:
    """Every selected subset x characterization, serially or in worker processes."""
    subsets = prepare_subsets(config)
    write_experiment_manifest(config, subsets)
    selected = [subsets[i] for i in config.subset_indices]
    tasks = [(config, subset, c) for subset in selected for c in config.characterizations]
    logger.info(f"Running {len(tasks)} run(s) into {config.output_dir}")

    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(_execute_task, tasks))
    return [_execute_task(task) for task in tasks]


def collect_summaries(output_dir: Path) -> Dict[str, List[ArchiveSummary]]:
    """Summaries found under ``output_dir``, grouped by characterization."""
    grouped: Dict[str, List[ArchiveSummary]] = {}
    for path in sorted(Path(output_dir).glob(f"subset-*/ME.*/{RUN_FILES['summary']}")):
        summary = ArchiveSummary.from_json(path.read_text(encoding="utf-8"))
        grouped.setdefault(summary.characterization or path.parent.name, []).append(summary)
    return grouped
