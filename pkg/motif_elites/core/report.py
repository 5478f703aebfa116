# motif_elites/core/report.py - Archive snapshots, heatmaps, logos and comparison tables
# JSON snapshots are full fidelity: loading one gives back bit-identical elites.

# --- Standard Library Imports ---
import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence as SequenceType, Tuple, Union

# --- Third-Party Imports ---
import jsonschema
import numpy as np
from rich import box
from rich.console import Console
from rich.table import Table

# --- Local Imports ---
from .archive import Archive, DescriptorBounds, Elite
from .constants import ALPHABET, DEFAULT_MOTIF_LENGTH
from .descriptors import BehaviorDescriptor, Characterization
from .errors import InvalidParams, InvalidSnapshot, NonFiniteDescriptor
from .meme import write_meme
from .metrics import RunMetrics
from .pwm import PWM

SNAPSHOT_FORMAT = "motif-elites-archive"
SNAPSHOT_VERSION = 1

_PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

ARCHIVE_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["format", "version", "characterization", "dims", "bounds", "elites"],
    "properties": {
        "format": {"const": SNAPSHOT_FORMAT},
        "version": {"const": SNAPSHOT_VERSION},
        "characterization": {"type": ["string", "null"], "enum": [c.value for c in Characterization] + [None]},
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
        "motif_length": {"type": "integer", "minimum": 1},
        "bounds": {
            "type": "object",
            "required": ["lo", "hi"],
            "properties": {"lo": _PAIR, "hi": _PAIR},
        },
        "elites": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["cell", "fitness", "descriptor", "generation_added", "pwm"],
                "properties": {
                    "cell": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
                    "fitness": {"type": "number"},
                    "descriptor": _PAIR,
                    "generation_added": {"type": "integer", "minimum": 0},
                    "pwm": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4},
                    },
                },
            },
        },
    },
}


def _csv_text(rows: List[List[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _cell(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def meme_eval_csv(rows: SequenceType[Tuple[str, str, Optional[float]]]) -> str:
    """``motif,subset,fitness`` rows; motifs without a scorable window get a blank fitness."""
    return _csv_text([["motif", "subset", "fitness"], *([motif, subset, _cell(value)] for motif, subset, value in rows)])


# -- Motif text forms --


def consensus(pwm: PWM) -> str:
    """
    Argmax base per position; lowercase when its probability is below 0.5.

    Ties resolve in alphabet order A < C < G < T.
    """
    best = np.argmax(pwm.probs, axis=1)
    peaks = pwm.probs[np.arange(pwm.length), best]
    return "".join(
        ALPHABET[b] if peak >= 0.5 else ALPHABET[b].lower() for b, peak in zip(best, peaks)
    )


def logo_csv(pwm: PWM) -> str:
    """Per-position probabilities for external logo plotting."""
    rows: List[List[Any]] = [["position", *ALPHABET]]
    for position, row in enumerate(pwm.probs, start=1):
        rows.append([position, *(repr(float(p)) for p in row)])
    return _csv_text(rows)


# -- Archive snapshots --


def archive_to_dict(archive: Archive) -> Dict[str, Any]:
    characterization = archive.characterization
    if characterization is None and not archive.is_empty:
        characterization = archive.elites()[0].descriptor.characterization
    return {
        "format": SNAPSHOT_FORMAT,
        "version": SNAPSHOT_VERSION,
        "characterization": characterization.value if characterization else None,
        "dims": list(archive.dims),
        "motif_length": archive.motif_length,
        "bounds": {"lo": list(archive.bounds.lo), "hi": list(archive.bounds.hi)},
        "elites": [
            {
                "cell": list(index),
                "fitness": elite.fitness,
                "descriptor": list(elite.descriptor.values),
                "generation_added": elite.generation_added,
                "pwm": elite.pwm.probs.tolist(),
            }
            for index, elite in archive.items()
        ],
    }


def archive_csv(archive: Archive) -> str:
    """One row per elite with the PWM flattened row-major."""
    length = max((elite.pwm.length for elite in archive.elites()), default=0)
    header = ["cell_i", "cell_j", "fitness", "d1", "d2", "generation_added", "consensus"]
    header += [f"p{pos}_{base}" for pos in range(length) for base in ALPHABET]
    rows: List[List[Any]] = [header]
    for (i, j), elite in archive.items():
        rows.append(
            [
                i,
                j,
                repr(elite.fitness),
                repr(elite.descriptor.values[0]),
                repr(elite.descriptor.values[1]),
                elite.generation_added,
                consensus(elite.pwm),
                *(repr(float(p)) for p in elite.pwm.flatten()),
            ]
        )
    return _csv_text(rows)


EXPORT_FORMATS = ("json", "csv", "meme", "logo")


def elites_meme(archive: Archive) -> str:
    """Every elite as a MEME motif named ``<bc>_<i>_<j>`` after its cell."""
    prefix = archive.characterization.code if archive.characterization else "elite"
    items = archive.items()
    return write_meme([elite.pwm for _, elite in items], [f"{prefix}_{i}_{j}" for (i, j), _ in items])


def export_archive(archive: Archive, fmt: str = "json") -> str:
    """
    Serialize an archive.

    ``json`` is the full-fidelity snapshot, ``csv`` one row per elite, ``meme``
    every elite PWM and ``logo`` the best elite's position table.
    """
    if fmt == "json":
        return json.dumps(archive_to_dict(archive), indent=2) + "\n"
    if fmt == "csv":
        return archive_csv(archive)
    if fmt == "meme":
        return elites_meme(archive)
    if fmt == "logo":
        best = archive.best_elite()
        if best is None:
            raise InvalidParams("archive is empty; no logo to export")
        return logo_csv(best.pwm)
    raise InvalidParams(f"unknown archive format {fmt!r}; expected one of {', '.join(EXPORT_FORMATS)}")


def load_archive(text: Union[str, bytes]) -> Archive:
    """
    Rebuild an archive from its JSON snapshot.

    Every stored matrix must already be a valid PWM; nothing is repaired on load.

    Raises:
        InvalidSnapshot: The document is not UTF-8 JSON, fails schema
            validation, repeats a cell, holds a matrix off the floored simplex,
            or stores an elite outside the cell its descriptor maps to.
    """
    try:
        data = json.loads(text)
        jsonschema.validate(data, ARCHIVE_SCHEMA)
    except (UnicodeDecodeError, json.JSONDecodeError, jsonschema.ValidationError) as e:
        raise InvalidSnapshot(f"invalid archive snapshot: {getattr(e, 'message', e)}") from e

    name = data["characterization"]
    characterization = Characterization(name) if name else None
    if characterization is None and data["elites"]:
        raise InvalidSnapshot("snapshot with elites must name its characterization")

    entries = data["elites"]
    length = data.get("motif_length") or (len(entries[0]["pwm"]) if entries else DEFAULT_MOTIF_LENGTH)
    seen = set()
    try:
        bounds = DescriptorBounds(lo=tuple(data["bounds"]["lo"]), hi=tuple(data["bounds"]["hi"]))
        archive = Archive(bounds, tuple(data["dims"]), characterization, motif_length=length)
        for position, entry in enumerate(entries):
            cell = tuple(entry["cell"])
            if cell in seen:
                raise InvalidSnapshot(f"cell {cell} appears twice")
            seen.add(cell)
            try:
                pwm = PWM(np.array(entry["pwm"], dtype=np.float64))
            except InvalidParams as e:
                raise InvalidSnapshot(f"elite {position} in cell {cell}: {e}") from e
            elite = Elite(
                pwm=pwm,
                fitness=entry["fitness"],
                descriptor=BehaviorDescriptor(characterization, tuple(entry["descriptor"])),
                generation_added=entry["generation_added"],
            )
            if archive.cell_index(elite.descriptor) != cell:
                raise InvalidSnapshot(f"elite stored in {cell} but its descriptor maps elsewhere")
            archive.try_insert(elite)
    except (InvalidParams, NonFiniteDescriptor) as e:
        raise InvalidSnapshot(str(e)) from e
    return archive


# -- Heatmaps --


def heatmap_grid(archive: Archive) -> List[List[Optional[float]]]:
    """dims[0] x dims[1] grid of stored fitness, None for empty cells."""
    grid: List[List[Optional[float]]] = [[None] * archive.dims[1] for _ in range(archive.dims[0])]
    for (i, j), elite in archive.items():
        grid[i][j] = elite.fitness
    return grid


def heatmap_csv(archive: Archive) -> str:
    """Row i holds the cells of the i-th bin of the first descriptor; empty cells are blank."""
    return _csv_text([[_cell(value) for value in row] for row in heatmap_grid(archive)])


# -- Summaries --


@dataclass
class ArchiveSummary:
    """
    Headline numbers of one finished run, written to summary.json.
    """

    characterization: Optional[str]
    subset: Optional[str]
    occupied: int
    coverage: float
    qd_score: float
    qd_offset: float
    max_fitness: Optional[float]
    mean_fitness: Optional[float]
    best_consensus: Optional[str]
    generations: int = 0
    failed_evaluations: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_archive(
        cls,
        archive: Archive,
        subset: Optional[str] = None,
        metrics: Optional[RunMetrics] = None,
        qd_offset: float = 0.0,
    ) -> "ArchiveSummary":
        best = archive.best_elite()
        return cls(
            characterization=archive.characterization.value if archive.characterization else None,
            subset=subset,
            occupied=len(archive),
            coverage=archive.coverage(),
            qd_score=archive.qd_score(qd_offset),
            qd_offset=qd_offset,
            max_fitness=best.fitness if best else None,
            mean_fitness=archive.mean_fitness(),
            best_consensus=consensus(best.pwm) if best else None,
            generations=len(metrics) if metrics else 0,
            failed_evaluations=metrics.total_failed if metrics else 0,
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ArchiveSummary":
        return cls(**json.loads(text))


# -- Cross-method comparison --


@dataclass(frozen=True)
class ComparisonEntry:
    """
    Fitness values of one method.

    Attributes:
        method (str): Row label, e.g. "MEME" or "ME.CO".
        values (Sequence[float]): Values summarized by mean and std.
        peak_values (Optional[Sequence[float]]): Values the maximum is taken
            over; defaults to ``values``.
    """

    method: str
    values: SequenceType[float]
    peak_values: Optional[SequenceType[float]] = None


@dataclass(frozen=True)
class ComparisonRow:
    method: str
    n: int
    max_fitness: float
    mean_fitness: float
    std_fitness: float


def summarize_entry(entry: ComparisonEntry) -> ComparisonRow:
    """Max, mean and sample standard deviation (n - 1; zero for a single value)."""
    values = np.asarray(entry.values, dtype=np.float64)
    if values.size == 0:
        raise InvalidParams(f"method {entry.method!r} has no fitness values")
    peaks = np.asarray(entry.peak_values if entry.peak_values else values, dtype=np.float64)
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return ComparisonRow(
        method=entry.method,
        n=int(values.size),
        max_fitness=float(peaks.max()),
        mean_fitness=float(values.mean()),
        std_fitness=std,
    )


def comparison_rows(entries: SequenceType[ComparisonEntry]) -> List[ComparisonRow]:
    return [summarize_entry(entry) for entry in entries]


def comparison_csv(entries: SequenceType[ComparisonEntry]) -> str:
    rows: List[List[Any]] = [["method", "n", "max_fitness", "mean_fitness", "std_fitness"]]
    for row in comparison_rows(entries):
        rows.append([row.method, row.n, repr(row.max_fitness), repr(row.mean_fitness), repr(row.std_fitness)])
    return _csv_text(rows)


def comparison_table(entries: SequenceType[ComparisonEntry], title: str = "Fitness comparison") -> str:
    """Aligned plain-text table: Method | Max Fitness | Avg Fitness (mean ± std)."""
    table = Table(title=title, box=box.SIMPLE, show_lines=False)
    table.add_column("Method", style="bold")
    table.add_column("N", justify="right")
    table.add_column("Max Fitness", justify="right")
    table.add_column("Avg Fitness (mean ± std)", justify="right")
    for row in comparison_rows(entries):
        table.add_row(
            row.method,
            str(row.n),
            f"{row.max_fitness:.4f}",
            f"{row.mean_fitness:.4f} ± {row.std_fitness:.4f}",
        )

    buffer = io.StringIO()
    console = Console(file=buffer, width=100, color_system=None, force_terminal=False)
    console.print(table)
    return buffer.getvalue()
