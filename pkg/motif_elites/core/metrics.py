# motif_elites/core/metrics.py - Per-generation run metrics
# Defines the records written to metrics.csv and the summary printed after a run.

# --- Standard Library Imports ---
import csv
import io
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

# --- Local Imports ---
from .archive import Archive

# Column order of metrics.csv; the first five are the stable public contract
METRICS_COLUMNS = (
    "generation",
    "coverage",
    "best_fitness",
    "qd_score",
    "failed_evaluations",
    "mean_fitness",
    "new_cells",
    "improved",
    "evaluations",
    "qd_offset",
)


def _format_value(value: Any) -> str:
    """Shortest round-trip text for floats, blank for missing values."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class GenerationRecord:
    """
    Archive state after one generation.

    Attributes:
        generation (int): 1-based generation number.
        coverage (float): Occupied cells / total cells.
        best_fitness (Optional[float]): Best stored fitness, None while empty.
        qd_score (float): Sum of (fitness - offset) over occupied cells.
        failed_evaluations (int): Candidates discarded this generation.
        mean_fitness (Optional[float]): Mean stored fitness, None while empty.
        new_cells (int): Insertions into previously empty cells.
        improved (int): Insertions that replaced a weaker elite.
        evaluations (int): Candidates emitted this generation.
        qd_offset (float): Offset used for qd_score.
    """

    generation: int
    coverage: float
    best_fitness: Optional[float]
    qd_score: float
    failed_evaluations: int = 0
    mean_fitness: Optional[float] = None
    new_cells: int = 0
    improved: int = 0
    evaluations: int = 0
    qd_offset: float = 0.0

    @classmethod
    def from_archive(cls, generation: int, archive: Archive, qd_offset: float = 0.0, **counts: int) -> "GenerationRecord":
        return cls(
            generation=generation,
            coverage=archive.coverage(),
            best_fitness=archive.best_fitness(),
            qd_score=archive.qd_score(qd_offset),
            mean_fitness=archive.mean_fitness(),
            qd_offset=float(qd_offset),
            **counts,
        )

    def as_row(self) -> List[str]:
        return [_format_value(getattr(self, name)) for name in METRICS_COLUMNS]

    def __str__(self) -> str:
        best = "-" if self.best_fitness is None else f"{self.best_fitness:.4f}"
        return (
            f"gen {self.generation}: coverage={self.coverage:.3f} best={best} "
            f"qd={self.qd_score:.3f} new={self.new_cells} improved={self.improved} "
            f"failed={self.failed_evaluations}"
        )


@dataclass
class RunMetrics:
    """
    Full per-generation trace of one MAP-Elites run.
    """

    qd_offset: float = 0.0
    records: List[GenerationRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def append(self, record: GenerationRecord) -> None:
        self.records.append(record)

    @property
    def last(self) -> Optional[GenerationRecord]:
        return self.records[-1] if self.records else None

    @property
    def total_failed(self) -> int:
        return sum(record.failed_evaluations for record in self.records)

    @property
    def total_evaluations(self) -> int:
        return sum(record.evaluations for record in self.records)

    def column(self, name: str) -> List[Any]:
        return [getattr(record, name) for record in self.records]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(METRICS_COLUMNS)
        for record in self.records:
            writer.writerow(record.as_row())
        return buffer.getvalue()

    def summary(self) -> Dict[str, Any]:
        """Headline numbers of the final generation."""
        last = self.last
        return {
            "generations": len(self.records),
            "coverage": last.coverage if last else 0.0,
            "best_fitness": last.best_fitness if last else None,
            "qd_score": last.qd_score if last else 0.0,
            "failed_evaluations": self.total_failed,
            "evaluations": self.total_evaluations,
            "qd_offset": self.qd_offset,
        }

    def __str__(self) -> str:
        last = self.last
        if last is None:
            return "RunMetrics(no generations)"
        return f"RunMetrics({len(self.records)} generations, final {last})"
