# motif_elites/core/archive.py - MAP-Elites grid archive with local competition
# Elites live in a pyribs GridArchive; a newcomer must strictly beat the incumbent.

# --- Standard Library Imports ---
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence as SequenceType, Tuple, Union

# --- Third-Party Imports ---
import numpy as np
from ribs.archives import GridArchive

# --- Local Imports ---
from .constants import DEFAULT_ARCHIVE_DIMS, DEFAULT_MOTIF_LENGTH
from .descriptors import BehaviorDescriptor, Characterization
from .errors import InvalidParams, NonFiniteDescriptor
from .pwm import PWM

CellIndex = Tuple[int, int]


class InsertStatus(Enum):
    """
    Outcome of offering a candidate to the archive.
    """

    NEW_CELL = "new_cell"
    IMPROVED = "improved"
    REJECTED = "rejected"


# pyribs add status codes
_RIBS_STATUS = {0: InsertStatus.REJECTED, 1: InsertStatus.IMPROVED, 2: InsertStatus.NEW_CELL}


@dataclass(frozen=True)
class DescriptorBounds:
    """
    Per-dimension descriptor range covered by the grid.

    Attributes:
        lo (Tuple[float, float]): Lower edge of the first cell per dimension.
        hi (Tuple[float, float]): Upper edge of the last cell per dimension.
    """

    lo: Tuple[float, float]
    hi: Tuple[float, float]

    def __post_init__(self) -> None:
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        if len(lo) != 2 or len(hi) != 2:
            raise InvalidParams("descriptor bounds must be two-dimensional")
        if not all(math.isfinite(v) for v in lo + hi):
            raise InvalidParams(f"descriptor bounds must be finite, got lo={lo}, hi={hi}")
        if not all(l < h for l, h in zip(lo, hi)):
            raise InvalidParams(f"descriptor bounds need lo < hi per dimension, got lo={lo}, hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def widths(self) -> Tuple[float, float]:
        return (self.hi[0] - self.lo[0], self.hi[1] - self.lo[1])

    @property
    def ranges(self) -> List[Tuple[float, float]]:
        """Per-dimension (lo, hi) pairs in the form GridArchive expects."""
        return [(self.lo[0], self.hi[0]), (self.lo[1], self.hi[1])]


@dataclass(frozen=True, eq=False)
class Elite:
    """
    The best motif found so far for one cell.

    Attributes:
        pwm (PWM): The motif.
        fitness (float): Top-k fitness, finite.
        descriptor (BehaviorDescriptor): Where the motif landed.
        generation_added (int): Generation that produced it (0 for imports).
    """

    pwm: PWM
    fitness: float
    descriptor: BehaviorDescriptor
    generation_added: int = 0

    def __post_init__(self) -> None:
        if not math.isfinite(self.fitness):
            raise InvalidParams(f"elite fitness must be finite, got {self.fitness}")
        object.__setattr__(self, "fitness", float(self.fitness))


class Archive:
    """
    Two-dimensional grid of elites indexed by a behavior descriptor.

    Storage, binning and parent sampling are delegated to a pyribs
    ``GridArchive`` whose solutions are flattened L x 4 PWMs. Descriptors
    outside the bounds are clipped into the edge cells.

    Args:
        bounds: Descriptor range spanned by the grid.
        dims: Cells per descriptor dimension.
        characterization: Pairing of the axes; adopted from the first elite when None.
        motif_length: Length every stored PWM must have.
        seed: Seed of the grid's parent sampling.
    """

    def __init__(
        self,
        bounds: DescriptorBounds,
        dims: Tuple[int, int] = DEFAULT_ARCHIVE_DIMS,
        characterization: Optional[Characterization] = None,
        motif_length: int = DEFAULT_MOTIF_LENGTH,
        seed: Optional[int] = None,
    ) -> None:
        if len(dims) != 2 or min(dims) < 1:
            raise InvalidParams(f"archive dims must be two positive counts, got {dims}")
        if motif_length < 1:
            raise InvalidParams(f"motif length must be >= 1, got {motif_length}")
        self.bounds = bounds
        self.dims: Tuple[int, int] = (int(dims[0]), int(dims[1]))
        self.characterization = characterization
        self.motif_length = int(motif_length)
        self.grid = GridArchive(
            solution_dim=self.motif_length * 4,
            dims=self.dims,
            ranges=bounds.ranges,
            seed=seed,
            extra_fields={"generation": ((), np.int32)},
        )
        self._view: Optional[Dict[CellIndex, Elite]] = None

    def __len__(self) -> int:
        return len(self.grid)

    def __iter__(self) -> Iterator[Tuple[CellIndex, Elite]]:
        return iter(self.items())

    def __contains__(self, index: object) -> bool:
        return index in self._cells()

    def __repr__(self) -> str:
        name = self.characterization.value if self.characterization else "unnamed"
        return f"Archive({name}, dims={self.dims}, occupied={len(self)})"

    @property
    def n_cells(self) -> int:
        return self.dims[0] * self.dims[1]

    @property
    def is_empty(self) -> bool:
        return bool(self.grid.empty)

    def _columns(self) -> Tuple[np.ndarray, Dict[str, np.ndarray]]:
        """Occupied grid indices and their data, in row-major order."""
        data = self.grid.data()
        order = np.argsort(data["index"], kind="stable")
        columns = {key: np.asarray(value)[order] for key, value in data.items()}
        grid_indices = self.grid.int_to_grid_index(columns["index"]) if len(order) else np.empty((0, 2), dtype=int)
        return grid_indices, columns

    def _cells(self) -> Dict[CellIndex, Elite]:
        if self._view is None:
            view: Dict[CellIndex, Elite] = {}
            if self.characterization is None:
                return view
            grid_indices, columns = self._columns()
            for row, (i, j) in enumerate(grid_indices):
                view[(int(i), int(j))] = Elite(
                    pwm=PWM(columns["solution"][row].reshape(self.motif_length, 4)),
                    fitness=float(columns["objective"][row]),
                    descriptor=BehaviorDescriptor(self.characterization, tuple(columns["measures"][row])),
                    generation_added=int(columns["generation"][row]),
                )
            self._view = view
        return self._view

    def get(self, index: CellIndex) -> Optional[Elite]:
        return self._cells().get(index)

    def items(self) -> List[Tuple[CellIndex, Elite]]:
        """Occupied cells in row-major order."""
        return list(self._cells().items())

    def elites(self) -> List[Elite]:
        return list(self._cells().values())

    def cell_index(self, descriptor: Union[BehaviorDescriptor, SequenceType[float]]) -> CellIndex:
        """
        Uniform bin per dimension, clipped into the grid.

        Raises:
            NonFiniteDescriptor: A descriptor value is NaN or infinite.
        """
        values = descriptor.values if isinstance(descriptor, BehaviorDescriptor) else tuple(descriptor)
        if len(values) != 2 or not all(math.isfinite(v) for v in values):
            raise NonFiniteDescriptor(values)
        flat = self.grid.index_of_single(np.asarray(values, dtype=np.float64))
        i, j = self.grid.int_to_grid_index(np.array([flat]))[0]
        return (int(i), int(j))

    def try_insert(self, candidate: Elite) -> InsertStatus:
        """
        Store ``candidate`` if its cell is empty or it strictly beats the incumbent.

        Raises:
            InvalidParams: The motif length or characterization differs from the archive's.
            NonFiniteDescriptor: The descriptor cannot be binned.
        """
        if candidate.pwm.length != self.motif_length:
            raise InvalidParams(f"archive holds length-{self.motif_length} motifs, got {candidate.pwm.length}")
        characterization = candidate.descriptor.characterization
        if self.characterization is None:
            self.characterization = characterization
        elif characterization is not self.characterization:
            raise InvalidParams(f"{characterization.value} elite offered to a {self.characterization.value} archive")

        measures = candidate.descriptor.as_array()
        occupied, incumbent = self.grid.retrieve_single(measures)
        if occupied and not candidate.fitness > float(incumbent["objective"]):
            return InsertStatus.REJECTED

        add_info = self.grid.add_single(
            candidate.pwm.flatten(),
            candidate.fitness,
            measures,
            generation=candidate.generation_added,
        )
        status = _RIBS_STATUS[int(add_info["status"])]
        if status is not InsertStatus.REJECTED:
            self._view = None
        return status

    # -- Summary statistics --

    def coverage(self) -> float:
        return len(self) / self.n_cells

    def _objectives(self) -> np.ndarray:
        return self._columns()[1]["objective"].astype(np.float64)

    def qd_score(self, offset: float = 0.0) -> float:
        """Sum over occupied cells of (fitness - offset), in row-major order."""
        return float(sum(float(value) - offset for value in self._objectives()))

    def best_elite(self) -> Optional[Elite]:
        """Highest-fitness elite; the first in row-major order wins ties."""
        elites = self.elites()
        if not elites:
            return None
        return elites[int(np.argmax([elite.fitness for elite in elites]))]

    def best_fitness(self) -> Optional[float]:
        objectives = self._objectives()
        return float(objectives.max()) if objectives.size else None

    def mean_fitness(self) -> Optional[float]:
        objectives = self._objectives()
        return float(np.mean(objectives)) if objectives.size else None


def cell_index(archive: Archive, descriptor: Union[BehaviorDescriptor, SequenceType[float]]) -> CellIndex:
    return archive.cell_index(descriptor)


def try_insert(archive: Archive, candidate: Elite) -> InsertStatus:
    return archive.try_insert(candidate)
