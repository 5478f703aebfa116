# motif_elites/core/pwm.py - Position weight matrix genome
# A PWM is a row-stochastic L x 4 matrix whose entries never drop below PWM_FLOOR.

# --- Standard Library Imports ---
from dataclasses import dataclass
from typing import Iterable, Sequence as SequenceType, Union

# --- Third-Party Imports ---
import numpy as np

# --- Local Imports ---
from .constants import BASE_CODES, DEFAULT_DIRICHLET_ALPHA, N_CODE, PWM_FLOOR, ROW_SUM_TOLERANCE
from .errors import InvalidParams, WindowLengthMismatch
from .sequences import BackgroundDistribution, SeedLike, encode_bases

# Repair loop bound: each pass pins at least one more entry to the floor
_MAX_REPAIR_PASSES = 4
# Rounding slack when checking entries against the floor
_FLOOR_SLACK = 1e-12


def repair_matrix(matrix: np.ndarray, floor: float = PWM_FLOOR) -> np.ndarray:
    """
    Project an arbitrary L x 4 array onto the floored probability simplex.

    Negative entries are clipped, rows without mass become uniform, then every
    entry below ``floor`` is pinned to it while the remaining mass is rescaled
    over the other entries. Rows that are already interior only get divided by
    their sum.
    """
    x = np.array(matrix, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != 4 or x.shape[0] < 1:
        raise InvalidParams(f"PWM matrix must have shape (L, 4) with L >= 1, got {x.shape}")
    if not np.all(np.isfinite(x)):
        x = np.where(np.isfinite(x), x, 0.0)

    x = np.clip(x, 0.0, None)
    totals = x.sum(axis=1, keepdims=True)
    empty = totals[:, 0] <= 0.0
    x[empty] = 0.25
    totals[empty] = 1.0
    x = x / totals

    pinned = np.zeros(x.shape, dtype=bool)
    for _ in range(_MAX_REPAIR_PASSES):
        low = (x < floor) & ~pinned
        if not low.any():
            break
        pinned |= low
        x[pinned] = floor
        free_mass = 1.0 - floor * pinned.sum(axis=1)
        free_total = np.where(pinned, 0.0, x).sum(axis=1)
        scale = np.divide(free_mass, free_total, out=np.ones_like(free_mass), where=free_total > 0)
        x = np.where(pinned, floor, x * scale[:, None])
    return x


@dataclass(frozen=True, eq=False)
class PWM:
    """
    Row-stochastic position weight matrix.

    The constructor checks the matrix and never alters it; use
    ``PWM.from_matrix`` to repair arbitrary input first.

    Attributes:
        probs (np.ndarray): Read-only L x 4 float64 matrix, columns in ACGT order.

    Raises:
        InvalidParams: Wrong shape, non-finite or sub-floor entries, or a row
            whose sum is off by more than ROW_SUM_TOLERANCE.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.ndim != 2 or probs.shape[1] != 4 or probs.shape[0] < 1:
            raise InvalidParams(f"PWM must have shape (L, 4) with L >= 1, got {probs.shape}")
        if not np.all(np.isfinite(probs)):
            raise InvalidParams("PWM entries must be finite")
        if probs.min() < PWM_FLOOR - _FLOOR_SLACK:
            raise InvalidParams(f"PWM entries must be >= {PWM_FLOOR}, got {probs.min()!r}")
        deviation = np.abs(probs.sum(axis=1) - 1.0)
        if deviation.max() > ROW_SUM_TOLERANCE:
            row = int(np.argmax(deviation))
            raise InvalidParams(f"PWM row {row} sums to {probs[row].sum()!r}, expected 1")
        if probs.flags.writeable:
            probs = probs.copy()
            probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_matrix(cls, matrix: Union[np.ndarray, SequenceType[SequenceType[float]]]) -> "PWM":
        """Build a PWM from any L x 4 array, enforcing the floor and row sums."""
        return cls(repair_matrix(np.asarray(matrix, dtype=np.float64)))

    @classmethod
    def uniform(cls, length: int) -> "PWM":
        if length < 1:
            raise InvalidParams(f"motif length must be >= 1, got {length}")
        return cls(np.full((length, 4), 0.25))

    @classmethod
    def from_consensus(cls, consensus: str, peak: float = 1.0) -> "PWM":
        """PWM giving ``peak`` to the consensus base and sharing the rest evenly."""
        if not 0.25 <= peak <= 1.0:
            raise InvalidParams(f"consensus peak must lie in [0.25, 1], got {peak}")
        matrix = np.full((len(consensus), 4), (1.0 - peak) / 3.0)
        for row, base in enumerate(consensus.upper()):
            if base not in BASE_CODES:
                raise InvalidParams(f"consensus contains non-ACGT base {base!r}")
            matrix[row, BASE_CODES[base]] = peak
        return cls.from_matrix(matrix)

    @property
    def length(self) -> int:
        return int(self.probs.shape[0])

    def __len__(self) -> int:
        return self.length

    def flatten(self) -> np.ndarray:
        """Genome view used by the emitters: length L*4, row-major."""
        return self.probs.reshape(-1).copy()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PWM):
            return NotImplemented
        return self.probs.shape == other.probs.shape and np.array_equal(self.probs, other.probs)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PWM(length={self.length})"


def random_pwm(length: int, alpha: float = DEFAULT_DIRICHLET_ALPHA, seed: SeedLike = None) -> PWM:
    """
    Sample a PWM with rows drawn from a symmetric Dirichlet.

    ``seed`` may be an integer (deterministic) or a shared numpy Generator.
    """
    if length < 1:
        raise InvalidParams(f"motif length must be >= 1, got {length}")
    if alpha <= 0:
        raise InvalidParams(f"Dirichlet concentration must be > 0, got {alpha}")
    rng = np.random.default_rng(seed)
    rows = rng.dirichlet(np.full(4, float(alpha)), size=length)
    return PWM.from_matrix(rows)


def reverse_complement(pwm: PWM) -> PWM:
    """Motif of the opposite strand: positions reversed, A<->T and C<->G swapped."""
    return PWM(pwm.probs[::-1, ::-1].copy())


def log_odds_table(pwm: PWM, bg: BackgroundDistribution) -> np.ndarray:
    """
    Per-position natural-log odds, shape L x 5.

    Column 4 (N) holds NaN so any window touching an ambiguous base is invalid.
    """
    table = np.full((pwm.length, N_CODE + 1), np.nan)
    table[:, :N_CODE] = np.log(pwm.probs / bg.as_array()[None, :])
    return table


def log_odds(pwm: PWM, window: Union[str, Iterable[int], np.ndarray], bg: BackgroundDistribution) -> float:
    """
    Log-odds score of one window: sum of ln(p_j(w_j) / bg(w_j)).

    Raises:
        WindowLengthMismatch: ``window`` is not exactly L bases long.
        InvalidParams: ``window`` contains an ambiguous base.
    """
    codes = encode_bases(window) if isinstance(window, str) else np.asarray(list(window), dtype=np.intp)
    if codes.size != pwm.length:
        raise WindowLengthMismatch(int(codes.size), pwm.length)
    if np.any(codes >= N_CODE):
        raise InvalidParams("window contains an ambiguous base")
    table = log_odds_table(pwm, bg)
    return float(sum(table[j, int(code)] for j, code in enumerate(codes)))


def repair_pwm(matrix: Union[np.ndarray, SequenceType[SequenceType[float]]], floor: float = PWM_FLOOR) -> PWM:
    """
    Repair an arbitrary perturbed genome back into a valid PWM.

    ``floor`` may raise the minimum entry but not lower it below PWM_FLOOR.
    """
    return PWM(repair_matrix(np.asarray(matrix, dtype=np.float64), floor))
