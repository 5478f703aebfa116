# motif_elites/core/scoring.py - Both-strand best-hit scanning and top-k fitness
# Scores are natural-log odds divided by motif length.

# --- Standard Library Imports ---
import math
from dataclasses import dataclass
from typing import Optional, Tuple

# --- Third-Party Imports ---
import numpy as np

# --- Local Imports ---
from .constants import FITNESS_DEFAULTS
from .errors import InvalidParams, NoScorableSequences
from .pwm import PWM, log_odds_table, reverse_complement
from .sequences import BackgroundDistribution, Sequence, SequenceSet


@dataclass(frozen=True)
class FitnessConfig:
    """
    Top-k fitness settings.

    Attributes:
        top_fraction (float): k = ceil(top_fraction * |scorable|), in (0, 1].
        trim_fraction (float): share of the top-k dropped from the upper end, in [0, 1).
    """

    top_fraction: float = FITNESS_DEFAULTS["top_fraction"]
    trim_fraction: float = FITNESS_DEFAULTS["trim_fraction"]

    def __post_init__(self) -> None:
        if not 0.0 < self.top_fraction <= 1.0:
            raise InvalidParams(f"top_fraction must lie in (0, 1], got {self.top_fraction}")
        if not 0.0 <= self.trim_fraction < 1.0:
            raise InvalidParams(f"trim_fraction must lie in [0, 1), got {self.trim_fraction}")


@dataclass(frozen=True, eq=False)
class ScoreProfile:
    """
    Best-hit scores of one motif over a sequence set.

    Attributes:
        ids (Tuple[str, ...]): Ids of the scorable sequences, input order.
        best_hits (np.ndarray): Matching length-normalized best-hit scores.
        skipped (int): Sequences with no N-free window of motif length.
    """

    ids: Tuple[str, ...]
    best_hits: np.ndarray
    skipped: int = 0

    def __post_init__(self) -> None:
        hits = np.asarray(self.best_hits, dtype=np.float64)
        if hits.shape != (len(self.ids),):
            raise InvalidParams("best_hits must hold one score per scorable id")
        if hits.flags.writeable:
            hits = hits.copy()
            hits.flags.writeable = False
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "best_hits", hits)

    @property
    def total(self) -> int:
        return len(self.ids) + self.skipped

    def __len__(self) -> int:
        return len(self.ids)

    def ranked(self) -> np.ndarray:
        """Scores sorted descending; equal scores keep ascending id order."""
        if not self.ids:
            return self.best_hits.copy()
        order = np.lexsort((np.array(self.ids), -self.best_hits))
        return self.best_hits[order]


def _strand_scores(table: np.ndarray, codes: np.ndarray, n_windows: int) -> np.ndarray:
    # Terms j and L-1-j are added first, then the pairs are accumulated. The
    # reverse complement visits the same pairs in the same order with swapped
    # operands, so both strands give bit-identical sums.
    length = table.shape[0]
    rows = np.arange(codes.shape[0])[:, None]
    total = np.zeros((codes.shape[0], n_windows))
    for j in range(length // 2):
        k = length - 1 - j
        left = table[j][codes[rows, np.arange(j, j + n_windows)[None, :]]]
        right = table[k][codes[rows, np.arange(k, k + n_windows)[None, :]]]
        total += left + right
    if length % 2:
        mid = length // 2
        total += table[mid][codes[rows, np.arange(mid, mid + n_windows)[None, :]]]
    return total


def scan_codes(pwm: PWM, codes: np.ndarray, bg: BackgroundDistribution) -> np.ndarray:
    """
    Best-hit score for every row of a padded code matrix.

    Windows containing N (or padding) are skipped; rows without any valid
    window come back as NaN.
    """
    codes = np.atleast_2d(codes)
    length = pwm.length
    n_rows, width = codes.shape
    if width < length or n_rows == 0:
        return np.full(n_rows, np.nan)

    n_windows = width - length + 1
    forward = _strand_scores(log_odds_table(pwm, bg), codes, n_windows)
    reverse = _strand_scores(log_odds_table(reverse_complement(pwm), bg), codes, n_windows)
    both = np.fmax(forward, reverse)

    valid = ~np.isnan(both)
    best = np.where(valid, both, -np.inf).max(axis=1)
    best = np.where(valid.any(axis=1), best, np.nan)
    return best / length


def scan_set(pwm: PWM, seq_set: SequenceSet, bg: BackgroundDistribution) -> np.ndarray:
    """Best-hit score per sequence of ``seq_set`` (NaN where none exists)."""
    if len(seq_set) == 0:
        return np.empty(0)
    return scan_codes(pwm, seq_set.encoded.codes, bg)


def best_hit(pwm: PWM, seq: Sequence, bg: BackgroundDistribution) -> Optional[float]:
    """
    Maximum length-normalized log-odds over all N-free windows on both strands.

    Returns None when the sequence holds no valid window.
    """
    score = scan_codes(pwm, seq.bases[None, :], bg)[0]
    return None if np.isnan(score) else float(score)


def score_profile(pwm: PWM, seq_set: SequenceSet, bg: BackgroundDistribution) -> ScoreProfile:
    """
    Best hits of ``pwm`` over a set.

    Raises:
        NoScorableSequences: The set is empty or no member has a valid window.
    """
    scores = scan_set(pwm, seq_set, bg)
    scorable = ~np.isnan(scores)
    if not scorable.any():
        raise NoScorableSequences()
    ids = tuple(seq_id for seq_id, ok in zip(seq_set.ids, scorable) if ok)
    return ScoreProfile(ids=ids, best_hits=scores[scorable], skipped=int((~scorable).sum()))


def _ceil_share(fraction: float, count: int) -> int:
    # Rounding first keeps 0.2 * 10 from landing on 2.0000000000000004
    return int(math.ceil(round(fraction * count, 9)))


def fitness(profile: ScoreProfile, cfg: FitnessConfig = FitnessConfig()) -> float:
    """
    Mean best-hit score over the top-k scorable sequences, upper-trimmed.

    k = ceil(top_fraction * n); the ceil(trim_fraction * k) largest of those
    are dropped. When trimming would leave nothing, the untrimmed top-k mean
    is returned.

    Raises:
        NoScorableSequences: The profile holds no scores.
    """
    if len(profile) == 0:
        raise NoScorableSequences("profile holds no best-hit scores")

    ranked = profile.ranked()
    k = max(1, _ceil_share(cfg.top_fraction, len(ranked)))
    top = ranked[:k]
    drop = _ceil_share(cfg.trim_fraction, k)
    kept = top[drop:] if drop < k else top
    return float(np.mean(kept))


def percentile(values: np.ndarray, q: float) -> float:
    """Percentile with linear interpolation between order statistics."""
    return float(np.percentile(np.asarray(values, dtype=np.float64), q, method="linear"))


def profile_from_scores(scores, ids=None) -> ScoreProfile:
    """Wrap raw scores in a profile; ids default to "s0", "s1", ..."""
    hits = np.asarray(scores, dtype=np.float64)
    if ids is None:
        ids = tuple(f"s{i}" for i in range(hits.size))
    return ScoreProfile(ids=tuple(ids), best_hits=hits)


def motif_fitness(
    pwm: PWM,
    seq_set: SequenceSet,
    bg: BackgroundDistribution,
    cfg: FitnessConfig = FitnessConfig(),
) -> float:
    """Top-k fitness of ``pwm`` on a set; the path every fitness number goes through."""
    return fitness(score_profile(pwm, seq_set, bg), cfg)
