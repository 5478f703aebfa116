# motif_elites/core/descriptors.py - Behavioral descriptors and characterizations
# Composition measures are in bits; support and tail work on best-hit scores.

# --- Standard Library Imports ---
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Set, Tuple

# --- Third-Party Imports ---
import numpy as np

# --- Local Imports ---
from .constants import DEFAULT_SUPPORT_PERCENTILE, MIN_CALIBRATION_SEQUENCES, TAIL_DEFAULTS
from .errors import InsufficientScores, InvalidParams, NonFiniteDescriptor, NoScorableSequences
from .logging_config import get_logger
from .pwm import PWM
from .scoring import FitnessConfig, ScoreProfile, fitness, percentile, scan_set, score_profile
from .sequences import BackgroundDistribution, SequenceSet

logger = get_logger("descriptors")


class Characterization(Enum):
    """
    Descriptor pairings spanning the archive axes.
    """

    SP = "ME.SP"  # specificity vs prevalence
    CO = "ME.CO"  # composition
    RB = "ME.RB"  # robustness of the score distribution

    @property
    def code(self) -> str:
        """Short CLI name: sp, co or rb."""
        return self.name.lower()

    @property
    def axis_labels(self) -> Tuple[str, str]:
        return _AXIS_LABELS[self]

    @classmethod
    def from_code(cls, value: str) -> "Characterization":
        """Accept either the short code ("co") or the full name ("ME.CO")."""
        text = value.strip()
        for member in cls:
            if text.lower() == member.code or text.upper() == member.value:
                return member
        raise InvalidParams(f"unknown characterization {value!r}; expected one of sp, co, rb")


_AXIS_LABELS = {
    Characterization.SP: ("information_content", "support"),
    Characterization.CO: ("gc_content", "entropy"),
    Characterization.RB: ("support", "tail_behavior"),
}


@dataclass(frozen=True)
class SupportRule:
    """
    Calibrated foreground support threshold.

    Attributes:
        threshold (float): Best-hit score a sequence must strictly exceed.
        percentile (float): Background percentile the threshold came from.
    """

    threshold: float
    percentile: float = DEFAULT_SUPPORT_PERCENTILE

    def __post_init__(self) -> None:
        if not 0.0 < self.percentile < 100.0:
            raise InvalidParams(f"support percentile must lie in (0, 100), got {self.percentile}")


@dataclass(frozen=True)
class TailConfig:
    """Quantiles whose difference summarizes the upper tail of best hits."""

    upper_quantile: float = TAIL_DEFAULTS["upper_quantile"]
    center_quantile: float = TAIL_DEFAULTS["center_quantile"]

    def __post_init__(self) -> None:
        if not 0.0 <= self.center_quantile < self.upper_quantile <= 1.0:
            raise InvalidParams(
                "tail quantiles need 0 <= center_quantile < upper_quantile <= 1, "
                f"got {self.center_quantile} and {self.upper_quantile}"
            )


@dataclass(frozen=True)
class BehaviorDescriptor:
    """
    Location of a motif in one characterization space.

    Attributes:
        characterization (Characterization): Which pairing produced the values.
        values (Tuple[float, float]): (d1, d2), both finite.
    """

    characterization: Characterization
    values: Tuple[float, float]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if len(values) != 2:
            raise InvalidParams(f"descriptor needs exactly two values, got {len(values)}")
        if not all(np.isfinite(values)):
            raise NonFiniteDescriptor(values)
        object.__setattr__(self, "values", values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.float64)


@dataclass(frozen=True, eq=False)
class EvaluationContext:
    """
    Everything a characterization needs besides the motif itself.

    Attributes:
        foreground (SequenceSet): Sequences the motif should explain.
        background (Optional[SequenceSet]): Null set used to calibrate support.
        bg (BackgroundDistribution): Nucleotide distribution for the log-odds.
        support_percentile (float): Background percentile for per-motif calibration.
        support_rule (Optional[SupportRule]): Fixed threshold; skips calibration when set.
        tail (TailConfig): Quantiles for tail behavior.
    """

    foreground: SequenceSet
    background: Optional[SequenceSet]
    bg: BackgroundDistribution
    support_percentile: float = DEFAULT_SUPPORT_PERCENTILE
    support_rule: Optional[SupportRule] = None
    tail: TailConfig = field(default_factory=TailConfig)
    _checked_lengths: Set[int] = field(default_factory=set, init=False, repr=False)

    def rule_for(self, pwm: PWM) -> SupportRule:
        """
        The fixed rule, or one calibrated for ``pwm`` on the background.

        The small-background warning depends only on the motif length, so it
        is logged at most once per length for this context.
        """
        if self.support_rule is not None:
            return self.support_rule
        if self.background is None:
            raise InvalidParams("support needs a background set or a fixed support rule")
        warn = pwm.length not in self._checked_lengths
        rule = calibrate_support_threshold(pwm, self.background, self.bg, self.support_percentile, warn=warn)
        self._checked_lengths.add(pwm.length)
        return rule


@dataclass(frozen=True, eq=False)
class Evaluation:
    """Fitness and descriptor of one candidate, plus the profile both came from."""

    pwm: PWM
    fitness: float
    descriptor: BehaviorDescriptor
    profile: ScoreProfile


# -- Composition measures --


def information_content(pwm: PWM, bg: BackgroundDistribution) -> float:
    """Mean per-position relative entropy against ``bg``, in bits."""
    probs = pwm.probs
    kl = (probs * np.log2(probs / bg.as_array()[None, :])).sum(axis=1)
    return float(kl.mean())


def entropy(pwm: PWM) -> float:
    """Mean per-position Shannon entropy, in bits."""
    probs = pwm.probs
    return float((-(probs * np.log2(probs)).sum(axis=1)).mean())


def gc_content(pwm: PWM) -> float:
    return float((pwm.probs[:, 1] + pwm.probs[:, 2]).mean())


def at_content(pwm: PWM) -> float:
    return float((pwm.probs[:, 0] + pwm.probs[:, 3]).mean())


# -- Score-distribution measures --


def calibrate_support_threshold(
    pwm: PWM,
    background: SequenceSet,
    bg: BackgroundDistribution,
    percentile_value: float = DEFAULT_SUPPORT_PERCENTILE,
    warn: bool = True,
) -> SupportRule:
    """
    Threshold at the given percentile of this motif's background best hits.

    A warning is logged when fewer than MIN_CALIBRATION_SEQUENCES background
    sequences are scorable and ``warn`` is set; the threshold is still computed.

    Raises:
        NoScorableSequences: No background sequence has a valid window.
    """
    scores = scan_set(pwm, background, bg)
    scores = scores[~np.isnan(scores)]
    if scores.size == 0:
        raise NoScorableSequences("no background sequence is scorable for support calibration")
    if warn and scores.size < MIN_CALIBRATION_SEQUENCES:
        logger.warning(
            f"Support threshold calibrated on only {scores.size} background sequences "
            f"(recommended >= {MIN_CALIBRATION_SEQUENCES})"
        )
    return SupportRule(threshold=percentile(scores, percentile_value), percentile=percentile_value)


def support(
    pwm: PWM,
    foreground: SequenceSet,
    bg: BackgroundDistribution,
    rule: SupportRule,
    profile: Optional[ScoreProfile] = None,
) -> float:
    """
    Fraction of scorable foreground sequences whose best hit exceeds the threshold.

    Raises:
        NoScorableSequences: No foreground sequence has a valid window.
    """
    if profile is None:
        profile = score_profile(pwm, foreground, bg)
    if len(profile) == 0:
        raise NoScorableSequences()
    return float(np.count_nonzero(profile.best_hits > rule.threshold) / len(profile))


def tail_behavior(profile: ScoreProfile, cfg: TailConfig = TailConfig()) -> float:
    """
    Upper-tail spread of the best-hit distribution: q(upper) - q(center).

    Raises:
        InsufficientScores: Fewer than two scores.
    """
    if len(profile) < 2:
        raise InsufficientScores(len(profile))
    hits = profile.best_hits
    upper = percentile(hits, cfg.upper_quantile * 100.0)
    center = percentile(hits, cfg.center_quantile * 100.0)
    return upper - center


# -- Characterizations --


def describe(
    pwm: PWM,
    characterization: Characterization,
    context: EvaluationContext,
    profile: Optional[ScoreProfile] = None,
) -> BehaviorDescriptor:
    """
    Compute the descriptor pair of ``characterization`` for ``pwm``.

    ``profile`` may carry the foreground best hits already computed for
    fitness, so the foreground is scanned once per candidate.
    """
    if characterization is Characterization.CO:
        values = (gc_content(pwm), entropy(pwm))
        return BehaviorDescriptor(characterization, values)

    if profile is None:
        profile = score_profile(pwm, context.foreground, context.bg)
    supported = support(pwm, context.foreground, context.bg, context.rule_for(pwm), profile=profile)

    if characterization is Characterization.SP:
        values = (information_content(pwm, context.bg), supported)
    else:
        values = (supported, tail_behavior(profile, context.tail))
    return BehaviorDescriptor(characterization, values)


def evaluate(
    pwm: PWM,
    characterization: Characterization,
    context: EvaluationContext,
    fitness_cfg: FitnessConfig = FitnessConfig(),
) -> Evaluation:
    """Fitness and descriptor from a single foreground scan."""
    profile = score_profile(pwm, context.foreground, context.bg)
    value = fitness(profile, fitness_cfg)
    descriptor = describe(pwm, characterization, context, profile=profile)
    return Evaluation(pwm=pwm, fitness=value, descriptor=descriptor, profile=profile)
