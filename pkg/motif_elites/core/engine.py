# motif_elites/core/engine.py - Calibration and the MAP-Elites generation loop
# A run is fully determined by its inputs, its configuration and one integer seed.

# --- Standard Library Imports ---
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

# --- Third-Party Imports ---
import numpy as np

# --- Local Imports ---
from .archive import Archive, DescriptorBounds, Elite, InsertStatus
from .constants import (
    BOUNDS_DEFAULTS,
    DEFAULT_ARCHIVE_DIMS,
    DEFAULT_GENERATIONS,
    DEFAULT_MOTIF_LENGTH,
    DEFAULT_DIRICHLET_ALPHA,
    DEGENERATE_BOUNDS_WIDTH,
    MIN_BOUNDS_WIDTH,
)
from .descriptors import Characterization, EvaluationContext, describe, evaluate
from .emitters import EmitterConfig, spawn_emitters
from .errors import DataError, InvalidParams
from .logging_config import get_logger
from .metrics import GenerationRecord, RunMetrics
from .pwm import random_pwm
from .scoring import FitnessConfig

logger = get_logger("engine")

# Spawn-key slots below a run seed
_BOUNDS_STREAM = 0
_EMITTER_STREAM = 1
_ARCHIVE_STREAM = 2


def derive_seed(master: int, *keys: int) -> int:
    """
    Child seed for the stream addressed by ``keys`` under ``master``.

    Uses numpy's SeedSequence spawn keys, so derive_seed(s, i, j) for distinct
    (i, j) gives statistically independent streams while staying reproducible.
    """
    if master < 0 or any(k < 0 for k in keys):
        raise InvalidParams("seeds and seed keys must be non-negative integers")
    sequence = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in keys))
    return int(sequence.generate_state(1)[0])


@dataclass(frozen=True)
class BoundsConfig:
    """
    Descriptor range estimation settings.

    Attributes:
        n_samples (int): Random PWMs drawn to estimate the range.
        q_lo (float): Lower quantile per dimension.
        q_hi (float): Upper quantile per dimension.
        padding (float): Fraction of the quantile range added on each side.
    """

    n_samples: int = int(BOUNDS_DEFAULTS["n_samples"])
    q_lo: float = BOUNDS_DEFAULTS["q_lo"]
    q_hi: float = BOUNDS_DEFAULTS["q_hi"]
    padding: float = BOUNDS_DEFAULTS["padding"]

    def __post_init__(self) -> None:
        if self.n_samples < 10:
            raise InvalidParams(f"bounds estimation needs n_samples >= 10, got {self.n_samples}")
        if not 0.0 <= self.q_lo < self.q_hi <= 1.0:
            raise InvalidParams(f"bounds quantiles need 0 <= q_lo < q_hi <= 1, got {self.q_lo}, {self.q_hi}")
        if self.padding < 0:
            raise InvalidParams(f"bounds padding must be >= 0, got {self.padding}")


@dataclass(frozen=True)
class RunConfig:
    """Everything a single MAP-Elites run needs besides data and seed."""

    generations: int = DEFAULT_GENERATIONS
    motif_length: int = DEFAULT_MOTIF_LENGTH
    dims: Tuple[int, int] = DEFAULT_ARCHIVE_DIMS
    emitter: EmitterConfig = field(default_factory=EmitterConfig)
    fitness: FitnessConfig = field(default_factory=FitnessConfig)
    bounds: BoundsConfig = field(default_factory=BoundsConfig)
    qd_offset: float = 0.0
    log_every: int = 100

    def __post_init__(self) -> None:
        if self.generations < 0:
            raise InvalidParams(f"generations must be >= 0, got {self.generations}")
        if self.motif_length < 1:
            raise InvalidParams(f"motif length must be >= 1, got {self.motif_length}")


@dataclass
class RunResult:
    """Final archive and metrics trace of one run."""

    archive: Archive
    metrics: RunMetrics
    seed: int
    characterization: Characterization

    @property
    def bounds(self) -> DescriptorBounds:
        return self.archive.bounds


def bounds_from_samples(
    samples: np.ndarray,
    q_lo: float = BOUNDS_DEFAULTS["q_lo"],
    q_hi: float = BOUNDS_DEFAULTS["q_hi"],
    padding: float = BOUNDS_DEFAULTS["padding"],
) -> DescriptorBounds:
    """
    Quantile range per dimension, padded on both sides.

    A dimension narrower than MIN_BOUNDS_WIDTH after padding is widened
    symmetrically to DEGENERATE_BOUNDS_WIDTH.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[1] != 2 or samples.shape[0] == 0:
        raise InvalidParams(f"descriptor samples must have shape (n, 2), got {samples.shape}")
    lo_q = np.quantile(samples, q_lo, axis=0, method="linear")
    hi_q = np.quantile(samples, q_hi, axis=0, method="linear")

    lo, hi = [], []
    for low, high in zip(lo_q, hi_q):
        span = high - low
        low, high = low - padding * span, high + padding * span
        if high - low < MIN_BOUNDS_WIDTH:
            center = (low + high) / 2.0
            low, high = center - DEGENERATE_BOUNDS_WIDTH / 2.0, center + DEGENERATE_BOUNDS_WIDTH / 2.0
        lo.append(float(low))
        hi.append(float(high))
    return DescriptorBounds(lo=(lo[0], lo[1]), hi=(hi[0], hi[1]))


def estimate_bounds(
    characterization: Characterization,
    context: EvaluationContext,
    cfg: BoundsConfig = BoundsConfig(),
    seed: int = 0,
    length: int = DEFAULT_MOTIF_LENGTH,
    alpha: float = DEFAULT_DIRICHLET_ALPHA,
) -> DescriptorBounds:
    """
    Descriptor range of ``characterization`` over random Dirichlet PWMs.

    Descriptor failures propagate.
    """
    rng = np.random.default_rng(seed)
    samples = np.array(
        [describe(random_pwm(length, alpha, rng), characterization, context).values for _ in range(cfg.n_samples)]
    )
    bounds = bounds_from_samples(samples, cfg.q_lo, cfg.q_hi, cfg.padding)
    logger.info(
        f"{characterization.value} bounds from {cfg.n_samples} samples: "
        f"{characterization.axis_labels[0]} [{bounds.lo[0]:.4g}, {bounds.hi[0]:.4g}], "
        f"{characterization.axis_labels[1]} [{bounds.lo[1]:.4g}, {bounds.hi[1]:.4g}]"
    )
    return bounds


def run(
    context: EvaluationContext,
    characterization: Characterization,
    config: RunConfig = RunConfig(),
    seed: int = 0,
    bounds: Optional[DescriptorBounds] = None,
    on_generation: Optional[Callable[[GenerationRecord], None]] = None,
) -> RunResult:
    """
    Run MAP-Elites for ``config.generations`` generations.

    Each generation every emitter proposes a batch against the same archive
    state; candidates are then evaluated and inserted in batch order.
    Candidates whose evaluation raises a data error are discarded and
    counted as failed evaluations.

    Args:
        context: Foreground, background and scoring settings of the subset.
        characterization: Descriptor pairing for the archive axes.
        config: Run settings.
        seed: Master seed of the run.
        bounds: Precomputed archive bounds; estimated from ``seed`` when None.
        on_generation: Called with every new metrics record.
    """
    if bounds is None:
        bounds = estimate_bounds(
            characterization,
            context,
            config.bounds,
            seed=derive_seed(seed, _BOUNDS_STREAM),
            length=config.motif_length,
            alpha=config.emitter.alpha,
        )
    archive = Archive(
        bounds, config.dims, characterization, motif_length=config.motif_length, seed=derive_seed(seed, _ARCHIVE_STREAM)
    )
    metrics = RunMetrics(qd_offset=config.qd_offset)
    emitters = spawn_emitters(archive, config.emitter, derive_seed(seed, _EMITTER_STREAM), context.foreground)

    for generation in range(1, config.generations + 1):
        candidates = [pwm for emitter in emitters for pwm in emitter.ask()]
        counts = {"new_cells": 0, "improved": 0, "failed_evaluations": 0, "evaluations": len(candidates)}

        for pwm in candidates:
            try:
                result = evaluate(pwm, characterization, context, config.fitness)
            except DataError as e:
                counts["failed_evaluations"] += 1
                logger.debug(f"generation {generation}: candidate discarded ({e})")
                continue
            status = archive.try_insert(
                Elite(pwm=pwm, fitness=result.fitness, descriptor=result.descriptor, generation_added=generation)
            )
            if status is InsertStatus.NEW_CELL:
                counts["new_cells"] += 1
            elif status is InsertStatus.IMPROVED:
                counts["improved"] += 1

        record = GenerationRecord.from_archive(generation, archive, config.qd_offset, **counts)
        metrics.append(record)
        if on_generation is not None:
            on_generation(record)
        if config.log_every > 0 and (generation % config.log_every == 0 or generation == config.generations):
            logger.info(f"{characterization.value} {record}")

    return RunResult(archive=archive, metrics=metrics, seed=seed, characterization=characterization)
