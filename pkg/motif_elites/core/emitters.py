# motif_elites/core/emitters.py - Iso+Line variation over flattened PWM genomes
# Candidates are always repaired back onto the floored simplex before scoring.

# --- Standard Library Imports ---
from dataclasses import dataclass
from typing import List, Optional

# --- Third-Party Imports ---
import numpy as np
from ribs.emitters import IsoLineEmitter as RibsIsoLineEmitter

# --- Local Imports ---
from .archive import Archive
from .constants import DEFAULT_DIRICHLET_ALPHA, EMITTER_DEFAULTS, N_CODE, SITE_ATTEMPTS
from .errors import InvalidParams
from .pwm import PWM, random_pwm, repair_pwm
from .sequences import SequenceSet, decode_bases


@dataclass(frozen=True)
class EmitterConfig:
    """
    Iso+Line emitter settings.

    Attributes:
        sigma_iso (float): Standard deviation of the isotropic Gaussian step.
        sigma_line (float): Standard deviation of the step along x_j - x_i.
        batch (int): Candidates per emitter per generation.
        count (int): Number of independent emitters.
        alpha (float): Dirichlet concentration for random draws on an empty archive.
        site_share (float): Share of each later batch seeded from foreground windows.
        site_peak (float): Probability a window seed gives each of its own bases.
    """

    sigma_iso: float = EMITTER_DEFAULTS["sigma_iso"]
    sigma_line: float = EMITTER_DEFAULTS["sigma_line"]
    batch: int = int(EMITTER_DEFAULTS["batch"])
    count: int = int(EMITTER_DEFAULTS["count"])
    alpha: float = DEFAULT_DIRICHLET_ALPHA
    site_share: float = EMITTER_DEFAULTS["site_share"]
    site_peak: float = EMITTER_DEFAULTS["site_peak"]

    def __post_init__(self) -> None:
        # Zero sigmas are accepted; they reduce the emitter to elite resampling.
        if self.sigma_iso < 0 or self.sigma_line < 0:
            raise InvalidParams("emitter sigmas must be >= 0")
        if self.batch < 1 or self.count < 1:
            raise InvalidParams("emitter batch and count must be >= 1")
        if self.alpha <= 0:
            raise InvalidParams(f"Dirichlet concentration must be > 0, got {self.alpha}")
        if not 0.0 <= self.site_share < 1.0:
            raise InvalidParams(f"site share must lie in [0, 1), got {self.site_share}")
        if not 0.25 < self.site_peak <= 1.0:
            raise InvalidParams(f"site peak must lie in (0.25, 1], got {self.site_peak}")

    @property
    def site_count(self) -> int:
        """Window seeds per batch; at least one Iso+Line child always remains."""
        return min(int(self.site_share * self.batch), self.batch - 1)


class IsoLineEmitter:
    """
    Perturbs archive elites with an isotropic step plus a step along the line
    towards a second elite:

        x' = x_i + sigma_iso * zeta + sigma_line * eta * (x_j - x_i)

    with zeta ~ N(0, I) over the L*4 genome and a scalar eta ~ N(0, 1). Parent
    sampling and the step itself come from pyribs; children are repaired here.

    While the archive is empty the whole batch is Dirichlet draws. Afterwards
    ``cfg.site_count`` slots per batch hold motifs built from random
    foreground windows, which lets the search start next to real sites.
    """

    def __init__(
        self,
        archive: Archive,
        cfg: EmitterConfig,
        seed: Optional[int] = None,
        foreground: Optional[SequenceSet] = None,
    ) -> None:
        self.archive = archive
        self.cfg = cfg
        self.length = archive.motif_length
        own, delegate = np.random.SeedSequence(seed).spawn(2)
        self.rng = np.random.default_rng(own)
        self.n_sites = cfg.site_count if foreground is not None and len(foreground) else 0
        self._sites = foreground.encoded if foreground is not None and self.n_sites else None
        self._iso_line = RibsIsoLineEmitter(
            archive.grid,
            iso_sigma=cfg.sigma_iso,
            line_sigma=cfg.sigma_line,
            x0=PWM.uniform(self.length).flatten(),
            batch_size=cfg.batch - self.n_sites,
            seed=int(delegate.generate_state(1)[0]),
        )

    def ask(self) -> List[PWM]:
        """One batch of candidates against the current archive."""
        if self.archive.is_empty:
            return [random_pwm(self.length, self.cfg.alpha, self.rng) for _ in range(self.cfg.batch)]

        shape = (self.length, 4)
        candidates = [repair_pwm(child.reshape(shape)) for child in self._iso_line.ask()]
        candidates.extend(self._site_pwm() for _ in range(self.n_sites))
        return candidates

    def _site_pwm(self) -> PWM:
        """Motif peaked on a random N-free foreground window; a random draw if none is found."""
        assert self._sites is not None
        codes, lengths = self._sites.codes, self._sites.lengths
        for _ in range(SITE_ATTEMPTS):
            row = int(self.rng.integers(len(lengths)))
            span = int(lengths[row]) - self.length + 1
            if span < 1:
                continue
            start = int(self.rng.integers(span))
            window = codes[row, start : start + self.length]
            if np.all(window < N_CODE):
                return PWM.from_consensus(decode_bases(window), self.cfg.site_peak)
        return random_pwm(self.length, self.cfg.alpha, self.rng)


def spawn_emitters(
    archive: Archive,
    cfg: EmitterConfig,
    seed: int,
    foreground: Optional[SequenceSet] = None,
) -> List[IsoLineEmitter]:
    """``cfg.count`` emitters with independent RNG streams derived from ``seed``."""
    children = np.random.SeedSequence(seed).spawn(cfg.count)
    return [IsoLineEmitter(archive, cfg, int(child.generate_state(1)[0]), foreground) for child in children]


def emit_batch(
    archive: Archive,
    cfg: EmitterConfig,
    length: int,
    seed_state: Optional[int],
    foreground: Optional[SequenceSet] = None,
) -> List[PWM]:
    """One batch from a single Iso+Line emitter driven by ``seed_state``."""
    if length != archive.motif_length:
        raise InvalidParams(f"archive holds length-{archive.motif_length} motifs, asked for {length}")
    return IsoLineEmitter(archive, cfg, seed_state, foreground).ask()
