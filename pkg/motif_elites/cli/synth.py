# motif_elites/cli/synth.py - Planted-motif synthetic datasets
# Foreground sequences are uniform random DNA with the consensus planted in a
# fixed share of them; the background is their dinucleotide shuffle.

# --- Standard Library Imports ---
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Tuple

# --- Third-Party Imports ---
import numpy as np

# --- Local Imports ---
from ..core.constants import BASE_CODES
from ..core.engine import derive_seed
from ..core.errors import InvalidParams
from ..core.logging_config import get_logger
from ..core.meme import write_meme
from ..core.pwm import PWM
from ..core.sequences import (
    Sequence,
    SequenceRole,
    SequenceSet,
    encode_bases,
    reverse_complement_sequence,
    shuffle_background,
    write_fasta,
)
from .config.config_manager import ExperimentConfigManager
from .config.presets import get_preset_config

logger = get_logger("cli.synth")

# 19 bp CTCF-like core
DEFAULT_CONSENSUS = "TGGCCACCAGGGGGCGCTA"

SYNTH_FILES: Dict[str, str] = {
    "foreground": "foreground.fa",
    "background": "background.fa",
    "truth": "truth.meme",
    "config": "experiment.toml",
}

# Spawn keys under the synth seed
_SEQUENCE_STREAM = 0
_SHUFFLE_STREAM = 1


@dataclass(frozen=True)
class SynthParams:
    """
    Parameters of a planted-motif dataset.

    Attributes:
        n (int): Foreground sequence count.
        length (int): Length of every sequence.
        consensus (str): Planted motif, ACGT only.
        plant_rate (float): Share of sequences carrying the consensus.
        truth_peak (float): Consensus-base probability of the ground-truth PWM.
        seed (int): Master seed.
    """

    n: int = 200
    length: int = 100
    consensus: str = DEFAULT_CONSENSUS
    plant_rate: float = 0.8
    truth_peak: float = 0.85
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1 or self.length < 1:
            raise InvalidParams("n and length must be >= 1")
        if not self.consensus or any(base not in BASE_CODES for base in self.consensus.upper()):
            raise InvalidParams(f"consensus must be non-empty ACGT text, got {self.consensus!r}")
        if len(self.consensus) > self.length:
            raise InvalidParams(
                f"consensus of length {len(self.consensus)} does not fit in sequences of length {self.length}"
            )
        if not 0.0 <= self.plant_rate <= 1.0:
            raise InvalidParams(f"plant_rate must lie in [0, 1], got {self.plant_rate}")

    @property
    def n_planted(self) -> int:
        return int(round(self.plant_rate * self.n))


@dataclass(frozen=True)
class SyntheticData:
    foreground: SequenceSet
    background: SequenceSet
    truth: PWM
    planted_ids: Tuple[str, ...]


def generate_synthetic(params: SynthParams) -> SyntheticData:
    """Build foreground, shuffled background and ground-truth PWM."""
    rng = np.random.default_rng(derive_seed(params.seed, _SEQUENCE_STREAM))
    motif = encode_bases(params.consensus.upper())
    motif_rc = reverse_complement_sequence(Sequence("motif", motif)).bases
    planted = set(rng.choice(params.n, size=params.n_planted, replace=False).tolist())

    sequences = []
    planted_ids = []
    for i in range(params.n):
        bases = rng.integers(0, 4, size=params.length).astype(np.uint8)
        seq_id = f"seq{i:04d}"
        if i in planted:
            site = motif if rng.random() < 0.5 else motif_rc
            offset = int(rng.integers(0, params.length - site.size + 1))
            bases[offset : offset + site.size] = site
            planted_ids.append(seq_id)
        sequences.append(Sequence(seq_id, bases))

    foreground = SequenceSet(SequenceRole.FOREGROUND, tuple(sequences))
    background = shuffle_background(foreground, derive_seed(params.seed, _SHUFFLE_STREAM))
    truth = PWM.from_consensus(params.consensus, params.truth_peak)
    logger.info(
        f"Synthesized {params.n} x {params.length} bp, consensus planted in {len(planted_ids)} sequences"
    )
    return SyntheticData(foreground, background, truth, tuple(planted_ids))


def write_synthetic(data: SyntheticData, out_dir: Path, preset: str = "full") -> Dict[str, Path]:
    """Write the dataset plus a ready-to-run experiment config into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {key: out_dir / name for key, name in SYNTH_FILES.items()}

    paths["foreground"].write_text(write_fasta(data.foreground), encoding="utf-8")
    paths["background"].write_text(write_fasta(data.background), encoding="utf-8")
    paths["truth"].write_text(write_meme([data.truth], ["planted_truth"]), encoding="utf-8")

    config = get_preset_config(preset)
    config["experiment"]["foreground"] = SYNTH_FILES["foreground"]
    config["experiment"]["background"] = SYNTH_FILES["background"]
    ExperimentConfigManager(paths["config"]).save_config(config, header=f"synthetic planted-motif dataset, preset: {preset}")
    return paths
