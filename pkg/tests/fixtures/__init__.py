"""
Small deterministic datasets shared by the test suite.
"""

import numpy as np

from motif_elites.core.descriptors import EvaluationContext
from motif_elites.core.sequences import (
    BackgroundDistribution,
    Sequence,
    SequenceRole,
    SequenceSet,
    shuffle_background,
)


def random_sequence(record_id, length, rng):
    return Sequence(record_id, rng.integers(0, 4, size=length).astype(np.uint8))


def random_set(n=20, length=40, seed=0, role=SequenceRole.FOREGROUND, prefix="s"):
    rng = np.random.default_rng(seed)
    return SequenceSet(role, tuple(random_sequence(f"{prefix}{i}", length, rng) for i in range(n)))


def set_from_strings(*texts, role=SequenceRole.FOREGROUND):
    return SequenceSet(role, tuple(Sequence.from_string(f"s{i}", text) for i, text in enumerate(texts)))


def write_dataset(directory, n=40, length=60, seed=0, preset="smoke"):
    """Planted-motif FASTA files plus an experiment config under ``directory``."""
    from motif_elites.cli.synth import SynthParams, generate_synthetic, write_synthetic

    data = generate_synthetic(SynthParams(n=n, length=length, seed=seed))
    return write_synthetic(data, directory, preset=preset)


def small_context(n=24, length=40, seed=0):
    """Uniform-background context over random foreground with a shuffled background."""
    foreground = random_set(n, length, seed)
    return EvaluationContext(
        foreground=foreground,
        background=shuffle_background(foreground, seed + 1),
        bg=BackgroundDistribution.uniform(),
    )


def planted_context(n=40, length=30, consensus="GATTACAGGC", plant_rate=1.0, seed=0):
    """Context over a synthetic foreground carrying ``consensus`` on either strand."""
    from motif_elites.cli.synth import SynthParams, generate_synthetic

    data = generate_synthetic(SynthParams(n=n, length=length, consensus=consensus, plant_rate=plant_rate, seed=seed))
    context = EvaluationContext(foreground=data.foreground, background=data.background, bg=BackgroundDistribution.uniform())
    return context, data.truth


COMPLEMENT = str.maketrans("ACGTacgt", "TGCAtgca")


def motif_distance(found, planted, max_shift=2):
    """
    Mismatches between two consensus strings, allowing either strand and a
    small offset; each base of offset counts as one mismatch.
    """
    found = found.upper()
    best = len(found) + max_shift
    for target in (planted.upper(), planted.upper().translate(COMPLEMENT)[::-1]):
        for shift in range(-max_shift, max_shift + 1):
            pairs = [(found[i], target[i + shift]) for i in range(len(found)) if 0 <= i + shift < len(target)]
            best = min(best, abs(shift) + sum(a != b for a, b in pairs))
    return best
