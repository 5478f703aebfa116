"""
Experiment Presets for motif-elites

Defines the named starting points for experiment configuration files:
- full: the whole protocol (5 subsets, 1000 generations, 400 bounds samples)
- smoke: a quick desk check of the same pipeline
"""

import copy
from typing import Any, Dict, List

from ...core.constants import (
    BOUNDS_DEFAULTS,
    DEFAULT_ARCHIVE_DIMS,
    DEFAULT_DIRICHLET_ALPHA,
    DEFAULT_GENERATIONS,
    DEFAULT_MOTIF_LENGTH,
    DEFAULT_SUBSETS,
    DEFAULT_SUPPORT_PERCENTILE,
    EMITTER_DEFAULTS,
    FITNESS_DEFAULTS,
    TAIL_DEFAULTS,
)

# Full configuration with every default spelled out
DEFAULT_CONFIG: Dict[str, Any] = {
    "experiment": {
        "foreground": "foreground.fa",
        "background": "",
        "n_subsets": DEFAULT_SUBSETS,
        "motif_length": DEFAULT_MOTIF_LENGTH,
        "characterizations": ["sp", "co", "rb"],
        "generations": DEFAULT_GENERATIONS,
        "seed": 0,
        "output_dir": "results",
        "selected_subsets": [],
        "workers": 1,
        "log_every": 100,
    },
    "archive": {
        "dims": list(DEFAULT_ARCHIVE_DIMS),
        "qd_offset": 0.0,
    },
    "emitter": {
        "sigma_iso": EMITTER_DEFAULTS["sigma_iso"],
        "sigma_line": EMITTER_DEFAULTS["sigma_line"],
        "batch": int(EMITTER_DEFAULTS["batch"]),
        "count": int(EMITTER_DEFAULTS["count"]),
        "alpha": DEFAULT_DIRICHLET_ALPHA,
        "site_share": EMITTER_DEFAULTS["site_share"],
        "site_peak": EMITTER_DEFAULTS["site_peak"],
    },
    "fitness": dict(FITNESS_DEFAULTS),
    "support": {"percentile": DEFAULT_SUPPORT_PERCENTILE},
    "tail": dict(TAIL_DEFAULTS),
    "bounds": {
        "n_samples": int(BOUNDS_DEFAULTS["n_samples"]),
        "q_lo": BOUNDS_DEFAULTS["q_lo"],
        "q_hi": BOUNDS_DEFAULTS["q_hi"],
        "padding": BOUNDS_DEFAULTS["padding"],
    },
}

# Preset definitions: overrides applied on top of DEFAULT_CONFIG
EXPERIMENT_PRESETS: Dict[str, Dict[str, Any]] = {
    "full": {
        "description": "Full protocol with the published settings",
        "long_description": (
            "Five disjoint subsets, all three characterizations, 1000 generations "
            "of 32 candidates and a 20x20 archive per run."
        ),
        "overrides": {},
    },
    "smoke": {
        "description": "Quick end-to-end check",
        "long_description": (
            "Same pipeline with 20 generations, 16 candidates per batch and 50 "
            "bounds samples; finishes in seconds on the synthetic fixture."
        ),
        "overrides": {
            "experiment": {"generations": 20, "log_every": 5},
            "emitter": {"batch": 16},
            "bounds": {"n_samples": 50},
        },
    },
}


def merge_config(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge ``overrides`` into a copy of ``base``."""
    merged = copy.deepcopy(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def get_preset_config(preset: str) -> Dict[str, Any]:
    """
    Get the full configuration for a preset.

    Args:
        preset: Preset name (full, smoke)

    Returns:
        Complete configuration dictionary

    Raises:
        ValueError: If the preset is unknown
    """
    if preset not in EXPERIMENT_PRESETS:
        raise ValueError(f"Unknown preset: {preset}. Must be one of: {list(EXPERIMENT_PRESETS)}")
    return merge_config(DEFAULT_CONFIG, EXPERIMENT_PRESETS[preset]["overrides"])


def list_presets() -> List[str]:
    return list(EXPERIMENT_PRESETS)
