"""
Experiment configuration for motif-elites.

TOML files validated with jsonschema, plus named presets.
"""

from .config_manager import (
    CONFIG_SCHEMA,
    ExperimentConfig,
    ExperimentConfigManager,
    build_experiment_config,
    validate_config,
)
from .presets import DEFAULT_CONFIG, EXPERIMENT_PRESETS, get_preset_config, list_presets

__all__ = [
    "CONFIG_SCHEMA",
    "DEFAULT_CONFIG",
    "EXPERIMENT_PRESETS",
    "ExperimentConfig",
    "ExperimentConfigManager",
    "build_experiment_config",
    "get_preset_config",
    "list_presets",
    "validate_config",
]
