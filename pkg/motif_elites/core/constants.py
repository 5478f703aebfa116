"""Motif-elites constants and defaults

This module centralizes the numeric floors, default experiment settings and
file names used throughout the motif discovery engine.
"""

from typing import Dict, Final, Tuple

# Nucleotide alphabet; index order is the PWM column order
ALPHABET: Final[str] = "ACGT"
N_CODE: Final[int] = 4
BASE_CODES: Final[Dict[str, int]] = {"A": 0, "C": 1, "G": 2, "T": 3}

# Probability floors
PWM_FLOOR: Final[float] = 1e-4
BACKGROUND_PSEUDOCOUNT: Final[float] = 1.0
ROW_SUM_TOLERANCE: Final[float] = 1e-6

# Motif representation
DEFAULT_MOTIF_LENGTH: Final[int] = 19
DEFAULT_DIRICHLET_ALPHA: Final[float] = 1.0

# Fitness (top-k mean with upper trim)
FITNESS_DEFAULTS: Final[Dict[str, float]] = {
    "top_fraction": 0.2,
    "trim_fraction": 0.1,
}

# Support calibration
DEFAULT_SUPPORT_PERCENTILE: Final[float] = 95.0
MIN_CALIBRATION_SEQUENCES: Final[int] = 20

# Tail behavior quantiles
TAIL_DEFAULTS: Final[Dict[str, float]] = {
    "upper_quantile": 0.95,
    "center_quantile": 0.5,
}

# Archive and emitter
DEFAULT_ARCHIVE_DIMS: Final[Tuple[int, int]] = (20, 20)
EMITTER_DEFAULTS: Final[Dict[str, float]] = {
    "sigma_iso": 0.12,
    "sigma_line": 0.25,
    "batch": 32,
    "count": 1,
    "site_share": 0.25,
    "site_peak": 0.9,
}

# Foreground draws per window candidate before falling back to a random PWM
SITE_ATTEMPTS: Final[int] = 16

# Descriptor range estimation
BOUNDS_DEFAULTS: Final[Dict[str, float]] = {
    "n_samples": 400,
    "q_lo": 0.01,
    "q_hi": 0.99,
    "padding": 0.1,
}
MIN_BOUNDS_WIDTH: Final[float] = 1e-9
DEGENERATE_BOUNDS_WIDTH: Final[float] = 1e-3

# Experiment protocol
DEFAULT_SUBSETS: Final[int] = 5
DEFAULT_GENERATIONS: Final[int] = 1000
FASTA_LINE_WIDTH: Final[int] = 60

# MEME row sums accepted before renormalisation
MEME_ROW_SUM_RANGE: Final[Tuple[float, float]] = (0.99, 1.01)

# Environment variable names
ENV_VARS: Final[Dict[str, str]] = {
    "LOG_LEVEL": "MOTIF_ELITES_LOG_LEVEL",
    "LOG_DIR": "MOTIF_ELITES_LOG_DIR",
    "DISABLE_LOGGING": "MOTIF_ELITES_DISABLE_LOGGING",
}

# Files written into every run directory
RUN_FILES: Final[Dict[str, str]] = {
    "archive_json": "archive.json",
    "archive_csv": "archive.csv",
    "heatmap": "heatmap.csv",
    "metrics": "metrics.csv",
    "logo": "logo.csv",
    "elites_meme": "elites.meme",
    "summary": "summary.json",
    "resources": "resources.json",
    "manifest": "manifest.toml",
}

# CLI exit codes
EXIT_CODES: Final[Dict[str, int]] = {
    "OK": 0,
    "USAGE": 1,
    "DATA": 2,
}
