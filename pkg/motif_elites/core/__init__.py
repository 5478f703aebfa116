"""Core library: sequences, motifs, descriptors, the MAP-Elites engine and reports."""

from .archive import Archive, DescriptorBounds, Elite, InsertStatus
from .descriptors import (
    BehaviorDescriptor,
    Characterization,
    Evaluation,
    EvaluationContext,
    SupportRule,
    TailConfig,
    describe,
    entropy,
    evaluate,
    gc_content,
    information_content,
    support,
    tail_behavior,
)
from .emitters import EmitterConfig, IsoLineEmitter
from .engine import BoundsConfig, RunConfig, RunResult, derive_seed, estimate_bounds, run
from .errors import ConfigError, DataError, MotifElitesError
from .meme import parse_meme, read_meme, write_meme
from .metrics import GenerationRecord, RunMetrics
from .pwm import PWM, log_odds, random_pwm, repair_pwm, reverse_complement
from .report import ArchiveSummary, comparison_table, consensus, export_archive, load_archive
from .scoring import FitnessConfig, ScoreProfile, best_hit, fitness, motif_fitness, score_profile
from .sequences import (
    BackgroundDistribution,
    Sequence,
    SequenceRole,
    SequenceSet,
    dinucleotide_shuffle,
    empirical_background,
    parse_fasta,
    partition_subsets,
    read_fasta,
)

__all__ = [
    "Archive",
    "ArchiveSummary",
    "BackgroundDistribution",
    "BehaviorDescriptor",
    "BoundsConfig",
    "Characterization",
    "ConfigError",
    "DataError",
    "DescriptorBounds",
    "Elite",
    "EmitterConfig",
    "Evaluation",
    "EvaluationContext",
    "FitnessConfig",
    "GenerationRecord",
    "InsertStatus",
    "IsoLineEmitter",
    "MotifElitesError",
    "PWM",
    "RunConfig",
    "RunMetrics",
    "RunResult",
    "ScoreProfile",
    "Sequence",
    "SequenceRole",
    "SequenceSet",
    "SupportRule",
    "TailConfig",
    "best_hit",
    "comparison_table",
    "consensus",
    "derive_seed",
    "describe",
    "dinucleotide_shuffle",
    "empirical_background",
    "entropy",
    "estimate_bounds",
    "evaluate",
    "export_archive",
    "fitness",
    "gc_content",
    "information_content",
    "load_archive",
    "log_odds",
    "motif_fitness",
    "parse_fasta",
    "parse_meme",
    "partition_subsets",
    "random_pwm",
    "read_fasta",
    "read_meme",
    "repair_pwm",
    "reverse_complement",
    "run",
    "score_profile",
    "support",
    "tail_behavior",
    "write_meme",
]
