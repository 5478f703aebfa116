"""
Experiment Configuration Manager

Loads, validates and saves motif-elites TOML experiment configurations, and
turns them into the frozen ExperimentConfig used by the commands.
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

try:
    import toml
except ImportError:
    print("Error: toml package is required for motif-elites configuration")
    print("Install with: pip install toml")
    sys.exit(1)

import jsonschema

from ...core.descriptors import Characterization, TailConfig
from ...core.emitters import EmitterConfig
from ...core.engine import BoundsConfig, RunConfig
from ...core.errors import ConfigError, InvalidParams
from ...core.logging_config import get_logger
from ...core.scoring import FitnessConfig
from .presets import DEFAULT_CONFIG, get_preset_config, merge_config

logger = get_logger("cli.config")

_NUMBER = {"type": "number"}
_PROPORTION = {"type": "number", "minimum": 0, "maximum": 1}
_POSITIVE_INT = {"type": "integer", "minimum": 1}


def _section(properties: Dict[str, Any], required: Optional[List[str]] = None) -> Dict[str, Any]:
    schema: Dict[str, Any] = {"type": "object", "properties": properties, "additionalProperties": False}
    if required:
        schema["required"] = required
    return schema


CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["experiment"],
    "additionalProperties": False,
    "properties": {
        "experiment": _section(
            {
                "foreground": {"type": "string", "minLength": 1},
                "background": {"type": "string"},
                "n_subsets": _POSITIVE_INT,
                "motif_length": _POSITIVE_INT,
                "characterizations": {
                    "type": "array",
                    "minItems": 1,
                    "uniqueItems": True,
                    "items": {"type": "string", "enum": ["sp", "co", "rb", "ME.SP", "ME.CO", "ME.RB"]},
                },
                "generations": {"type": "integer", "minimum": 0},
                "seed": {"type": "integer", "minimum": 0},
                "output_dir": {"type": "string", "minLength": 1},
                "selected_subsets": {"type": "array", "uniqueItems": True, "items": {"type": "integer", "minimum": 0}},
                "workers": _POSITIVE_INT,
                "log_every": {"type": "integer", "minimum": 0},
            },
            required=["foreground"],
        ),
        "archive": _section(
            {
                "dims": {"type": "array", "items": _POSITIVE_INT, "minItems": 2, "maxItems": 2},
                "qd_offset": _NUMBER,
            }
        ),
        "emitter": _section(
            {
                "sigma_iso": {"type": "number", "minimum": 0},
                "sigma_line": {"type": "number", "minimum": 0},
                "batch": _POSITIVE_INT,
                "count": _POSITIVE_INT,
                "alpha": {"type": "number", "exclusiveMinimum": 0},
                "site_share": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
                "site_peak": {"type": "number", "exclusiveMinimum": 0.25, "maximum": 1},
            }
        ),
        "fitness": _section({"top_fraction": _PROPORTION, "trim_fraction": _PROPORTION}),
        "support": _section({"percentile": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 100}}),
        "tail": _section({"upper_quantile": _PROPORTION, "center_quantile": _PROPORTION}),
        "bounds": _section(
            {
                "n_samples": {"type": "integer", "minimum": 10},
                "q_lo": _PROPORTION,
                "q_hi": _PROPORTION,
                "padding": {"type": "number", "minimum": 0},
            }
        ),
        "run": {"type": "object"},
    },
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Fully resolved experiment settings.

    Paths are absolute; relative paths in the file were resolved against the
    directory holding the config file.
    """

    foreground: Path
    background: Optional[Path] = None
    n_subsets: int = 5
    motif_length: int = 19
    characterizations: Tuple[Characterization, ...] = tuple(Characterization)
    generations: int = 1000
    seed: int = 0
    output_dir: Path = Path("results")
    selected_subsets: Tuple[int, ...] = ()
    workers: int = 1
    log_every: int = 100
    dims: Tuple[int, int] = (20, 20)
    qd_offset: float = 0.0
    emitter: EmitterConfig = field(default_factory=EmitterConfig)
    fitness: FitnessConfig = field(default_factory=FitnessConfig)
    support_percentile: float = 95.0
    tail: TailConfig = field(default_factory=TailConfig)
    bounds: BoundsConfig = field(default_factory=BoundsConfig)

    @property
    def subset_indices(self) -> Tuple[int, ...]:
        """Subsets to run: the selection, or all of them."""
        return self.selected_subsets or tuple(range(self.n_subsets))

    def run_config(self) -> RunConfig:
        return RunConfig(
            generations=self.generations,
            motif_length=self.motif_length,
            dims=self.dims,
            emitter=self.emitter,
            fitness=self.fitness,
            bounds=self.bounds,
            qd_offset=self.qd_offset,
            log_every=self.log_every,
        )

    def to_dict(self) -> Dict[str, Any]:
        """TOML-ready dictionary that loads back into an equal config."""
        return {
            "experiment": {
                "foreground": str(self.foreground),
                "background": str(self.background) if self.background else "",
                "n_subsets": self.n_subsets,
                "motif_length": self.motif_length,
                "characterizations": [c.code for c in self.characterizations],
                "generations": self.generations,
                "seed": self.seed,
                "output_dir": str(self.output_dir),
                "selected_subsets": list(self.selected_subsets),
                "workers": self.workers,
                "log_every": self.log_every,
            },
            "archive": {"dims": list(self.dims), "qd_offset": self.qd_offset},
            "emitter": {
                "sigma_iso": self.emitter.sigma_iso,
                "sigma_line": self.emitter.sigma_line,
                "batch": self.emitter.batch,
                "count": self.emitter.count,
                "alpha": self.emitter.alpha,
                "site_share": self.emitter.site_share,
                "site_peak": self.emitter.site_peak,
            },
            "fitness": {
                "top_fraction": self.fitness.top_fraction,
                "trim_fraction": self.fitness.trim_fraction,
            },
            "support": {"percentile": self.support_percentile},
            "tail": {
                "upper_quantile": self.tail.upper_quantile,
                "center_quantile": self.tail.center_quantile,
            },
            "bounds": {
                "n_samples": self.bounds.n_samples,
                "q_lo": self.bounds.q_lo,
                "q_hi": self.bounds.q_hi,
                "padding": self.bounds.padding,
            },
        }

    def restricted(self, subset: int, characterization: Characterization) -> Dict[str, Any]:
        """Config dictionary that reruns exactly one subset x characterization."""
        data = self.to_dict()
        data["experiment"]["selected_subsets"] = [subset]
        data["experiment"]["characterizations"] = [characterization.code]
        data["experiment"]["workers"] = 1
        return data


def _resolve(base_dir: Path, value: str) -> Path:
    path = Path(value).expanduser()
    return path if path.is_absolute() else (base_dir / path).resolve()


def _build(section: str, factory, **kwargs):
    try:
        return factory(**kwargs)
    except InvalidParams as e:
        raise ConfigError(section, str(e)) from e


def validate_config(data: Dict[str, Any]) -> None:
    """
    Check a raw configuration dictionary against CONFIG_SCHEMA.

    Raises:
        ConfigError: Naming the first offending field.
    """
    try:
        jsonschema.validate(data, CONFIG_SCHEMA)
    except jsonschema.ValidationError as e:
        location = ".".join(str(part) for part in e.absolute_path) or "config"
        raise ConfigError(location, e.message) from e


def build_experiment_config(data: Dict[str, Any], base_dir: Union[str, Path] = ".") -> ExperimentConfig:
    """Validate ``data`` (missing keys take defaults) and resolve it into an ExperimentConfig."""
    validate_config(data)
    merged = merge_config(DEFAULT_CONFIG, data)
    base_dir = Path(base_dir)

    exp = merged["experiment"]
    background = exp["background"] or None
    n_subsets = exp["n_subsets"]
    selected = tuple(exp["selected_subsets"])
    bad = [index for index in selected if index >= n_subsets]
    if bad:
        raise ConfigError("experiment.selected_subsets", f"indices {bad} out of range for {n_subsets} subsets")

    return ExperimentConfig(
        foreground=_resolve(base_dir, exp["foreground"]),
        background=_resolve(base_dir, background) if background else None,
        n_subsets=n_subsets,
        motif_length=exp["motif_length"],
        characterizations=tuple(Characterization.from_code(code) for code in exp["characterizations"]),
        generations=exp["generations"],
        seed=exp["seed"],
        output_dir=_resolve(base_dir, exp["output_dir"]),
        selected_subsets=selected,
        workers=exp["workers"],
        log_every=exp["log_every"],
        dims=(merged["archive"]["dims"][0], merged["archive"]["dims"][1]),
        qd_offset=float(merged["archive"]["qd_offset"]),
        emitter=_build("emitter", EmitterConfig, **merged["emitter"]),
        fitness=_build("fitness", FitnessConfig, **merged["fitness"]),
        support_percentile=float(merged["support"]["percentile"]),
        tail=_build("tail", TailConfig, **merged["tail"]),
        bounds=_build("bounds", BoundsConfig, **merged["bounds"]),
    )


class ExperimentConfigManager:
    """Manages motif-elites TOML experiment files."""

    def __init__(self, config_path: Union[str, Path]):
        """
        Initialize the configuration manager.

        Args:
            config_path: Path to the experiment TOML file.
        """
        self.config_path = Path(config_path)
        self.config: Dict[str, Any] = {}

    @property
    def base_dir(self) -> Path:
        return self.config_path.resolve().parent

    def load_config(self) -> Dict[str, Any]:
        """
        Load configuration from the TOML file.

        Raises:
            FileNotFoundError: If the config file doesn't exist
            ConfigError: If the file is not valid TOML
        """
        if not self.config_path.exists():
            raise FileNotFoundError(f"Config file not found: {self.config_path}")

        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                self.config = toml.load(f)
        except toml.TomlDecodeError as e:
            logger.error(f"Invalid TOML in {self.config_path}: {e}")
            raise ConfigError("config", f"invalid TOML in {self.config_path}: {e}") from e
        logger.info(f"Loaded config from {self.config_path}")
        return self.config

    def apply_overrides(
        self,
        seed: Optional[int] = None,
        output_dir: Optional[str] = None,
        bc: Optional[str] = None,
        generations: Optional[int] = None,
        subsets: Optional[int] = None,
        workers: Optional[int] = None,
    ) -> Dict[str, Any]:
        """Command-line flags win over file values."""
        exp = self.config.setdefault("experiment", {})
        if seed is not None:
            exp["seed"] = seed
        if output_dir is not None:
            exp["output_dir"] = str(Path(output_dir).resolve())
        if bc is not None:
            exp["characterizations"] = ["sp", "co", "rb"] if bc == "all" else [bc]
        if generations is not None:
            exp["generations"] = generations
        if subsets is not None:
            exp["n_subsets"] = subsets
            exp["selected_subsets"] = []
        if workers is not None:
            exp["workers"] = workers
        return self.config

    def experiment_config(self) -> ExperimentConfig:
        if not self.config:
            self.load_config()
        return build_experiment_config(self.config, self.base_dir)

    def save_config(self, config: Optional[Dict[str, Any]] = None, header: Optional[str] = None) -> Path:
        """
        Write a configuration dictionary to ``config_path``.

        Raises:
            IOError: If unable to write config file
        """
        if config is not None:
            self.config = config
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        try:
            with open(self.config_path, "w", encoding="utf-8") as f:
                f.write("# motif-elites experiment configuration\n")
                if header:
                    for line in header.splitlines():
                        f.write(f"# {line}\n")
                f.write("\n")
                toml.dump(self.config, f)
        except (TypeError, ValueError) as e:
            logger.error(f"TOML serialization error: {e}")
            raise IOError(f"Could not serialize config to TOML: {e}")
        logger.info(f"Saved config to {self.config_path}")
        return self.config_path

    def create_from_preset(self, preset: str, foreground: Optional[str] = None, background: Optional[str] = None) -> Path:
        config = get_preset_config(preset)
        if foreground:
            config["experiment"]["foreground"] = foreground
        if background:
            config["experiment"]["background"] = background
        return self.save_config(config, header=f"preset: {preset}")
