"""
Tests for experiment configuration loading, validation and presets.
"""

import tempfile
import unittest
from pathlib import Path

from motif_elites.cli.config import (
    EXPERIMENT_PRESETS,
    ExperimentConfigManager,
    build_experiment_config,
    get_preset_config,
    list_presets,
    validate_config,
)
from motif_elites.cli.config.presets import merge_config
from motif_elites.core.descriptors import Characterization
from motif_elites.core.emitters import EmitterConfig
from motif_elites.core.errors import ConfigError


class TestBuildExperimentConfig(unittest.TestCase):
    """Test turning raw dictionaries into ExperimentConfig."""

    def test_defaults(self):
        """Test a minimal config takes the published defaults."""
        config = build_experiment_config({"experiment": {"foreground": "fg.fa"}}, "/data")
        self.assertEqual(config.foreground, Path("/data/fg.fa"))
        self.assertIsNone(config.background)
        self.assertEqual(config.n_subsets, 5)
        self.assertEqual(config.motif_length, 19)
        self.assertEqual(config.generations, 1000)
        self.assertEqual(config.dims, (20, 20))
        self.assertEqual(config.characterizations, tuple(Characterization))
        self.assertEqual(config.emitter, EmitterConfig())
        self.assertEqual((config.fitness.top_fraction, config.fitness.trim_fraction), (0.2, 0.1))
        self.assertEqual(config.support_percentile, 95.0)
        self.assertEqual(config.bounds.n_samples, 400)
        self.assertEqual(config.subset_indices, (0, 1, 2, 3, 4))

    def test_absolute_paths_kept(self):
        """Test absolute paths are not rebased."""
        config = build_experiment_config(
            {"experiment": {"foreground": "/abs/fg.fa", "background": "bg.fa", "output_dir": "/out"}}, "/data"
        )
        self.assertEqual(config.foreground, Path("/abs/fg.fa"))
        self.assertEqual(config.background, Path("/data/bg.fa"))
        self.assertEqual(config.output_dir, Path("/out"))

    def test_run_config(self):
        """Test the engine settings carry over."""
        config = build_experiment_config(
            {"experiment": {"foreground": "fg.fa", "generations": 7}, "archive": {"qd_offset": -1.0}}
        )
        run_config = config.run_config()
        self.assertEqual(run_config.generations, 7)
        self.assertEqual(run_config.qd_offset, -1.0)

    def test_schema_error_names_field(self):
        """Test an out-of-range value reports its dotted path."""
        with self.assertRaises(ConfigError) as ctx:
            build_experiment_config({"experiment": {"foreground": "fg.fa", "n_subsets": 0}})
        self.assertEqual(ctx.exception.field, "experiment.n_subsets")

    def test_window_seeding_settings(self):
        """Test site_share and site_peak reach the emitter and are range-checked."""
        config = build_experiment_config(
            {"experiment": {"foreground": "fg.fa"}, "emitter": {"site_share": 0.5, "site_peak": 0.8}}
        )
        self.assertEqual((config.emitter.site_share, config.emitter.site_peak), (0.5, 0.8))
        self.assertEqual(config.restricted(0, Characterization.CO)["emitter"]["site_share"], 0.5)
        for emitter in ({"site_share": 1.0}, {"site_peak": 0.25}):
            with self.assertRaises(ConfigError) as ctx:
                build_experiment_config({"experiment": {"foreground": "fg.fa"}, "emitter": emitter})
            self.assertEqual(ctx.exception.field, f"emitter.{next(iter(emitter))}")

    def test_missing_experiment(self):
        """Test the experiment table is required."""
        with self.assertRaises(ConfigError):
            validate_config({"archive": {}})

    def test_unknown_keys(self):
        """Test misspelled keys are rejected."""
        with self.assertRaises(ConfigError):
            validate_config({"experiment": {"foreground": "fg.fa", "generation": 5}})
        with self.assertRaises(ConfigError):
            validate_config({"experiment": {"foreground": "fg.fa"}, "plugins": {}})

    def test_unknown_characterization(self):
        """Test characterization names are checked."""
        with self.assertRaises(ConfigError):
            validate_config({"experiment": {"foreground": "fg.fa", "characterizations": ["xy"]}})

    def test_selected_subset_out_of_range(self):
        """Test selected subsets must exist."""
        with self.assertRaises(ConfigError) as ctx:
            build_experiment_config({"experiment": {"foreground": "fg.fa", "n_subsets": 2, "selected_subsets": [2]}})
        self.assertEqual(ctx.exception.field, "experiment.selected_subsets")

    def test_semantic_error_becomes_config_error(self):
        """Test a value the schema allows but the engine rejects."""
        with self.assertRaises(ConfigError) as ctx:
            build_experiment_config({"experiment": {"foreground": "fg.fa"}, "fitness": {"trim_fraction": 1.0}})
        self.assertEqual(ctx.exception.field, "fitness")

    def test_restricted(self):
        """Test the single-run manifest selects one subset and characterization."""
        config = build_experiment_config({"experiment": {"foreground": "fg.fa"}})
        data = config.restricted(3, Characterization.RB)
        self.assertEqual(data["experiment"]["selected_subsets"], [3])
        self.assertEqual(data["experiment"]["characterizations"], ["rb"])
        self.assertEqual(data["experiment"]["workers"], 1)


class TestExperimentConfigManager(unittest.TestCase):
    """Test reading and writing TOML experiment files."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.path = self.dir / "experiment.toml"

    def tearDown(self):
        self.tmp.cleanup()

    def test_missing_file(self):
        """Test a missing config raises FileNotFoundError."""
        with self.assertRaises(FileNotFoundError):
            ExperimentConfigManager(self.dir / "nope.toml").load_config()

    def test_invalid_toml(self):
        """Test a syntax error raises ConfigError."""
        self.path.write_text("[experiment\nforeground = ", encoding="utf-8")
        with self.assertRaises(ConfigError):
            ExperimentConfigManager(self.path).load_config()

    def test_save_and_load_round_trip(self):
        """Test a saved config loads back equal."""
        original = build_experiment_config(
            {"experiment": {"foreground": "fg.fa", "background": "bg.fa", "seed": 9}}, self.dir
        )
        ExperimentConfigManager(self.path).save_config(original.to_dict())
        loaded = ExperimentConfigManager(self.path).experiment_config()
        self.assertEqual(loaded, original)

    def test_relative_paths_resolve_against_config_dir(self):
        """Test relative paths are read relative to the config file."""
        self.path.write_text('[experiment]\nforeground = "data/fg.fa"\n', encoding="utf-8")
        config = ExperimentConfigManager(self.path).experiment_config()
        self.assertEqual(config.foreground, (self.dir / "data" / "fg.fa").resolve())

    def test_overrides(self):
        """Test command-line values win over the file."""
        self.path.write_text(
            '[experiment]\nforeground = "fg.fa"\nn_subsets = 5\nselected_subsets = [4]\n', encoding="utf-8"
        )
        manager = ExperimentConfigManager(self.path)
        manager.load_config()
        manager.apply_overrides(seed=3, bc="all", generations=10, subsets=2, workers=2)
        config = manager.experiment_config()
        self.assertEqual(config.seed, 3)
        self.assertEqual(config.characterizations, (Characterization.SP, Characterization.CO, Characterization.RB))
        self.assertEqual(config.generations, 10)
        self.assertEqual(config.n_subsets, 2)
        self.assertEqual(config.selected_subsets, ())
        self.assertEqual(config.workers, 2)

    def test_single_characterization_override(self):
        """Test --bc co keeps only ME.CO."""
        self.path.write_text('[experiment]\nforeground = "fg.fa"\n', encoding="utf-8")
        manager = ExperimentConfigManager(self.path)
        manager.load_config()
        manager.apply_overrides(bc="co")
        self.assertEqual(manager.experiment_config().characterizations, (Characterization.CO,))

    def test_create_from_preset(self):
        """Test the smoke preset writes a short run."""
        path = ExperimentConfigManager(self.path).create_from_preset("smoke", foreground="fg.fa")
        self.assertTrue(path.read_text(encoding="utf-8").startswith("# motif-elites experiment configuration"))
        config = ExperimentConfigManager(path).experiment_config()
        self.assertEqual(config.generations, 20)
        self.assertEqual(config.emitter.batch, 16)
        self.assertEqual(config.foreground, (self.dir / "fg.fa").resolve())


class TestPresets(unittest.TestCase):
    """Test the preset table."""

    def test_known_presets(self):
        """Test both presets are listed and described."""
        self.assertEqual(list_presets(), ["full", "smoke"])
        for preset in EXPERIMENT_PRESETS.values():
            self.assertIn("description", preset)

    def test_full_preset_is_the_default(self):
        """Test the full preset has the published settings."""
        config = get_preset_config("full")
        self.assertEqual(config["experiment"]["generations"], 1000)
        self.assertEqual(config["emitter"]["batch"], 32)
        self.assertEqual(config["bounds"]["n_samples"], 400)

    def test_unknown_preset(self):
        """Test an unknown preset name."""
        with self.assertRaises(ValueError):
            get_preset_config("huge")

    def test_merge_does_not_mutate(self):
        """Test merging leaves the base untouched."""
        base = {"a": {"b": 1, "c": 2}}
        merged = merge_config(base, {"a": {"b": 5}})
        self.assertEqual(merged, {"a": {"b": 5, "c": 2}})
        self.assertEqual(base, {"a": {"b": 1, "c": 2}})


if __name__ == "__main__":
    unittest.main()
