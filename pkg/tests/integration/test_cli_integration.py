"""
End-to-end tests driving the motif-elites command on a synthetic dataset.
"""

import csv
import io
import math
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from motif_elites.cli.config import ExperimentConfigManager
from motif_elites.cli.experiment import prepare_subsets
from motif_elites.cli.motif_elites_cli import main
from motif_elites.core.constants import RUN_FILES
from motif_elites.core.meme import read_meme
from motif_elites.core.report import consensus, load_archive
from motif_elites.core.scoring import motif_fitness
from tests.fixtures import motif_distance, write_dataset


def run_cli(*argv):
    with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
        return main([str(arg) for arg in argv])


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


@pytest.mark.integration
class TestRunCommand(unittest.TestCase):
    """Test 'run', 'export' and 'eval-meme' against each other."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.config = write_dataset(self.dir / "data")["config"]

    def tearDown(self):
        self.tmp.cleanup()

    def run_smoke(self, out, generations=3):
        return run_cli(
            "run", "--config", self.config, "--out", out,
            "--generations", generations, "--bc", "co", "--subsets", 2,
        )

    def test_same_seed_same_outputs(self):
        """Test two runs with one seed write byte-identical archives and metrics."""
        self.assertEqual(self.run_smoke(self.dir / "a"), 0)
        self.assertEqual(self.run_smoke(self.dir / "b"), 0)
        for subset in ("subset-0", "subset-1"):
            for key in ("archive_json", "metrics"):
                first = self.dir / "a" / subset / "ME.CO" / RUN_FILES[key]
                second = self.dir / "b" / subset / "ME.CO" / RUN_FILES[key]
                self.assertEqual(first.read_bytes(), second.read_bytes(), f"{subset} {key}")

    def test_archived_fitness_is_reproducible(self):
        """Test each stored elite rescored on its subset gives the stored fitness."""
        out = self.dir / "results"
        self.assertEqual(self.run_smoke(out), 0)

        manager = ExperimentConfigManager(self.config)
        manager.load_config()
        manager.apply_overrides(output_dir=str(out), subsets=2)
        config = manager.experiment_config()
        subset = prepare_subsets(config)[0]

        archive = load_archive((out / "subset-0" / "ME.CO" / RUN_FILES["archive_json"]).read_text(encoding="utf-8"))
        self.assertFalse(archive.is_empty)
        for _, elite in archive.items():
            value = motif_fitness(elite.pwm, subset.foreground, subset.bg, config.fitness)
            self.assertAlmostEqual(value, elite.fitness, delta=1e-9)

    def test_eval_meme_on_exported_elites(self):
        """Test exported elites rescore to their archived fitness and join the comparison."""
        out = self.dir / "results"
        self.assertEqual(self.run_smoke(out), 0)
        run_dir = out / "subset-0" / "ME.CO"
        archive = load_archive((run_dir / RUN_FILES["archive_json"]).read_text(encoding="utf-8"))
        stored = {f"co_{i}_{j}": elite.fitness for (i, j), elite in archive.items()}
        self.assertEqual([r.name for r in read_meme(run_dir / RUN_FILES["elites_meme"])], list(stored))

        code = run_cli(
            "eval-meme", run_dir / RUN_FILES["elites_meme"], "--config", self.config, "--out", out, "--subsets", 2
        )
        self.assertEqual(code, 0)

        rows = [row for row in read_rows(out / "meme_eval.csv") if row["subset"] == "subset-0"]
        self.assertEqual(len(rows), len(stored))
        for row in rows:
            self.assertAlmostEqual(float(row["fitness"]), stored[row["motif"]], delta=1e-9)

        methods = [row["method"] for row in read_rows(out / "comparison.csv")]
        self.assertEqual(methods, ["MEME", "ME.CO"])
        self.assertIn("Max Fitness", (out / "comparison.txt").read_text(encoding="utf-8"))

    def test_comparison_across_characterizations(self):
        """Test MEME and all three characterizations share one comparison table."""
        out = self.dir / "results"
        code = run_cli(
            "run", "--config", self.config, "--out", out,
            "--generations", 4, "--bc", "all", "--subsets", 2,
        )
        self.assertEqual(code, 0)
        truth = Path(self.config).parent / "truth.meme"
        self.assertEqual(run_cli("eval-meme", truth, "--config", self.config, "--out", out, "--subsets", 2), 0)

        rows = read_rows(out / "comparison.csv")
        self.assertEqual([row["method"] for row in rows], ["MEME", "ME.SP", "ME.CO", "ME.RB"])
        for row in rows:
            self.assertEqual(row["n"], "2", row["method"])
            peak, mean, spread = (float(row[k]) for k in ("max_fitness", "mean_fitness", "std_fitness"))
            self.assertTrue(all(math.isfinite(v) for v in (peak, mean, spread)), row["method"])
            self.assertGreaterEqual(peak, mean, row["method"])
            self.assertGreaterEqual(spread, 0.0, row["method"])

        table = (out / "comparison.txt").read_text(encoding="utf-8")
        positions = [table.index(method) for method in ("MEME", "ME.SP", "ME.CO", "ME.RB")]
        self.assertEqual(positions, sorted(positions))

    def test_eval_meme_quotes_motif_names(self):
        """Test a motif name holding a comma and a quote stays one csv field."""
        out = self.dir / "results"
        self.assertEqual(self.run_smoke(out, generations=1), 0)
        truth = Path(self.config).parent / "truth.meme"
        renamed = self.dir / "renamed.meme"
        renamed.write_text(
            truth.read_text(encoding="utf-8").replace("MOTIF planted_truth", 'MOTIF site,"A"'), encoding="utf-8"
        )
        self.assertEqual(run_cli("eval-meme", renamed, "--config", self.config, "--out", out, "--subsets", 2), 0)
        rows = read_rows(out / "meme_eval.csv")
        self.assertEqual(len(rows), 2)
        self.assertEqual({row["motif"] for row in rows}, {'site,"A"'})

    def test_eval_meme_rejects_non_utf8(self):
        """Test a MEME file that is not UTF-8 text exits with the data-error code."""
        bad = self.dir / "latin1.meme"
        bad.write_bytes(b"MEME version 4\n\nALPHABET= ACGT\n\nMOTIF caf\xe9\n")
        self.assertEqual(run_cli("eval-meme", bad, "--config", self.config, "--out", self.dir / "out"), 2)

    def test_zero_generations(self):
        """Test a zero-generation run leaves empty archives and header-only metrics."""
        out = self.dir / "empty"
        self.assertEqual(self.run_smoke(out, generations=0), 0)
        run_dir = out / "subset-0" / "ME.CO"
        self.assertTrue(load_archive((run_dir / RUN_FILES["archive_json"]).read_text(encoding="utf-8")).is_empty)
        self.assertEqual(read_rows(run_dir / RUN_FILES["metrics"]), [])
        self.assertFalse((run_dir / RUN_FILES["logo"]).exists())

    def test_export_round_trip(self):
        """Test exporting an archive to csv lists one row per elite."""
        out = self.dir / "results"
        self.assertEqual(self.run_smoke(out, generations=1), 0)
        archive_path = out / "subset-1" / "ME.CO" / RUN_FILES["archive_json"]
        exported = self.dir / "elites.csv"
        self.assertEqual(run_cli("export", archive_path, "--format", "csv", "--out", exported), 0)
        archive = load_archive(archive_path.read_text(encoding="utf-8"))
        self.assertEqual(len(read_rows(exported)), len(archive))


@pytest.mark.integration
class TestPlantedMotifRecovery(unittest.TestCase):
    """Test ME.CO recovers a planted motif."""

    def test_recovers_planted_consensus(self):
        """Test the best elite nears the truth motif's fitness and consensus."""
        with tempfile.TemporaryDirectory() as tmp:
            tmp = Path(tmp)
            paths = write_dataset(tmp / "data", n=200, length=100, preset="full")
            out = tmp / "results"
            code = run_cli(
                "run", "--config", paths["config"], "--out", out,
                "--generations", 120, "--bc", "co", "--subsets", 1,
            )
            self.assertEqual(code, 0)

            manager = ExperimentConfigManager(paths["config"])
            manager.load_config()
            manager.apply_overrides(output_dir=str(out), subsets=1)
            config = manager.experiment_config()
            subset = prepare_subsets(config)[0]
            truth = read_meme(paths["truth"])[0].to_pwm()
            truth_fitness = motif_fitness(truth, subset.foreground, subset.bg, config.fitness)

            archive = load_archive((out / "subset-0" / "ME.CO" / RUN_FILES["archive_json"]).read_text(encoding="utf-8"))
            best = archive.best_elite()
            self.assertGreaterEqual(best.fitness, 0.9 * truth_fitness)

            found = consensus(best.pwm).upper()
            planted = consensus(truth).upper()
            self.assertLessEqual(motif_distance(found, planted), 4)


if __name__ == "__main__":
    unittest.main()
