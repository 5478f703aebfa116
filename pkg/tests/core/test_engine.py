"""
Tests for descriptor range estimation and the MAP-Elites loop.
"""

import unittest

import numpy as np

from motif_elites.core.archive import DescriptorBounds
from motif_elites.core.descriptors import Characterization, EvaluationContext
from motif_elites.core.emitters import EmitterConfig
from motif_elites.core.engine import (
    BoundsConfig,
    RunConfig,
    bounds_from_samples,
    derive_seed,
    estimate_bounds,
    run,
)
from motif_elites.core.errors import InvalidParams
from motif_elites.core.pwm import PWM
from motif_elites.core.report import consensus
from motif_elites.core.scoring import motif_fitness
from motif_elites.core.sequences import BackgroundDistribution
from tests.fixtures import motif_distance, planted_context, random_set, set_from_strings, small_context


def small_config(generations=4, **overrides):
    settings = dict(
        generations=generations,
        motif_length=6,
        emitter=EmitterConfig(batch=8),
        bounds=BoundsConfig(n_samples=20),
        log_every=0,
    )
    settings.update(overrides)
    return RunConfig(**settings)


class TestDeriveSeed(unittest.TestCase):
    """Test child seed derivation."""

    def test_reproducible(self):
        """Test the same keys give the same seed."""
        self.assertEqual(derive_seed(7, 1, 2), derive_seed(7, 1, 2))

    def test_distinct_streams(self):
        """Test different keys or masters give different seeds."""
        seeds = {derive_seed(7), derive_seed(7, 0), derive_seed(7, 1), derive_seed(8, 0), derive_seed(7, 0, 1)}
        self.assertEqual(len(seeds), 5)

    def test_negative_rejected(self):
        """Test negative seeds are rejected."""
        with self.assertRaises(InvalidParams):
            derive_seed(-1)


class TestBounds(unittest.TestCase):
    """Test descriptor range estimation."""

    def test_padded_quantile_range(self):
        """Test quantiles [0.2, 0.8] padded by 10% give [0.14, 0.86]."""
        width = 0.6 / 0.98
        start = 0.2 - 0.01 * width
        column = np.linspace(start, start + width, 101)
        bounds = bounds_from_samples(np.column_stack([column, column]))
        for value in bounds.lo:
            self.assertAlmostEqual(value, 0.14, places=9)
        for value in bounds.hi:
            self.assertAlmostEqual(value, 0.86, places=9)

    def test_degenerate_dimension_is_widened(self):
        """Test a constant descriptor gets a small non-empty range around it."""
        samples = np.column_stack([np.full(50, 0.5), np.linspace(0.0, 1.0, 50)])
        bounds = bounds_from_samples(samples)
        self.assertAlmostEqual(bounds.lo[0], 0.4995, places=12)
        self.assertAlmostEqual(bounds.hi[0], 0.5005, places=12)

    def test_bad_samples(self):
        """Test samples must be n x 2."""
        with self.assertRaises(InvalidParams):
            bounds_from_samples(np.zeros((5, 3)))

    def test_config_ranges(self):
        """Test bounds settings preconditions."""
        with self.assertRaises(InvalidParams):
            BoundsConfig(n_samples=5)
        with self.assertRaises(InvalidParams):
            BoundsConfig(q_lo=0.9, q_hi=0.1)

    def test_estimate_composition_bounds(self):
        """Test estimated GC and entropy ranges lie inside their domains."""
        bounds = estimate_bounds(Characterization.CO, small_context(), BoundsConfig(n_samples=50), seed=1, length=8)
        self.assertGreaterEqual(bounds.hi[0], bounds.lo[0])
        self.assertGreater(bounds.lo[0], 0.0)
        self.assertLess(bounds.hi[1], 2.1)

    def test_estimate_is_deterministic(self):
        """Test the same seed gives the same bounds."""
        context = small_context()
        first = estimate_bounds(Characterization.SP, context, BoundsConfig(n_samples=20), seed=3, length=6)
        second = estimate_bounds(Characterization.SP, context, BoundsConfig(n_samples=20), seed=3, length=6)
        self.assertEqual(first, second)


class TestRun(unittest.TestCase):
    """Test the generation loop."""

    @classmethod
    def setUpClass(cls):
        cls.context = small_context()

    def test_deterministic(self):
        """Test two runs with one seed give identical traces and archives."""
        first = run(self.context, Characterization.CO, small_config(), seed=5)
        second = run(self.context, Characterization.CO, small_config(), seed=5)
        self.assertEqual(first.metrics.to_csv(), second.metrics.to_csv())
        self.assertEqual(
            [(index, elite.fitness, elite.pwm) for index, elite in first.archive.items()],
            [(index, elite.fitness, elite.pwm) for index, elite in second.archive.items()],
        )

    def test_zero_generations(self):
        """Test zero generations give an empty archive and no records."""
        result = run(self.context, Characterization.CO, small_config(generations=0), seed=0)
        self.assertTrue(result.archive.is_empty)
        self.assertEqual(len(result.metrics), 0)

    def test_traces_are_nondecreasing(self):
        """Test coverage, best fitness and QD score never decrease."""
        config = small_config(generations=6, qd_offset=-50.0)
        result = run(self.context, Characterization.SP, config, seed=2)
        for name in ("coverage", "best_fitness", "qd_score"):
            trace = result.metrics.column(name)
            self.assertEqual(len(trace), 6)
            self.assertTrue(all(b >= a for a, b in zip(trace, trace[1:])), name)

    def test_generation_records(self):
        """Test records are numbered from 1 and count every candidate."""
        seen = []
        result = run(self.context, Characterization.RB, small_config(generations=3), seed=1, on_generation=seen.append)
        self.assertEqual([record.generation for record in seen], [1, 2, 3])
        self.assertEqual(seen, result.metrics.records)
        for record in seen:
            self.assertEqual(record.evaluations, 8)
            self.assertLessEqual(record.new_cells + record.improved + record.failed_evaluations, 8)
        self.assertEqual(result.metrics.last.qd_score, result.archive.qd_score())

    def test_elites_stay_in_bounds_cells(self):
        """Test archive size never exceeds the cell count and elites carry their generation."""
        result = run(self.context, Characterization.CO, small_config(dims=(3, 3)), seed=4)
        self.assertLessEqual(len(result.archive), 9)
        for _, elite in result.archive.items():
            self.assertTrue(1 <= elite.generation_added <= 4)

    def test_failed_evaluations_are_counted(self):
        """Test candidates whose descriptor cannot be computed are discarded."""
        # One scorable sequence cannot give a tail spread
        context = EvaluationContext(
            foreground=set_from_strings("ACGTACGTAC", "ACG"),
            background=random_set(20, 30, seed=3),
            bg=BackgroundDistribution.uniform(),
        )
        bounds = DescriptorBounds(lo=(0.0, 0.0), hi=(1.0, 1.0))
        result = run(context, Characterization.RB, small_config(generations=2), seed=0, bounds=bounds)
        self.assertTrue(result.archive.is_empty)
        self.assertEqual(result.metrics.total_failed, 16)
        self.assertIsNone(result.metrics.last.best_fitness)

    def test_recovers_planted_site(self):
        """Test window seeding lands the best elite on a planted 10-mer."""
        context, _ = planted_context()
        config = small_config(
            generations=30,
            motif_length=10,
            emitter=EmitterConfig(batch=16, site_share=0.5),
        )
        result = run(context, Characterization.CO, config, seed=0)
        aligned_seed = PWM.from_consensus("GATTACAGGC", 0.9)
        best = result.archive.best_elite()
        self.assertGreaterEqual(best.fitness, motif_fitness(aligned_seed, context.foreground, context.bg) - 1e-12)
        self.assertLessEqual(motif_distance(consensus(best.pwm), "GATTACAGGC"), 2)

    def test_first_generation_is_random(self):
        """Test the first generation never reaches the fitness of a planted-site seed."""
        context, _ = planted_context()
        config = small_config(generations=1, motif_length=10, emitter=EmitterConfig(batch=16, site_share=0.5))
        result = run(context, Characterization.CO, config, seed=0)
        aligned_seed = PWM.from_consensus("GATTACAGGC", 0.9)
        self.assertLess(result.archive.best_fitness(), motif_fitness(aligned_seed, context.foreground, context.bg))

    def test_invalid_config(self):
        """Test negative generations are rejected."""
        with self.assertRaises(InvalidParams):
            RunConfig(generations=-1)


if __name__ == "__main__":
    unittest.main()
