"""
Tests for the Iso+Line emitter.
"""

import unittest

import numpy as np

from motif_elites.core.archive import Archive, DescriptorBounds, Elite
from motif_elites.core.constants import PWM_FLOOR
from motif_elites.core.descriptors import BehaviorDescriptor, Characterization
from motif_elites.core.emitters import EmitterConfig, IsoLineEmitter, emit_batch, spawn_emitters
from motif_elites.core.errors import InvalidParams
from motif_elites.core.pwm import PWM, random_pwm
from motif_elites.core.report import consensus
from tests.fixtures import set_from_strings


def archive_with(*pwms, length=19):
    length = pwms[0].length if pwms else length
    archive = Archive(DescriptorBounds(lo=(0.0, 0.0), hi=(1.0, 1.0)), dims=(20, 20), motif_length=length, seed=0)
    for i, pwm in enumerate(pwms):
        descriptor = BehaviorDescriptor(Characterization.CO, (i / 20 + 0.01, 0.5))
        archive.try_insert(Elite(pwm=pwm, fitness=float(i), descriptor=descriptor))
    return archive


class TestEmitterConfig(unittest.TestCase):
    """Test emitter settings."""

    def test_defaults(self):
        """Test the default step sizes and batch."""
        cfg = EmitterConfig()
        self.assertEqual((cfg.sigma_iso, cfg.sigma_line, cfg.batch, cfg.count), (0.12, 0.25, 32, 1))
        self.assertEqual((cfg.site_share, cfg.site_peak, cfg.site_count), (0.25, 0.9, 8))

    def test_zero_sigmas_allowed(self):
        """Test zero step sizes are valid."""
        EmitterConfig(sigma_iso=0.0, sigma_line=0.0)

    def test_site_count_leaves_room_for_iso_line(self):
        """Test a batch of one never gives its only slot to a window seed."""
        self.assertEqual(EmitterConfig(batch=1, site_share=0.9).site_count, 0)
        self.assertEqual(EmitterConfig(batch=16).site_count, 4)

    def test_invalid(self):
        """Test negative sigmas, empty batches and bad site settings are rejected."""
        for kwargs in (
            {"sigma_iso": -0.1},
            {"batch": 0},
            {"alpha": 0.0},
            {"site_share": 1.0},
            {"site_share": -0.1},
            {"site_peak": 0.25},
        ):
            with self.assertRaises(InvalidParams, msg=str(kwargs)):
                EmitterConfig(**kwargs)


class TestIsoLineEmitter(unittest.TestCase):
    """Test candidate generation."""

    def test_empty_archive_draws_random_motifs(self):
        """Test an empty archive gives a batch of 32 valid random motifs."""
        batch = emit_batch(archive_with(), EmitterConfig(), 19, seed_state=0)
        self.assertEqual(len(batch), 32)
        self.assertTrue(all(pwm.length == 19 for pwm in batch))

    def test_empty_archive_ignores_foreground(self):
        """Test the first batch is pure Dirichlet draws even with window seeding on."""
        foreground = set_from_strings(*["A" * 40] * 5)
        batch = emit_batch(archive_with(length=6), EmitterConfig(batch=8), 6, seed_state=1, foreground=foreground)
        self.assertFalse(any(consensus(pwm) == "AAAAAA" for pwm in batch))

    def test_candidates_are_valid_pwms(self):
        """Test perturbed children are repaired onto the floored simplex."""
        archive = archive_with(random_pwm(19, seed=1), random_pwm(19, seed=2))
        emitter = IsoLineEmitter(archive, EmitterConfig(sigma_iso=0.5, sigma_line=1.0), seed=3)
        for _ in range(5):
            for pwm in emitter.ask():
                self.assertTrue(np.allclose(pwm.probs.sum(axis=1), 1.0, atol=1e-9, rtol=0))
                self.assertGreaterEqual(pwm.probs.min(), PWM_FLOOR - 1e-15)

    def test_zero_sigma_resamples_elites(self):
        """Test zero sigmas reproduce archive members."""
        parents = [random_pwm(6, seed=s) for s in range(3)]
        archive = archive_with(*parents)
        batch = emit_batch(archive, EmitterConfig(sigma_iso=0.0, sigma_line=0.0, batch=10), 6, seed_state=4)
        self.assertEqual(len(batch), 10)
        for child in batch:
            self.assertTrue(any(np.allclose(child.probs, p.probs, atol=1e-12, rtol=0) for p in parents))

    def test_single_elite_line_term_vanishes(self):
        """Test with one elite and no isotropic step the child equals the parent."""
        parent = PWM.from_consensus("ACGTA", peak=0.7)
        batch = emit_batch(archive_with(parent), EmitterConfig(sigma_iso=0.0, batch=4), 5, seed_state=0)
        for child in batch:
            self.assertTrue(np.allclose(child.probs, parent.probs, atol=1e-12, rtol=0))

    def test_window_seeds_follow_foreground(self):
        """Test window seeds put the peak on bases read from the foreground."""
        foreground = set_from_strings("ACGTACGTAC")
        archive = archive_with(random_pwm(4, seed=1))
        cfg = EmitterConfig(sigma_iso=0.0, sigma_line=0.0, batch=8, site_share=0.5, site_peak=0.9)
        batch = emit_batch(archive, cfg, 4, seed_state=2, foreground=foreground)
        self.assertEqual(len(batch), 8)
        windows = {"ACGTACGTAC"[i : i + 4] for i in range(7)}
        for seed_pwm in batch[4:]:
            self.assertIn(consensus(seed_pwm), windows)
            self.assertAlmostEqual(float(seed_pwm.probs.max()), 0.9, places=9)

    def test_window_seeds_fall_back_to_random(self):
        """Test a foreground without any N-free window still fills the batch."""
        foreground = set_from_strings("ACNGT", "NNNNNN")
        archive = archive_with(random_pwm(4, seed=1))
        batch = emit_batch(archive, EmitterConfig(batch=4, site_share=0.5), 4, seed_state=3, foreground=foreground)
        self.assertEqual(len(batch), 4)

    def test_deterministic(self):
        """Test equal seeds and equal archives give equal batches."""
        first = emit_batch(archive_with(random_pwm(8, seed=1), random_pwm(8, seed=2)), EmitterConfig(), 8, seed_state=11)
        second = emit_batch(archive_with(random_pwm(8, seed=1), random_pwm(8, seed=2)), EmitterConfig(), 8, seed_state=11)
        self.assertEqual(first, second)

    def test_spawned_emitters_are_independent(self):
        """Test spawned emitters draw different streams."""
        archive = archive_with(length=5)
        emitters = spawn_emitters(archive, EmitterConfig(count=2, batch=3), seed=0)
        self.assertEqual(len(emitters), 2)
        self.assertNotEqual(emitters[0].ask(), emitters[1].ask())

    def test_length_must_match_archive(self):
        """Test asking for a length the archive does not hold is rejected."""
        with self.assertRaises(InvalidParams):
            emit_batch(archive_with(length=5), EmitterConfig(), 6, seed_state=0)


if __name__ == "__main__":
    unittest.main()
