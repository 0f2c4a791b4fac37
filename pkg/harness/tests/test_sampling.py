from pathlib import Path

import mpmath
import numpy as np
from django.test import SimpleTestCase, override_settings

from abelian_eq.models import AbelianSpace
from abelian_eq.utils import density_sat, sat_mask
from core.exceptions import PreconditionError
from harness.models import DensityEstimate
from harness.sampling import (
    batch_sizes,
    coordinate_bounds,
    mc_density,
    mc_tally,
    sample_coordinates,
    sample_equation,
)
from pcgroup.loaders import load_presentation
from pcgroup.spaces import build_equation_space

FIXTURES = Path(__file__).resolve().parents[2] / "pcgroup" / "fixtures"


def chi_square_p_value(counts):
    """Upper tail probability of Pearson's statistic against a flat histogram."""
    counts = np.asarray(counts, dtype=float)
    expected = counts.sum() / len(counts)
    statistic = float(((counts - expected) ** 2 / expected).sum())
    dof = len(counts) - 1
    return float(mpmath.gammainc(dof / 2, statistic / 2, mpmath.inf, regularized=True))


def abelian_sat_tally(k):
    def tally(rows):
        return (int(sat_mask(rows[:, :k], rows[:, k:]).sum()),)

    return tally


class BallSamplingTests(SimpleTestCase):
    def setUp(self):
        self.space = build_equation_space(
            load_presentation(FIXTURES / "torsion_heisenberg.pc"), 1
        )

    def test_bounds(self):
        low, high = coordinate_bounds((None, 4, 2, None), 3)
        self.assertEqual(low.tolist(), [-3, 0, 0, -3])
        self.assertEqual(high.tolist(), [3, 3, 1, 3])
        low, high = coordinate_bounds((None, 10), 3)
        self.assertEqual(high.tolist(), [3, 3])

    def test_zero_radius_gives_trivial_equation(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            eq = sample_equation(self.space, 0, rng)
            self.assertFalse(any(eq.coordinates))

    def test_negative_radius(self):
        with self.assertRaises(PreconditionError):
            sample_coordinates((None,), -1, 5, np.random.default_rng(0))

    def test_finite_coordinates_in_range(self):
        rows = sample_coordinates(self.space.coordinate_orders, 10, 2000, np.random.default_rng(1))
        for column, order in zip(rows.T, self.space.coordinate_orders):
            if order is None:
                self.assertTrue(np.all(np.abs(column) <= 10))
            else:
                self.assertTrue(np.all((column >= 0) & (column < order)))

    def test_marginals_are_uniform(self):
        r = 3
        rows = sample_coordinates(
            self.space.coordinate_orders, r, 10**5, np.random.default_rng(2)
        )
        low, high = coordinate_bounds(self.space.coordinate_orders, r)
        for column, lo, hi in zip(rows.T, low.tolist(), high.tolist()):
            counts = np.bincount(column - lo, minlength=hi - lo + 1)
            self.assertEqual(len(counts), hi - lo + 1)
            if len(counts) > 1:
                self.assertGreater(chi_square_p_value(counts), 0.001)

    def test_same_seed_same_sequence(self):
        first_rng, second_rng = np.random.default_rng(9), np.random.default_rng(9)
        first = [sample_equation(self.space, 5, first_rng) for _ in range(10)]
        second = [sample_equation(self.space, 5, second_rng) for _ in range(10)]
        self.assertEqual(first, second)


class MonteCarloTests(SimpleTestCase):
    def setUp(self):
        self.space = AbelianSpace(2, 1)

    def test_batch_sizes(self):
        self.assertEqual(batch_sizes(10, 4), [4, 4, 2])
        self.assertEqual(batch_sizes(8, 4), [4, 4])
        self.assertEqual(batch_sizes(3, 4), [3])

    def test_always_true(self):
        estimate = mc_density(self.space, 10, 500, 1, lambda eq: True)
        self.assertEqual(estimate.point, 1.0)
        self.assertEqual(estimate.ci_high, 1.0)
        self.assertEqual((estimate.seed, estimate.r, estimate.total), (1, 10, 500))

    def test_rejects_bad_arguments(self):
        with self.assertRaises(PreconditionError):
            mc_density(self.space, 10, 0, 1, lambda eq: True)
        with self.assertRaises(PreconditionError):
            mc_density(self.space, 10, 10, -1, lambda eq: True)

    @override_settings(NILSAT_BATCH_SIZE=100)
    def test_independent_of_threads(self):
        tally = abelian_sat_tally(2)
        one = mc_tally(self.space, 50, 1050, 7, tally, threads=1)
        eight = mc_tally(self.space, 50, 1050, 7, tally, threads=8)
        self.assertEqual(one, eight)
        self.assertEqual(mc_tally(self.space, 50, 1050, 7, tally), one)

    def test_predicate_and_vectorised_tally_agree(self):
        predicate = lambda eq: bool(sat_mask(np.array([eq.gamma]), np.array([eq.alpha]))[0])
        estimate = mc_density(self.space, 20, 3000, 11, predicate)
        (hits,) = mc_tally(self.space, 20, 3000, 11, abelian_sat_tally(2))
        self.assertEqual(estimate.hits, hits)

    def test_coverage(self):
        truth = density_sat(2, 1, 1000)
        tally = abelian_sat_tally(2)
        covered = 0
        for seed in range(40):
            (hits,) = mc_tally(self.space, 1000, 4000, seed, tally)
            covered += DensityEstimate.from_counts(hits, 4000, seed, 1000).contains(truth)
        self.assertGreaterEqual(covered, 36)