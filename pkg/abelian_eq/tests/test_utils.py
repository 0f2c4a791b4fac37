import itertools
import math
import time

import numpy as np
from django.test import SimpleTestCase, tag

from abelian_eq.models import SAT, UNKNOWN, UNSAT, AbelianEquation, SatVerdict
from abelian_eq.utils import (
    brute_force_count,
    count_sat_ball,
    decide,
    density_sat,
    exponent,
    is_satisfiable,
    limit_density,
    norm,
    one_var_residual,
    sat_mask,
)
from core.exceptions import ResourceBudgetExceeded
from numtheory.utils import mobius_sieve, partial_zeta, zeta
from .factories import AbelianEquationFactory, reseed


class ExponentAndNormTests(SimpleTestCase):
    def test_exponent(self):
        self.assertEqual(exponent(AbelianEquation([0, 0], [1])), 0)
        self.assertEqual(exponent(AbelianEquation([4, -6], [1])), 2)
        self.assertEqual(exponent(AbelianEquation([3], [1])), 3)

    def test_norm(self):
        self.assertEqual(norm(AbelianEquation([0], [0])), 0)
        self.assertEqual(norm(AbelianEquation([2, -3], [5])), 5)
        self.assertEqual(norm(AbelianEquation([-7], [0, 0])), 7)


class DecideTests(SimpleTestCase):
    def test_trivial_equation(self):
        verdict = decide(AbelianEquation([0, 0], [0, 0]))
        self.assertEqual(verdict.status, SAT)
        self.assertEqual(verdict.witness.assignments, ((0, 0), (0, 0)))

    def test_witness_for_coprime_exponents(self):
        eq = AbelianEquation([2, 3], [5])
        verdict = decide(eq)
        self.assertEqual(verdict.status, SAT)
        self.assertTrue(verdict.witness.solves(eq))

    def test_divisibility_failure(self):
        verdict = decide(AbelianEquation([2, 4], [3, 6]))
        self.assertEqual(verdict.status, UNSAT)
        self.assertIsNone(verdict.witness)
        self.assertIn("does not divide", verdict.certificate)

    def test_zero_exponent_with_constant(self):
        verdict = decide(AbelianEquation([0, 0], [1, 0]))
        self.assertEqual(verdict.status, UNSAT)
        self.assertEqual(verdict.certificate, "nonzero constant, zero exponent")

    def test_witness_soundness_on_random_equations(self):
        reseed(2024)
        for radius in (10, 10**3, 10**6):
            for _ in range(3500):
                eq = AbelianEquationFactory(k=3, m=2, radius=radius)
                verdict = decide(eq)
                self.assertEqual(verdict.is_sat, is_satisfiable(eq.gamma, eq.alpha))
                if verdict.is_sat:
                    self.assertFalse(any(verdict.witness.substitute(eq)))

    def test_unsat_has_no_small_solution(self):
        reseed(7)
        x1, x2 = np.meshgrid(np.arange(-50, 51), np.arange(-50, 51))
        found = 0
        while found < 100:
            eq = AbelianEquationFactory(k=2, m=1, radius=5)
            if decide(eq).is_sat:
                continue
            found += 1
            values = eq.gamma[0] * x1 + eq.gamma[1] * x2 + eq.alpha[0]
            self.assertFalse((values == 0).any(), eq)

    def test_invariance(self):
        for coordinates in itertools.product(range(-3, 4), repeat=4):
            eq = AbelianEquation(coordinates[:2], coordinates[2:])
            status = decide(eq).status
            swapped = AbelianEquation(eq.gamma[::-1], eq.alpha[::-1])
            negated = AbelianEquation((-eq.gamma[0], eq.gamma[1]), (eq.alpha[0], -eq.alpha[1]))
            self.assertEqual(decide(swapped).status, status)
            self.assertEqual(decide(negated).status, status)

    def test_vectorised_mask_agrees(self):
        rows = np.array(list(itertools.product(range(-3, 4), repeat=4)))
        mask = sat_mask(rows[:, :2], rows[:, 2:])
        for row, flag in zip(rows.tolist(), mask.tolist()):
            self.assertEqual(flag, decide(AbelianEquation(row[:2], row[2:])).is_sat)


class SatVerdictTests(SimpleTestCase):
    def test_sat_needs_witness(self):
        with self.assertRaises(ValueError):
            SatVerdict(SAT)

    def test_unknown_has_no_witness(self):
        with self.assertRaises(ValueError):
            SatVerdict(UNKNOWN, witness=object())

    def test_unknown_status_rejected(self):
        with self.assertRaises(ValueError):
            SatVerdict("MAYBE")


class CountSatBallTests(SimpleTestCase):
    def test_zero_radius(self):
        for k, m in [(1, 1), (2, 3), (4, 1)]:
            self.assertEqual(count_sat_ball(k, m, 0), 1)

    def test_examples(self):
        self.assertEqual(count_sat_ball(1, 1, 2), 17)
        self.assertEqual(count_sat_ball(2, 1, 1), 25)
        self.assertEqual(density_sat(2, 1, 1), 25 / 27)
        self.assertEqual(density_sat(1, 1, 2), 17 / 125)

    def test_brute_force_examples(self):
        self.assertEqual(brute_force_count(1, 1, 2), 17)
        self.assertEqual(brute_force_count(2, 1, 1), 25)
        self.assertEqual(brute_force_count(2, 2, 2), count_sat_ball(2, 2, 2))

    def test_oracle_equivalence(self):
        for k, m, r in [(1, 1, 6), (2, 1, 4), (1, 2, 4), (2, 2, 2)]:
            self.assertEqual(count_sat_ball(k, m, r), brute_force_count(k, m, r))

    def test_oracle_equivalence_sweep(self):
        for k in range(1, 4):
            for m in range(1, 4):
                for r in range(0, 8):
                    if (2 * r + 1) ** (k + m) > 2 * 10**4:
                        break
                    self.assertEqual(
                        count_sat_ball(k, m, r), brute_force_count(k, m, r), (k, m, r)
                    )

    def test_brute_force_is_split_independent(self):
        self.assertEqual(
            brute_force_count(2, 1, 4, threads=4), brute_force_count(2, 1, 4)
        )

    def test_brute_force_budget(self):
        with self.assertRaises(ResourceBudgetExceeded):
            brute_force_count(2, 2, 10, budget=1000)

    def test_one_variable_branch_matches_general_sum(self):
        table = mobius_sieve(200)
        for m in (1, 2, 3):
            for r in (1, 7, 50, 200):
                expected = 1 + sum(
                    2 * (2 * (r // gamma) + 1) ** m for gamma in range(1, r + 1)
                )
                self.assertEqual(count_sat_ball(1, m, r, table), expected)


class LimitDensityTests(SimpleTestCase):
    def test_single_variable(self):
        for m in (1, 2, 5):
            self.assertEqual(limit_density(1, m), 0.0)

    def test_closed_forms(self):
        self.assertAlmostEqual(limit_density(2, 2), math.pi**2 / 15, places=9)
        self.assertAlmostEqual(limit_density(2, 1), 0.730763, places=6)
        self.assertAlmostEqual(limit_density(3, 1), zeta(4) / zeta(3), places=12)

    def test_convergence_at_large_radius(self):
        for k, m in [(2, 1), (2, 2), (3, 1)]:
            table = mobius_sieve(10**5)
            residuals = [
                abs(density_sat(k, m, 10**j, table) - limit_density(k, m))
                for j in (2, 3, 4, 5)
            ]
            self.assertLessEqual(residuals[-1], 2e-3)
            for coarse, fine in zip(residuals, residuals[1:]):
                self.assertLessEqual(fine, coarse / 2)

    @tag("slow")
    def test_exact_count_at_a_million(self):
        start = time.perf_counter()
        density = density_sat(2, 1, 10**6)
        elapsed = time.perf_counter() - start
        self.assertLessEqual(abs(density - zeta(3) / zeta(2)), 2e-3)
        self.assertLessEqual(elapsed, 10)


class OneVariableTests(SimpleTestCase):
    grid = (100, 200, 500, 1000, 2000, 5000, 10**4, 2 * 10**4, 5 * 10**4, 10**5)

    def test_residual_follows_scale(self):
        for m in (1, 2, 3):
            residual, scale = one_var_residual(m, 100)
            constant = residual / scale
            for r in self.grid:
                residual, scale = one_var_residual(m, r)
                self.assertLessEqual(residual, 2 * constant * scale, (m, r))

    def test_single_constant_rate(self):
        for r in (10**3, 10**4, 10**5, 10**6):
            ratio = density_sat(1, 1, r) * r / math.log(r)
            self.assertGreaterEqual(ratio, 0.9)
            self.assertLessEqual(ratio, 1.5)

    def test_two_constants_rate(self):
        value = density_sat(1, 2, 10**5) * 10**5
        self.assertGreaterEqual(value, 1.5)
        self.assertLessEqual(value, 1.8)

    def test_density_decreasing(self):
        densities = [density_sat(1, 2, r) for r in self.grid]
        for coarse, fine in zip(densities, densities[1:]):
            self.assertGreater(coarse, fine)

    def test_scale_for_one_constant(self):
        _residual, scale = one_var_residual(1, 1000)
        self.assertAlmostEqual(scale, partial_zeta(1000, 0) / 1000**2)
