"""
Self-check suites: each one reruns a proven bound or an exact identity at a
size scaled by ``NILSAT_SELFCHECK_SCALE`` and reports PASS or FAIL.
"""
import logging

import numpy as np
from django.conf import settings

from abelian_eq.utils import brute_force_count, count_sat_ball, limit_density
from core.exceptions import WitnessVerificationError
from numtheory.utils import max_primitive_deviation, mobius_sieve, rate_check_multiples
from pcgroup.collection import multiply
from pcgroup.constructors import make_free_nilpotent_class2, make_heisenberg
from pcgroup.spaces import build_equation_space
from sat_tests.utils import classify
from .experiments import run_nilpotent_bracket, run_one_var
from .sampling import sample_coordinates

logger = logging.getLogger(__name__)

BRUTE_FORCE_CASES = ((1, 1, 6), (2, 1, 4), (1, 2, 4), (2, 2, 2))


def _scaled(size, floor):
    return max(floor, int(size * settings.NILSAT_SELFCHECK_SCALE))


def check_brute_force():
    mismatches = [
        (k, m, r)
        for k, m, r in BRUTE_FORCE_CASES
        if brute_force_count(k, m, r) != count_sat_ball(k, m, r)
    ]
    return not mismatches, f"{len(BRUTE_FORCE_CASES)} cases, mismatches {mismatches}"


def check_rate_bound():
    top = _scaled(300, 20)
    violations = sum(
        1
        for k in range(1, 5)
        for r in range(1, top + 1)
        for gamma in range(1, r + 1)
        if not rate_check_multiples(r, gamma, k).holds
    )
    return violations == 0, f"r <= {top}, k <= 4, {violations} violations"


def check_limit():
    r = _scaled(10**5, 10**4)
    table = mobius_sieve(r)
    worst = max(
        abs(count_sat_ball(k, m, r, table) / (2 * r + 1) ** (k + m) - limit_density(k, m))
        for k, m in ((2, 1), (2, 2), (3, 1))
    )
    return worst <= 2e-3, f"r = {r}, largest residual {worst:.3g}"


def check_uniform_trend():
    table = mobius_sieve(10**4)
    ratios = [
        max_primitive_deviation(10**4, k, table) / max_primitive_deviation(10**2, k, table)
        for k in (2, 3)
    ]
    return max(ratios) <= 0.2, "ratios " + ", ".join(f"{x:.3g}" for x in ratios)


def check_one_var():
    top = _scaled(10**5, 10**3)
    grid = [r for r in (100, 1000, 10**4, 10**5) if r <= top]
    worst = 0.0
    for m in (1, 2, 3):
        rows = run_one_var(m, grid)
        constant = rows[0]["residual"] / rows[0]["scale"]
        for row in rows:
            worst = max(worst, row["residual"] / (constant * row["scale"]))
    return worst <= 2, f"grid {grid}, worst residual/(C scale) {worst:.3g}"


def check_witnesses():
    """Every SAT verdict on random class-two equations must substitute to 1."""
    samples = _scaled(2000, 100)
    rng = np.random.default_rng(0)
    sat = 0
    for G in (make_heisenberg(), make_free_nilpotent_class2(3)):
        space = build_equation_space(G, 2)
        for row in sample_coordinates(space.coordinate_orders, 30, samples, rng).tolist():
            try:
                verdict = classify(space, space.equation_from_coordinates(row))
            except WitnessVerificationError as exc:
                return False, str(exc)
            sat += verdict.is_sat
    return True, f"{sat} verified SAT verdicts"


def check_collection():
    """Heisenberg multiplication against integer unitriangular matrices."""
    pairs = _scaled(10**4, 500)
    rng = np.random.default_rng(1)
    left = rng.integers(-100, 101, size=(pairs, 3))
    right = rng.integers(-100, 101, size=(pairs, 3))
    H = make_heisenberg()
    for a, b in zip(left.tolist(), right.tolist()):
        p, q, s = multiply(H, tuple(a), tuple(b))
        expected = (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[1] * b[0])
        if (p, q, s) != expected:
            return False, f"{a} * {b} gave {(p, q, s)}, expected {expected}"
    return True, f"{pairs} products"


def check_bracket():
    samples = _scaled(2000, 200)
    report = run_nilpotent_bracket("heisenberg", 2, 60, samples, seed=0)
    sat, ab = report.sat_certified_fraction, report.abelian_solvable_fraction
    return sat.hits <= ab.hits, f"certified {sat.point:.4f} <= solvable {ab.point:.4f}"


SUITES = (
    ("bruteforce", check_brute_force),
    ("rate-bound", check_rate_bound),
    ("limit", check_limit),
    ("uniform-trend", check_uniform_trend),
    ("one-var", check_one_var),
    ("witnesses", check_witnesses),
    ("collection", check_collection),
    ("bracket", check_bracket),
)


def run_selfcheck(stdout, suites=SUITES):
    """Run the suites, print one line each; True when all passed."""
    passed = True
    for name, check in suites:
        ok, detail = check()
        logger.info("suite %s: %s", name, detail)
        stdout.write(f"{'PASS' if ok else 'FAIL'} {name} {detail}\n")
        passed = passed and ok
    return passed
