import itertools
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from core.decorators import within_budget
from core.exceptions import PreconditionError, WitnessVerificationError
from numtheory.utils import (
    ext_gcd,
    gcd_abs,
    mobius_sieve,
    partial_zeta,
    primitive_count,
    zeta,
)
from .models import (
    SAT,
    UNSAT,
    ZERO_EXPONENT_CERTIFICATE,
    AbelianEquation,
    AbelianWitness,
    SatVerdict,
)

logger = logging.getLogger(__name__)


def exponent(eq):
    """exp(w): gcd of the variable exponents, 0 when they all vanish."""
    return gcd_abs(eq.gamma)


def norm(eq):
    return max(abs(c) for c in eq.coordinates)


def decide(eq):
    """
    Decide x^gamma a^alpha = 1 over Z^m.

    Solvable iff exp(w) divides every alpha_j (or exp(w) = 0 and alpha = 0).
    With b = alpha / gamma and Bezout coefficients xi of the gamma's, the
    assignment x_i = -xi_i * b solves it.
    """
    g, xi = ext_gcd(eq.gamma)
    if g == 0:
        if any(eq.alpha):
            return SatVerdict(UNSAT, certificate=ZERO_EXPONENT_CERTIFICATE)
        witness = AbelianWitness([(0,) * eq.m] * eq.k)
    else:
        alpha_gcd = gcd_abs(eq.alpha)
        if alpha_gcd % g:
            return SatVerdict(
                UNSAT,
                certificate=(
                    f"exponent {g} does not divide gcd of constants {alpha_gcd}"
                ),
            )
        b = [a // g for a in eq.alpha]
        witness = AbelianWitness([[-x * bj for bj in b] for x in xi])

    if not witness.solves(eq):
        raise WitnessVerificationError(f"witness {witness} does not solve {eq}")
    return SatVerdict(SAT, witness=witness)


def is_satisfiable(gamma, alpha):
    g = gcd_abs(gamma)
    if g == 0:
        return not any(alpha)
    return gcd_abs(alpha) % g == 0


def sat_mask(gamma, alpha):
    """
    Vectorised satisfiability test.

    ``gamma`` and ``alpha`` are integer arrays of shape (n, k) and (n, m);
    returns a boolean array of length n.
    """
    g = np.gcd.reduce(np.abs(gamma), axis=1)
    a = np.gcd.reduce(np.abs(alpha), axis=1)
    safe = np.where(g == 0, 1, g)
    return np.where(g == 0, a == 0, a % safe == 0)


def _sum_over_slices(r, term):
    """sum of term(r // gamma) for gamma = 1..r, one call per distinct quotient."""
    total = 0
    gamma = 1
    while gamma <= r:
        t = r // gamma
        gamma_hi = r // t
        total += (gamma_hi - gamma + 1) * term(t)
        gamma = gamma_hi + 1
    return total


def _check_sizes(k, m, r):
    if k < 1 or m < 1 or r < 0:
        raise PreconditionError(f"need k, m >= 1 and r >= 0; got {k}, {m}, {r}")


def count_sat_ball(k, m, r, table=None):
    """
    Exact number of satisfiable equations of norm at most r.

    The ball splits into slices by exp(w) = gamma: the gamma-primitive
    variable parts times the constants divisible by gamma, plus the trivial
    equation. For k = 1 the gamma-primitive part is just {gamma, -gamma}.
    """
    _check_sizes(k, m, r)
    if r == 0:
        return 1
    if k == 1:
        return 1 + 2 * _sum_over_slices(r, lambda t: (2 * t + 1) ** m)

    if table is None or not table.covers(r):
        table = mobius_sieve(r)
    return 1 + _sum_over_slices(
        r, lambda t: primitive_count(t, k, table) * (2 * t + 1) ** m
    )


def density_sat(k, m, r, table=None):
    return count_sat_ball(k, m, r, table) / (2 * r + 1) ** (k + m)


def limit_density(k, m, eps=None):
    """zeta(k+m)/zeta(k); a single variable gives a negligible set."""
    _check_sizes(k, m, 0)
    if k == 1:
        return 0.0
    return zeta(k + m, eps) / zeta(k, eps)


def one_var_residual(m, r):
    """
    Distance of the one-variable frequency from Z_r(m)/r, and the scale
    Z_r(m-1)/r^2 that distance is expected to follow.
    """
    if m < 1 or r < 1:
        raise PreconditionError(f"need m >= 1 and r >= 1; got {m}, {r}")
    residual = abs(density_sat(1, m, r) - partial_zeta(r, m) / r)
    scale = partial_zeta(r, m - 1) / r**2
    return residual, scale


def _count_slab(k, m, r, first):
    hits = 0
    for rest in itertools.product(range(-r, r + 1), repeat=k + m - 1):
        coordinates = (first,) + rest
        if decide(AbelianEquation(coordinates[:k], coordinates[k:])).status == SAT:
            hits += 1
    return hits


@within_budget(
    volume=lambda k, m, r, **options: (2 * r + 1) ** (k + m),
    what="brute-force count",
)
def brute_force_count(k, m, r, *, budget=None, threads=1):
    """
    Count satisfiable equations in B_r by running decide on every one of them.

    Work is split by the first coordinate; the sum does not depend on the split.
    """
    _check_sizes(k, m, r)
    firsts = range(-r, r + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            slabs = pool.map(lambda first: _count_slab(k, m, r, first), firsts)
            return sum(slabs)
    return sum(_count_slab(k, m, r, first) for first in firsts)

