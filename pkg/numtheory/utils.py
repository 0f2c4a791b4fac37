import logging
import math
from fractions import Fraction

import numpy as np
from django.conf import settings

from core.decorators import within_budget
from core.exceptions import DomainError, PreconditionError
from .models import MobiusTable, RateReport

logger = logging.getLogger(__name__)


def _bezout_pair(a, b):
    """Extended Euclid on a, b >= 0. Returns (g, x, y) with a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def ext_gcd(values):
    """
    Greatest common divisor of a tuple with a Bezout certificate.

    Args:
        values (list[int]): Nonempty list of integers, any signs.

    Returns:
        tuple: ``(g, xi)`` with ``g = gcd(|v_1|, ..., |v_n|)`` and
        ``sum(x * v for x, v in zip(xi, values)) == g``. The all-zero tuple
        gives ``(0, [0, ..., 0])``.
    """
    values = [int(v) for v in values]
    if not values:
        raise PreconditionError("ext_gcd needs at least one value")

    g = 0
    xi = [0] * len(values)
    for i, v in enumerate(values):
        if v == 0:
            continue
        g, s, t = _bezout_pair(g, abs(v))
        xi = [c * s for c in xi]
        xi[i] = t if v > 0 else -t
    return g, xi


def gcd_abs(values):
    return math.gcd(*(abs(int(v)) for v in values)) if values else 0


@within_budget(
    volume=lambda n_max: n_max, setting="NILSAT_MOBIUS_MAX_N", what="Mobius sieve"
)
def mobius_sieve(n_max):
    """
    Tabulate mu(n) for 1 <= n <= n_max with an Eratosthenes sieve.

    Each prime flips the sign of its multiples; multiples of its square are
    cleared.
    """
    n_max = int(n_max)
    if n_max < 1:
        raise PreconditionError(f"mobius_sieve needs n_max >= 1, got {n_max}")

    is_prime = np.ones(n_max + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, math.isqrt(n_max) + 1):
        if is_prime[i]:
            is_prime[i * i :: i] = False

    mu = np.ones(n_max + 1, dtype=np.int8)
    mu[0] = 0
    for p in np.flatnonzero(is_prime).tolist():
        mu[p::p] *= -1
        square = p * p
        if square <= n_max:
            mu[square::square] = 0

    mertens = np.cumsum(mu, dtype=np.int64).tolist()
    logger.debug("Mobius sieve up to %d done", n_max)
    return MobiusTable(n_max=n_max, values=mu, mertens=mertens)


def _descending_power_sum(n, m):
    terms = np.arange(n, 0, -1, dtype=np.float64) ** (-m)
    return math.fsum(terms.tolist())


def _zeta_tail_bounds(n, s):
    upper = float(n) ** (1 - s) / (s - 1)
    lower = float(n + 1) ** (1 - s) / (s - 1)
    return lower, upper


def _zeta_cutoff(s, eps):
    """Smallest N whose tail bracket has half-width at most eps / 2."""

    def half_width(n):
        lower, upper = _zeta_tail_bounds(n, s)
        return (upper - lower) / 2

    hi = 1
    while half_width(hi) > eps / 2:
        hi *= 2
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if half_width(mid) > eps / 2:
            lo = mid + 1
        else:
            hi = mid
    return hi


def zeta(s, eps=None):
    """
    Riemann zeta at an integer s >= 2, within ``eps``.

    The partial sum up to N is taken in descending order; the tail lies between
    (N+1)^(1-s)/(s-1) and N^(1-s)/(s-1) and is replaced by the midpoint of
    that bracket, so the result never leaves [partial, partial + N^(1-s)/(s-1)].
    """
    if eps is None:
        eps = settings.NILSAT_ZETA_EPS
    if int(s) != s or s < 2:
        raise DomainError(f"zeta is only evaluated at integers s >= 2, got {s}")
    if not eps > 0:
        raise PreconditionError(f"zeta needs eps > 0, got {eps}")
    s = int(s)

    n = _zeta_cutoff(s, eps)
    lower, upper = _zeta_tail_bounds(n, s)
    return _descending_power_sum(n, s) + (lower + upper) / 2


def partial_zeta(n, m):
    """Z_n(m) = 1 + 2^-m + ... + n^-m."""
    n, m = int(n), int(m)
    if n < 1 or m < 0:
        raise PreconditionError(f"partial_zeta needs n >= 1 and m >= 0, got {n}, {m}")
    if m == 0:
        return float(n)
    return _descending_power_sum(n, m)


def _check_ball(r, gamma, k):
    if r < 0 or gamma < 1 or k < 1:
        raise PreconditionError(
            f"need r >= 0, gamma >= 1, k >= 1; got r={r}, gamma={gamma}, k={k}"
        )


def count_ball_multiples(r, gamma, k):
    """Number of tuples in [-r, r]^k whose entries are all divisible by gamma."""
    _check_ball(r, gamma, k)
    return (2 * (r // gamma) + 1) ** k


def primitive_count(t, k, table):
    """
    Number of nonzero tuples in [-t, t]^k with gcd 1.

    Inclusion-exclusion over d: sum of mu(d) * ((2 * (t // d) + 1)^k - 1),
    evaluated on the O(sqrt t) blocks where t // d is constant.
    """
    if t <= 0:
        return 0
    if not table.covers(t):
        raise PreconditionError(
            f"Mobius table covers n <= {table.n_max}, need {t}"
        )
    total = 0
    d = 1
    while d <= t:
        q = t // d
        d_hi = t // q
        mu_sum = table.block_sum(d, d_hi)
        if mu_sum:
            total += mu_sum * ((2 * q + 1) ** k - 1)
        d = d_hi + 1
    return total


def count_gamma_primitive(r, gamma, k, table):
    """
    Number of nonzero tuples in [-r, r]^k whose gcd of absolute values is gamma.

    These are gamma times the primitive tuples of radius r // gamma.
    """
    _check_ball(r, gamma, k)
    return primitive_count(r // gamma, k, table)


def density_multiples(r, gamma, k):
    return count_ball_multiples(r, gamma, k) / (2 * r + 1) ** k


def density_primitive(r, gamma, k, table):
    return count_gamma_primitive(r, gamma, k, table) / (2 * r + 1) ** k


def rate_check_multiples(r, gamma, k):
    """
    Compare the frequency of gamma-multiples in B_r with gamma^-k.

    The bound is 2^(k+1) * k / (r * gamma^(k-1)); everything is exact.
    """
    _check_ball(r, gamma, k)
    if r < gamma:
        raise PreconditionError(f"rate check needs r >= gamma, got r={r}, gamma={gamma}")

    empirical = Fraction(count_ball_multiples(r, gamma, k), (2 * r + 1) ** k)
    limit = Fraction(1, gamma**k)
    return RateReport(
        r=r,
        gamma=gamma,
        k=k,
        empirical=empirical,
        limit=limit,
        residual=abs(empirical - limit),
        bound=Fraction(2 ** (k + 1) * k, r * gamma ** (k - 1)),
    )


def max_multiples_deviation(r, k):
    """Largest |density_multiples(r, gamma, k) - gamma^-k| over 1 <= gamma <= r."""
    return float(
        max(rate_check_multiples(r, gamma, k).residual for gamma in range(1, r + 1))
    )


def max_primitive_deviation(r, k, table, eps=None):
    """
    Largest gamma^(k-1) * |density_primitive(r, gamma, k) - 1/(gamma^k zeta(k))|
    over 1 <= gamma <= r.
    """
    if k < 2:
        raise PreconditionError("primitive densities converge only for k >= 2")
    inv_zeta = 1 / zeta(k, eps)
    volume = (2 * r + 1) ** k
    counts = {}
    worst = 0.0
    for gamma in range(1, r + 1):
        t = r // gamma
        if t not in counts:
            counts[t] = primitive_count(t, k, table)
        deviation = abs(counts[t] / volume - inv_zeta / gamma**k)
        worst = max(worst, gamma ** (k - 1) * deviation)
    return worst
