from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(eq=False)
class MobiusTable:
    """
    Values of the Mobius function up to ``n_max`` and their prefix sums.

    Attributes:
        n_max (int): Largest argument covered.
        values (np.ndarray): int8 array of length ``n_max + 1``; ``values[n]`` is
            mu(n) and ``values[0]`` is 0.
        mertens (list[int]): ``mertens[n]`` is mu(1) + ... + mu(n), kept as
            Python ints so block sums mix freely with exact counts.
    """

    n_max: int
    values: np.ndarray
    mertens: list

    def mu(self, n):
        return int(self.values[n])

    def covers(self, n):
        return n <= self.n_max

    def block_sum(self, lo, hi):
        """Sum of mu(d) for lo <= d <= hi."""
        return self.mertens[hi] - self.mertens[lo - 1]


@dataclass(frozen=True)
class RateReport:
    """
    Deviation of the frequency of gamma-multiples in a ball from its limit.

    All quantities are exact rationals; ``residual`` is exactly
    ``abs(empirical - limit)``.
    """

    r: int
    gamma: int
    k: int
    empirical: Fraction
    limit: Fraction
    residual: Fraction
    bound: Fraction

    @property
    def holds(self):
        return self.residual <= self.bound
