import math
from dataclasses import dataclass

# Two-sided 95% normal quantile.
Z95 = 1.959963984540054


def wilson_interval(hits, total, z=Z95):
    """Wilson score interval for hits/total, clamped to contain the point."""
    p = hits / total
    z2 = z * z
    denominator = 1 + z2 / total
    centre = (p + z2 / (2 * total)) / denominator
    half = z * math.sqrt(p * (1 - p) / total + z2 / (4 * total * total)) / denominator
    low = min(max(0.0, centre - half), p)
    high = max(min(1.0, centre + half), p)
    return low, high


@dataclass(frozen=True)
class DensityEstimate:
    """
    Monte Carlo frequency with its 95% Wilson interval.

    Attributes:
        hits (int): Samples satisfying the predicate.
        total (int): Samples drawn.
        point (float): hits / total.
        ci_low (float): Lower interval end.
        ci_high (float): Upper interval end.
        seed (int): Master seed the samples were drawn with.
        r (int): Ball radius.
    """

    hits: int
    total: int
    point: float
    ci_low: float
    ci_high: float
    seed: int
    r: int

    def __post_init__(self):
        if not 0 <= self.hits <= self.total or self.total < 1:
            raise ValueError(f"need 0 <= hits <= total, total >= 1; got {self.hits}/{self.total}")
        if not 0 <= self.ci_low <= self.point <= self.ci_high <= 1:
            raise ValueError(
                f"interval [{self.ci_low}, {self.ci_high}] does not contain {self.point}"
            )

    @classmethod
    def from_counts(cls, hits, total, seed, r):
        low, high = wilson_interval(hits, total)
        return cls(hits, total, hits / total, low, high, seed, r)

    @property
    def sigma(self):
        return math.sqrt(self.point * (1 - self.point) / self.total)

    def contains(self, value):
        return self.ci_low <= value <= self.ci_high


@dataclass(frozen=True)
class BracketReport:
    """
    Certified-SAT and abelian-solvable frequencies for one radius, with the
    limits that bracket the satisfiable density from below and above.
    """

    r: int
    samples: int
    sat_certified_fraction: DensityEstimate
    abelian_solvable_fraction: DensityEstimate
    unknown_fraction: float
    lower_limit: float
    upper_limit: float

    def __post_init__(self):
        if self.sat_certified_fraction.hits > self.abelian_solvable_fraction.hits:
            raise ValueError("certified SAT equations must be abelian-solvable")

    @property
    def relative_certified(self):
        """Share of abelian-solvable samples that were certified SAT."""
        solvable = self.abelian_solvable_fraction.hits
        return self.sat_certified_fraction.hits / solvable if solvable else 0.0
