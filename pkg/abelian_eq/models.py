from dataclasses import dataclass

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

STATUS_CHOICES = (
    (SAT, _("Satisfiable")),
    (UNSAT, _("Unsatisfiable")),
    (UNKNOWN, _("Unknown")),
)

ZERO_EXPONENT_CERTIFICATE = "nonzero constant, zero exponent"


def _int_tuple(values):
    return tuple(int(v) for v in values)


@dataclass(frozen=True)
class AbelianEquation:
    """
    Normal form x_1^gamma_1 ... x_k^gamma_k a_1^alpha_1 ... a_m^alpha_m of an
    equation over the free abelian group of rank m.

    ``alpha`` may be empty: the image of an equation over a group whose
    abelianization is finite lives over Z^0.
    """

    gamma: tuple
    alpha: tuple

    def __post_init__(self):
        object.__setattr__(self, "gamma", _int_tuple(self.gamma))
        object.__setattr__(self, "alpha", _int_tuple(self.alpha))
        if not self.gamma:
            raise ValidationError(_("An equation needs at least one variable."))

    @property
    def k(self):
        return len(self.gamma)

    @property
    def m(self):
        return len(self.alpha)

    @property
    def coordinates(self):
        return self.gamma + self.alpha


@dataclass(frozen=True)
class AbelianWitness:
    """One vector of Z^m per variable."""

    assignments: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "assignments", tuple(_int_tuple(a) for a in self.assignments)
        )

    def substitute(self, equation):
        """Value of the equation under this assignment, as a vector of Z^m."""
        value = list(equation.alpha)
        for g, x in zip(equation.gamma, self.assignments):
            for j, coordinate in enumerate(x):
                value[j] += g * coordinate
        return tuple(value)

    def solves(self, equation):
        return len(self.assignments) == equation.k and not any(
            self.substitute(equation)
        )


@dataclass(frozen=True)
class SatVerdict:
    """
    Three-valued classification result.

    A SAT verdict always carries a verified witness, an UNKNOWN verdict never
    does. ``certificate`` explains UNSAT verdicts.
    """

    status: str
    witness: object = None
    certificate: str = ""

    def __post_init__(self):
        if self.status not in dict(STATUS_CHOICES):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == SAT and self.witness is None:
            raise ValueError("a SAT verdict needs a witness")
        if self.status == UNKNOWN and self.witness is not None:
            raise ValueError("an UNKNOWN verdict cannot carry a witness")

    @property
    def is_sat(self):
        return self.status == SAT

    @property
    def is_unsat(self):
        return self.status == UNSAT


@dataclass(frozen=True)
class AbelianSpace:
    """The equation space A_X: k variables over the free abelian group of rank m."""

    k: int
    m: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValidationError(_("k and m must both be at least 1."))

    @property
    def names(self):
        return tuple(f"x{i}" for i in range(1, self.k + 1)) + tuple(
            f"a{j}" for j in range(1, self.m + 1)
        )

    @property
    def coordinate_orders(self):
        return (None,) * (self.k + self.m)

    def equation_from_coordinates(self, coordinates):
        coordinates = list(coordinates)
        return AbelianEquation(coordinates[: self.k], coordinates[self.k :])
