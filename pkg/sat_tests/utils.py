import itertools
import logging
import math

from abelian_eq.models import SAT, UNKNOWN, UNSAT, SatVerdict
from abelian_eq.utils import decide
from core.decorators import within_budget
from core.exceptions import PreconditionError, WitnessVerificationError
from numtheory.utils import ext_gcd
from pcgroup.collection import multiply, power
from pcgroup.spaces import abelianization_image, evaluate
from .models import NilpotentWitness

logger = logging.getLogger(__name__)

UNKNOWN_CERTIFICATE = "no certificate found"


def _verified(space, eq, assignments, source):
    witness = NilpotentWitness(assignments)
    if not witness.solves(space, eq):
        raise WitnessVerificationError(
            f"{source} produced {witness.assignments}, which does not solve {eq}"
        )
    return SatVerdict(SAT, witness=witness)


def _identity_assignment(space):
    return [space.group.identity()] * space.k


def solved_by_identity(space, eq):
    """True when the equation is already the identity of G with every x_i = 1."""
    value = evaluate(space, eq, _identity_assignment(space), check=False)
    return value == space.group.identity()


def test_abelianization(space, eq):
    """
    UNSAT verdict when the image over G/[G,G] modulo torsion is unsolvable,
    otherwise None. Solutions in G map to solutions there, so a refutation
    of the image refutes the equation.
    """
    space.validate_equation(eq)
    if not space.group.lower_central:
        return None
    verdict = decide(abelianization_image(space, eq))
    if verdict.is_unsat:
        return SatVerdict(UNSAT, certificate=f"abelianization: {verdict.certificate}")
    return None


def _step(gamma, residue, order):
    """
    t with t * gamma + residue = 0, modulo ``order`` when it is finite, or
    None when there is none.
    """
    if order is None:
        if residue % gamma:
            return None
        return -residue // gamma
    g = math.gcd(gamma, order)
    if residue % g:
        return None
    modulus = order // g
    if modulus == 1:
        return 0
    return (-(residue // g) * pow(gamma // g, -1, modulus)) % modulus


def t_construction(space, eq):
    """
    Build a solution generator by generator along the tail.

    y starts at the identity. For each tail generator f_i of G, in G's base
    order, the f_i-coordinate of the current value is cancelled by multiplying
    every y_j by f_i^(t * xi_j), where xi are Bezout coefficients of the
    variable exponents; that changes the coordinate by exactly t * gamma and
    leaves earlier coordinates alone. Returns a SAT verdict with a verified
    witness, or None when a divisibility (or congruence) check fails.
    """
    space.validate_equation(eq)
    G = space.group
    identity = G.identity()
    y = _identity_assignment(space)
    value = evaluate(space, eq, y, check=False)
    if value == identity:
        return _verified(space, eq, y, "identity assignment")

    gamma, xi = ext_gcd(eq.gamma)
    if gamma == 0 or not G.lower_central:
        return None

    for entry in space.tail:
        if not entry.in_g:
            continue
        s = entry.group_index
        t = _step(gamma, value[s], G.gens[s].order)
        if t is None:
            logger.debug("t-construction stops at %s (coordinate %d)", entry.name, value[s])
            return None
        if t:
            unit = G.unit(s)
            y = [
                multiply(G, y_j, power(G, unit, t * xi_j, check=False), check=False)
                for y_j, xi_j in zip(y, xi)
            ]
            value = evaluate(space, eq, y, check=False)
    return _verified(space, eq, y, "t-construction")


def _ball_ranges(G, radius):
    return [
        range(-radius, radius + 1) if order is None else range(min(order - 1, radius) + 1)
        for order in G.orders
    ]


def _search_volume(space, eq, radius, **options):
    size = math.prod(len(r) for r in _ball_ranges(space.group, radius))
    return size**space.k


@within_budget(volume=_search_volume, what="brute-force search")
def brute_force_search(space, eq, radius, *, budget=None):
    """
    Try every assignment with coordinates in the ball of the given radius.

    Weight-one coordinates are chosen first and kept only when they solve the
    equation in G/[G,G]; deeper coordinates are enumerated for the survivors.
    Returns the first verified SAT verdict, or None.
    """
    space.validate_equation(eq)
    if radius < 0:
        raise PreconditionError(f"radius must be nonnegative, got {radius}")
    G = space.group
    ranges = _ball_ranges(G, radius)
    top = [s for s, g in enumerate(G.gens) if g.weight == 1] if G.lower_central else []
    deep = [s for s in range(G.n) if s not in top]

    target = dict.fromkeys(top, 0)
    for entry, d in zip(space.tail, eq.delta):
        if entry.in_g and entry.group_index in target:
            target[entry.group_index] = d

    def abelian_image_vanishes(choice):
        for position, s in enumerate(top):
            total = target[s] + sum(
                g * part[position] for g, part in zip(eq.gamma, choice)
            )
            order = G.gens[s].order
            if order is not None:
                total %= order
            if total:
                return False
        return True

    identity = G.identity()
    top_choices = list(itertools.product(*(ranges[s] for s in top)))
    deep_choices = list(itertools.product(*(ranges[s] for s in deep)))
    for choice in itertools.product(top_choices, repeat=space.k):
        if not abelian_image_vanishes(choice):
            continue
        for fill in itertools.product(deep_choices, repeat=space.k):
            y = []
            for head, rest in zip(choice, fill):
                coords = [0] * G.n
                for s, c in zip(top, head):
                    coords[s] = c
                for s, c in zip(deep, rest):
                    coords[s] = c
                y.append(tuple(coords))
            if evaluate(space, eq, y, check=False) == identity:
                return _verified(space, eq, y, "brute-force search")
    return None


def classify(space, eq, brute_force_radius=None, budget=None):
    """
    Three-valued verdict: identity assignment, then the abelianization test,
    then the t-construction, then (when a radius is given) brute force.
    """
    space.validate_equation(eq)
    if solved_by_identity(space, eq):
        return _verified(space, eq, _identity_assignment(space), "identity assignment")

    refuted = test_abelianization(space, eq)
    if refuted is not None:
        return refuted

    constructed = t_construction(space, eq)
    if constructed is not None:
        return constructed

    if brute_force_radius is not None:
        found = brute_force_search(space, eq, brute_force_radius, budget=budget)
        if found is not None:
            return found
    return SatVerdict(UNKNOWN, certificate=UNKNOWN_CERTIFICATE)
