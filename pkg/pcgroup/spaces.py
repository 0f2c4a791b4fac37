import logging

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from abelian_eq.models import AbelianEquation
from core.exceptions import PreconditionError, UnsupportedPresentation
from .collection import commutator, multiply, power
from .models import EquationSpace, GeneratorSpec, PcPresentation, TailEntry

logger = logging.getLogger(__name__)


def build_equation_space(P, k):
    """
    G_X = G * F(x_1..x_k) modulo class three, for G of class at most two.

    Base: the variables, G's weight-one generators, [x_i, x_j] for i < j,
    [x_i, a_s] for each weight-one a_s of G (of the order of a_s), then G's
    weight-two generators. The commutator generators outside G are built
    even when G is abelian.
    """
    if k < 1:
        raise PreconditionError(f"need at least one variable, got k={k}")
    if P.nilpotency_class > 2:
        raise UnsupportedPresentation(
            f"equation spaces are built for class at most 2, got {P.nilpotency_class}"
        )
    if not P.lower_central:
        raise UnsupportedPresentation("the base of G must refine the lower central series")

    top = [i for i, g in enumerate(P.gens) if g.weight == 1]
    central = [i for i, g in enumerate(P.gens) if g.weight == 2]

    gens = [GeneratorSpec(f"x{i}", in_coefficient_group=False) for i in range(1, k + 1)]
    where = {}
    for s in top:
        where[s] = len(gens)
        gens.append(P.gens[s])

    pair = {}
    for i in range(k):
        for j in range(i + 1, k):
            pair[(i, j)] = len(gens)
            gens.append(
                GeneratorSpec(f"[x{i + 1},x{j + 1}]", weight=2, in_coefficient_group=False)
            )
    mixed = {}
    for i in range(k):
        for s in top:
            mixed[(i, s)] = len(gens)
            gens.append(
                GeneratorSpec(
                    f"[x{i + 1},{P.gens[s].name}]",
                    order=P.gens[s].order,
                    weight=2,
                    in_coefficient_group=False,
                )
            )
    for s in central:
        where[s] = len(gens)
        gens.append(P.gens[s])

    def move(word):
        return tuple((where[index], e) for index, e in word)

    power_relations = {where[i]: move(w) for i, w in P.power_relations.items()}
    for (i, s), index in mixed.items():
        if P.gens[s].order is not None:
            power_relations[index] = ()
    commutator_relations = {
        (where[j], where[i]): move(w) for (j, i), w in P.commutator_relations.items()
    }
    # [x_j, x_i] = [x_i, x_j]^-1 and [a_s, x_i] = [x_i, a_s]^-1
    for (i, j), index in pair.items():
        commutator_relations[(j, i)] = ((index, -1),)
    for (i, s), index in mixed.items():
        commutator_relations[(where[s], i)] = ((index, -1),)

    gx = PcPresentation(
        gens=gens,
        nilpotency_class=2,
        power_relations=power_relations,
        commutator_relations=commutator_relations,
        lower_central=True,
    )

    tail = []
    definitions = {index: (i, j) for (i, j), index in pair.items()}
    definitions.update({index: (i, where[s]) for (i, s), index in mixed.items()})
    group_index = {gx_index: s for s, gx_index in where.items()}
    for index in range(k, gx.n):
        gen = gx.gens[index]
        tail.append(
            TailEntry(
                name=gen.name,
                index=index,
                in_g=gen.in_coefficient_group,
                order=gen.order,
                weight=gen.weight,
                group_index=group_index.get(index),
                definition=definitions.get(index),
            )
        )
    logger.debug("built G_X with %d generators for k=%d", gx.n, k)
    return EquationSpace(presentation=gx, group=P, variables=tuple(range(k)), tail=tuple(tail))


def space_from_presentation(gx, tail_order=None):
    """
    Read the equation-space structure off a presentation of G_X.

    Variables are the weight-one generators outside G. Every other generator
    outside G must be defined by a commutator relation whose word is exactly
    that generator. G is the subgroup on the remaining generators, which must
    be closed under the relations.
    """
    variables = tuple(
        i for i, g in enumerate(gx.gens) if not g.in_coefficient_group and g.weight == 1
    )
    if not variables:
        raise ValidationError(_("G_X has no variables (non-G weight-one generators)."))

    inside = [i for i, g in enumerate(gx.gens) if g.in_coefficient_group]
    position = {index: s for s, index in enumerate(inside)}

    def restrict(word):
        moved = []
        for index, e in word:
            if index not in position:
                raise ValidationError(
                    _("A relation among generators of G uses %(name)s."),
                    params={"name": gx.gens[index].name},
                )
            moved.append((position[index], e))
        return tuple(moved)

    group = PcPresentation(
        gens=[gx.gens[i] for i in inside],
        nilpotency_class=max((gx.gens[i].weight for i in inside), default=1),
        power_relations={
            position[i]: restrict(w)
            for i, w in gx.power_relations.items()
            if i in position
        },
        commutator_relations={
            (position[j], position[i]): restrict(w)
            for (j, i), w in gx.commutator_relations.items()
            if i in position and j in position
        },
        lower_central=gx.lower_central,
    )

    definitions = {}
    for (j, i), word in gx.commutator_relations.items():
        if len(word) == 1 and word[0][1] == 1:
            definitions.setdefault(word[0][0], (j, i))

    others = [i for i in range(gx.n) if i not in variables]
    if tail_order is None:
        tail_order = others
    elif sorted(tail_order) != others:
        raise ValidationError(_("The tail must list every non-variable generator once."))

    tail = []
    for index in tail_order:
        gen = gx.gens[index]
        definition = None
        if not gen.in_coefficient_group:
            if index not in definitions:
                raise ValidationError(
                    _("Generator %(name)s is neither in G nor a defined commutator."),
                    params={"name": gen.name},
                )
            definition = definitions[index]
        tail.append(
            TailEntry(
                name=gen.name,
                index=index,
                in_g=gen.in_coefficient_group,
                order=gen.order,
                weight=gen.weight,
                group_index=position.get(index),
                definition=definition,
            )
        )
    walked = [entry.group_index for entry in tail if entry.in_g]
    if walked != sorted(walked):
        raise ValidationError(_("The tail must list G's generators in G's base order."))
    return EquationSpace(presentation=gx, group=group, variables=variables, tail=tuple(tail))


def image(space, index, assignment, cache=None):
    """Image in G of the G_X generator ``index`` under x_i -> assignment[i]."""
    cache = {} if cache is None else cache
    if index in cache:
        return cache[index]
    G = space.group
    gen = space.presentation.gens[index]
    if index in space.variables:
        value = assignment[space.variables.index(index)]
    elif gen.in_coefficient_group:
        value = G.unit(space.tail[space.tail_position[index]].group_index)
    else:
        left, right = space.tail[space.tail_position[index]].definition
        value = commutator(
            G,
            image(space, left, assignment, cache),
            image(space, right, assignment, cache),
            check=False,
        )
    cache[index] = value
    return value


def evaluate(space, eq, assignment, check=True):
    """The value in G of the equation under x_i -> assignment[i]."""
    G = space.group
    if check:
        space.validate_equation(eq)
        if len(assignment) != space.k:
            raise ValidationError(_("The assignment needs one element per variable."))
        for y in assignment:
            G.element(y)
    value = G.identity()
    for y, e in zip(assignment, eq.gamma):
        if e:
            value = multiply(G, value, power(G, y, e, check=False), check=False)
    cache = {}
    for entry, e in zip(space.tail, eq.delta):
        if e:
            factor = power(G, image(space, entry.index, assignment, cache), e, check=False)
            value = multiply(G, value, factor, check=False)
    return value


def abelianization_image(space, eq):
    """
    The equation read in G/[G,G] modulo torsion, as an equation over Z^m.

    Only G's infinite weight-one generators survive; commutator generators and
    torsion map to the identity.
    """
    space.validate_equation(eq)
    alpha = [
        e
        for entry, e in zip(space.tail, eq.delta)
        if entry.in_g and entry.weight == 1 and entry.order is None
    ]
    return AbelianEquation(eq.gamma, alpha)
