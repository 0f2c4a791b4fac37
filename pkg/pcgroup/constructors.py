import logging

from core.exceptions import PreconditionError
from .models import GeneratorSpec, PcPresentation

logger = logging.getLogger(__name__)


def make_free_abelian(m):
    """Z^m on generators a1..am."""
    if m < 1:
        raise PreconditionError(f"rank must be at least 1, got {m}")
    return PcPresentation(
        gens=[GeneratorSpec(f"a{s}") for s in range(1, m + 1)],
        nilpotency_class=1,
        lower_central=True,
    )


def make_cyclic(n):
    """Z/n on a single generator a1."""
    if n < 1:
        raise PreconditionError(f"order must be at least 1, got {n}")
    return PcPresentation(
        gens=[GeneratorSpec("a1", order=n)],
        nilpotency_class=1,
        power_relations={0: ()},
        lower_central=True,
    )


def _pair_name(m, i, j):
    return f"c{i}{j}" if m < 10 else f"c{i}_{j}"


def make_free_nilpotent_class2(m):
    """
    The free nilpotent group of class two and rank m.

    Base a1..am followed by c_ij = [a_j, a_i] for i < j, ordered by (i, j).
    """
    if m < 1:
        raise PreconditionError(f"rank must be at least 1, got {m}")
    gens = [GeneratorSpec(f"a{s}") for s in range(1, m + 1)]
    relations = {}
    for i in range(m):
        for j in range(i + 1, m):
            relations[(j, i)] = ((len(gens), 1),)
            gens.append(GeneratorSpec(_pair_name(m, i + 1, j + 1), weight=2))
    return PcPresentation(
        gens=gens,
        nilpotency_class=2 if m > 1 else 1,
        commutator_relations=relations,
        lower_central=True,
    )


def make_heisenberg():
    """The integral Heisenberg group: a1, a2 and c = c12 = [a2, a1]."""
    free = make_free_nilpotent_class2(2)
    return PcPresentation(
        gens=[free.gens[0], free.gens[1], GeneratorSpec("c", weight=2)],
        nilpotency_class=2,
        commutator_relations=free.commutator_relations,
        lower_central=True,
    )


def _fresh_name(name, taken):
    while name in taken:
        name += "'"
    return name


def direct_product(first, second):
    """
    P x Q with the base sorted by weight; P's generators precede Q's within
    a weight. Clashing names of Q get primes appended.
    """
    taken = set(first.names)
    renamed = []
    for gen in second.gens:
        name = _fresh_name(gen.name, taken)
        taken.add(name)
        renamed.append(
            GeneratorSpec(name, gen.order, gen.weight, gen.in_coefficient_group)
        )

    tagged = [(g.weight, 0, i, g) for i, g in enumerate(first.gens)]
    tagged += [(g.weight, 1, i, g) for i, g in enumerate(renamed)]
    tagged.sort(key=lambda item: item[:3])
    position = {(side, i): new for new, (_w, side, i, _g) in enumerate(tagged)}

    def move(side, word):
        return tuple((position[(side, index)], e) for index, e in word)

    power_relations, commutator_relations = {}, {}
    for side, presentation in ((0, first), (1, second)):
        for i, word in presentation.power_relations.items():
            power_relations[position[(side, i)]] = move(side, word)
        for (j, i), word in presentation.commutator_relations.items():
            commutator_relations[(position[(side, j)], position[(side, i)])] = move(
                side, word
            )
    return PcPresentation(
        gens=[g for *_rest, g in tagged],
        nilpotency_class=max(first.nilpotency_class, second.nilpotency_class),
        power_relations=power_relations,
        commutator_relations=commutator_relations,
        lower_central=first.lower_central and second.lower_central,
    )


def summary(P):
    return P.summary()
