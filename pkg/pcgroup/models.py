from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

# A group element is its coordinate tuple in the presentation's base.
GroupElement = Tuple[int, ...]


@dataclass(frozen=True)
class GeneratorSpec:
    """
    One entry of a polycyclic base.

    Attributes:
        name (str): Printable name, unique within a presentation.
        order (int | None): Relative order, ``None`` for infinite.
        weight (int): Lower central weight.
        in_coefficient_group (bool): False for variables and for the commutator
            generators an equation space adds on top of G.
    """

    name: str
    order: Optional[int] = None
    weight: int = 1
    in_coefficient_group: bool = True

    @property
    def is_finite(self):
        return self.order is not None


@dataclass(frozen=True)
class GroupSummary:
    hirsch: int
    torsion_order: int
    abelian_rank: int


def _word(word):
    return tuple((int(index), int(exponent)) for index, exponent in word)


@dataclass(frozen=True, eq=False)
class PcPresentation:
    """
    Polycyclic presentation of a nilpotent group.

    ``power_relations[i]`` is the word equal to g_i^order_i and
    ``commutator_relations[(j, i)]``, for j > i, the word equal to
    [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i. Words are tuples of
    (generator index, exponent) over strictly later generators; missing
    relations are trivial. Instances are immutable; ``_cache`` only memoises
    values derived from the relations.
    """

    gens: tuple
    nilpotency_class: int
    power_relations: dict = field(default_factory=dict)
    commutator_relations: dict = field(default_factory=dict)
    lower_central: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(
            self,
            "power_relations",
            {int(i): _word(w) for i, w in self.power_relations.items()},
        )
        object.__setattr__(
            self,
            "commutator_relations",
            {
                (int(j), int(i)): _word(w)
                for (j, i), w in self.commutator_relations.items()
                if w
            },
        )
        self._validate()

    def _validate(self):
        n = len(self.gens)
        names = [g.name for g in self.gens]
        if len(set(names)) != n:
            raise ValidationError(_("Generator names must be unique."))
        if self.nilpotency_class < 1 and n:
            raise ValidationError(_("The nilpotency class must be at least 1."))
        for i, gen in enumerate(self.gens):
            if gen.order is not None and gen.order < 1:
                raise ValidationError(
                    _("Generator %(name)s has order %(order)s."),
                    params={"name": gen.name, "order": gen.order},
                )
            if not 1 <= gen.weight <= self.nilpotency_class:
                raise ValidationError(
                    _("Generator %(name)s has weight outside 1..class."),
                    params={"name": gen.name},
                )
            if i and gen.weight < self.gens[i - 1].weight:
                raise ValidationError(
                    _("Weights must not decrease along the base (at %(name)s)."),
                    params={"name": gen.name},
                )

        for i, word in self.power_relations.items():
            if not 0 <= i < n or self.gens[i].order is None:
                raise ValidationError(
                    _("Power relation given for a generator without finite order.")
                )
            self._check_word(word, after=i, min_weight=self.gens[i].weight + 1)

        for (j, i), word in self.commutator_relations.items():
            if not 0 <= i < j < n:
                raise ValidationError(
                    _("Commutator relation [%(j)s, %(i)s] must name a later generator first."),
                    params={"j": j, "i": i},
                )
            weight = self.gens[j].weight + self.gens[i].weight
            if weight > self.nilpotency_class:
                raise ValidationError(
                    _("Commutator [%(a)s, %(b)s] exceeds the nilpotency class."),
                    params={"a": self.gens[j].name, "b": self.gens[i].name},
                )
            self._check_word(word, after=j, min_weight=weight)

    def _check_word(self, word, after, min_weight):
        for index, _exponent in word:
            if not after < index < len(self.gens):
                raise ValidationError(
                    _("Relation words may only use generators later than %(name)s."),
                    params={"name": self.gens[after].name},
                )
            if self.gens[index].weight < min_weight:
                raise ValidationError(
                    _("Relation word uses %(name)s of too low weight."),
                    params={"name": self.gens[index].name},
                )

    @property
    def n(self):
        return len(self.gens)

    @property
    def names(self):
        return tuple(g.name for g in self.gens)

    @property
    def orders(self):
        return tuple(g.order for g in self.gens)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(
                _("Unknown generator %(name)s."), params={"name": name}
            )

    def identity(self):
        return (0,) * self.n

    def unit(self, i):
        coords = [0] * self.n
        coords[i] = 1
        if self.gens[i].order == 1:
            coords[i] = 0
        return tuple(coords)

    def is_element(self, coords):
        if len(coords) != self.n:
            return False
        return all(
            order is None or 0 <= c < order for c, order in zip(coords, self.orders)
        )

    def element(self, coords):
        """Validated coordinate tuple."""
        coords = tuple(int(c) for c in coords)
        if not self.is_element(coords):
            raise ValidationError(
                _("%(coords)s is not a normal form for this presentation."),
                params={"coords": coords},
            )
        return coords

    def summary(self):
        from core.exceptions import PreconditionError

        if not self.lower_central:
            raise PreconditionError(
                "summary needs a base flagged as lower central"
            )
        torsion = 1
        for gen in self.gens:
            if gen.order is not None:
                torsion *= gen.order
        return GroupSummary(
            hirsch=sum(1 for g in self.gens if g.order is None),
            torsion_order=torsion,
            abelian_rank=sum(
                1 for g in self.gens if g.order is None and g.weight == 1
            ),
        )


@dataclass(frozen=True)
class NilpotentEquation:
    """
    Normal form x_1^gamma_1 ... x_k^gamma_k f_1^delta_1 ... f_p^delta_p over
    the tail f of an equation space.
    """

    gamma: tuple
    delta: tuple

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(int(c) for c in self.gamma))
        object.__setattr__(self, "delta", tuple(int(c) for c in self.delta))

    @property
    def norm(self):
        return max((abs(c) for c in self.gamma + self.delta), default=0)

    @property
    def coordinates(self):
        return self.gamma + self.delta


@dataclass(frozen=True)
class TailEntry:
    """
    A non-variable generator of G_X as seen by the equation walk.

    ``definition`` is ``(left, right)`` (indices in G_X) when the generator is
    the commutator [g_left, g_right] of earlier generators and lies outside G.
    """

    name: str
    index: int
    in_g: bool
    order: Optional[int]
    weight: int
    group_index: Optional[int] = None
    definition: Optional[tuple] = None


@dataclass(frozen=True, eq=False)
class EquationSpace:
    """
    The equation space G_X with its tail description.

    Attributes:
        presentation (PcPresentation): G_X itself.
        group (PcPresentation): The coefficient group G.
        variables (tuple[int]): Indices of x_1..x_k in G_X.
        tail (tuple[TailEntry]): The remaining generators, in equation order.
    """

    presentation: PcPresentation
    group: PcPresentation
    variables: tuple
    tail: tuple

    @property
    def k(self):
        return len(self.variables)

    @cached_property
    def tail_position(self):
        return {entry.index: p for p, entry in enumerate(self.tail)}

    @property
    def names(self):
        gx = self.presentation
        return tuple(gx.gens[i].name for i in self.variables) + tuple(
            entry.name for entry in self.tail
        )

    @property
    def coordinate_orders(self):
        return (None,) * self.k + tuple(entry.order for entry in self.tail)

    def equation_from_coordinates(self, coordinates):
        coordinates = list(coordinates)
        return NilpotentEquation(coordinates[: self.k], coordinates[self.k :])

    def validate_equation(self, eq):
        if len(eq.gamma) != self.k or len(eq.delta) != len(self.tail):
            raise ValidationError(
                _("The equation does not have the shape of this equation space.")
            )
        for entry, value in zip(self.tail, eq.delta):
            if entry.order is not None and not 0 <= value < entry.order:
                raise ValidationError(
                    _("Exponent %(value)s of %(name)s is outside 0..%(top)s."),
                    params={
                        "value": value,
                        "name": entry.name,
                        "top": entry.order - 1,
                    },
                )
        return eq
