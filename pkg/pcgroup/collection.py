"""
Arithmetic on normal forms of a polycyclic presentation.

Every public function returns the unique normal form. Two strategies compute
it: collection from the left, which works for any class, and a closed-form
path for class two, which ``multiply`` and friends use automatically. The
generic routines stay reachable through ``fast=False`` so the two can be
checked against each other.
"""
import logging
from dataclasses import dataclass

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

logger = logging.getLogger(__name__)


def _check(P, *elements):
    for element in elements:
        if not P.is_element(element):
            raise ValidationError(
                _("%(coords)s is not a normal form for this presentation."),
                params={"coords": tuple(element)},
            )


# Collection from the left ----------------------------------------------------


def _relation_element(P, kind, key):
    cache_key = (kind, key)
    if cache_key not in P._cache:
        word = (
            P.power_relations.get(key, ())
            if kind == "pow"
            else P.commutator_relations.get(key, ())
        )
        element = P.identity()
        for index, e in word:
            element = _times_generator_power(P, element, index, e)
        P._cache[cache_key] = element
    return P._cache[cache_key]


def _acts_trivially(P, i):
    cache_key = ("central", i)
    if cache_key not in P._cache:
        P._cache[cache_key] = not any(
            (l, i) in P.commutator_relations for l in range(i + 1, P.n)
        )
    return P._cache[cache_key]


def _apply_images(P, images, element):
    result = P.identity()
    for l, c in enumerate(element):
        if c:
            result = _generic_multiply(P, result, _generic_power(P, images[l], c))
    return result


def _conjugation_images(P, i, sign, s):
    """
    Images of g_l (l > i) under conjugation by g_i^(sign * 2^s).

    Conjugation by g_i maps g_l to g_l [g_l, g_i]; the inverse automorphism is
    built from the top of the base down, since g_l's image only involves
    generators after l.
    """
    cache_key = ("conj", i, sign, s)
    if cache_key in P._cache:
        return P._cache[cache_key]

    images = {}
    if s:
        previous = _conjugation_images(P, i, sign, s - 1)
        for l in range(i + 1, P.n):
            images[l] = _apply_images(P, previous, previous[l])
    elif sign > 0:
        for l in range(i + 1, P.n):
            images[l] = _generic_multiply(
                P, P.unit(l), _relation_element(P, "comm", (l, i))
            )
    else:
        for l in reversed(range(i + 1, P.n)):
            correction = _generic_inverse(P, _relation_element(P, "comm", (l, i)))
            images[l] = _generic_multiply(
                P, P.unit(l), _apply_images(P, images, correction)
            )
    P._cache[cache_key] = images
    return images


def _conjugate(P, i, e, element):
    """g_i^-e * element * g_i^e for an element supported after i."""
    if not e or _acts_trivially(P, i):
        return element
    sign = 1 if e > 0 else -1
    e, s = abs(e), 0
    while e:
        if e & 1:
            element = _apply_images(P, _conjugation_images(P, i, sign, s), element)
        e >>= 1
        s += 1
    return element


def _times_generator_power(P, coords, i, e):
    """coords * g_i^e, collected from the left."""
    if not e:
        return coords
    order = P.gens[i].order
    tail = (0,) * (i + 1) + tuple(coords[i + 1 :])
    if any(tail):
        tail = _conjugate(P, i, e, tail)
    exponent = coords[i] + e
    if order is not None:
        q, exponent = divmod(exponent, order)
        if q:
            overflow = _generic_power(P, _relation_element(P, "pow", i), q)
            tail = _generic_multiply(P, overflow, tail)
    return tuple(coords[:i]) + (exponent,) + tail[i + 1 :]


def _generic_multiply(P, a, b):
    result = a
    for i, e in enumerate(b):
        if e:
            result = _times_generator_power(P, result, i, e)
    return result


def _generic_inverse(P, g):
    result = P.identity()
    for i in reversed(range(P.n)):
        if g[i]:
            result = _times_generator_power(P, result, i, -g[i])
    return result


def _generic_power(P, g, n):
    if n < 0:
        g, n = _generic_inverse(P, g), -n
    result = P.identity()
    while n:
        if n & 1:
            result = _generic_multiply(P, result, g)
        n >>= 1
        if n:
            g = _generic_multiply(P, g, g)
    return result


# Class two ------------------------------------------------------------------


@dataclass(frozen=True)
class ClassTwoTables:
    """
    Bilinear data of a class-two presentation.

    ``brackets`` lists (j, i, word) with [g_j, g_i] = word for weight-one
    generators j > i; ``powers`` maps a finite weight-one generator to the
    central word of g_i^order_i.
    """

    brackets: tuple
    powers: dict


def class_two_tables(P):
    """Tables for the closed-form path, or None when P is not of class two."""
    if "class_two" not in P._cache:
        tables = None
        if P.nilpotency_class <= 2:
            tables = ClassTwoTables(
                brackets=tuple(
                    (j, i, word)
                    for (j, i), word in sorted(P.commutator_relations.items())
                ),
                powers=dict(P.power_relations),
            )
        P._cache["class_two"] = tables
    return P._cache["class_two"]


def _normalise(P, tables, e):
    for i, order in enumerate(P.orders):
        if order is not None and not 0 <= e[i] < order:
            q, e[i] = divmod(e[i], order)
            for l, x in tables.powers.get(i, ()):
                e[l] += q * x
    return tuple(e)


def _class_two_multiply(P, tables, a, b):
    e = [x + y for x, y in zip(a, b)]
    for j, i, word in tables.brackets:
        c = a[j] * b[i]
        if c:
            for l, x in word:
                e[l] += c * x
    return _normalise(P, tables, e)


def _class_two_power(P, tables, g, n):
    e = [n * x for x in g]
    pairs = n * (n - 1) // 2
    if pairs:
        for j, i, word in tables.brackets:
            c = pairs * g[j] * g[i]
            if c:
                for l, x in word:
                    e[l] += c * x
    return _normalise(P, tables, e)


# Public API -----------------------------------------------------------------


def identity(P):
    return P.identity()


def multiply(P, a, b, fast=True, check=True):
    """Normal form of a * b."""
    if check:
        _check(P, a, b)
    tables = class_two_tables(P) if fast else None
    if tables is not None:
        return _class_two_multiply(P, tables, a, b)
    return _generic_multiply(P, tuple(a), tuple(b))


def power(P, g, n, fast=True, check=True):
    """Normal form of g^n for any integer n."""
    if check:
        _check(P, g)
    tables = class_two_tables(P) if fast else None
    if tables is not None:
        return _class_two_power(P, tables, g, n)
    return _generic_power(P, tuple(g), n)


def inverse(P, g, fast=True, check=True):
    return power(P, g, -1, fast=fast, check=check)


def commutator(P, a, b, fast=True, check=True):
    """[a, b] = a^-1 b^-1 a b."""
    if check:
        _check(P, a, b)
    a_inv = inverse(P, a, fast=fast, check=False)
    b_inv = inverse(P, b, fast=fast, check=False)
    left = multiply(P, a_inv, b_inv, fast=fast, check=False)
    return multiply(
        P, left, multiply(P, a, b, fast=fast, check=False), fast=fast, check=False
    )


def collect(P, word, fast=True):
    """
    Normal form of an arbitrary word.

    ``word`` is a sequence of (generator, exponent) pairs where the generator
    is an index or a name; generators may repeat and appear in any order.
    """
    result = P.identity()
    for generator, e in word:
        index = P.index(generator) if isinstance(generator, str) else int(generator)
        if not 0 <= index < P.n:
            raise ValidationError(
                _("Generator index %(index)s is out of range."),
                params={"index": index},
            )
        factor = power(P, P.unit(index), e, fast=fast, check=False)
        result = multiply(P, result, factor, fast=fast, check=False)
    return result


def word_of(P, g):
    """The normal word of an element as (index, exponent) pairs."""
    return tuple((i, e) for i, e in enumerate(g) if e)


def format_element(P, g):
    factors = [f"{name}^{e}" for name, e in zip(P.names, g) if e]
    return " ".join(factors) or "1"
