import re

from django.core import validators
from django.core.exceptions import ValidationError
from django.utils.deconstruct import deconstructible
from django.utils.translation import gettext_lazy as _

from .models import AbelianEquation


@deconstructible
class EquationFactorValidator(validators.RegexValidator):
    regex = r"^[^\s^]+(\^[+-]?\d+)?$"
    message = _(
        "Enter factors of the form name^exponent separated by spaces, "
        "for example x1^2 x2^-3 a1^4."
    )
    flags = re.ASCII


validate_factor = EquationFactorValidator()

ABELIAN_NAME_RE = re.compile(r"^(?P<kind>[xa])(?P<index>[1-9]\d*)$")


def split_factors(text):
    """
    Parse equation text into (name, exponent) pairs, in the order written.

    A factor without ``^`` has exponent 1. Each name may occur once.
    """
    factors = []
    seen = set()
    for token in text.split():
        validate_factor(token)
        name, _caret, exponent = token.partition("^")
        if name in seen:
            raise ValidationError(
                _("Generator %(name)s occurs more than once."),
                code="duplicate",
                params={"name": name},
            )
        seen.add(name)
        factors.append((name, int(exponent) if exponent else 1))
    return factors


def parse_equation_text(text, names):
    """
    Exponent vector over ``names`` (canonical order) for the given text.

    Omitted generators get exponent 0.
    """
    position = {name: i for i, name in enumerate(names)}
    coordinates = [0] * len(names)
    for name, exponent in split_factors(text):
        if name not in position:
            raise ValidationError(
                _("Unknown generator %(name)s."),
                code="unknown",
                params={"name": name},
            )
        coordinates[position[name]] = exponent
    return coordinates


def parse_abelian_equation(text, k=None, m=None):
    """
    Read an equation over a free abelian group from ``x<i>^<e>`` and
    ``a<j>^<e>`` factors. ``k`` and ``m`` default to the largest index used
    (at least 1).
    """
    factors = split_factors(text)
    largest = {"x": 0, "a": 0}
    for name, _exponent in factors:
        match = ABELIAN_NAME_RE.match(name)
        if not match:
            raise ValidationError(
                _("Unknown generator %(name)s; use x<i> or a<j>."),
                code="unknown",
                params={"name": name},
            )
        kind, index = match["kind"], int(match["index"])
        largest[kind] = max(largest[kind], index)

    k = k or max(largest["x"], 1)
    m = m or max(largest["a"], 1)
    if largest["x"] > k or largest["a"] > m:
        raise ValidationError(
            _("The equation uses more generators than k=%(k)s, m=%(m)s allow."),
            code="range",
            params={"k": k, "m": m},
        )

    gamma, alpha = [0] * k, [0] * m
    for name, exponent in factors:
        index = int(name[1:]) - 1
        (gamma if name[0] == "x" else alpha)[index] = exponent
    return AbelianEquation(gamma, alpha)


def format_equation_text(names, coordinates):
    """Text form of a normal word, skipping zero exponents; ``1`` when empty."""
    factors = [f"{name}^{c}" for name, c in zip(names, coordinates) if c]
    return " ".join(factors) or "1"
