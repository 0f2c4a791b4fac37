import functools
import logging

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from pcgroup.constructors import (
    direct_product,
    make_cyclic,
    make_free_abelian,
    make_free_nilpotent_class2,
    make_heisenberg,
)
from pcgroup.loaders import load_presentation
from pcgroup.models import EquationSpace, PcPresentation
from pcgroup.spaces import build_equation_space
from .validators import validate_group_spec

logger = logging.getLogger(__name__)

BUILDERS = {
    "abelian": make_free_abelian,
    "cyclic": make_cyclic,
    "free-nilpotent": make_free_nilpotent_class2,
}


def _resolve_factor(factor):
    if factor == "heisenberg":
        return make_heisenberg()
    kind, _sep, argument = factor.partition(":")
    if kind == "file":
        return load_presentation(argument)
    return BUILDERS[kind](int(argument))


def resolve_group_spec(spec):
    """
    Presentation (or, for a G_X file, equation space) named by a group spec.

    Factors joined by ``*`` are combined with ``direct_product``; a file
    holding an equation space cannot be a factor of a product.
    """
    validate_group_spec(spec)
    groups = [_resolve_factor(factor) for factor in spec.split("*")]
    if len(groups) > 1 and any(isinstance(g, EquationSpace) for g in groups):
        raise ValidationError(
            _("An equation space file cannot be part of a direct product.")
        )
    return functools.reduce(direct_product, groups)


def resolve_space(spec, k):
    """
    Equation space with k variables over the group a spec or presentation names.

    Loaded equation spaces are taken as they are; k must match them.
    """
    group = spec if isinstance(spec, (PcPresentation, EquationSpace)) else resolve_group_spec(spec)
    if isinstance(group, EquationSpace):
        if group.k != k:
            raise ValidationError(
                _("The equation space has %(have)s variables, not %(want)s."),
                params={"have": group.k, "want": k},
            )
        return group
    logger.debug("building equation space with %d variables", k)
    return build_equation_space(group, k)
