import re

from django.core import validators
from django.utils.deconstruct import deconstructible
from django.utils.translation import gettext_lazy as _

GROUP_FACTOR = r"(abelian:[1-9]\d*|cyclic:[1-9]\d*|free-nilpotent:[1-9]\d*|heisenberg|file:[^*]+)"


@deconstructible
class GroupSpecValidator(validators.RegexValidator):
    regex = rf"^{GROUP_FACTOR}(\*{GROUP_FACTOR})*$"
    message = _(
        "Enter a group such as abelian:2, heisenberg, free-nilpotent:3, "
        "cyclic:4 or file:path, or several joined with *."
    )
    flags = re.ASCII


validate_group_spec = GroupSpecValidator()
