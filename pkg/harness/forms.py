from django import forms
from django.core.validators import validate_comma_separated_integer_list
from django.utils.translation import gettext_lazy as _

from .reports import DELIMITERS
from .validators import validate_group_spec

FORMAT_CHOICES = tuple((name, name) for name in DELIMITERS)


def _integer_list(value):
    return [int(part) for part in value.split(",")] if value else None


class OptionsForm(forms.Form):
    """
    Flags shared by the nilsat subcommands. Every field is optional unless
    named in ``required``; unset fields come back as None.
    """

    k = forms.IntegerField(min_value=1, required=False)
    m = forms.IntegerField(min_value=1, required=False)
    r = forms.IntegerField(min_value=0, required=False)
    r_grid = forms.CharField(
        required=False, validators=[validate_comma_separated_integer_list]
    )
    samples = forms.IntegerField(min_value=1, required=False)
    seed = forms.IntegerField(min_value=0, required=False)
    group = forms.CharField(required=False, validators=[validate_group_spec])
    format = forms.ChoiceField(choices=FORMAT_CHOICES, required=False)
    brute_force_radius = forms.IntegerField(min_value=0, required=False)
    threads = forms.IntegerField(min_value=1, required=False)
    s = forms.CharField(required=False, validators=[validate_comma_separated_integer_list])
    eps = forms.FloatField(required=False)

    def __init__(self, *args, required=(), needs_radius=False, **kwargs):
        super().__init__(*args, **kwargs)
        self.needs_radius = needs_radius
        for name in required:
            self.fields[name].required = True

    def clean_r_grid(self):
        return _integer_list(self.cleaned_data["r_grid"])

    def clean_s(self):
        values = _integer_list(self.cleaned_data["s"])
        if values is not None and min(values) < 2:
            raise forms.ValidationError(_("zeta is evaluated at s >= 2 only."))
        return values

    def clean_seed(self):
        seed = self.cleaned_data["seed"]
        return 0 if seed is None else seed

    def clean_format(self):
        return self.cleaned_data["format"] or "csv"

    def clean_eps(self):
        eps = self.cleaned_data["eps"]
        if eps is not None and not eps > 0:
            raise forms.ValidationError(_("eps must be positive."))
        return eps

    def radii(self):
        """The --r-grid values, or the single --r."""
        if self.cleaned_data.get("r_grid"):
            return self.cleaned_data["r_grid"]
        if self.cleaned_data.get("r") is not None:
            return [self.cleaned_data["r"]]
        return None

    def clean(self):
        cleaned = super().clean()
        if self.needs_radius and not self.errors and self.radii() is None:
            raise forms.ValidationError(_("Give --r or --r-grid."))
        return cleaned
