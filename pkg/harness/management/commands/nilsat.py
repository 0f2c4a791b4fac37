import argparse
import io
import logging
import re

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from abelian_eq.validators import parse_equation_text, split_factors
from core.exceptions import NilsatError, WitnessVerificationError
from harness import experiments
from harness.forms import OptionsForm
from harness.reports import write_rows
from harness.selfcheck import run_selfcheck
from harness.utils import resolve_space
from pcgroup.collection import format_element
from sat_tests.utils import classify

logger = logging.getLogger(__name__)

VARIABLE_RE = re.compile(r"^x([1-9]\d*)$")

# Form fields each subcommand needs, and whether it takes --r/--r-grid.
SUBCOMMANDS = {
    "abelian-exact": (("k", "m"), True),
    "abelian-bruteforce": (("k", "m"), True),
    "abelian-mc": (("k", "m", "samples"), True),
    "one-var": (("m",), True),
    "nilpotent-mc": (("group", "k", "samples"), True),
    "zeta": (("s",), False),
    "classify": (("group",), False),
    "selfcheck": ((), False),
}

FLAGS = {
    "--k": int,
    "--m": int,
    "--r": int,
    "--r-grid": str,
    "--samples": int,
    "--seed": int,
    "--group": str,
    "--out": str,
    "--format": str,
    "--brute-force-radius": int,
    "--threads": int,
    "--s": str,
    "--eps": float,
}


def _variable_count(text):
    indices = [
        int(match[1])
        for name, _exponent in split_factors(text)
        if (match := VARIABLE_RE.match(name))
    ]
    return max(indices, default=1)


class Command(BaseCommand):
    help = "Satisfiability of random equations over abelian and nilpotent groups."
    requires_system_checks = []

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(
            dest="subcommand", required=True, parser_class=argparse.ArgumentParser
        )
        for name in SUBCOMMANDS:
            sub = subparsers.add_parser(name)
            for flag, kind in FLAGS.items():
                sub.add_argument(flag, type=kind, default=None)
            if name == "classify":
                sub.add_argument("equation", help="for example 'x1^2 a1^-3 c^1'")

    def handle(self, *args, **options):
        subcommand = options["subcommand"]
        required, needs_radius = SUBCOMMANDS[subcommand]
        data = {
            key: value
            for key, value in options.items()
            if key in OptionsForm.base_fields and value is not None
        }
        form = OptionsForm(data, required=required, needs_radius=needs_radius)
        if not form.is_valid():
            raise CommandError(form.errors.as_text(), returncode=2)
        logger.info("nilsat %s %s", subcommand, data)

        try:
            if subcommand == "selfcheck":
                if not run_selfcheck(self.stdout):
                    raise CommandError("selfcheck failed", returncode=1)
            elif subcommand == "classify":
                self.classify(options["equation"], form.cleaned_data)
            else:
                rows = self.run_experiment(subcommand, form)
                self.emit(subcommand, rows, form.cleaned_data["format"], options["out"])
        except WitnessVerificationError:
            raise
        except (ValidationError, NilsatError) as exc:
            message = "; ".join(exc.messages) if isinstance(exc, ValidationError) else str(exc)
            raise CommandError(message, returncode=3)

    def run_experiment(self, subcommand, form):
        options = form.cleaned_data
        radii = form.radii()
        if subcommand == "abelian-exact":
            return experiments.run_abelian_convergence(
                options["k"], options["m"], radii, options["eps"]
            )
        if subcommand == "abelian-bruteforce":
            cases = [(options["k"], options["m"], r) for r in radii]
            return experiments.run_abelian_bruteforce(cases, options["threads"])
        if subcommand == "abelian-mc":
            return experiments.run_abelian_mc(
                options["k"],
                options["m"],
                radii,
                options["samples"],
                options["seed"],
                options["threads"],
                options["eps"],
            )
        if subcommand == "one-var":
            return experiments.run_one_var(options["m"], radii)
        if subcommand == "nilpotent-mc":
            return experiments.run_nilpotent_mc(
                options["group"],
                options["k"],
                radii,
                options["samples"],
                options["seed"],
                options["brute_force_radius"],
                options["threads"],
                options["eps"],
            )
        return experiments.run_zeta(options["s"], options["eps"])

    def emit(self, subcommand, rows, fmt, out):
        buffer = io.StringIO()
        write_rows(buffer, subcommand, rows, fmt)
        if out:
            with open(out, "w", newline="", encoding="utf-8") as handle:
                handle.write(buffer.getvalue())
        else:
            self.stdout.write(buffer.getvalue(), ending="")

    def classify(self, text, options):
        k = options["k"] or _variable_count(text)
        space = resolve_space(options["group"], k)
        eq = space.equation_from_coordinates(parse_equation_text(text, space.names))
        verdict = classify(space, eq, brute_force_radius=options["brute_force_radius"])
        self.stdout.write(f"status {verdict.status}")
        self.stdout.write(f"certificate {verdict.certificate or '-'}")
        if verdict.witness is not None:
            for i, y in enumerate(verdict.witness.assignments, start=1):
                self.stdout.write(f"x{i} = {format_element(space.group, y)}")
