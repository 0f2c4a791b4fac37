"""
Reader for the line-oriented presentation format.

    # comment
    class 2
    lowercentral
    gen a1 order inf weight 1 ing 1
    gen a2 order inf weight 1 ing 1
    gen c order inf weight 2 ing 1
    comm a2 a1 = c^1
    pow <g> = <word>
    tail <name> <name> ...

``comm g h = w`` means [g, h] = w with g later in the base. Words are
space-separated ``name^exp`` factors; an empty word is the identity.
A file whose generators are all in G describes G; a file with generators
outside G describes an equation space G_X, and only such a file may carry a
``tail`` line.
"""
import logging
from pathlib import Path

from django.core.exceptions import ValidationError

from abelian_eq.validators import split_factors
from .models import GeneratorSpec, PcPresentation
from .spaces import space_from_presentation

logger = logging.getLogger(__name__)

GEN_KEYS = ("order", "weight", "ing")


def _error(number, message):
    return ValidationError(f"line {number}: {message}", code="presentation")


def _parse_int(number, text, what):
    try:
        return int(text)
    except ValueError:
        raise _error(number, f"{what} must be an integer, got {text!r}")


def _parse_gen(number, fields):
    if len(fields) != 8 or tuple(fields[2::2]) != GEN_KEYS:
        raise _error(number, "expected 'gen <name> order <n|inf> weight <w> ing <0|1>'")
    name, order, weight, ing = fields[1], fields[3], fields[5], fields[7]
    order = None if order == "inf" else _parse_int(number, order, "order")
    if order is not None and order < 1:
        raise _error(number, f"order of {name} must be positive")
    if ing not in ("0", "1"):
        raise _error(number, "ing must be 0 or 1")
    return GeneratorSpec(
        name,
        order=order,
        weight=_parse_int(number, weight, "weight"),
        in_coefficient_group=ing == "1",
    )


class _Reader:
    def __init__(self):
        self.nilpotency_class = None
        self.lower_central = False
        self.gens = []
        self.position = {}
        self.power_relations = {}
        self.commutator_relations = {}
        self.tail = None
        self.tail_line = None

    def index(self, number, name):
        if name not in self.position:
            raise _error(number, f"unknown generator {name!r}")
        return self.position[name]

    def word(self, number, text, after):
        try:
            factors = split_factors(text)
        except ValidationError as exc:
            raise _error(number, " ".join(exc.messages))
        word = []
        for name, e in factors:
            index = self.index(number, name)
            if index <= after:
                raise _error(
                    number,
                    f"{name} is not later than {self.gens[after].name} in the base",
                )
            word.append((index, e))
        return tuple(word)

    def feed(self, number, line):
        head, _sep, rest = line.partition("=")
        fields = head.split()
        keyword = fields[0]
        if keyword == "class":
            if len(fields) != 2:
                raise _error(number, "expected 'class <c>'")
            self.nilpotency_class = _parse_int(number, fields[1], "class")
        elif keyword == "lowercentral":
            self.lower_central = True
        elif keyword == "gen":
            gen = _parse_gen(number, fields)
            if gen.name in self.position:
                raise _error(number, f"generator {gen.name!r} declared twice")
            self.position[gen.name] = len(self.gens)
            self.gens.append(gen)
        elif keyword == "pow":
            if len(fields) != 2 or not _sep:
                raise _error(number, "expected 'pow <g> = <word>'")
            i = self.index(number, fields[1])
            if self.gens[i].order is None:
                raise _error(number, f"{fields[1]} has infinite order")
            self.power_relations[i] = self.word(number, rest, after=i)
        elif keyword == "comm":
            if len(fields) != 3 or not _sep:
                raise _error(number, "expected 'comm <g> <h> = <word>'")
            j, i = self.index(number, fields[1]), self.index(number, fields[2])
            if j <= i:
                raise _error(number, f"{fields[1]} must come after {fields[2]} in the base")
            self.commutator_relations[(j, i)] = self.word(number, rest, after=j)
        elif keyword == "tail":
            self.tail = [self.index(number, name) for name in fields[1:]]
            self.tail_line = number
        else:
            raise _error(number, f"unknown directive {keyword!r}")

    def presentation(self):
        if not self.gens:
            raise ValidationError("the presentation declares no generators")
        nilpotency_class = self.nilpotency_class or max(g.weight for g in self.gens)
        return PcPresentation(
            gens=self.gens,
            nilpotency_class=nilpotency_class,
            power_relations=self.power_relations,
            commutator_relations=self.commutator_relations,
            lower_central=self.lower_central,
        )


def parse_presentation(text):
    """
    Parse presentation text. Returns a PcPresentation for a group, or an
    EquationSpace when some generators lie outside G.
    """
    reader = _Reader()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            reader.feed(number, line)
    presentation = reader.presentation()
    if all(g.in_coefficient_group for g in presentation.gens):
        if reader.tail_line is not None:
            raise _error(
                reader.tail_line, "tail is only allowed when some generators lie outside G"
            )
        return presentation
    return space_from_presentation(presentation, tail_order=reader.tail)


def load_presentation(path):
    path = Path(path)
    logger.info("loading presentation from %s", path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}")
    return parse_presentation(text)
