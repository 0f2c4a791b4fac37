from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from abelian_eq.validators import (
    format_equation_text,
    parse_abelian_equation,
    parse_equation_text,
    split_factors,
)


class SplitFactorsTests(SimpleTestCase):
    def test_exponents(self):
        self.assertEqual(
            split_factors("x1^2 x2^-3 a1^+4 a2"),
            [("x1", 2), ("x2", -3), ("a1", 4), ("a2", 1)],
        )

    def test_empty_text(self):
        self.assertEqual(split_factors("   "), [])

    def test_duplicate_name(self):
        with self.assertRaises(ValidationError):
            split_factors("x1^2 a1^1 x1^-1")

    def test_malformed_factor(self):
        for text in ("x1^", "x1^2^3", "x1^two"):
            with self.assertRaises(ValidationError):
                split_factors(text)


class ParseEquationTests(SimpleTestCase):
    def test_canonical_order(self):
        names = ("x1", "x2", "a1", "[x1,x2]")
        self.assertEqual(
            parse_equation_text("[x1,x2]^3 a1^-1 x2^2", names), [0, 2, -1, 3]
        )

    def test_unknown_name(self):
        with self.assertRaises(ValidationError):
            parse_equation_text("x3^1", ("x1", "x2", "a1"))

    def test_abelian_sizes_from_text(self):
        eq = parse_abelian_equation("x1^1 a1^5")
        self.assertEqual((eq.gamma, eq.alpha), ((1,), (5,)))
        eq = parse_abelian_equation("x2^3 a3^-1")
        self.assertEqual((eq.gamma, eq.alpha), ((0, 3), (0, 0, -1)))

    def test_abelian_explicit_sizes(self):
        eq = parse_abelian_equation("x1^2", k=2, m=2)
        self.assertEqual((eq.gamma, eq.alpha), ((2, 0), (0, 0)))
        with self.assertRaises(ValidationError):
            parse_abelian_equation("a3^1", k=1, m=2)

    def test_abelian_rejects_other_names(self):
        with self.assertRaises(ValidationError):
            parse_abelian_equation("y1^2")

    def test_format(self):
        names = ("x1", "x2", "a1")
        self.assertEqual(format_equation_text(names, (1, 0, -5)), "x1^1 a1^-5")
        self.assertEqual(format_equation_text(names, (0, 0, 0)), "1")
        self.assertEqual(
            parse_equation_text(format_equation_text(names, (3, -2, 7)), names),
            [3, -2, 7],
        )
