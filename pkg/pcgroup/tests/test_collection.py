from pathlib import Path

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, tag

from pcgroup.collection import (
    class_two_tables,
    collect,
    commutator,
    inverse,
    multiply,
    power,
    word_of,
)
from pcgroup.constructors import (
    direct_product,
    make_cyclic,
    make_free_abelian,
    make_free_nilpotent_class2,
    make_heisenberg,
)
from pcgroup.loaders import load_presentation
from pcgroup.spaces import build_equation_space
from .factories import random_element
from abelian_eq.tests.factories import reseed

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def heisenberg_matrices(coords):
    """Stack of [[1, q, s], [0, 1, p], [0, 0, 1]] for rows (p, q, s)."""
    n = len(coords)
    mats = np.zeros((n, 3, 3), dtype=np.int64)
    mats[:, 0, 0] = mats[:, 1, 1] = mats[:, 2, 2] = 1
    mats[:, 1, 2] = coords[:, 0]
    mats[:, 0, 1] = coords[:, 1]
    mats[:, 0, 2] = coords[:, 2]
    return mats


def sample_groups():
    torsion = load_presentation(FIXTURES / "torsion_heisenberg.pc")
    return {
        "abelian:3": make_free_abelian(3),
        "cyclic:6": make_cyclic(6),
        "heisenberg": make_heisenberg(),
        "free-nilpotent:3": make_free_nilpotent_class2(3),
        "torsion": torsion,
        "heisenberg*cyclic:3": direct_product(make_heisenberg(), make_cyclic(3)),
        "G_X(heisenberg, 2)": build_equation_space(make_heisenberg(), 2).presentation,
        "G_X(torsion, 2)": build_equation_space(torsion, 2).presentation,
    }


class HeisenbergOracleTests(SimpleTestCase):
    def test_examples(self):
        H = make_heisenberg()
        self.assertEqual(multiply(H, (1, 0, 0), (0, 1, 0)), (1, 1, 0))
        self.assertEqual(multiply(H, (0, 1, 0), (1, 0, 0)), (1, 1, 1))
        self.assertEqual(commutator(H, (0, 1, 0), (1, 0, 0)), (0, 0, 1))
        self.assertEqual(inverse(H, (2, 3, 5)), (-2, -3, 1))

    def test_matches_matrix_product(self):
        rng = np.random.default_rng(31)
        left = rng.integers(-100, 101, size=(10**5, 3))
        right = rng.integers(-100, 101, size=(10**5, 3))
        product = heisenberg_matrices(left) @ heisenberg_matrices(right)
        expected = np.stack(
            [product[:, 1, 2], product[:, 0, 1], product[:, 0, 2]], axis=1
        )
        H = make_heisenberg()
        for a, b, c in zip(left.tolist(), right.tolist(), expected.tolist()):
            self.assertEqual(multiply(H, tuple(a), tuple(b)), tuple(c))

    def test_generic_path_matches_matrix_product(self):
        rng = np.random.default_rng(32)
        left = rng.integers(-20, 21, size=(500, 3))
        right = rng.integers(-20, 21, size=(500, 3))
        product = heisenberg_matrices(left) @ heisenberg_matrices(right)
        H = make_heisenberg()
        for a, b, m in zip(left.tolist(), right.tolist(), product.tolist()):
            self.assertEqual(
                multiply(H, tuple(a), tuple(b), fast=False),
                (m[1][2], m[0][1], m[0][2]),
            )


class GroupLawTests(SimpleTestCase):
    def setUp(self):
        reseed(5)
        self.groups = sample_groups()

    def _associativity(self, P, triples, radius):
        for _ in range(triples):
            a, b, c = (random_element(P, radius) for _ in range(3))
            self.assertEqual(
                multiply(P, multiply(P, a, b), c), multiply(P, a, multiply(P, b, c))
            )

    def test_associativity(self):
        for label, P in self.groups.items():
            with self.subTest(group=label):
                self._associativity(P, 1000, 20)

    def test_associativity_class_three_file(self):
        space = load_presentation(FIXTURES / "free_nilpotent_3_3.pc")
        self._associativity(space.presentation, 200, 3)
        self._associativity(space.group, 200, 5)

    @tag("slow")
    def test_associativity_full(self):
        space = load_presentation(FIXTURES / "free_nilpotent_3_3.pc")
        groups = dict(self.groups, file=space.presentation)
        for label, P in groups.items():
            with self.subTest(group=label):
                self._associativity(P, 10**4, 4 if label == "file" else 50)

    def test_identity_and_inverse(self):
        for label, P in self.groups.items():
            e = P.identity()
            for _ in range(200):
                g = random_element(P, 15)
                self.assertEqual(multiply(P, g, e), g, label)
                self.assertEqual(multiply(P, e, g), g, label)
                self.assertEqual(multiply(P, g, inverse(P, g)), e, label)
                self.assertEqual(multiply(P, inverse(P, g), g), e, label)

    def test_power_agrees_with_repeated_multiply(self):
        for label, P in self.groups.items():
            for _ in range(50):
                g = random_element(P, 6)
                running = P.identity()
                for n in range(0, 9):
                    self.assertEqual(power(P, g, n), running, (label, n))
                    self.assertEqual(
                        power(P, g, -n), inverse(P, running), (label, -n)
                    )
                    running = multiply(P, running, g)

    def test_fast_and_generic_paths_agree(self):
        for label, P in self.groups.items():
            self.assertIsNotNone(class_two_tables(P), label)
            for _ in range(300):
                a, b = random_element(P, 12), random_element(P, 12)
                n = int(np.sign(a[0]) or 1) * (abs(a[0]) % 7)
                self.assertEqual(
                    multiply(P, a, b), multiply(P, a, b, fast=False), label
                )
                self.assertEqual(power(P, a, n), power(P, a, n, fast=False), label)
                self.assertEqual(
                    commutator(P, a, b), commutator(P, a, b, fast=False), label
                )

    def test_class_three_uses_generic_path(self):
        space = load_presentation(FIXTURES / "free_nilpotent_3_3.pc")
        self.assertIsNone(class_two_tables(space.presentation))
        self.assertIsNone(class_two_tables(space.group))


class CollectTests(SimpleTestCase):
    def test_normal_form_is_fixed(self):
        reseed(9)
        for label, P in sample_groups().items():
            for _ in range(100):
                g = random_element(P, 10)
                self.assertEqual(collect(P, word_of(P, g)), g, label)

    def test_swap_introduces_commutator(self):
        H = make_heisenberg()
        self.assertEqual(collect(H, [("a2", 1), ("a1", 1)]), (1, 1, 1))
        self.assertEqual(collect(H, [("a2", 2), ("a1", 3), ("a2", -2)]), (3, 0, 6))

    def test_finite_orders_wrap(self):
        C = make_cyclic(5)
        self.assertEqual(collect(C, [(0, 7)]), (2,))
        self.assertEqual(collect(C, [(0, -1)]), (4,))
        torsion = load_presentation(FIXTURES / "torsion_heisenberg.pc")
        self.assertEqual(collect(torsion, [("a2", 5), ("a1", 1)]), (1, 1, 1))

    def test_jacobi_relation_in_class_three(self):
        space = load_presentation(FIXTURES / "free_nilpotent_3_3.pc")
        gx = space.presentation
        c, x = gx.unit(gx.index("c")), gx.unit(gx.index("x"))
        expected = collect(gx, [("v3", -1), ("v5", 1)])
        self.assertEqual(commutator(gx, c, x), expected)

    def test_unknown_generator(self):
        with self.assertRaises(ValidationError):
            collect(make_heisenberg(), [("b", 1)])
        with self.assertRaises(ValidationError):
            collect(make_heisenberg(), [(5, 1)])


class ElementValidationTests(SimpleTestCase):
    def test_wrong_length(self):
        with self.assertRaises(ValidationError):
            multiply(make_heisenberg(), (1, 2), (0, 0, 0))

    def test_finite_coordinate_out_of_range(self):
        with self.assertRaises(ValidationError):
            multiply(make_cyclic(4), (4,), (0,))
        with self.assertRaises(ValidationError):
            power(make_cyclic(4), (-1,), 3)
