"""
Unit Tests for the sympy Laurent Helpers

Tests term extraction, centering, inversion, exact division and the JSON and
text forms used by reports and the catalog.
"""

import unittest

import sympy as sp

from src.core.errors import InternalError
from src.core.polynomials import (
    A,
    centered,
    degree_span,
    divide_exact,
    evaluate,
    from_json,
    inverted,
    is_symmetric,
    laurent_from_terms,
    laurent_terms,
    t,
    to_json,
    to_text,
)


class TestTerms(unittest.TestCase):
    def setUp(self):
        self.figure_eight = -t + 3 - 1 / t

    def test_terms(self):
        self.assertEqual(laurent_terms(self.figure_eight), {1: -1, 0: 3, -1: -1})
        self.assertEqual(laurent_terms(sp.Integer(0)), {})
        self.assertEqual(laurent_terms(A**2 - 1, var=A), {2: 1, 0: -1})

    def test_rebuild(self):
        self.assertEqual(laurent_from_terms({1: -1, 0: 3, -1: -1}), sp.expand(self.figure_eight))

    def test_rejects_non_laurent(self):
        with self.assertRaises(InternalError):
            laurent_terms(sp.sqrt(t))
        with self.assertRaises(InternalError):
            laurent_terms(t / 2)
        with self.assertRaises(InternalError):
            laurent_terms(t + A)

    def test_span(self):
        self.assertEqual(degree_span(t**3 - t**-2), (-2, 3))
        self.assertEqual(degree_span(sp.Integer(0)), (0, 0))


class TestShapes(unittest.TestCase):
    def test_centered(self):
        self.assertEqual(centered(t**2 - t**3 + t**4), sp.expand(1 / t - 1 + t))
        with self.assertRaises(InternalError):
            centered(1 + t)

    def test_inverted_and_symmetry(self):
        self.assertEqual(inverted(t**2 - t), sp.expand(t**-2 - 1 / t))
        self.assertTrue(is_symmetric(t - 1 + 1 / t))
        self.assertFalse(is_symmetric(t**2 - t + 1))

    def test_evaluate(self):
        self.assertEqual(evaluate(-t + 3 - 1 / t, -1), 5)
        self.assertEqual(evaluate(t**-1 - 1 + t, 1), 1)


class TestDivision(unittest.TestCase):
    def test_exact(self):
        # (1 - t^3) / (1 - t) = 1 + t + t^2
        self.assertEqual(divide_exact(1 - t**3, 1 - t), sp.expand(1 + t + t**2))
        self.assertEqual(divide_exact(t**-2 - t, t**-2), sp.expand(1 - t**3))

    def test_remainder_raises(self):
        with self.assertRaises(InternalError):
            divide_exact(1 + t**2, 1 + t)


class TestForms(unittest.TestCase):
    def test_json(self):
        data = to_json(t**2 - 2 * t + 3)
        self.assertEqual(data, {"0": 3, "1": -2, "2": 1})
        self.assertEqual(from_json(data), sp.expand(t**2 - 2 * t + 3))

    def test_text(self):
        self.assertEqual(to_text(t**2 - 2 * t + 3 - 2 / t + t**-2), "t^2 - 2t + 3 - 2t^-1 + t^-2")
        self.assertEqual(to_text(-t), "-t")
        self.assertEqual(to_text(sp.Integer(0)), "0")


if __name__ == '__main__':
    unittest.main()
