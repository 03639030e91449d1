"""
Unit Tests for Knot Invariants

Tests the Burau/Alexander engine on reference braids and generated knots,
the Temperley-Lieb Jones engine, the torus closed forms, and the mod-2 and
fiberedness diagnostics.
"""

import unittest
from fractions import Fraction

import sympy as sp

from src.analyzers.braidgen import BraidWord, braid_word, mirror_word
from src.analyzers.invariants import (
    RolfsenCoeffs,
    alexander,
    alexander_equivalent,
    arf_diagnostic,
    burau_reduced,
    connected_sum_word,
    fibered_necessary,
    jones,
    jones_equivalent_up_to_mirror,
    rolfsen_coeffs,
    square_mod2,
    torus_alexander,
    torus_jones,
)
from src.core.errors import NotAKnot, NotSymmetric, StrandLimit
from src.core.polynomials import evaluate, inverted, is_symmetric, laurent_from_terms, t
from src.core.params import canonical_params, validate

TREFOIL = BraidWord.from_signed(2, [1, 1, 1])
FIGURE_EIGHT = BraidWord.from_signed(3, [1, -2, 1, -2])
FIVE_TWO = BraidWord.from_signed(3, [1, 1, 1, 2, -1, 2])
SIX_TWO = BraidWord.from_signed(3, [1, 1, 1, -2, 1, -2])


def coeffs(word):
    return rolfsen_coeffs(alexander(word)).to_list()


def sigma_one_burau():
    return burau_reduced(BraidWord.from_signed(3, [1]))


class TestAlexander(unittest.TestCase):
    def test_reference_braids(self):
        self.assertEqual(coeffs(TREFOIL), [-1, 1])
        self.assertEqual(coeffs(FIGURE_EIGHT), [3, -1])
        self.assertEqual(coeffs(FIVE_TWO), [-3, 2])
        self.assertEqual(coeffs(SIX_TWO), [-3, 3, -1])

    def test_normalization(self):
        for word in (TREFOIL, FIGURE_EIGHT, SIX_TWO):
            delta = alexander(word)
            self.assertTrue(is_symmetric(delta))
            self.assertEqual(evaluate(delta, 1), 1)

    def test_trivial_braids(self):
        self.assertEqual(alexander(BraidWord.from_signed(2, [1])), 1)
        self.assertEqual(alexander(BraidWord.from_signed(3, [1, -2])), 1)

    def test_links_rejected(self):
        with self.assertRaises(NotAKnot):
            alexander(BraidWord.from_signed(2, [1, 1]))
        with self.assertRaises(NotAKnot):
            alexander(BraidWord(3, ()))

    def test_burau_shape(self):
        matrix = burau_reduced(FIGURE_EIGHT)
        self.assertEqual(matrix.shape, (2, 2))
        self.assertEqual(matrix[0, 0], t**2 - t)
        self.assertEqual(sigma_one_burau(), sp.Matrix([[-t, 0], [1, 1]]))

    def test_generated_knots(self):
        cases = {
            (3, 5, 4): [3, -2, 1],        # 3_1 # m(3_1)
            (3, 10, 4): [3, -1],          # 4_1
            (3, 7, 5): [7, -5, 3, -1],    # 10_155
            (4, 13, 5): [5, -2],          # 9_46
            (4, 7, 5): [17, -12, 4],      # 5_2 # 5_2
            (5, 22, 6): [9, -5, 1],       # 7_7
        }
        for (N, p, q), expected in cases.items():
            word = braid_word(canonical_params(N, p, q))
            self.assertTrue(
                RolfsenCoeffs(tuple(expected)).equivalent(rolfsen_coeffs(alexander(word))),
                f"K({N},{p},{q})",
            )

    def test_torus_case(self):
        word = braid_word(validate(3, 4, 4, Fraction(1, 2)))
        self.assertEqual(alexander(word), torus_alexander(3, 4))
        self.assertEqual(rolfsen_coeffs(torus_alexander(3, 4)).to_list(), [1, 0, -1, 1])

    def test_phase_invariance(self):
        base = alexander(braid_word(validate(3, 5, 4, Fraction(1, 8))))
        for phase in (Fraction(1, 4), Fraction(3, 4), Fraction(5, 8)):
            self.assertEqual(alexander(braid_word(validate(3, 5, 4, phase))), base)

    def test_connected_sum(self):
        word = connected_sum_word([TREFOIL, BraidWord.from_signed(2, [-1, -1, -1])])
        self.assertEqual(word.strands, 3)
        self.assertEqual(coeffs(word), [3, -2, 1])

    def test_equivalence(self):
        delta = alexander(FIGURE_EIGHT)
        self.assertTrue(alexander_equivalent(delta, sp.expand(-delta * t**3)))
        self.assertFalse(alexander_equivalent(delta, alexander(TREFOIL)))

    def test_rolfsen_format(self):
        self.assertEqual(str(RolfsenCoeffs((7, -5, 3, -1))), "[7-5+3-1]")
        self.assertEqual(RolfsenCoeffs((3, -1)).value_at_one(), 1)
        with self.assertRaises(NotSymmetric):
            rolfsen_coeffs(1 + t)


class TestJones(unittest.TestCase):
    def test_trefoil(self):
        v = jones(TREFOIL)
        expected = laurent_from_terms({1: 1, 3: 1, 4: -1})
        self.assertTrue(jones_equivalent_up_to_mirror(v, expected))
        self.assertEqual(jones(mirror_word(TREFOIL)), inverted(v))

    def test_figure_eight(self):
        expected = laurent_from_terms({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
        self.assertEqual(jones(FIGURE_EIGHT), expected)

    def test_unknot(self):
        self.assertEqual(jones(BraidWord.from_signed(3, [1, -2])), 1)

    def test_value_at_one(self):
        for word in (TREFOIL, FIGURE_EIGHT, FIVE_TWO, SIX_TWO):
            self.assertEqual(evaluate(jones(word), 1), 1)

    def test_torus_closed_form(self):
        word = braid_word(validate(3, 4, 4, Fraction(1, 2)))
        self.assertTrue(jones_equivalent_up_to_mirror(jones(word), torus_jones(3, 4)))
        self.assertEqual(torus_jones(2, 3), laurent_from_terms({1: 1, 3: 1, 4: -1}))

    def test_square_knot_is_amphicheiral(self):
        v = jones(braid_word(validate(3, 5, 4, Fraction(1, 8))))
        self.assertEqual(v, inverted(v))

    def test_strand_limit(self):
        with self.assertRaises(StrandLimit):
            jones(BraidWord.from_signed(4, [1, 2, 3]), max_strands=3)


class TestDiagnostics(unittest.TestCase):
    def test_fibered_necessary(self):
        self.assertTrue(fibered_necessary(alexander(FIGURE_EIGHT)))
        self.assertFalse(fibered_necessary(alexander(FIVE_TWO)))
        for N, p, q in [(4, 13, 5), (4, 7, 5)]:
            delta = alexander(braid_word(canonical_params(N, p, q)))
            self.assertFalse(fibered_necessary(delta))

    def test_mod_two(self):
        trefoil = alexander(TREFOIL)
        self.assertFalse(square_mod2(trefoil))
        self.assertTrue(square_mod2(trefoil * trefoil))
        self.assertEqual(arf_diagnostic(trefoil), 1)
        self.assertEqual(arf_diagnostic(trefoil * trefoil), 0)
        # 4_1 = K(3,10,4): p, q both even, Arf still 1
        self.assertEqual(arf_diagnostic(alexander(FIGURE_EIGHT)), 1)
        self.assertFalse(square_mod2(alexander(FIGURE_EIGHT)))


if __name__ == '__main__':
    unittest.main()
