"""
Unit Tests for Braid Generation

Tests the crossing schedule, crossing levels, signs (direct and closed form),
the braid words of known knots, word operations under phase shifts, closure
permutations and the parity symmetry classes.
"""

import unittest
from fractions import Fraction

from src.analyzers.braidgen import (
    BraidWord,
    SymmetryClass,
    braid_word,
    circular_shift_equal,
    closure_permutation,
    commutation_normal_form,
    crossing_schedule,
    crossing_sign_closed,
    crossing_sign_direct,
    flip_word,
    mirror_word,
    reverse_word,
    rotate_word,
    shifted_phase,
    sign_convention,
    signed_schedule,
    symmetry_class,
    writhe,
    y_levels,
)
from src.core.errors import InternalError
from src.core.params import canonical_params, epsilon_offset, validate


class TestSchedule(unittest.TestCase):
    def test_cardinality(self):
        for N, q in [(2, 3), (3, 4), (3, 5), (4, 5), (5, 6), (6, 7)]:
            schedule = crossing_schedule(N, q, epsilon_offset(N, q))
            self.assertEqual(len(schedule), q * (N - 1))

    def test_times_inside_window_and_ordered(self):
        eps = epsilon_offset(4, 5)
        schedule = crossing_schedule(4, 5, eps)
        times = [c.time for c in schedule]
        self.assertEqual(times, sorted(times))
        self.assertTrue(all(eps <= t < 1 + eps for t in times))
        self.assertEqual([c.ordinal for c in schedule], list(range(1, len(schedule) + 1)))

    def test_levels_in_range(self):
        for N, q in [(3, 4), (4, 5), (5, 6)]:
            for c in crossing_schedule(N, q, epsilon_offset(N, q)):
                self.assertTrue(1 <= c.level <= N - 1)

    def test_simultaneous_crossings_commute(self):
        schedule = crossing_schedule(4, 5, epsilon_offset(4, 5))
        by_time = {}
        for c in schedule:
            by_time.setdefault(c.time, []).append(c)
        for group in by_time.values():
            levels = sorted(c.level for c in group)
            for a, b in zip(levels, levels[1:]):
                self.assertGreaterEqual(b - a, 2)

    def test_y_levels(self):
        table = y_levels(3, 4)
        self.assertEqual(len(table.values), 2)
        self.assertGreater(table.values[0], table.values[1])
        self.assertEqual(len(y_levels(5, 6).values), 4)


class TestSigns(unittest.TestCase):
    def test_convention_is_unit(self):
        self.assertIn(sign_convention(), (1, -1))

    def test_closed_form_matches_geometry(self):
        for N, p, q in [(3, 5, 4), (3, 7, 5), (4, 13, 5), (4, 7, 5), (5, 22, 6), (2, 3, 5)]:
            params = canonical_params(N, p, q)
            for c in crossing_schedule(N, q, epsilon_offset(N, q)):
                sign, terms = crossing_sign_closed(params, c, check=True)
                self.assertEqual(sign, crossing_sign_direct(params, c))
                self.assertIn(terms.s % 2, (0, 1))

    def test_signed_schedule_fully_signed(self):
        schedule = signed_schedule(canonical_params(3, 7, 5))
        self.assertTrue(all(c.sign in (1, -1) for c in schedule))


class TestBraidWords(unittest.TestCase):
    def setUp(self):
        self.square = braid_word(validate(3, 5, 4, Fraction(1, 8)))

    def test_known_word(self):
        self.assertEqual(self.square.to_signed(), [1, 2, -1, 2, -1, -2, 1, -2])
        self.assertEqual(self.square.strands, 3)

    def test_torus_case_is_positive(self):
        word = braid_word(validate(3, 4, 4, Fraction(1, 2)))
        self.assertEqual(len(word), 8)
        self.assertTrue(all(e == 1 for _, e in word.letters))
        self.assertEqual(writhe(word), 8)

    def test_writhe_vanishes_for_odd_sum(self):
        for N, p, q in [(3, 5, 4), (3, 8, 7), (5, 8, 7), (5, 7, 6)]:
            self.assertEqual(writhe(braid_word(canonical_params(N, p, q))), 0)

    def test_writhe_bound(self):
        for N, p, q in [(3, 7, 5), (4, 13, 5), (4, 7, 5), (5, 22, 6)]:
            e = writhe(braid_word(canonical_params(N, p, q)))
            self.assertLessEqual(abs(e), N * N + N - 4)

    def test_closure_is_single_cycle(self):
        for N, p, q in [(3, 5, 4), (4, 13, 5), (5, 22, 6), (2, 3, 5)]:
            closure = closure_permutation(braid_word(canonical_params(N, p, q)))
            self.assertTrue(closure.is_knot)
            self.assertEqual(closure.components, 1)

    def test_empty_word_closure(self):
        closure = closure_permutation(BraidWord(3, ()))
        self.assertEqual(closure.components, 3)
        self.assertFalse(closure.is_knot)

    def test_phase_shift_by_p_over_2q(self):
        params = validate(3, 5, 4, Fraction(1, 8))
        shifted = braid_word(validate(3, 5, 4, shifted_phase(params)))
        self.assertEqual(shifted_phase(params), Fraction(3, 4))
        self.assertEqual(shifted.to_signed(), [-1, 2, 1, -2, 1, -2, -1, 2])
        image = mirror_word(flip_word(self.square))
        self.assertEqual(rotate_word(image, 3), shifted)
        self.assertEqual(circular_shift_equal(image, shifted), 3)

    def test_phase_shift_by_one_over_2q(self):
        shifted = braid_word(validate(3, 5, 4, Fraction(1, 4)))
        self.assertEqual(shifted.to_signed(), [1, -2, -1, 2, -1, 2, 1, -2])
        image = mirror_word(flip_word(self.square))
        self.assertEqual(circular_shift_equal(image, shifted), 7)

    def test_word_operations(self):
        w = BraidWord.from_signed(3, [1, -2, 2])
        self.assertEqual(mirror_word(w).to_signed(), [-1, 2, -2])
        self.assertEqual(flip_word(w).to_signed(), [2, -1, 1])
        self.assertEqual(reverse_word(w).to_signed(), [2, -2, 1])
        self.assertEqual(rotate_word(w, 1).to_signed(), [-2, 2, 1])
        self.assertEqual(rotate_word(w, 4), rotate_word(w, 1))
        self.assertIsNone(circular_shift_equal(w, mirror_word(w)))

    def test_rotation_up_to_far_commutation(self):
        w1 = BraidWord.from_signed(4, [1, 3, 2, -1])
        w2 = BraidWord.from_signed(4, [3, 1, 2, -1])
        self.assertNotEqual(w1, w2)
        self.assertEqual(commutation_normal_form(w2.letters), w1.letters)
        self.assertEqual(circular_shift_equal(w1, w2), 0)
        self.assertEqual(circular_shift_equal(rotate_word(w1, 2), w2), 2)
        self.assertIsNone(circular_shift_equal(w1, mirror_word(w2)))
        adjacent = BraidWord.from_signed(4, [2, 1, 3])
        self.assertEqual(commutation_normal_form(adjacent.letters), adjacent.letters)

    def test_invalid_letters(self):
        with self.assertRaises(InternalError):
            BraidWord(3, ((3, 1),))
        with self.assertRaises(InternalError):
            BraidWord(3, ((1, 2),))


class TestSymmetry(unittest.TestCase):
    def test_classes(self):
        self.assertIs(symmetry_class(3, 5, 4).kind, SymmetryClass.STRONGLY_FULLY_AMPHICHEIRAL)
        self.assertIs(symmetry_class(3, 7, 5).kind, SymmetryClass.REVERSIBLE)
        periodic = symmetry_class(4, 7, 5)
        self.assertIs(periodic.kind, SymmetryClass.PERIODIC_ORDER_TWO)
        self.assertEqual(periodic.linking_number, 4)
        self.assertEqual(periodic.label, "PeriodicOrderTwo+Reversible (axis linking number 4)")
        self.assertIs(symmetry_class(3, 10, 4).kind, SymmetryClass.PERIODIC_ORDER_TWO)
        self.assertTrue(all(
            symmetry_class(*t).reversible for t in [(3, 5, 4), (3, 7, 5), (4, 7, 5)]
        ))


if __name__ == '__main__':
    unittest.main()
