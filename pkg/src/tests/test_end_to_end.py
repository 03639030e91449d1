"""
End-to-End Integration Tests

Runs whole knots from (N, p, q) through braid generation, invariants,
certification and catalog identification, and checks the published
regressions and scan classes.
"""

import unittest
from fractions import Fraction

from src.analyzers.braidgen import (
    BraidWord,
    braid_word,
    circular_shift_equal,
    flip_word,
    mirror_word,
)
from src.analyzers.invariants import (
    RolfsenCoeffs,
    alexander,
    alexander_equivalent,
    connected_sum_word,
    jones,
    torus_alexander,
)
from src.analyzers.pipeline import KnotPipeline
from src.core.params import canonical_params, sample_phases, validate
from src.core.polynomials import inverted


def rolfsen(*coeffs):
    return RolfsenCoeffs(tuple(coeffs)).to_poly()


class TestAlexanderRegressions(unittest.TestCase):
    def test_published_values(self):
        cases = {
            (3, 10, 4): rolfsen(-3, 1),
            (3, 5, 4): rolfsen(-1, 1) ** 2,
            (3, 7, 4): rolfsen(1),
            (3, 8, 7): rolfsen(1, -1, 1) ** 2,
            (3, 11, 7): rolfsen(33, -29, 21, -12, 5, -1),
            (3, 17, 7): rolfsen(33, -29, 21, -12, 5, -1),
            (3, 14, 7): rolfsen(7, -6, 4, -1) ** 2,
            (3, 19, 7): rolfsen(7, -5, 3, -1),
            (4, 7, 5): rolfsen(17, -12, 4),
            (4, 11, 5): rolfsen(37, -28, 12, -2),
            (4, 13, 5): rolfsen(5, -2),
            (3, 5, 5): torus_alexander(3, 5),
        }
        for (N, p, q), expected in cases.items():
            delta = alexander(braid_word(canonical_params(N, p, q)))
            self.assertTrue(alexander_equivalent(delta, expected), f"K({N},{p},{q})")

        torus = alexander(braid_word(validate(3, 4, 4, Fraction(1, 2))))
        self.assertTrue(alexander_equivalent(torus, torus_alexander(3, 4)))


class TestPhaseInvariance(unittest.TestCase):
    def test_sampled_phases(self):
        for N, p, q in [(3, 5, 4), (3, 7, 5), (4, 13, 5)]:
            base = alexander(braid_word(canonical_params(N, p, q)))
            for phase in sample_phases(N, p, q):
                self.assertEqual(alexander(braid_word(validate(N, p, q, phase))), base)

    def test_half_step_shift(self):
        for N, p, q in [(3, 5, 4), (3, 7, 5), (4, 13, 5)]:
            params = canonical_params(N, p, q)
            shifted = validate(N, p, q, (params.phase + Fraction(1, 2 * q)) % 1)
            image = mirror_word(flip_word(braid_word(params)))
            self.assertIsNotNone(circular_shift_equal(image, braid_word(shifted)))


class TestSquareAndGranny(unittest.TestCase):
    def test_jones_separates_square_from_granny(self):
        trefoil = BraidWord.from_signed(2, [1, 1, 1])
        square = jones(connected_sum_word([trefoil, mirror_word(trefoil)]))
        granny = jones(connected_sum_word([trefoil, trefoil]))
        word = braid_word(canonical_params(3, 5, 4))

        self.assertEqual(jones(word), square)
        self.assertNotEqual(jones(word), granny)
        self.assertNotEqual(jones(word), inverted(granny))
        self.assertEqual(
            alexander(connected_sum_word([trefoil, trefoil])), alexander(word)
        )


class TestIdentificationFlow(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.pipeline = KnotPipeline()

    def test_full_period_scan_q4(self):
        result = self.pipeline.scan(3, 4, range(4, 29))
        self.assertEqual(len(result.classes), 5)
        self.assertEqual(result.periodicity["period"]["mismatches"], [])

    def test_full_period_scan_q5(self):
        result = self.pipeline.scan(3, 5, range(5, 31))
        self.assertTrue(
            {"T(3,5)", "10_155", "unknot", "10_123"}.issubset(result.classes)
        )

    def test_three_strand_alternating_family(self):
        for p, q, name in [(8, 4, "8_18"), (10, 5, "10_123")]:
            word = braid_word(canonical_params(3, p, q))
            family = [BraidWord.from_signed(3, pattern * q) for pattern in ([1, -2], [-1, 2])]
            self.assertTrue(any(circular_shift_equal(word, f) is not None for f in family))
            report = self.pipeline.invariants_report(3, p, q)
            self.assertEqual(report["identification"]["primary"], name)

    def test_three_eleven_seven_is_not_fourteen_crossing_entry(self):
        report = self.pipeline.invariants_report(3, 11, 7)
        names = [c["name"] for c in report["identification"]["candidates"]]
        self.assertEqual(report["identification"]["primary"], "K(3,11,7)")
        self.assertNotIn("14N27120", names)

    def test_seven_seven(self):
        report = self.pipeline.invariants_report(5, 22, 6)
        self.assertIn("7_7", [c["name"] for c in report["identification"]["candidates"]])

    def test_fifteen_crossing_entry(self):
        report = self.pipeline.invariants_report(4, 11, 5)
        self.assertIn("15N166131", [c["name"] for c in report["identification"]["candidates"]])

    def test_verified_and_identified(self):
        for N, p, q in [(3, 5, 4), (4, 13, 5), (5, 22, 6)]:
            self.assertTrue(self.pipeline.verify_report(N, p, q)["clean"], f"K({N},{p},{q})")


if __name__ == '__main__':
    unittest.main()
