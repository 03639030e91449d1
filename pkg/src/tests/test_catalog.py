"""
Unit Tests for the Knot Catalog

Tests loading and schema validation, user catalog merging, identification of
generated knots (single entries, connected sums, mirror handling, the
obstruction note) and structural type predictions.
"""

import json
import os
import tempfile
import unittest
from fractions import Fraction

from src.analyzers.braidgen import braid_word
from src.analyzers.catalog import (
    Catalog,
    default_catalog,
    identify,
    load_catalog,
    parse_catalog,
    predict_type,
)
from src.analyzers.invariants import RolfsenCoeffs, alexander, jones
from src.core.errors import SchemaError
from src.core.params import canonical_params
from src.core.polynomials import evaluate


def invariants(N, p, q, phase=None):
    word = braid_word(canonical_params(N, p, q, phase))
    return alexander(word), jones(word)


class TestCatalogLoading(unittest.TestCase):
    def setUp(self):
        self.catalog = default_catalog()

    def test_bundled_entries(self):
        for name in ("unknot", "3_1", "4_1", "5_2", "6_2", "7_7", "9_46", "10_155", "15N166131"):
            self.assertIn(name, self.catalog)
        self.assertIn("T(2,5)", self.catalog)
        self.assertIn("T(3,4)", self.catalog)

    def test_alias_lookup(self):
        self.assertEqual(self.catalog.get("T(2,3)").name, "3_1")

    def test_braid_entries_get_jones(self):
        for name in ("5_2", "6_2"):
            entry = self.catalog.get(name)
            self.assertIsNotNone(entry.jones)
            self.assertEqual(evaluate(entry.jones, 1), 1)

    def test_bare_array_accepted(self):
        catalog = parse_catalog(json.dumps([
            {"name": "3_1", "alexander": [-1, 1], "symmetry": "reversible"},
        ]))
        self.assertEqual(catalog.names, ["3_1"])

    def test_alexander_must_be_unit_at_one(self):
        with self.assertRaises(SchemaError) as ctx:
            parse_catalog(json.dumps({"version": "v1", "entries": [
                {"name": "ok", "alexander": [1], "symmetry": "chiral"},
                {"name": "bad", "alexander": [4, -1], "symmetry": "chiral"},
            ]}))
        self.assertEqual(ctx.exception.index, 1)
        self.assertEqual(ctx.exception.field, "alexander")
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_unknown_symmetry(self):
        with self.assertRaises(SchemaError):
            parse_catalog(json.dumps([{"name": "x", "alexander": [1], "symmetry": "odd"}]))

    def test_wrong_version(self):
        with self.assertRaises(SchemaError):
            parse_catalog(json.dumps({"version": "v2", "entries": []}))

    def test_duplicate_names(self):
        entry = {"name": "3_1", "alexander": [-1, 1], "symmetry": "reversible"}
        with self.assertRaises(SchemaError) as ctx:
            parse_catalog(json.dumps([entry, entry]))
        self.assertEqual(ctx.exception.index, 1)

    def test_braid_must_match_alexander(self):
        with self.assertRaises(SchemaError) as ctx:
            parse_catalog(json.dumps([{
                "name": "fake",
                "alexander": [3, -1],
                "symmetry": "reversible",
                "braid": {"strands": 2, "word": [1, 1, 1]},
            }]))
        self.assertEqual(ctx.exception.field, "braid")

    def test_malformed_json_reports_line(self):
        with self.assertRaises(SchemaError) as ctx:
            parse_catalog('{\n  "version": "v1",\n  "entries": [,]\n}')
        self.assertEqual(ctx.exception.line, 3)

    def test_user_catalog_merge(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "extra.json")
            with open(path, "w") as f:
                json.dump({"version": "v1", "entries": [
                    {"name": "3_1", "alexander": [-1, 1], "symmetry": "reversible",
                     "provenance": "user override"},
                    {"name": "8_20", "alexander": [-3, 2, -1], "symmetry": "reversible"},
                ]}, f)
            catalog = load_catalog(path)
        self.assertEqual(catalog.get("3_1").provenance, "user override")
        self.assertIn("8_20", catalog)
        self.assertIn("4_1", catalog)

    def test_missing_user_catalog(self):
        with self.assertRaises(SchemaError):
            load_catalog("/nonexistent/catalog.json")

    def test_cross_checked_flags(self):
        for name in ("8_17", "8_18", "10_123", "10_155", "14N11995"):
            self.assertTrue(self.catalog.get(name).cross_checked, name)
            self.assertIsNotNone(self.catalog.get(name).jones, name)
        for name in ("9_32", "14N27120"):
            self.assertFalse(self.catalog.get(name).cross_checked, name)
            self.assertIsNone(self.catalog.get(name).jones, name)

    def test_triple_braid(self):
        catalog = parse_catalog(json.dumps([{
            "name": "10_155",
            "alexander": [7, -5, 3, -1],
            "symmetry": "reversible",
            "braid": {"triple": [3, 7, 5]},
        }]))
        entry = catalog.get("10_155")
        self.assertTrue(entry.cross_checked)
        self.assertEqual(entry.jones, jones(braid_word(canonical_params(3, 7, 5))))

    def test_triple_with_wrong_alexander(self):
        with self.assertRaises(SchemaError) as ctx:
            parse_catalog(json.dumps([{
                "name": "fake",
                "alexander": [-1, 1],
                "symmetry": "reversible",
                "braid": {"triple": [3, 7, 5]},
            }]))
        self.assertEqual(ctx.exception.field, "braid")

    def test_braid_needs_word_or_triple(self):
        base = {"name": "x", "alexander": [-1, 1], "symmetry": "reversible"}
        for braid in (
            {"strands": 2, "word": [1, 1, 1], "triple": [3, 7, 5]},
            {"strands": 2},
            {},
        ):
            with self.subTest(braid=braid):
                with self.assertRaises(SchemaError):
                    parse_catalog(json.dumps([dict(base, braid=braid)]))


class TestIdentification(unittest.TestCase):
    def test_square_knot(self):
        result = identify(*invariants(3, 5, 4))
        self.assertEqual(result.primary, "3_1 # m(3_1)")
        self.assertEqual(result.candidates[0].strength, "alexander_and_jones")
        self.assertNotIn("3_1 # 3_1", result.names)

    def test_granny_kept_without_jones(self):
        delta, _ = invariants(3, 5, 4)
        names = identify(delta).names
        self.assertIn("3_1 # 3_1", names)
        self.assertIn("3_1 # m(3_1)", names)

    def test_prime_knots(self):
        self.assertEqual(identify(*invariants(3, 10, 4)).primary, "4_1")
        self.assertEqual(identify(*invariants(4, 13, 5)).primary, "9_46")
        self.assertEqual(identify(*invariants(5, 22, 6)).primary, "7_7")

    def test_torus_knot(self):
        result = identify(*invariants(3, 4, 4, Fraction(1, 2)))
        self.assertEqual(result.primary, "T(3,4)")
        self.assertEqual(result.candidates[0].strength, "alexander_and_jones")

    def test_shared_alexander_lists_every_entry(self):
        delta, _ = invariants(3, 7, 5)
        result = identify(delta)
        self.assertEqual(result.primary, "10_155")
        for name in ("10_155", "14N27120", "14N11995"):
            self.assertIn(name, result.names)

    def test_square_of_five_two(self):
        delta, _ = invariants(4, 7, 5)
        names = identify(delta).names
        self.assertIn("5_2 # 5_2", names)
        self.assertIn("5_2 # m(5_2)", names)

    def test_five_two_sums_fail_jones(self):
        result = identify(*invariants(4, 7, 5))
        self.assertEqual(result.candidates, [])
        self.assertIsNone(result.primary)

    def test_shared_alexander_split_by_jones(self):
        result = identify(*invariants(3, 7, 5))
        self.assertEqual(result.primary, "10_155")
        self.assertEqual(result.candidates[0].strength, "alexander_and_jones")

    def test_three_strand_amphicheiral_knots(self):
        self.assertEqual(identify(*invariants(3, 8, 4)).primary, "8_18")
        self.assertEqual(identify(*invariants(3, 10, 5)).primary, "10_123")

    def test_unknot(self):
        result = identify(*invariants(2, 3, 5))
        self.assertEqual(result.primary, "unknot")

    def test_obstruction_note(self):
        catalog = default_catalog()
        result = identify(catalog.get("8_17").alexander_poly, catalog=catalog)
        self.assertEqual(result.names, ["8_17"])
        self.assertIsNotNone(result.obstruction_note)
        self.assertIsNone(identify(*invariants(3, 10, 4)).obstruction_note)

    def test_empty_catalog(self):
        delta, v = invariants(3, 10, 4)
        result = identify(delta, v, catalog=Catalog())
        self.assertEqual(result.candidates, [])
        self.assertIsNone(result.primary)


class TestPredictions(unittest.TestCase):
    def test_torus_case(self):
        self.assertEqual(predict_type(3, 4, 4).name, "T(3,4)")
        self.assertEqual(predict_type(3, 28, 4).name, "T(3,4)")

    def test_trivial_families(self):
        self.assertEqual(predict_type(2, 3, 5).name, "unknot")
        self.assertEqual(predict_type(3, 7, 4).name, "unknot")
        self.assertEqual(predict_type(3, 4, 7).name, "unknot")

    def test_no_prediction(self):
        self.assertIsNone(predict_type(3, 7, 5))
        self.assertIsNone(predict_type(4, 13, 5))

    def test_predicted_unknot_has_trivial_alexander(self):
        delta, _ = invariants(3, 7, 4)
        self.assertEqual(RolfsenCoeffs((1,)).to_poly(), delta)


if __name__ == '__main__':
    unittest.main()
