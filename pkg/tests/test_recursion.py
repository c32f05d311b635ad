import json
import unittest
from fractions import Fraction

from trisub.catalog import FAMILY_SUP_ANGLE, FamilyId, FamilyRangeError, family_tuple
from trisub.census import cached_record
from trisub.exact import canonical_subdivision, is_z_degree, make_triangle
from trisub.recursion import (
    BudgetExceededError,
    Certificate,
    ChildModel,
    FinderStatus,
    MarginalCriteria,
    NodeStatus,
    Strategy,
    ThresholdError,
    children,
    children_cevian,
    children_full,
    default_samples,
    explore,
    is_marginal,
    marginal_witness,
    nontrivial_subdivision_finder,
    only_bisector_certificate,
    sample_candidates,
    small_image_triangles,
    summarize,
    theorem_check,
)

#: a triangle with a denominator-7 and two denominator-49 angles; no family
#: parameter can produce both
UNMATCHED = make_triangle("300/7", "3000/49", "3720/49")

NEEDLE_2A = family_tuple(FamilyId.F2A, "1/2")


class TestChildren(unittest.TestCase):
    def test_cevian(self):
        self.assertEqual(
            children_cevian(NEEDLE_2A),
            [
                make_triangle(30, "1/2", "299/2"),
                make_triangle("1/2", "59/2", 150),
                make_triangle(59, "121/2", "121/2"),
            ],
        )

    def test_full(self):
        kids = children_full(NEEDLE_2A)
        self.assertEqual(len(kids), 6)
        self.assertIn(make_triangle(30, "239/2", "61/2"), kids)

    def test_models(self):
        self.assertEqual(len(children(NEEDLE_2A, ChildModel.CEVIAN)), 3)
        self.assertEqual(len(children(NEEDLE_2A, "full")), 6)
        self.assertEqual(len(children(NEEDLE_2A, "both")), 9)
        with self.assertRaises(ValueError):
            children(NEEDLE_2A, "half")


class TestMarginal(unittest.TestCase):
    def test_is_marginal(self):
        self.assertTrue(is_marginal(make_triangle("1/2", "59/2", 150)))
        self.assertFalse(is_marginal(make_triangle(1, 44, 135)))
        self.assertFalse(is_marginal(make_triangle("1/2", "89/2", 135)))
        self.assertFalse(is_marginal(make_triangle(2, 28, 150)))
        self.assertTrue(
            is_marginal(make_triangle(2, 28, 150), MarginalCriteria("5/2", 140))
        )

    def test_criteria(self):
        with self.assertRaises(ThresholdError):
            MarginalCriteria(2, 1)
        with self.assertRaises(ThresholdError):
            MarginalCriteria(0, 135)
        with self.assertRaises(ThresholdError):
            MarginalCriteria(1, 180)
        self.assertEqual(MarginalCriteria("1/2", "140").small_threshold, Fraction(1, 2))
        self.assertEqual(MarginalCriteria().large_threshold, FAMILY_SUP_ANGLE)

    def test_certificate(self):
        self.assertEqual(
            only_bisector_certificate(make_triangle(1, 2, 177)), Certificate.CERTIFIED
        )
        self.assertEqual(
            only_bisector_certificate(make_triangle(5, 35, 140)), Certificate.CERTIFIED
        )
        self.assertEqual(
            only_bisector_certificate(make_triangle(1, 1, 178)),
            Certificate.NOT_CERTIFIED,
        )
        self.assertEqual(
            only_bisector_certificate(make_triangle(20, 60, 100)),
            Certificate.NOT_CERTIFIED,
        )
        self.assertEqual(
            only_bisector_certificate(make_triangle(10, 30, 140)),
            Certificate.NOT_CERTIFIED,
        )


class TestFinder(unittest.TestCase):
    def test_family_triangle(self):
        result = nontrivial_subdivision_finder(make_triangle(1, "181/2", "177/2"))
        self.assertEqual(result.status, FinderStatus.FOUND)
        self.assertTrue(result.sporadics_excluded)
        self.assertIn(
            canonical_subdivision(NEEDLE_2A),
            {canonical_subdivision(t) for t, _ in result.subdivisions},
        )

    def test_bisector_only(self):
        result = nontrivial_subdivision_finder(make_triangle(178, 1, 1))
        self.assertEqual(result.status, FinderStatus.NONE)
        self.assertEqual(result.subdivisions, ())

    def test_unknown(self):
        result = nontrivial_subdivision_finder(UNMATCHED)
        self.assertEqual(result.status, FinderStatus.UNKNOWN_SPORADIC_STATUS)
        self.assertFalse(result.sporadics_excluded)
        self.assertEqual(result.subdivisions, ())

    def test_census_lookup(self):
        result = nontrivial_subdivision_finder(make_triangle(20, 60, 100))
        self.assertEqual(result.status, FinderStatus.FOUND)
        self.assertTrue(result.sporadics_excluded)
        expected = {
            (t, label)
            for t, label in cached_record(20, 60, 100).solutions
            if not label.startswith("trivial")
        }
        found = set(result.subdivisions)
        self.assertTrue(expected <= found)
        # family members with a fractional parameter are not part of the census
        for t, _ in found - expected:
            self.assertFalse(is_z_degree(t))
        for _, label in result.subdivisions:
            self.assertFalse(label.startswith("trivial"))


class TestTheoremCheck(unittest.TestCase):
    def test_witness(self):
        w = marginal_witness(NEEDLE_2A, "family-2a")
        self.assertIsNotNone(w)
        self.assertEqual(w.level, 1)
        self.assertEqual(w.depth(), 1)
        self.assertEqual(
            w.marginal,
            [make_triangle("1/2", "59/2", 150), make_triangle("1/2", 30, "299/2")],
        )
        json.dumps(w.to_dict())

    def test_witness_needs_marginal_children(self):
        # children of integer subdivisions have no angle below 1
        t = cached_record(20, 60, 100).solutions[0][0]
        self.assertIsNone(marginal_witness(t, max_level=1))

    def test_small_image_triangles(self):
        self.assertEqual(
            small_image_triangles(FamilyId.F2A, "1/2"),
            [make_triangle(1, "119/2", "239/2"), make_triangle(1, "177/2", "181/2")],
        )
        self.assertEqual(small_image_triangles(FamilyId.F2D, "1/2"), [])

    def test_default_samples(self):
        self.assertEqual(
            default_samples(FamilyId.F2A, ["1/2"]),
            [Fraction(1, 4), Fraction(1, 2), Fraction(59, 2), Fraction(179, 6)],
        )
        self.assertEqual(
            default_samples(FamilyId.F2B, ["1/2"]),
            [Fraction(1, 6), Fraction(1, 2), Fraction(239, 8)],
        )

    def test_samples_cover_both_ends(self):
        near_zero = [Fraction(1, 12), Fraction(1, 10), Fraction(1, 8), Fraction(1, 3)]
        near_upper = [Fraction(179, 12), Fraction(224, 15), Fraction(269, 18)]
        self.assertEqual(default_samples(FamilyId.F2D), near_zero + near_upper)
        skipped = [
            t
            for t in sample_candidates(FamilyId.F2D)
            if t not in default_samples(FamilyId.F2D)
        ]
        self.assertEqual(
            skipped,
            [
                Fraction(2, 5),
                Fraction(1, 2),
                Fraction(29, 2),
                Fraction(73, 5),
                Fraction(44, 3),
            ],
        )
        # the angle 90 - 6t near the upper end equals the sampled value
        self.assertEqual(
            [small_image_triangles(FamilyId.F2D, t)[0].smallest for t in near_upper],
            [Fraction(1, 2), Fraction(2, 5), Fraction(1, 3)],
        )
        for f in FamilyId:
            ends = {t < f.upper / 2 for t in default_samples(f)}
            self.assertEqual(ends, {True, False}, msg=f)

    def test_all_families_reach_marginal_triangles(self):
        for f in FamilyId:
            report = theorem_check(f, default_samples(f))
            self.assertTrue(report.samples, msg=f)
            for sample in report.samples:
                self.assertTrue(sample.success, msg=(f, sample.t, sample.triangle))
                self.assertEqual(sample.non_bisector_marginals, [])
                self.assertLessEqual(sample.level, 2)

    def test_family_2a(self):
        report = theorem_check(FamilyId.F2A, ["1/2"])
        self.assertEqual(len(report.samples), 2)
        sample = next(
            s
            for s in report.samples
            if s.triangle == make_triangle(1, "177/2", "181/2")
        )
        self.assertEqual(sample.finder_status, FinderStatus.FOUND)
        chain = next(
            (s, label, w)
            for s, label, w in sample.chains
            if canonical_subdivision(s) == canonical_subdivision(NEEDLE_2A)
        )
        _, label, witness = chain
        self.assertEqual(label, "family-2a")
        self.assertEqual(witness.level, 1)
        self.assertIn(make_triangle("1/2", "59/2", 150), witness.marginal)
        json.dumps(report.to_dict())

    def test_rejected_samples(self):
        with self.assertRaises(ValueError):
            theorem_check(FamilyId.F2D, ["1/2"])
        with self.assertRaises(FamilyRangeError):
            theorem_check(FamilyId.F2C, ["15"])


class TestExplore(unittest.TestCase):
    def test_bisector_only(self):
        root = explore(make_triangle(1, 1, 178))
        self.assertEqual(root.status, NodeStatus.BISECTOR_ONLY)
        self.assertEqual(root.children, [])
        summary = summarize(root)
        self.assertEqual(summary["nodes"], 1)
        self.assertEqual(summary["leaves_bisector_only"], 1)
        self.assertEqual(summary["truncated"], 0)

    def test_unknown(self):
        root = explore(UNMATCHED)
        self.assertEqual(root.status, NodeStatus.UNKNOWN)
        self.assertEqual(root.children, [])

    def test_avoid_bisector(self):
        root = explore(make_triangle(20, 60, 100), max_depth=1)
        self.assertEqual(root.status, NodeStatus.HAS_NONTRIVIAL)
        finder = nontrivial_subdivision_finder(make_triangle(20, 60, 100))
        self.assertEqual(len(root.children), len(finder.subdivisions))
        for branch in root.children:
            self.assertEqual(branch.applied[1], ChildModel.CEVIAN)
            self.assertFalse(branch.label.startswith("trivial"))
            self.assertEqual(len(branch.children), 3)
            for leaf in branch.children:
                self.assertEqual(leaf.children, [])
                self.assertEqual(
                    leaf.truncated, leaf.status == NodeStatus.HAS_NONTRIVIAL
                )
        json.dumps(root.to_dict())

    def test_default_triangle_and_depth(self):
        summary = summarize(explore(make_triangle(20, 60, 100), max_depth=3))
        self.assertEqual(summary["nodes"], 361)
        self.assertEqual(summary["truncated"], 99)
        self.assertEqual(summary["leaves_bisector_only"], 145)
        self.assertEqual(summary["leaves_unknown"], 5)

    def test_exhaustive(self):
        tri = make_triangle(60, 60, 60)
        root = explore(tri, Strategy.EXHAUSTIVE, max_depth=1)
        self.assertEqual(len(root.children), len(cached_record(60, 60, 60).canonical))
        for branch in root.children:
            self.assertEqual(len(branch.children), 3)
            for leaf in branch.children:
                self.assertEqual(leaf.children, [])
                self.assertEqual(
                    leaf.truncated,
                    len(cached_record(*(int(x) for x in leaf.triangle)).canonical) > 0,
                )

    def test_exhaustive_needs_integer_angles(self):
        with self.assertRaises(ValueError):
            explore(make_triangle(1, "181/2", "177/2"), "exhaustive")

    def test_budgets(self):
        tri = make_triangle(60, 60, 60)
        root = explore(tri, "exhaustive", max_depth=0)
        self.assertTrue(root.truncated)
        self.assertEqual(root.children, [])
        with self.assertRaises(BudgetExceededError):
            explore(tri, "exhaustive", max_depth=0, complete=True)
        with self.assertRaises(BudgetExceededError):
            explore(tri, "exhaustive", max_depth=1, max_nodes=3)

    def test_strategy_names(self):
        self.assertEqual(Strategy.parse("avoid-bisector"), Strategy.AVOID_BISECTOR)
        self.assertEqual(Strategy.parse("exhaustive"), Strategy.EXHAUSTIVE)


if __name__ == "__main__":
    unittest.main()
