import os
import unittest

import numpy as np

from trisub.exact import is_z_degree, make_tuple
from trisub.oracle import (
    agrees,
    oracle_check,
    random_integer_tuple,
    random_rational_tuple,
)

SLOW = os.environ.get("TRISUB_SLOW_TESTS") == "1"


class TestOracle(unittest.TestCase):
    def test_random_tuples(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            t = random_integer_tuple(rng)
            self.assertTrue(is_z_degree(t))
            self.assertEqual(sum(t.entries), 180)
            s = random_rational_tuple(rng, 6)
            self.assertEqual(sum(s.entries), 180)
            for e in s.entries:
                self.assertEqual((e * 6 * 5 * 4).denominator, 1, msg=s)

    def test_agrees(self):
        self.assertEqual(agrees(make_tuple(30, 10, 40, 70, 10, 20)), (True, True))
        self.assertEqual(agrees(make_tuple(30, 10, 40, 70, 11, 19)), (False, True))
        # a useless threshold makes the numerical side claim a zero
        self.assertEqual(
            agrees(make_tuple(30, 10, 40, 70, 11, 19), threshold=1.0), (False, False)
        )

    def test_small_run(self):
        report = oracle_check(200, 20, np.random.default_rng(0), max_denominator=4)
        self.assertTrue(report.success)
        self.assertEqual(report.samples, 440)
        self.assertGreaterEqual(report.positives, 220)

    def test_reproducible(self):
        a = oracle_check(20, 5, np.random.default_rng(3), max_denominator=4)
        b = oracle_check(20, 5, np.random.default_rng(3), max_denominator=4)
        self.assertEqual((a.samples, a.positives), (b.samples, b.positives))

    @unittest.skipUnless(SLOW, "set TRISUB_SLOW_TESTS=1 for the full oracle run")
    def test_full_run(self):
        report = oracle_check(100000, 1000, np.random.default_rng(0))
        self.assertTrue(report.success, msg=report.disagreements[:10])


if __name__ == "__main__":
    unittest.main()
