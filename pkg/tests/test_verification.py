"""
Tests for the invariant verification suite
"""

import os
import sys
import math
import unittest
from unittest import mock

# Add parent directory to path to allow imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.families import make_curve
from core.geometry import CurveSamples
from core.verification import CheckResult, DEFAULT_C_VALUES, VerificationSuite, fd_step


class TestCheckResult(unittest.TestCase):
    """Test cases for single check results"""

    def test_pass_and_fail(self):
        """Test a result passes only within its tolerance"""
        self.assertTrue(CheckResult('unit_speed', 0.5, 1.0, 1e-7, 1e-6).passed)
        self.assertFalse(CheckResult('unit_speed', 0.5, 1.0, 2e-6, 1e-6).passed)
        self.assertFalse(CheckResult('unit_speed', 0.5, 1.0, math.inf, 1e-6).passed)

    def test_row(self):
        """Test the row layout used for CSV reports"""
        row = CheckResult('symmetry', -0.5, 2.0, 0.0, 1e-6).as_row()
        self.assertEqual(list(row), ['c', 'check', 'worst_s', 'max_error', 'tolerance', 'passed'])
        self.assertTrue(row['passed'])

    def test_fd_step(self):
        """Test the finite-difference step shrinks for large |c|"""
        self.assertEqual(fd_step(0.5), 1e-3)
        self.assertEqual(fd_step(-1.0), 1e-3)
        self.assertAlmostEqual(fd_step(3.0), 5e-4, places=15)


class TestDefaultSuite(unittest.TestCase):
    """Test cases for the full default grid"""

    @classmethod
    def setUpClass(cls):
        """Run the default suite once"""
        cls.suite = VerificationSuite()
        cls.results = cls.suite.run()

    def test_all_pass(self):
        """Test every check passes on the default grid"""
        failures = [(r.check, r.c, r.max_error) for r in self.suite.failures()]
        self.assertEqual(failures, [])
        self.assertTrue(self.suite.passed)

    def test_coverage(self):
        """Test each c gets the expected checks, symmetry only for |c| < 1"""
        by_c = {}
        for r in self.results:
            by_c.setdefault(r.c, set()).add(r.check)
        self.assertEqual(sorted(by_c), sorted(DEFAULT_C_VALUES))
        base = {'kf_analytic', 'unit_speed', 'kf_finite_difference', 'scaling_lemma',
                'ode_residual', 'ode_deviation'}
        for c, checks in by_c.items():
            expected = base | {'symmetry'} if abs(c) < 1.0 else base
            self.assertEqual(checks, expected, msg=f"c={c}")

    def test_sorted(self):
        """Test results are ordered by (c, check)"""
        keys = [(r.c, r.check) for r in self.results]
        self.assertEqual(keys, sorted(keys))

    def test_frame(self):
        """Test the report table has one row per check"""
        frame = self.suite.to_frame()
        self.assertEqual(len(frame), len(self.results))
        self.assertEqual(list(frame.columns),
                         ['c', 'check', 'worst_s', 'max_error', 'tolerance', 'passed'])
        self.assertTrue(frame['passed'].all())


class TestSuiteOptions(unittest.TestCase):
    """Test cases for non-default suites"""

    def test_reflected_families(self):
        """Test the mirrored families pass as well"""
        suite = VerificationSuite([0.5, -0.5, 2.0], reflect=True)
        suite.run()
        self.assertTrue(suite.passed, msg=str(suite.failures()))

    def test_impossible_tolerance(self):
        """Test a tolerance below roundoff makes the suite fail"""
        suite = VerificationSuite([0.5], tol=1e-15, step=1e-3)
        suite.run()
        self.assertFalse(suite.passed)
        failed = {r.check: r for r in suite.failures()}
        self.assertIn('ode_residual', failed)
        self.assertIn('ode_deviation', failed)
        for result in failed.values():
            self.assertTrue(math.isfinite(result.worst_s), msg=result.check)
            self.assertLessEqual(abs(result.worst_s), 5.0 + 1e-6, msg=result.check)

    def test_scaling_check_catches_unscaled_positions(self):
        """Test a rescaling that forgets to shrink positions fails the scaling check"""
        def unscaled(samples, a):
            return CurveSamples(samples.s / a, samples.x, samples.y,
                                samples.xp, samples.yp, a * samples.xpp, a * samples.ypp)

        suite = VerificationSuite([0.5])
        curve = make_curve(0.5)
        self.assertTrue(suite.check_scaling_lemma(curve).passed)
        with mock.patch('core.verification.density_rescale', side_effect=unscaled):
            result = suite.check_scaling_lemma(curve)
        self.assertFalse(result.passed)
        self.assertGreater(result.max_error, 1e-3)

    def test_empty_list(self):
        """Test an empty c list is rejected"""
        with self.assertRaises(ValueError):
            VerificationSuite([]).run()

    def test_not_run(self):
        """Test a suite that has not run does not count as passed"""
        self.assertFalse(VerificationSuite([0.5]).passed)


if __name__ == '__main__':
    unittest.main()
