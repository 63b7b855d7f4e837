"""
Tests for the rescaled-curvature round-point study
"""

import os
import sys
import math
import unittest

import numpy as np

# Add parent directory to path to allow imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.convergence import (RescaleReport, closed_form_extremes, convergence_sweep,
                              reports_frame, rescaled_curvature, rescaled_curvature_simplified,
                              rescaled_trace)
from core.errors import DomainError
from core.families import make_curve
from core.geometry import euclidean_curvature


class TestRescaledCurvature(unittest.TestCase):
    """Test cases for the two rescaled curvature forms"""

    def test_values_at_two(self):
        """Test c = 2 gives sqrt(3)/3 at s = 0 and tends to sqrt(3) at the ends"""
        self.assertAlmostEqual(rescaled_curvature(2.0, 0.0), math.sqrt(3.0) / 3.0, places=14)
        edge = (1.0 - 1e-9) * math.pi / math.sqrt(3.0)
        self.assertAlmostEqual(rescaled_curvature(2.0, edge), math.sqrt(3.0), places=6)
        self.assertAlmostEqual(rescaled_curvature_simplified(2.0, -edge), math.sqrt(3.0), places=6)

    def test_forms_agree(self):
        """Test the direct and simplified forms agree across the domain"""
        for c in (1.1, 2.0, 10.0, 100.0):
            lo, hi = make_curve(c).truncated_domain(1e-6)
            s = np.linspace(lo, hi, 2001)
            r_max = closed_form_extremes(c)[1]
            gap = np.max(np.abs(rescaled_curvature(c, s) - rescaled_curvature_simplified(c, s)))
            self.assertLessEqual(gap, 1e-12 * max(1.0, r_max), msg=f"c={c}")

    def test_matches_curve_curvature(self):
        """Test the rescaled form is the curve's Euclidean curvature over sqrt(c^2-1)"""
        for c in (1.5, 3.0, 20.0):
            curve = make_curve(c)
            lo, hi = curve.truncated_domain(1e-6)
            samples = curve.sample(lo, hi, 1001)
            kappa = euclidean_curvature(samples.xp, samples.yp, samples.xpp, samples.ypp)
            w = math.sqrt(c * c - 1.0)
            np.testing.assert_allclose(kappa / w, rescaled_curvature_simplified(c, samples.s),
                                       rtol=1e-9)

    def test_scalar_and_array(self):
        """Test scalar input gives a float and arrays keep their shape"""
        self.assertIsInstance(rescaled_curvature_simplified(3.0, 0.1), float)
        self.assertEqual(rescaled_curvature(3.0, np.zeros(4)).shape, (4,))

    def test_domain_errors(self):
        """Test c <= 1 and out-of-domain s are rejected"""
        with self.assertRaises(DomainError):
            rescaled_curvature(1.0, 0.0)
        with self.assertRaises(DomainError):
            rescaled_curvature_simplified(0.5, 0.0)
        with self.assertRaises(DomainError):
            rescaled_curvature(2.0, math.pi / math.sqrt(3.0))
        with self.assertRaises(DomainError):
            closed_form_extremes(-2.0)


class TestConvergenceSweep(unittest.TestCase):
    """Test cases for the sweep over growing c"""

    def setUp(self):
        """Run the reference sweep"""
        self.reports = convergence_sweep([2.0, 10.0, 100.0, 1000.0])

    def test_reference_values(self):
        """Test sup |r - 1| for c = 10, 100, 1000"""
        by_c = {r.c: r for r in self.reports}
        self.assertAlmostEqual(by_c[10.0].sup_dev, 0.1055416, places=7)
        self.assertAlmostEqual(by_c[100.0].sup_dev, 0.0100505, places=7)
        self.assertAlmostEqual(by_c[1000.0].sup_dev, 0.0010005, places=7)

    def test_extremes(self):
        """Test r_min * r_max = 1 and r_min < 1 < r_max"""
        for report in self.reports:
            self.assertAlmostEqual(report.r_min * report.r_max, 1.0, places=12)
            self.assertLess(report.r_min, 1.0)
            self.assertGreater(report.r_max, 1.0)
            self.assertAlmostEqual(report.sup_dev, report.r_max - 1.0, places=14)

    def test_monotone_decay(self):
        """Test the deviation shrinks like 1/c"""
        devs = [r.sup_dev for r in self.reports]
        self.assertTrue(all(a > b for a, b in zip(devs, devs[1:])))
        self.assertLessEqual(abs(self.reports[2].sup_dev * 100.0 - 1.0), 0.02)

    def test_c_close_to_one(self):
        """Test sweeps just above c = 1, where r_max is large, still succeed"""
        for c in (1.0001, 1.00001):
            report, = convergence_sweep([c])
            expected = math.sqrt((c + 1.0) / (c - 1.0)) - 1.0
            self.assertAlmostEqual(report.sup_dev / expected, 1.0, delta=1e-9)
            self.assertGreater(report.sup_dev, 100.0)

    def test_rejects_small_c(self):
        """Test a sweep containing c <= 1 fails before computing anything"""
        with self.assertRaises(DomainError):
            convergence_sweep([2.0, 1.0])

    def test_frame(self):
        """Test the report table is sorted by c"""
        frame = reports_frame(convergence_sweep([10.0, 2.0], n=1001))
        self.assertEqual(list(frame.columns), ['c', 'r_min', 'r_max', 'sup_dev'])
        self.assertEqual(list(frame['c']), [2.0, 10.0])
        self.assertEqual(RescaleReport(2.0, 0.5, 2.0, 1.0).as_row()['sup_dev'], 1.0)


class TestRescaledTrace(unittest.TestCase):
    """Test cases for the rescaled, centred trace"""

    def test_trace_curvature_range(self):
        """Test the rescaled trace has curvature between r_min and r_max"""
        c = 10.0
        trace = rescaled_trace(c, n=2001)
        r_min, r_max = closed_form_extremes(c)
        kappa = euclidean_curvature(trace.xp, trace.yp, trace.xpp, trace.ypp)
        self.assertGreaterEqual(np.min(kappa), r_min * (1.0 - 1e-12))
        self.assertLessEqual(np.max(kappa), r_max * (1.0 + 1e-12))

    def test_trace_centred(self):
        """Test the trace is centred on its mean point"""
        trace = rescaled_trace(5.0, n=501)
        self.assertAlmostEqual(float(np.mean(trace.x)), 0.0, places=12)
        self.assertAlmostEqual(float(np.mean(trace.y)), 0.0, places=12)


if __name__ == '__main__':
    unittest.main()
