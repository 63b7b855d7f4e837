"""
Tests for the RK4 tangent-angle oracle
"""

import os
import sys
import math
import unittest

import numpy as np

# Add parent directory to path to allow imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.errors import AlignmentError, DomainError, IntegrationError
from core.families import make_curve
from core.ode_oracle import (align, canonical_xi0, deviation_profile, integrate_xi,
                             max_deviation, ode_residual, richardson_ratio,
                             trajectory_from_curve)

C_GRID = (-3.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 3.0)


def oracle_range(curve, half_width=5.0, fraction=0.9999):
    if curve.is_bounded:
        half = fraction * curve.domain[1]
        return (-half, half)
    return (-half_width, half_width)


class TestIntegrateXi(unittest.TestCase):
    """Test cases for the fixed-step integrator"""

    def test_constant_solution_is_a_line(self):
        """Test cos(2 xi0) = c keeps xi fixed and traces a line"""
        traj = integrate_xi(0.0, math.pi / 4.0, (-5.0, 5.0), 1e-3)
        self.assertLessEqual(np.max(np.abs(traj.xi - math.pi / 4.0)), 1e-12)
        np.testing.assert_allclose(traj.x, 0.0, atol=1e-12)
        np.testing.assert_allclose(traj.y, traj.s, atol=1e-10)

    def test_exact_fixed_point(self):
        """Test c = -1 with xi0 = pi/2 is exactly stationary, parallel to the x-axis"""
        traj = integrate_xi(-1.0, math.pi / 2.0, (-2.0, 2.0), 1e-3)
        self.assertTrue(np.all(traj.xi == math.pi / 2.0))
        np.testing.assert_allclose(traj.x, traj.s, atol=1e-10)
        np.testing.assert_allclose(traj.y, 0.0, atol=1e-12)

    def test_grid(self):
        """Test the grid runs outward from s = 0 in both directions"""
        traj = integrate_xi(0.5, math.pi / 2.0, (-1.0, 2.0), 0.01)
        self.assertEqual(len(traj), 301)
        self.assertAlmostEqual(traj.s[0], -1.0)
        self.assertAlmostEqual(traj.s[-1], 2.0)
        i0 = traj.origin_index
        self.assertEqual(traj.s[i0], 0.0)
        self.assertEqual((traj.x[i0], traj.y[i0], traj.xi[i0]), (0.0, 0.0, math.pi / 2.0))

    def test_unit_tangent(self):
        """Test the reconstructed tangent is unit by construction"""
        traj = integrate_xi(1.5, 0.0, (-1.0, 1.0), 1e-3)
        xp, yp = traj.tangent()
        np.testing.assert_allclose(xp ** 2 + yp ** 2, 1.0, atol=1e-15)

    def test_residual_bound(self):
        """Test |-2 xi' + cos 2xi - c| <= 10 step^2 for every branch"""
        step = 1e-3
        for c in C_GRID:
            curve = make_curve(c)
            traj = integrate_xi(c, canonical_xi0(curve), oracle_range(curve, 3.0), step)
            self.assertLessEqual(np.max(np.abs(ode_residual(traj))), 10.0 * step ** 2, msg=f"c={c}")

    def test_bad_step(self):
        """Test non-positive steps are rejected"""
        with self.assertRaises(IntegrationError):
            integrate_xi(0.0, 0.0, (-1.0, 1.0), 0.0)
        with self.assertRaises(IntegrationError):
            integrate_xi(0.0, 0.0, (-1.0, 1.0), -1e-3)

    def test_bad_range(self):
        """Test ranges must be finite and contain s = 0"""
        with self.assertRaises(DomainError):
            integrate_xi(0.0, 0.0, (-math.inf, 1.0), 1e-3)
        with self.assertRaises(DomainError):
            integrate_xi(0.0, 0.0, (1.0, 2.0), 1e-3)


class TestCanonicalInitialAngle(unittest.TestCase):
    """Test cases for canonical_xi0"""

    def test_values(self):
        """Test the initial angles of the canonical representatives"""
        self.assertAlmostEqual(canonical_xi0(make_curve(0.0)), math.pi / 2.0, places=14)
        self.assertAlmostEqual(canonical_xi0(make_curve(0.5)), math.pi / 2.0, places=14)
        self.assertAlmostEqual(canonical_xi0(make_curve(1.0)), math.pi / 2.0, places=14)
        self.assertAlmostEqual(canonical_xi0(make_curve(-1.0)), 0.0, places=14)
        self.assertAlmostEqual(canonical_xi0(make_curve(2.0)), 0.0, places=14)
        self.assertAlmostEqual(canonical_xi0(make_curve(-3.0)), 0.0, places=14)
        self.assertAlmostEqual(canonical_xi0(make_curve(0.5, reflect=True)), 0.0, places=14)


class TestAlignment(unittest.TestCase):
    """Test cases for align and max_deviation"""

    def test_grim_reaper(self):
        """Test the c = 0 trajectory from xi0 = pi/2 is the Grim Reaper shifted by (-pi/2, -ln 2)"""
        curve = make_curve(0.0)
        traj = integrate_xi(0.0, math.pi / 2.0, (-5.0, 5.0), 1e-4)
        alignment = align(traj, curve)
        self.assertAlmostEqual(alignment.s_shift, 0.0, places=12)
        self.assertAlmostEqual(alignment.translation.x, -math.pi / 2.0, places=12)
        self.assertAlmostEqual(alignment.translation.y, -math.log(2.0), places=12)
        self.assertLessEqual(max_deviation(traj, curve, alignment), 1e-6)

    def test_periodic_zero_shift(self):
        """Test c = 2 from xi0 = 0 needs no parameter shift"""
        curve = make_curve(2.0)
        traj = integrate_xi(2.0, 0.0, oracle_range(curve), 1e-3)
        s_shift, translation = align(traj, curve)
        self.assertLessEqual(abs(s_shift), 1e-9)
        self.assertLessEqual(math.hypot(translation.x, translation.y), 1e-9)

    def test_shifted_start(self):
        """Test a trajectory started mid-curve is found at the right parameter"""
        curve = make_curve(0.5)
        theta = float(curve.tangent_angle(1.3))
        traj = integrate_xi(0.5, (math.pi - theta) / 2.0, (-3.0, 3.0), 1e-3)
        alignment = align(traj, curve)
        self.assertAlmostEqual(alignment.s_shift, 1.3, places=9)
        self.assertLessEqual(max_deviation(traj, curve, alignment), 1e-8)

    def test_open_branch_deviation(self):
        """Test c = 0.5 at step 1e-4 over [-5, 5] deviates by at most 1e-6"""
        curve = make_curve(0.5)
        traj = integrate_xi(0.5, canonical_xi0(curve), (-5.0, 5.0), 1e-4)
        self.assertLessEqual(max_deviation(traj, curve, align(traj, curve)), 1e-6)

    def test_periodic_branch_deviation(self):
        """Test c = -3 over 99.99% of its domain deviates by at most 1e-5"""
        curve = make_curve(-3.0)
        traj = integrate_xi(-3.0, canonical_xi0(curve), oracle_range(curve), 1e-4)
        self.assertLessEqual(max_deviation(traj, curve, align(traj, curve)), 1e-5)

    def test_every_branch(self):
        """Test the oracle matches every closed form at step 1e-3"""
        for c in C_GRID:
            for reflect in (False, True):
                curve = make_curve(c, reflect=reflect)
                traj = integrate_xi(c, canonical_xi0(curve), oracle_range(curve, 3.0), 1e-3)
                deviation = max_deviation(traj, curve, align(traj, curve))
                self.assertLessEqual(deviation, 1e-6, msg=f"c={c}, reflect={reflect}")

    def test_self_comparison(self):
        """Test a closed form compared to its own samples deviates by nothing"""
        for c in (0.5, 2.0, -1.0):
            curve = make_curve(c)
            traj = trajectory_from_curve(curve, oracle_range(curve, 3.0), 1e-3)
            alignment = align(traj, curve)
            self.assertLessEqual(abs(alignment.s_shift), 1e-12)
            self.assertLessEqual(max_deviation(traj, curve, alignment), 1e-12)

    def test_deviation_profile(self):
        """Test the profile's worst point gives max_deviation and lies in the domain"""
        curve = make_curve(2.0)
        traj = integrate_xi(2.0, canonical_xi0(curve), oracle_range(curve), 1e-3)
        alignment = align(traj, curve)
        s, dev = deviation_profile(traj, curve, alignment)
        self.assertEqual(len(s), len(dev))
        self.assertEqual(float(np.max(dev)), max_deviation(traj, curve, alignment))
        worst = s[int(np.argmax(dev))]
        self.assertTrue(curve.domain[0] < worst < curve.domain[1])

    def test_coarse_comparison_grid(self):
        """Test PCHIP resampling onto a coarser grid keeps the deviation small"""
        curve = make_curve(0.5)
        traj = integrate_xi(0.5, canonical_xi0(curve), (-3.0, 3.0), 1e-3)
        alignment = align(traj, curve)
        self.assertLessEqual(max_deviation(traj, curve, alignment, grid_step=0.01), 1e-5)

    def test_mismatched_c(self):
        """Test trajectories and curves with different c are not aligned"""
        traj = integrate_xi(0.5, math.pi / 2.0, (-1.0, 1.0), 1e-2)
        with self.assertRaises(AlignmentError):
            align(traj, make_curve(0.25))

    def test_line_initial_condition(self):
        """Test a line's initial tangent has no match on the Grim Reaper"""
        traj = integrate_xi(0.0, math.pi / 4.0, (-1.0, 1.0), 1e-2)
        with self.assertRaises(AlignmentError):
            align(traj, make_curve(0.0))

    def test_richardson(self):
        """Test halving the step cuts the deviation by at least 8"""
        curve = make_curve(0.5)
        ratio = richardson_ratio(0.5, canonical_xi0(curve), (-2.0, 2.0), 0.02)
        self.assertGreaterEqual(ratio, 8.0)


if __name__ == '__main__':
    unittest.main()
