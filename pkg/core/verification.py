"""
Invariant suites behind the `verify` command

Each check compares a computed quantity against its exact value on a grid
of s for one c and reports the worst error, where it happened and whether
it stayed within tolerance.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from core.errors import TangentError
from core.families import clip_to_domain, make_curve, symmetry_check
from core.geometry import (density_rescale, weighted_curvature,
                           weighted_curvature_fd_all)
from core.ode_oracle import (align, canonical_xi0, deviation_profile, integrate_xi,
                             ode_residual)

logger = logging.getLogger('weightedcurves.verification')

DEFAULT_C_VALUES = (-3.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 3.0)
DEFAULT_TOL = 1e-6
DEFAULT_STEP = 1e-4
HALF_WIDTH = 5.0
GRID_SAMPLES = 1001
SCALING_SLOPES = (0.5, 2.0, 3.0)
FD_BASE_STEP = 1e-3
# Central differences at h = 1e-3 are only good to a few 1e-6
FD_TOL_FLOOR = 1e-5
# Share of the periodic domain covered by oracle runs
ORACLE_DOMAIN_FRACTION = 0.9999
# Oracle tolerance multiplier for the periodic branches
PERIODIC_ORACLE_FACTOR = 10.0


@dataclass(frozen=True)
class CheckResult:
    check: str
    c: float
    worst_s: float
    max_error: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.max_error <= self.tolerance)

    def as_row(self):
        return {'c': self.c, 'check': self.check, 'worst_s': self.worst_s,
                'max_error': self.max_error, 'tolerance': self.tolerance, 'passed': self.passed}


def _worst(check, c, s, errors, tolerance):
    errors = np.abs(np.asarray(errors, dtype=float))
    i = int(np.nanargmax(errors)) if np.any(np.isfinite(errors)) else 0
    worst = float(errors[i]) if np.all(np.isfinite(errors)) else math.inf
    return CheckResult(check, float(c), float(s[i]), worst, float(tolerance))


def fd_step(c):
    """Finite-difference step shrunk with the curvature scale of c"""
    return FD_BASE_STEP * min(1.0, 2.0 / (1.0 + abs(c)))


class VerificationSuite:
    """Runs every invariant check for a list of constant weighted curvatures"""

    def __init__(self, c_values=DEFAULT_C_VALUES, tol=DEFAULT_TOL, step=DEFAULT_STEP, reflect=False):
        self.c_values = sorted(float(c) for c in c_values)
        self.tol = float(tol)
        self.step = float(step)
        self.reflect = bool(reflect)
        self.results = []

    def _grid(self, curve, n=GRID_SAMPLES):
        lo, hi, _ = clip_to_domain(curve, -HALF_WIDTH, HALF_WIDTH)
        return curve.sample(lo, hi, n)

    def check_kf_analytic(self, curve):
        samples = self._grid(curve)
        kf = weighted_curvature(samples.xp, samples.yp, samples.xpp, samples.ypp)
        return _worst('kf_analytic', curve.c, samples.s, kf - curve.c, self.tol)

    def check_unit_speed(self, curve):
        samples = self._grid(curve)
        return _worst('unit_speed', curve.c, samples.s,
                      samples.xp ** 2 + samples.yp ** 2 - 1.0, self.tol)

    def _fd_grid(self, curve):
        h = fd_step(curve.c)
        lo, hi, _ = clip_to_domain(curve, -HALF_WIDTH, HALF_WIDTH)
        n = int(math.floor((hi - lo) / h)) + 1
        return curve.sample(lo, lo + (n - 1) * h, n)

    def check_kf_finite_difference(self, curve):
        samples = self._fd_grid(curve)
        kf = weighted_curvature_fd_all(samples)
        return _worst('kf_finite_difference', curve.c, samples.s[1:-1], kf - curve.c,
                      max(self.tol, FD_TOL_FLOOR))

    def check_scaling_lemma(self, curve):
        """
        beta = alpha(a*s)/a against the closed form at a*s, and the central
        difference weighted curvature of beta's positions under e^{a*y} against a*c.
        """
        samples = self._fd_grid(curve)
        errors = np.zeros(len(samples) - 2)
        for a in SCALING_SLOPES:
            beta = density_rescale(samples, a)
            x, y = curve.positions(a * beta.s)
            placed = np.maximum(np.abs(beta.x - x / a), np.abs(beta.y - y / a))
            try:
                kf_beta = weighted_curvature_fd_all(beta, a=a)
            except TangentError:
                kf_beta = np.full(len(errors), math.inf)
            errors = np.maximum(errors, np.maximum(np.abs(kf_beta / a - curve.c), placed[1:-1]))
        return _worst('scaling_lemma', curve.c, samples.s[1:-1], errors,
                      max(self.tol, FD_TOL_FLOOR))

    def check_symmetry(self, curve):
        s = np.linspace(-HALF_WIDTH, HALF_WIDTH, GRID_SAMPLES)
        df, dg = symmetry_check(curve.c, s)
        return _worst('symmetry', curve.c, s, np.maximum(np.abs(df), np.abs(dg)), self.tol)

    def _oracle_range(self, curve):
        if curve.is_bounded:
            half = ORACLE_DOMAIN_FRACTION * curve.domain[1]
            return (-half, half)
        return (-HALF_WIDTH, HALF_WIDTH)

    def check_ode(self, curve):
        """Residual and closed-form deviation of the RK4 oracle"""
        traj = integrate_xi(curve.c, canonical_xi0(curve), self._oracle_range(curve), self.step)
        residual = _worst('ode_residual', curve.c, traj.s[1:-1], ode_residual(traj), self.tol)

        tolerance = self.tol * (PERIODIC_ORACLE_FACTOR if curve.is_bounded else 1.0)
        s, deviation = deviation_profile(traj, curve, align(traj, curve))
        return [residual, _worst('ode_deviation', curve.c, s, deviation, tolerance)]

    def run_one(self, c):
        curve = make_curve(c, reflect=self.reflect)
        results = [
            self.check_kf_analytic(curve),
            self.check_unit_speed(curve),
            self.check_kf_finite_difference(curve),
            self.check_scaling_lemma(curve),
        ]
        if abs(c) < 1.0:
            results.append(self.check_symmetry(curve))
        results.extend(self.check_ode(curve))
        return results

    def run(self):
        """Run every check for every c; results are sorted by (c, check)"""
        if not self.c_values:
            raise ValueError("verification needs at least one c value")
        self.results = []
        for c in self.c_values:
            logger.info(f"Verifying c = {c}")
            self.results.extend(self.run_one(c))
        self.results.sort(key=lambda r: (r.c, r.check))
        for result in self.failures():
            logger.warning(f"Check {result.check} failed at c={result.c}, s={result.worst_s}: "
                           f"{result.max_error:.3e} > {result.tolerance:.1e}")
        return self.results

    @property
    def passed(self):
        return bool(self.results) and all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def to_frame(self):
        return pd.DataFrame([r.as_row() for r in self.results],
                            columns=['c', 'check', 'worst_s', 'max_error', 'tolerance', 'passed'])
