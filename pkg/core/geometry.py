"""
Density-aware differential geometry of plane curves for WeightedCurves

Curvature, weighted curvature, weighted length and the density-rescaling
transform for curves in the plane with log-linear density e^{a*y}.
All curves are arc-length parametrized; the orientation convention is the
one of k_f = x'y'' - x''y' - x', so reversing a parametrization negates k_f.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, simpson, trapezoid

from core.errors import DegenerateDensityError, SamplingError, TangentError

logger = logging.getLogger('weightedcurves.geometry')

# Tangent tolerance for values handed in by callers
UNIT_TOL_INPUT = 1e-6
# Tangent tolerance for values produced by analytic evaluators
UNIT_TOL_ANALYTIC = 1e-9
# Finite-difference tangents are unit only up to O(h^2 * kappa^2)
FD_UNIT_TOL = 1e-4
# Relative tolerance on grid spacing for finite differences
SPACING_RTOL = 1e-6


@dataclass(frozen=True)
class DensityParams:
    """Slope of the log-linear density f = e^{a*y}"""
    a: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.a):
            raise DegenerateDensityError(f"density slope must be finite, got {self.a}")

    @property
    def is_weighted(self):
        return self.a != 0.0

    def weight(self, y):
        """Density value e^{a*y} at height y"""
        return np.exp(self.a * np.asarray(y, dtype=float))


@dataclass(frozen=True)
class Point2:
    """A point in the plane"""
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def as_tuple(self):
        return (self.x, self.y)

    def distance_to(self, other):
        return math.hypot(self.x - other.x, self.y - other.y)

    def translated(self, dx, dy):
        return Point2(self.x + dx, self.y + dy)


@dataclass(frozen=True, eq=False)
class CurveSamples:
    """
    A sampled arc-length-parametrized curve.

    Derivative columns are optional; when xp and yp are present they must
    describe a unit-speed curve.
    """
    s: np.ndarray
    x: np.ndarray
    y: np.ndarray
    xp: np.ndarray = None
    yp: np.ndarray = None
    xpp: np.ndarray = None
    ypp: np.ndarray = None

    def __post_init__(self):
        for name in ('s', 'x', 'y', 'xp', 'yp', 'xpp', 'ypp'):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, np.asarray(value, dtype=float).ravel())

        n = len(self.s)
        if n < 2:
            raise SamplingError(f"curve samples need at least 2 points, got {n}")
        for name in ('x', 'y', 'xp', 'yp', 'xpp', 'ypp'):
            value = getattr(self, name)
            if value is not None and len(value) != n:
                raise SamplingError(f"column '{name}' has {len(value)} entries, expected {n}")
        if not np.all(np.diff(self.s) > 0):
            raise SamplingError("arc-length parameter s must be strictly increasing")
        if (self.xp is None) != (self.yp is None):
            raise SamplingError("first-derivative columns xp and yp must be given together")
        if (self.xpp is None) != (self.ypp is None):
            raise SamplingError("second-derivative columns xpp and ypp must be given together")
        if self.xpp is not None and self.xp is None:
            raise SamplingError("second derivatives given without first derivatives")
        if self.xp is not None:
            _check_unit(self.xp, self.yp, UNIT_TOL_ANALYTIC)

    def __len__(self):
        return len(self.s)

    @property
    def has_derivatives(self):
        return self.xpp is not None

    def uniform_step(self):
        """Return the common grid spacing, rejecting non-uniform grids"""
        steps = np.diff(self.s)
        h = float(np.mean(steps))
        if np.max(np.abs(steps - h)) > SPACING_RTOL * h:
            raise SamplingError("samples are not uniformly spaced in s")
        return h

    def slice(self, start, stop):
        """Samples with indices in [start, stop)"""
        def cut(column):
            return None if column is None else column[start:stop]
        return CurveSamples(cut(self.s), cut(self.x), cut(self.y),
                            cut(self.xp), cut(self.yp), cut(self.xpp), cut(self.ypp))


def _slope(a):
    """Accept either a DensityParams or a bare slope"""
    if isinstance(a, DensityParams):
        return a.a
    a = float(a)
    if not math.isfinite(a):
        raise DegenerateDensityError(f"density slope must be finite, got {a}")
    return a


def _as_result(value):
    """Scalars in, scalar out; arrays in, array out"""
    if np.ndim(value) == 0:
        return float(value)
    return value


def _check_unit(xp, yp, tol):
    """Raise TangentError unless (xp, yp) is unit length within tol"""
    xp = np.asarray(xp, dtype=float)
    yp = np.asarray(yp, dtype=float)
    err = np.abs(xp * xp + yp * yp - 1.0)
    if err.size and (not np.all(np.isfinite(err)) or np.max(err) > tol):
        worst = float(np.nanmax(err)) if np.any(np.isfinite(err)) else float('nan')
        raise TangentError(
            f"tangent is not unit length: max |x'^2 + y'^2 - 1| = {worst:.3e} "
            f"exceeds {tol:g}; the curve is not arc-length parametrized")


def euclidean_curvature(xp, yp, xpp, ypp, tol=UNIT_TOL_INPUT):
    """Signed curvature x'y'' - x''y' of a unit-speed curve"""
    _check_unit(xp, yp, tol)
    xp, yp, xpp, ypp = (np.asarray(v, dtype=float) for v in (xp, yp, xpp, ypp))
    return _as_result(xp * ypp - xpp * yp)


def weighted_curvature(xp, yp, xpp, ypp, a=1.0, tol=UNIT_TOL_INPUT):
    """
    Weighted curvature under the density e^{a*y}.

    Uses the curve's own derivatives: (x'y'' - x''y') - a*x'. For a = 1
    this is k_f = x'y'' - x''y' - x'.
    """
    a = _slope(a)
    _check_unit(xp, yp, tol)
    xp, yp, xpp, ypp = (np.asarray(v, dtype=float) for v in (xp, yp, xpp, ypp))
    return _as_result(xp * ypp - xpp * yp - a * xp)


def weighted_curvature_a(a, xp, yp, xpp, ypp, tol=UNIT_TOL_INPUT):
    """
    Weighted curvature of beta(s) = alpha(a*s)/a under e^{a*y}.

    The derivatives are those of alpha evaluated at a*s, so the result is
    a*(x'y'' - x''y') - a*x' = a * k_f(alpha)(a*s).
    """
    a = _slope(a)
    _check_unit(xp, yp, tol)
    xp, yp, xpp, ypp = (np.asarray(v, dtype=float) for v in (xp, yp, xpp, ypp))
    return _as_result(a * (xp * ypp - xpp * yp) - a * xp)


def weighted_curvature_gradient(gx, gy, xp, yp, xpp, ypp, tol=UNIT_TOL_INPUT):
    """Weighted curvature under the density e^{gx*x + gy*y}, normal N = (-y', x')"""
    _check_unit(xp, yp, tol)
    xp, yp, xpp, ypp = (np.asarray(v, dtype=float) for v in (xp, yp, xpp, ypp))
    return _as_result(xp * ypp - xpp * yp - (gx * (-yp) + gy * xp))


def _central_differences(samples, index):
    h = samples.uniform_step()
    x, y = samples.x, samples.y
    lo, mid, hi = index - 1, index, index + 1
    xp = (x[hi] - x[lo]) / (2.0 * h)
    yp = (y[hi] - y[lo]) / (2.0 * h)
    xpp = (x[hi] - 2.0 * x[mid] + x[lo]) / (h * h)
    ypp = (y[hi] - 2.0 * y[mid] + y[lo]) / (h * h)
    return xp, yp, xpp, ypp


def weighted_curvature_fd(samples, i, a=1.0):
    """Central-difference estimate of the weighted curvature at interior index i"""
    n = len(samples)
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= n - 2:
        raise SamplingError(f"index {i} is not interior; expected 1 <= i <= {n - 2}")
    return weighted_curvature(*_central_differences(samples, i), a=a, tol=FD_UNIT_TOL)


def weighted_curvature_fd_all(samples, a=1.0):
    """Central-difference weighted curvature at every interior index"""
    if len(samples) < 3:
        raise SamplingError("finite differences need at least 3 samples")
    interior = np.arange(1, len(samples) - 1)
    return weighted_curvature(*_central_differences(samples, interior), a=a, tol=FD_UNIT_TOL)


def weighted_length(samples, a=1.0):
    """
    Weighted arc length L_f = integral of e^{a*y(s)} ds over the samples.

    Composite Simpson for odd sample counts, trapezoid otherwise.
    """
    a = _slope(a)
    if len(samples) < 2:
        raise SamplingError("weighted length needs at least 2 samples")
    weights = np.exp(a * samples.y)
    if len(samples) % 2 == 1:
        return float(simpson(weights, x=samples.s))
    return float(trapezoid(weights, x=samples.s))


def polyline_weighted_length(x, y, a=1.0):
    """Weighted length of a polyline that need not be arc-length parametrized"""
    a = _slope(a)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2 or len(x) != len(y):
        raise SamplingError("polyline needs at least 2 points with matching coordinates")
    seg = np.hypot(np.diff(x), np.diff(y))
    w = np.exp(a * y)
    return float(np.sum(seg * 0.5 * (w[1:] + w[:-1])))


def density_rescale(samples, a):
    """
    Map alpha to beta(s) = alpha(a*s)/a.

    If alpha has weighted curvature k under e^y, beta has weighted
    curvature a*k under e^{a*y} at corresponding parameters. Negative
    slopes reverse the grid so s stays increasing.
    """
    a = _slope(a)
    if a == 0.0:
        logger.error("density_rescale called with a = 0")
        raise DegenerateDensityError(
            "a = 0 is the unweighted plane; beta(s) = alpha(a*s)/a needs a != 0")
    if a == 1.0:
        return samples

    order = slice(None) if a > 0 else slice(None, None, -1)

    def column(values, factor):
        return None if values is None else (values * factor)[order]

    return CurveSamples(
        s=(samples.s / a)[order],
        x=column(samples.x, 1.0 / a),
        y=column(samples.y, 1.0 / a),
        xp=column(samples.xp, 1.0),
        yp=column(samples.yp, 1.0),
        xpp=column(samples.xpp, a),
        ypp=column(samples.ypp, a),
    )


def polynomial_angle_curve(coeffs, s):
    """
    Unit-speed test curve whose tangent angle is the polynomial
    theta(s) = sum(coeffs[k] * s**k).
    """
    s = np.asarray(s, dtype=float)
    theta = np.polynomial.polynomial.polyval(s, coeffs)
    dtheta = np.polynomial.polynomial.polyval(s, np.polynomial.polynomial.polyder(coeffs))
    xp, yp = np.cos(theta), np.sin(theta)
    x = cumulative_trapezoid(xp, s, initial=0.0)
    y = cumulative_trapezoid(yp, s, initial=0.0)
    return CurveSamples(s, x, y, xp, yp, -dtheta * yp, dtheta * xp)
