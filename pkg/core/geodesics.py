"""
Weighted geodesics of the plane with density e^y

Zero weighted curvature curves are vertical lines and translates of the
Grim Reaper x = x0 + 2 arctan(e^s), y = y0 + ln(2 cosh s), which lives in
the strip x0 < x < x0 + pi. Two points are joined by one of them exactly
when their horizontal distance is less than pi.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.errors import (CoincidentPointsError, GeodesicSolveError,
                         NotConnectableError, SamplingError)
from core.families import make_curve
from core.geometry import CurveSamples, Point2, weighted_length

logger = logging.getLogger('weightedcurves.geodesics')

# Bisection stops once the x0 bracket is this narrow
BISECTION_WIDTH = 1e-12
NEWTON_POLISH_STEPS = 3
# Solved arcs must reproduce their endpoints to this accuracy
ENDPOINT_TOL = 1e-8
# Relative drift between analytic and quadrature lengths worth a warning
QUADRATURE_RTOL = 1e-6
QUADRATURE_SAMPLES = 2001


class GeodesicKind(Enum):
    VERTICAL_SEGMENT = "vertical_segment"
    GRIM_REAPER_ARC = "grim_reaper_arc"


@dataclass(frozen=True)
class GeodesicSolution:
    """
    Connecting geodesic between P and Q.

    For an arc, (x0, y0) translates the canonical Grim Reaper and sP, sQ
    are the arc-length parameters of P and Q. reflect is set when P lies to
    the right of Q, so the arc runs from Q to P as s increases. A vertical
    segment stores x0 = P.x, y0 = 0 and the endpoint heights in sP, sQ.
    """
    kind: GeodesicKind
    x0: float
    y0: float
    reflect: bool
    sP: float
    sQ: float
    weighted_len: float

    def point_at(self, s):
        if self.kind is GeodesicKind.VERTICAL_SEGMENT:
            return Point2(self.x0, float(s))
        return Point2(self.x0 + _arc_angle(s), self.y0 + float(_log_2cosh(s)))

    @property
    def endpoints(self):
        return self.point_at(self.sP), self.point_at(self.sQ)


def _log_2cosh(s):
    """ln(2 cosh s) without overflow"""
    a = np.abs(s)
    return a + np.log1p(np.exp(-2.0 * a))


def _arc_angle(s):
    """2 arctan(e^s), taken from the near end of (0, pi)"""
    if s <= 0.0:
        return 2.0 * math.atan(math.exp(s))
    return math.pi - 2.0 * math.atan(math.exp(-s))


def _arc_parameter(x, x0):
    """Parameter of the point with abscissa x on the Grim Reaper translated by x0"""
    return math.log(math.tan(0.5 * (x - x0)))


def connectable(P, Q):
    """True iff |P.x - Q.x| < pi"""
    if P == Q:
        raise CoincidentPointsError(f"geodesic endpoints coincide at {P.as_tuple()}")
    return abs(P.x - Q.x) < math.pi


class _ShootingResidual:
    """
    r(x0) = [Y(sL) - Y(sR)] - (yL - yR) with Y(s) = ln(2 cosh s).

    Strictly increasing on the open bracket (xR - pi, xL) with
    r'(x0) = sinh sR - sinh sL.
    """

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.target = left.y - right.y
        self.bracket = (right.x - math.pi, left.x)

    def params(self, x0):
        return _arc_parameter(self.left.x, x0), _arc_parameter(self.right.x, x0)

    def __call__(self, x0):
        s_left, s_right = self.params(x0)
        return float(_log_2cosh(s_left) - _log_2cosh(s_right)) - self.target

    def derivative(self, x0):
        s_left, s_right = self.params(x0)
        return math.sinh(s_right) - math.sinh(s_left)


def _solve_x0(residual):
    lo, hi = residual.bracket
    iterations = 0
    while hi - lo > BISECTION_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        value = residual(mid)
        if math.isnan(value):
            raise GeodesicSolveError(f"residual undefined at x0 = {mid!r}")
        if value == 0.0:
            return mid
        if value > 0.0:
            hi = mid
        else:
            lo = mid
        iterations += 1

    x0 = 0.5 * (lo + hi)
    for _ in range(NEWTON_POLISH_STEPS):
        slope = residual.derivative(x0)
        if not slope > 0.0:
            logger.error(f"Residual slope {slope} at x0={x0} between {residual.left} and {residual.right}")
            raise GeodesicSolveError(
                f"shooting residual is not increasing at x0 = {x0!r} (slope {slope:.3e})")
        candidate = x0 - residual(x0) / slope
        x0 = min(max(candidate, lo), hi)
    logger.debug(f"x0 = {x0!r} after {iterations} bisection steps")
    return x0


def shooting_x0(P, Q):
    """
    x0 of the arc through P and Q by bisection and Newton on the shooting residual.

    Loses resolution once the far endpoint sits high on an arm (|s| beyond
    about 18), where x - x0 rounds to pi; connect does not use it.
    """
    left, right = (Q, P) if P.x > Q.x else (P, Q)
    if not 0.0 < right.x - left.x < math.pi:
        raise NotConnectableError(f"no Grim Reaper arc joins {P.as_tuple()} and {Q.as_tuple()}")
    residual = _ShootingResidual(left, right)
    if left.y == right.y:
        return 0.5 * (left.x + right.x) - 0.5 * math.pi
    return _solve_x0(residual)


def _developed_arc(left, right):
    """
    (x0, y0, s_left, s_right) from the chord of the developing map.

    w = e^{y + ix} sends the translated Grim Reaper to the straight line
    w = e^{y0 + i x0} (2i - 2 sinh s), whose foot point F = 2i e^{y0 + i x0}
    gives sinh s = Im(w / F) for every point on it.
    """
    top = max(left.y, right.y)
    w_left = complex(math.exp(left.y - top), 0.0)
    w_right = cmath.exp(complex(right.y - top, right.x - left.x))
    chord = w_right - w_left
    # Im(conj(w_right) * w_left), free of cancellation
    cross = math.exp((left.y - top) + (right.y - top)) * math.sin(left.x - right.x)
    foot = 1j * chord * cross / abs(chord) ** 2
    if foot == 0 or not cmath.isfinite(foot):
        raise GeodesicSolveError(
            f"developed chord through {left.as_tuple()} and {right.as_tuple()} is degenerate")

    s_left = math.asinh((w_left / foot).imag)
    s_right = math.asinh((w_right / foot).imag)
    x0 = left.x - _arc_angle(s_left)
    y0 = left.y - float(_log_2cosh(s_left))
    return x0, y0, s_left, s_right


def connect(P, Q):
    """Unique weighted geodesic from P to Q"""
    if not connectable(P, Q):
        logger.error(f"Points {P.as_tuple()} and {Q.as_tuple()} are pi or more apart in x")
        raise NotConnectableError(
            f"|dx| = {abs(P.x - Q.x):.7f} is not less than pi; no weighted geodesic joins "
            f"{P.as_tuple()} and {Q.as_tuple()}")

    if P.x == Q.x:
        length = abs(math.exp(Q.y) - math.exp(P.y))
        return GeodesicSolution(GeodesicKind.VERTICAL_SEGMENT, P.x, 0.0, False, P.y, Q.y, length)

    reflect = P.x > Q.x
    left, right = (Q, P) if reflect else (P, Q)
    x0, y0, s_left, s_right = _developed_arc(left, right)
    length = 2.0 * math.exp(y0) * abs(math.sinh(s_right) - math.sinh(s_left))
    sP, sQ = (s_right, s_left) if reflect else (s_left, s_right)
    solution = GeodesicSolution(GeodesicKind.GRIM_REAPER_ARC, x0, y0, reflect, sP, sQ, length)

    for given, found in zip((P, Q), solution.endpoints):
        if given.distance_to(found) > ENDPOINT_TOL:
            logger.error(f"Arc misses endpoint {given.as_tuple()} (got {found.as_tuple()})")
            raise GeodesicSolveError(
                f"solved arc misses {given.as_tuple()} by {given.distance_to(found):.3e}")
    logger.info(f"Connected {P.as_tuple()} to {Q.as_tuple()}: x0={x0:.10f}, y0={y0:.10f}")
    return solution


def residual_sign_changes(P, Q, n=1000):
    """Sign changes of the shooting residual over an n-point scan of the open bracket"""
    left, right = (Q, P) if P.x > Q.x else (P, Q)
    residual = _ShootingResidual(left, right)
    lo, hi = residual.bracket
    x0 = lo + (np.arange(n) + 0.5) / n * (hi - lo)
    signs = np.sign([residual(v) for v in x0])
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def sample_solution(sol, n=QUADRATURE_SAMPLES):
    """Unit-speed samples along the solution, in increasing s"""
    lo, hi = sorted((sol.sP, sol.sQ))
    if lo == hi:
        raise SamplingError("a geodesic with coincident parameters has nothing to sample")
    if sol.kind is GeodesicKind.VERTICAL_SEGMENT:
        s = np.linspace(lo, hi, n)
        zeros = np.zeros(n)
        return CurveSamples(s, np.full(n, sol.x0), s, zeros, np.ones(n), zeros, zeros)

    canonical = make_curve(0.0).sample(lo, hi, n)
    return CurveSamples(canonical.s, canonical.x + sol.x0, canonical.y + sol.y0,
                        canonical.xp, canonical.yp, canonical.xpp, canonical.ypp)


def path_weighted_length(sol, quadrature_check=True):
    """Weighted length of the solution, analytic with a Simpson cross-check"""
    if sol.sP == sol.sQ:
        return 0.0
    if sol.kind is GeodesicKind.VERTICAL_SEGMENT:
        analytic = abs(math.exp(sol.sQ) - math.exp(sol.sP))
    else:
        analytic = 2.0 * math.exp(sol.y0) * abs(math.sinh(sol.sQ) - math.sinh(sol.sP))

    if quadrature_check:
        numeric = weighted_length(sample_solution(sol))
        drift = abs(numeric - analytic) / max(analytic, 1e-300)
        if drift > QUADRATURE_RTOL:
            logger.warning(f"Quadrature length {numeric!r} differs from analytic {analytic!r} "
                           f"(relative {drift:.2e})")
    return analytic


def developed_distance(P, Q):
    """
    Weighted distance from the flat developing map (x, y) -> e^y (cos x, sin x).

    The map is a local isometry from the density plane to the Euclidean
    plane, so for |dx| < pi this is the length of the connecting geodesic.
    """
    return abs(cmath.exp(complex(P.y, P.x)) - cmath.exp(complex(Q.y, Q.x)))
