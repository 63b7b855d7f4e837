"""
Closed-form constant weighted curvature curves for WeightedCurves

Every curve in the plane with density e^y whose weighted curvature is a
constant c is, up to translation, a straight line or one of the
representatives built here:

    c < -1, c > 1   periodic arcs on the open interval |s| < pi/sqrt(c^2-1)
    c = -1, c = 1   x = -+(s - 2 arctan s), y = ln(1 + s^2)
    -1 < c < 1      x = 2 arctan((e^{ws} - c)/w) - cs,
                    y = ln(e^{ws} + e^{-ws} - 2c),   w = sqrt(1 - c^2)
                    (c = 0 is the Grim Reaper)

Second derivatives come from the tangent angle: with (x', y') = (cos t, sin t)
and kappa = t', x'' = -kappa*y' and y'' = kappa*x'. kappa is differentiated
by hand for every branch, so k_f = kappa - x' = c is a genuine check.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.errors import DegenerateDensityError, DomainError
from core.geometry import (CurveSamples, Point2, UNIT_TOL_ANALYTIC,
                           weighted_curvature)

logger = logging.getLogger('weightedcurves.families')

# |1 - |c|| below this is evaluated with the c = +-1 closed form
SNAP_BAND = 1e-12
# Relative margin kept away from the open endpoints when |c| > 1
DOMAIN_MARGIN = 1e-6


class Branch(Enum):
    """Integration branch selected by the constant c"""
    SUB_NEG_ONE = "c<-1"
    NEG_ONE = "c=-1"
    OPEN = "-1<c<1"
    PLUS_ONE = "c=1"
    SUPER_ONE = "c>1"


class FrontProfile(Enum):
    """Shapes a reduced traveling front can take"""
    LINE = "line"
    GRIM_REAPER = "grim_reaper"


def classify(c):
    """Branch for the constant weighted curvature c"""
    c = float(c)
    if not math.isfinite(c):
        raise ValueError(f"weighted curvature must be finite, got {c}")
    if abs(c - 1.0) < SNAP_BAND:
        return Branch.PLUS_ONE
    if abs(c + 1.0) < SNAP_BAND:
        return Branch.NEG_ONE
    if c > 1.0:
        return Branch.SUPER_ONE
    if c < -1.0:
        return Branch.SUB_NEG_ONE
    return Branch.OPEN


# -- Open-branch closed forms ---------------------------------------------
#
# Written with q = e^{-w|s|} so nothing overflows for large |s|, and with
# gap = 1 - q and 1 -+ c kept apart so nothing cancels as |c| -> 1:
#   1 + q^2 - 2cq = gap^2 + 2q(1 - c)

def _open_setup(c, s):
    c = float(c)
    if not abs(c) < 1.0:
        raise DomainError(f"open-branch forms need |c| < 1, got c = {c}", interval=(-1.0, 1.0))
    s = np.asarray(s, dtype=float)
    w = math.sqrt((1.0 - c) * (1.0 + c))
    decay = -w * np.abs(s)
    return c, s, w, np.exp(decay), -np.expm1(decay)


def _open_den(c, q, gap):
    """1 + q^2 - 2cq"""
    return gap * gap + 2.0 * q * (1.0 - c)


def open_f1(c, s):
    """2 arctan((e^{ws} - c)/w) - cs"""
    c, s, w, q, gap = _open_setup(c, s)
    angle = np.where(s > 0, np.arctan2((1.0 - c) + c * gap, w * q),
                     np.arctan2((1.0 - c) - gap, w))
    return 2.0 * angle - c * s


def open_f2(c, s):
    """-2 arctan((e^{ws} + c)/w) - cs"""
    c, s, w, q, gap = _open_setup(c, s)
    angle = np.where(s > 0, np.arctan2((1.0 + c) - c * gap, w * q),
                     np.arctan2((1.0 + c) - gap, w))
    return -2.0 * angle - c * s


def open_g1(c, s):
    """ln(e^{ws} + e^{-ws} - 2c)"""
    c, s, w, q, gap = _open_setup(c, s)
    return w * np.abs(s) + np.log(_open_den(c, q, gap))


def open_g2(c, s):
    """ln(e^{ws} + e^{-ws} + 2c)"""
    c, s, w, q, gap = _open_setup(c, s)
    return w * np.abs(s) + np.log(_open_den(-c, q, gap))


def symmetry_check(c, s):
    """
    Residuals of the mirror identities f1(c,s) = -f2(-c,s), g1(c,s) = g2(-c,s).

    Both vanish to roundoff for |c| < 1.
    """
    if not abs(float(c)) < 1.0:
        raise DomainError(f"symmetry identities hold for |c| < 1 only, got c = {c}",
                          interval=(-1.0, 1.0))
    df = open_f1(c, s) + open_f2(-c, s)
    dg = open_g1(c, s) - open_g2(-c, s)
    if np.ndim(df) == 0:
        return float(df), float(dg)
    return df, dg


# -- Branch evaluators ------------------------------------------------------
#
# Each returns (x, y, xp, yp, kappa) for an array of s.

def _eval_open(c, s, mirrored):
    """Open branch for -1 < c < 1, or its mirror image when mirrored"""
    c, s, w, q, gap = _open_setup(c, s)
    sign = -1.0 if mirrored else 1.0
    cc = sign * c
    den = _open_den(cc, q, gap)
    # 2q - cc(1 + q^2) = 2q(1 - cc) - cc * gap^2
    xp = sign * (2.0 * q * (1.0 - cc) - cc * gap * gap) / den
    yp = np.sign(s) * w * gap * (1.0 + q) / den
    kappa = sign * 2.0 * q * (1.0 - c) * (1.0 + c) / den
    if mirrored:
        x, y = open_f2(c, s), open_g2(c, s)
    else:
        x, y = open_f1(c, s), open_g1(c, s)
    return x, y, xp, yp, kappa


def _eval_unit(sigma, s):
    """c = sigma with sigma = +-1: x = sigma*(2 arctan s - s), y = ln(1+s^2)"""
    s = np.asarray(s, dtype=float)
    r = 1.0 + s * s
    x = sigma * (2.0 * np.arctan(s) - s)
    y = np.log1p(s * s)
    xp = sigma * (1.0 - s * s) / r
    yp = 2.0 * s / r
    kappa = sigma * 2.0 / r
    return x, y, xp, yp, kappa


def _eval_periodic(c, s):
    """|c| > 1 with theta = sqrt(c^2-1)*s/2 kept inside (-pi/2, pi/2)"""
    s = np.asarray(s, dtype=float)
    sigma = 1.0 if c > 0 else -1.0
    w = math.sqrt((c - 1.0) * (c + 1.0))
    a = math.sqrt((c - 1.0) / (c + 1.0))
    theta = 0.5 * w * s
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    den = cos_t * cos_t + a * a * sin_t * sin_t
    x = sigma * 2.0 * np.arctan2(a * sin_t, cos_t) - c * s
    y = np.log(den)
    xp = (a * a * sin_t * sin_t - cos_t * cos_t) / den
    yp = -sigma * 2.0 * a * sin_t * cos_t / den
    kappa = (c - 1.0) / den
    return x, y, xp, yp, kappa


@dataclass(frozen=True)
class ClassifiedCurve:
    """
    Canonical representative of the constant weighted curvature c.

    reflect selects the mirrored solution family for -1 < c < 1.
    For |c| >= 1 the family is unique and reflect changes nothing: x is odd
    and y is even in s there, so (-x(-s), y(-s)) is the same curve at the
    same parameters.
    """
    c: float
    branch: Branch
    reflect: bool
    aux: float
    domain: tuple

    @property
    def is_bounded(self):
        return self.branch in (Branch.SUB_NEG_ONE, Branch.SUPER_ONE)

    def truncated_domain(self, margin=DOMAIN_MARGIN):
        """Closed interval kept a relative margin away from open endpoints"""
        lo, hi = self.domain
        if not self.is_bounded:
            return self.domain
        eps = margin * (hi - lo)
        return (lo + eps, hi - eps)

    def in_domain(self, s):
        lo, hi = self.domain
        s = np.asarray(s, dtype=float)
        return (s > lo) & (s < hi)

    def _check_domain(self, s):
        s = np.asarray(s, dtype=float)
        if not np.all(np.isfinite(s)):
            raise DomainError("curve parameter must be finite", interval=self.domain)
        if self.is_bounded and not np.all(self.in_domain(s)):
            lo, hi = self.domain
            raise DomainError(
                f"s outside the domain of the c = {self.c:g} curve; "
                f"admissible interval is ({lo:.7f}, {hi:.7f})", interval=self.domain)
        return s

    def _evaluate(self, s):
        s = self._check_domain(s)
        if self.branch is Branch.OPEN:
            return _eval_open(self.c, s, self.reflect)

        if self.reflect:
            s = -s
        if self.branch is Branch.PLUS_ONE:
            x, y, xp, yp, kappa = _eval_unit(1.0, s)
        elif self.branch is Branch.NEG_ONE:
            x, y, xp, yp, kappa = _eval_unit(-1.0, s)
        else:
            x, y, xp, yp, kappa = _eval_periodic(self.c, s)
        if self.reflect:
            return -x, y, xp, -yp, kappa
        return x, y, xp, yp, kappa

    def positions(self, s):
        x, y, _, _, _ = self._evaluate(s)
        return x, y

    def derivatives(self, s):
        """(x', y', x'', y'') with respect to arc length"""
        _, _, xp, yp, kappa = self._evaluate(s)
        return xp, yp, -kappa * yp, kappa * xp

    def tangent_angle(self, s):
        _, _, xp, yp, _ = self._evaluate(s)
        return np.arctan2(yp, xp)

    def curvature(self, s):
        """Euclidean curvature kappa = x'y'' - x''y'"""
        return self._evaluate(s)[4]

    def weighted_curvature(self, s):
        return weighted_curvature(*self.derivatives(s), tol=UNIT_TOL_ANALYTIC)

    def sample(self, s_min, s_max, n):
        """n uniform samples on [s_min, s_max] with analytic derivative columns"""
        if n < 2:
            raise ValueError(f"need at least 2 samples, got {n}")
        if not s_min < s_max:
            raise DomainError(f"empty sampling range [{s_min}, {s_max}]", interval=self.domain)
        s = np.linspace(s_min, s_max, n)
        x, y, xp, yp, kappa = self._evaluate(s)
        return CurveSamples(s, x, y, xp, yp, -kappa * yp, kappa * xp)


def make_curve(c, reflect=False):
    """Canonical classified curve for the constant weighted curvature c"""
    branch = classify(c)
    c = float(c)
    if branch in (Branch.SUB_NEG_ONE, Branch.SUPER_ONE):
        half_width = math.pi / math.sqrt((c - 1.0) * (c + 1.0))
        domain = (-half_width, half_width)
        aux = math.sqrt((c - 1.0) / (c + 1.0))
    else:
        domain = (-math.inf, math.inf)
        aux = math.sqrt((1.0 - c) / (1.0 + c)) if branch is Branch.OPEN else math.nan
    curve = ClassifiedCurve(c=c, branch=branch, reflect=bool(reflect), aux=aux, domain=domain)
    logger.debug(f"Built {branch.value} curve for c = {c} (reflect={curve.reflect})")
    return curve


def eval_curve(curve, s):
    """Position of the canonical representative at a single parameter s"""
    x, y = curve.positions(float(s))
    return Point2(float(x), float(y))


def eval_derivatives(curve, s):
    """(x', y', x'', y'') at a single parameter s"""
    return tuple(float(v) for v in curve.derivatives(float(s)))


def clip_to_domain(curve, s_min, s_max, margin=DOMAIN_MARGIN):
    """
    Intersect [s_min, s_max] with the margin-truncated domain.

    Returns (lo, hi, clipped). Raises DomainError when nothing is left.
    """
    lo, hi = curve.truncated_domain(margin)
    new_min, new_max = max(s_min, lo), min(s_max, hi)
    if not new_min < new_max:
        d_lo, d_hi = curve.domain
        raise DomainError(
            f"range [{s_min}, {s_max}] does not meet the domain "
            f"({d_lo:.7f}, {d_hi:.7f}) of the c = {curve.c:g} curve",
            interval=curve.domain)
    clipped = new_min != s_min or new_max != s_max
    return new_min, new_max, clipped


@dataclass(frozen=True)
class LineSolution:
    """Straight line with constant weighted curvature c (direction is unit)"""
    c: float
    direction: tuple
    through: Point2

    def weighted_curvature(self):
        dx, dy = self.direction
        return weighted_curvature(dx, dy, 0.0, 0.0, tol=UNIT_TOL_ANALYTIC)

    def sample(self, s):
        s = np.asarray(s, dtype=float)
        dx, dy = self.direction
        return self.through.x + dx * s, self.through.y + dy * s


def lines_for(c, through=None):
    """
    Line solutions with weighted curvature c: x' = -c, y' = +-sqrt(1-c^2).

    Two directions for |c| < 1, one (parallel to the x-axis) for c = +-1,
    none for |c| > 1.
    """
    through = through or Point2(0.0, 0.0)
    branch = classify(c)
    c = float(c)
    if branch in (Branch.PLUS_ONE, Branch.NEG_ONE):
        sigma = 1.0 if branch is Branch.PLUS_ONE else -1.0
        return [LineSolution(sigma, (-sigma, 0.0), through)]
    if branch is not Branch.OPEN:
        return []
    dx = 0.0 - c
    w = math.sqrt(1.0 - c * c)
    return [LineSolution(c, (dx, w), through), LineSolution(c, (dx, -w), through)]


def _rotate(x, y, angle):
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    return cos_a * x - sin_a * y, sin_a * x + cos_a * y


@dataclass(frozen=True)
class FrontReduction:
    """
    Change of coordinates taking the density e^{gx*x + gy*y} to e^y.

    A point p of the original plane maps to scale * R(rotation) p.
    """
    rotation: float
    scale: float
    gradient: tuple
    classification: tuple = (FrontProfile.LINE, FrontProfile.GRIM_REAPER)

    def to_standard_frame(self, x, y):
        rx, ry = _rotate(np.asarray(x, dtype=float), np.asarray(y, dtype=float), self.rotation)
        return self.scale * rx, self.scale * ry

    def to_original_frame(self, x, y):
        x = np.asarray(x, dtype=float) / self.scale
        y = np.asarray(y, dtype=float) / self.scale
        return _rotate(x, y, -self.rotation)

    def curve_in_original_frame(self, samples):
        """Carry unit-speed samples from the standard frame back, derivatives included"""
        x, y = self.to_original_frame(samples.x, samples.y)
        xp, yp = _rotate(samples.xp, samples.yp, -self.rotation)
        xpp, ypp = _rotate(samples.xpp, samples.ypp, -self.rotation)
        return CurveSamples(samples.s / self.scale, x, y, xp, yp,
                            self.scale * xpp, self.scale * ypp)


def front_reduction(c1, c2, c):
    """
    Reduce traveling fronts with external force (c1, c2) and forcing c.

    Their profiles are zero weighted curvature curves for the density
    e^{-c1*x + (c2 - c)*y}; a rotation and the scale |gradient| turn that
    density into e^y, where the only such curves are lines and Grim Reapers.
    """
    gx, gy = -float(c1), float(c2) - float(c)
    scale = math.hypot(gx, gy)
    if scale == 0.0:
        logger.error(f"front_reduction with zero gradient (c1={c1}, c2={c2}, c={c})")
        raise DegenerateDensityError(
            "constant density: equation reduces to zero Euclidean curvature (lines)")
    rotation = math.pi / 2.0 - math.atan2(gy, gx)
    if rotation > math.pi:
        rotation -= 2.0 * math.pi
    elif rotation <= -math.pi:
        rotation += 2.0 * math.pi
    return FrontReduction(rotation=rotation, scale=scale, gradient=(gx, gy))
