"""
Independent ODE oracle for WeightedCurves

Integrates the tangent-angle equation -2 xi' + cos(2 xi) = c with a
fixed-step classical Runge-Kutta scheme, rebuilds the curve from
(x', y') = (-cos 2xi, sin 2xi) and measures how far the closed forms in
core.families are from the numerical solution once both are superposed.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import pandas as pd
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from core.errors import AlignmentError, DomainError, IntegrationError
from core.families import DOMAIN_MARGIN, make_curve
from core.geometry import Point2

logger = logging.getLogger('weightedcurves.ode_oracle')

# Traj/curve constants closer than this are treated as the same c
C_MATCH_TOL = 1e-12
# Largest |s| searched when aligning against an unbounded branch
ALIGN_SEARCH_LIMIT = 1e8


@dataclass(frozen=True, eq=False)
class OdeTrajectory:
    """Tangent-angle samples and the reconstructed path, x(0) = y(0) = 0 when integrated"""
    c: float
    xi0: float
    step: float
    s: np.ndarray
    xi: np.ndarray
    x: np.ndarray
    y: np.ndarray

    def __len__(self):
        return len(self.s)

    @property
    def origin_index(self):
        return int(np.argmin(np.abs(self.s)))

    def tangent(self):
        return -np.cos(2.0 * self.xi), np.sin(2.0 * self.xi)

    def to_frame(self):
        return pd.DataFrame({'s': self.s, 'xi': self.xi, 'x': self.x, 'y': self.y})


def _march(c, xi0, h, n):
    """
    n RK4 steps of xi' = (cos 2xi - c)/2 with signed step h.

    Positions use Simpson's rule on each step; the midpoint angle comes
    from the cubic Hermite interpolant of the step, so the whole
    reconstruction stays fourth order.
    """
    xi = np.empty(n + 1)
    x = np.empty(n + 1)
    y = np.empty(n + 1)
    xi[0], x[0], y[0] = xi0, 0.0, 0.0

    cur_xi, cur_x, cur_y = xi0, 0.0, 0.0
    cos_cur, sin_cur = math.cos(2.0 * xi0), math.sin(2.0 * xi0)
    f_cur = 0.5 * (cos_cur - c)
    half, sixth = 0.5 * h, h / 6.0
    for k in range(1, n + 1):
        k2 = 0.5 * (math.cos(2.0 * (cur_xi + half * f_cur)) - c)
        k3 = 0.5 * (math.cos(2.0 * (cur_xi + half * k2)) - c)
        k4 = 0.5 * (math.cos(2.0 * (cur_xi + h * k3)) - c)
        new_xi = cur_xi + sixth * (f_cur + 2.0 * k2 + 2.0 * k3 + k4)

        cos_new, sin_new = math.cos(2.0 * new_xi), math.sin(2.0 * new_xi)
        f_new = 0.5 * (cos_new - c)
        mid_xi = 0.5 * (cur_xi + new_xi) + 0.125 * h * (f_cur - f_new)
        cos_mid, sin_mid = math.cos(2.0 * mid_xi), math.sin(2.0 * mid_xi)

        cur_x -= sixth * (cos_cur + 4.0 * cos_mid + cos_new)
        cur_y += sixth * (sin_cur + 4.0 * sin_mid + sin_new)
        cur_xi, cos_cur, sin_cur, f_cur = new_xi, cos_new, sin_new, f_new
        xi[k], x[k], y[k] = cur_xi, cur_x, cur_y
    return xi, x, y


def _grid_counts(s_range, step):
    lo, hi = (float(v) for v in s_range)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"integration range must be finite, got [{lo}, {hi}]")
    if not lo <= 0.0 <= hi or lo == hi:
        raise DomainError(f"integration runs outward from s = 0; range [{lo}, {hi}] must contain it",
                          interval=(lo, hi))
    n_back = int(math.floor(-lo / step + 1e-9))
    n_fwd = int(math.floor(hi / step + 1e-9))
    return n_back, n_fwd


def integrate_xi(c, xi0, s_range, step):
    """Fixed-step RK4 solution of -2 xi' + cos(2 xi) = c from s = 0 outward"""
    c, xi0, step = float(c), float(xi0), float(step)
    if not (math.isfinite(step) and step > 0.0):
        raise IntegrationError(f"integration step must be positive, got {step}")
    n_back, n_fwd = _grid_counts(s_range, step)

    xi_f, x_f, y_f = _march(c, xi0, step, n_fwd)
    xi_b, x_b, y_b = _march(c, xi0, -step, n_back)

    s = np.arange(-n_back, n_fwd + 1) * step
    xi = np.concatenate([xi_b[:0:-1], xi_f])
    x = np.concatenate([x_b[:0:-1], x_f])
    y = np.concatenate([y_b[:0:-1], y_f])
    if not (np.all(np.isfinite(xi)) and np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        logger.error(f"Non-finite values integrating c={c}, xi0={xi0}, step={step}")
        raise IntegrationError(f"numerical blow-up integrating c = {c} from xi0 = {xi0}")

    logger.debug(f"Integrated c={c} xi0={xi0:.6f} over [{s[0]:.4f}, {s[-1]:.4f}] ({len(s)} samples)")
    return OdeTrajectory(c=c, xi0=xi0, step=step, s=s, xi=xi, x=x, y=y)


def ode_residual(traj):
    """-2 xi' + cos(2 xi) - c at interior samples, xi' by central differences"""
    if len(traj) < 3:
        raise IntegrationError("residual needs at least 3 samples")
    dxi = (traj.xi[2:] - traj.xi[:-2]) / (2.0 * traj.step)
    return -2.0 * dxi + np.cos(2.0 * traj.xi[1:-1]) - traj.c


def canonical_xi0(curve):
    """Initial angle that reproduces the canonical representative at s = 0"""
    theta = float(curve.tangent_angle(0.0))
    return ((math.pi - theta) / 2.0) % math.pi


def trajectory_from_curve(curve, s_range, step):
    """Sample a closed form on the oracle grid, keeping its absolute positions"""
    step = float(step)
    if not step > 0.0:
        raise IntegrationError(f"integration step must be positive, got {step}")
    n_back, n_fwd = _grid_counts(s_range, step)
    s = np.arange(-n_back, n_fwd + 1) * step
    theta = np.unwrap(curve.tangent_angle(s))
    x, y = curve.positions(s)
    xi = (math.pi - theta) / 2.0
    origin = n_back
    return OdeTrajectory(c=curve.c, xi0=float(xi[origin]), step=step, s=s, xi=xi, x=x, y=y)


def _wrap(angle):
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


class Alignment(NamedTuple):
    """Parameter shift and translation taking the closed form onto a trajectory"""
    s_shift: float
    translation: Point2


def align(traj, curve):
    """
    Superpose a closed form on a trajectory.

    Finds s* where the closed form's tangent matches the trajectory tangent
    at s = 0, so curve(s + s*) + translation follows traj(s).
    """
    if abs(traj.c - curve.c) > C_MATCH_TOL:
        raise AlignmentError(f"trajectory has c = {traj.c}, curve has c = {curve.c}")

    i0 = traj.origin_index
    two_xi = 2.0 * traj.xi[i0]
    target_angle = math.atan2(math.sin(two_xi), -math.cos(two_xi))
    base_angle = float(curve.tangent_angle(0.0))

    # Relative to s = 0 every branch turns by less than pi each way, monotonically
    def turned(s):
        return _wrap(float(curve.tangent_angle(s)) - base_angle)

    target = _wrap(target_angle - base_angle)
    if target == 0.0:
        s_star = 0.0
    else:
        s_star = _solve_turn(curve, turned, target)

    start = Point2(float(traj.x[i0]), float(traj.y[i0]))
    px, py = curve.positions(s_star)
    translation = Point2(start.x - float(px), start.y - float(py))
    logger.debug(f"Aligned c={curve.c}: s_shift={s_star:.12g}, translation={translation.as_tuple()}")
    return Alignment(s_shift=float(s_star), translation=translation)


def _solve_turn(curve, turned, target):
    if curve.is_bounded:
        lo, hi = curve.truncated_domain(DOMAIN_MARGIN * 1e-3)
        brackets = [(lo, hi)]
    else:
        brackets = []
        width = 1.0
        while width <= ALIGN_SEARCH_LIMIT:
            brackets.append((-width, width))
            width *= 4.0

    # Unbounded branches reach their asymptotic tangent in floating point, so
    # only a strict sign change counts as a match
    for lo, hi in brackets:
        f_lo, f_hi = turned(lo) - target, turned(hi) - target
        if f_lo * f_hi < 0.0:
            return brentq(lambda s: turned(s) - target, lo, hi, xtol=1e-15, maxiter=200)

    logger.error(f"No tangent match for c={curve.c} (turn {target:.6f} rad)")
    raise AlignmentError(
        f"no parameter of the c = {curve.c:g} curve has the trajectory's initial tangent; "
        f"the initial condition belongs to a line or to the mirrored family")


def deviation_profile(traj, curve, alignment, grid_step=None):
    """
    Distances between the trajectory and the aligned closed form.

    Returns (s, dev) with s the closed-form parameter of each compared point.
    With grid_step coarser than the trajectory step the trajectory is
    resampled by monotone cubic (PCHIP) interpolation; the closed form is
    always evaluated exactly.
    """
    s_shift, translation = alignment
    s, x, y = traj.s, traj.x, traj.y
    if grid_step is not None and grid_step > traj.step:
        s = np.arange(traj.s[0], traj.s[-1] + 0.5 * grid_step, grid_step)
        s = s[s <= traj.s[-1]]
        x = PchipInterpolator(traj.s, traj.x)(s)
        y = PchipInterpolator(traj.s, traj.y)(s)

    lo, hi = curve.truncated_domain(DOMAIN_MARGIN)
    shifted = s + s_shift
    overlap = (shifted >= lo) & (shifted <= hi)
    if not np.any(overlap):
        raise AlignmentError("trajectory and closed form do not overlap after alignment")

    cx, cy = curve.positions(shifted[overlap])
    dev = np.hypot(cx + translation.x - x[overlap], cy + translation.y - y[overlap])
    return shifted[overlap], dev


def max_deviation(traj, curve, alignment, grid_step=None):
    """Largest distance between the trajectory and the aligned closed form"""
    _, dev = deviation_profile(traj, curve, alignment, grid_step)
    return float(np.max(dev))


def richardson_ratio(c, xi0, s_range, step, curve=None):
    """Deviation at step divided by deviation at step/2"""
    curve = make_curve(c) if curve is None else curve
    devs = []
    for h in (step, step / 2.0):
        traj = integrate_xi(c, xi0, s_range, h)
        devs.append(max_deviation(traj, curve, align(traj, curve)))
    logger.info(f"Richardson c={c}: deviations {devs[0]:.3e} -> {devs[1]:.3e}")
    if devs[1] == 0.0:
        return math.inf
    return devs[0] / devs[1]
