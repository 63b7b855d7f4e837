"""
Round-point study of the periodic family for WeightedCurves

For c > 1 the curve with constant weighted curvature c has Euclidean
curvature k = x' + c = (c^2 - 1)/(c + cos(sqrt(c^2-1) s)). Rescaling by
sqrt(c^2-1) pins that between sqrt(c^2-1)/(c+1) and sqrt(c^2-1)/(c-1),
both of which tend to 1 as c grows.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from core.errors import ConsistencyError, DomainError
from core.families import make_curve
from core.geometry import CurveSamples, density_rescale

logger = logging.getLogger('weightedcurves.convergence')

SWEEP_SAMPLES = 10_000
# Relative margin off the open domain ends for sampled sweeps
SWEEP_MARGIN = 1e-8
# Relative to max(1, r_max)
SWEEP_AGREEMENT_TOL = 1e-10
FORM_AGREEMENT_TOL = 1e-13


@dataclass(frozen=True)
class RescaleReport:
    """Range of the rescaled curvature for one c"""
    c: float
    r_min: float
    r_max: float
    sup_dev: float

    def as_row(self):
        return {'c': self.c, 'r_min': self.r_min, 'r_max': self.r_max, 'sup_dev': self.sup_dev}


def _check_args(c, s=None):
    c = float(c)
    if not c > 1.0:
        raise DomainError(f"the round-point study needs c > 1, got c = {c}", interval=(1.0, math.inf))
    w = math.sqrt((c - 1.0) * (c + 1.0))
    if s is None:
        return c, w, None
    s = np.asarray(s, dtype=float)
    half = math.pi / w
    if not np.all(np.abs(s) < half):
        raise DomainError(f"s outside the domain of the c = {c:g} curve; "
                          f"admissible interval is ({-half:.7f}, {half:.7f})", interval=(-half, half))
    return c, w, s


def _result(value):
    return float(value) if np.ndim(value) == 0 else value


def rescaled_curvature(c, s):
    """(1/sqrt(c^2-1)) * ((-c cos(ws) - 1)/(c + cos(ws)) + c), w = sqrt(c^2-1)"""
    c, w, s = _check_args(c, s)
    cos_ws = np.cos(w * s)
    return _result(((-c * cos_ws - 1.0) / (c + cos_ws) + c) / w)


def rescaled_curvature_simplified(c, s):
    """sqrt(c^2-1)/(c + cos(sqrt(c^2-1) s))"""
    c, w, s = _check_args(c, s)
    return _result(w / (c + np.cos(w * s)))


def closed_form_extremes(c):
    """(r_min, r_max) of the rescaled curvature over the open domain"""
    c, w, _ = _check_args(c)
    return w / (c + 1.0), w / (c - 1.0)


def _sweep_one(c, n):
    r_min, r_max = closed_form_extremes(c)
    sup_dev = max(r_max - 1.0, 1.0 - r_min)

    lo, hi = make_curve(c).truncated_domain(SWEEP_MARGIN)
    s = np.linspace(lo, hi, n)
    direct = rescaled_curvature(c, s)
    simplified = rescaled_curvature_simplified(c, s)
    form_gap = float(np.max(np.abs(direct - simplified)))
    if form_gap > FORM_AGREEMENT_TOL * max(1.0, r_max):
        logger.warning(f"c={c}: rescaled forms differ by {form_gap:.3e}")

    # The grid stops short of the open ends, so its sup is the closed form at lo, hi
    sampled = float(np.max(np.abs(simplified - 1.0)))
    at_ends = float(np.max(np.abs(rescaled_curvature_simplified(c, np.array([lo, hi])) - 1.0)))
    scale = max(1.0, r_max)
    if (abs(sampled - at_ends) > SWEEP_AGREEMENT_TOL * scale
            or sampled > sup_dev + SWEEP_AGREEMENT_TOL * scale):
        logger.error(f"c={c}: sampled sup {sampled!r} vs {at_ends!r} at the grid ends, {sup_dev!r} overall")
        raise ConsistencyError(
            f"sampled sup deviation {sampled:.12g} disagrees with closed form {at_ends:.12g} "
            f"at the truncated ends for c = {c}")
    logger.info(f"c={c}: r in [{r_min:.10f}, {r_max:.10f}], sup |r - 1| = {sup_dev:.10f}")
    return RescaleReport(c=float(c), r_min=r_min, r_max=r_max, sup_dev=sup_dev)


def convergence_sweep(c_list, n=SWEEP_SAMPLES):
    """One RescaleReport per c, in the order given"""
    c_list = [float(c) for c in c_list]
    bad = [c for c in c_list if not c > 1.0]
    if bad:
        raise DomainError(f"convergence sweep needs every c > 1, got {bad}", interval=(1.0, math.inf))
    return [_sweep_one(c, n) for c in c_list]


def reports_frame(reports):
    """Sweep reports as a table sorted by c"""
    frame = pd.DataFrame([r.as_row() for r in reports], columns=['c', 'r_min', 'r_max', 'sup_dev'])
    return frame.sort_values('c', kind='mergesort').reset_index(drop=True)


def rescaled_trace(c, n=2001, margin=SWEEP_MARGIN):
    """
    sqrt(c^2-1) times the c-curve over its domain, centred on its mean point.

    As c grows this trace is expected to approach a unit circle; nothing
    here asserts it.
    """
    c, w, _ = _check_args(c)
    curve = make_curve(c)
    lo, hi = curve.truncated_domain(margin)
    scaled = density_rescale(curve.sample(lo, hi, n), 1.0 / w)
    return CurveSamples(scaled.s, scaled.x - np.mean(scaled.x), scaled.y - np.mean(scaled.y),
                        scaled.xp, scaled.yp, scaled.xpp, scaled.ypp)
