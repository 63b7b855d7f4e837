"""
Static figures of the constant weighted curvature families

The c values drawn for each family are a representative choice, listed in
FIGURE_SETS; they are not meant to match any published picture exactly.
"""

import logging
import os

import matplotlib
matplotlib.use('Agg')
from matplotlib.figure import Figure

import numpy as np

from core.convergence import rescaled_trace
from core.families import clip_to_domain, lines_for, make_curve

logger = logging.getLogger('weightedcurves.cli.figures')

HALF_WIDTH = 5.0
SAMPLES = 801

FIGURE_SETS = {
    'curves_c_above_one': (1.25, 1.5, 2.0, 3.0),
    'curves_c_below_minus_one': (-1.25, -1.5, -2.0, -3.0),
    'curves_c_plus_minus_one': (1.0, -1.0),
    'curves_c_between_zero_and_one': (0.25, 0.5, 0.75),
    'curves_c_between_minus_one_and_zero': (-0.25, -0.5, -0.75),
    'grim_reaper': (0.0,),
}
ROUND_POINT_SET = (1.5, 3.0, 10.0, 100.0)

# Fixed hash salt and no date keep the SVG files identical between runs
SVG_RC = {'svg.hashsalt': 'weightedcurves', 'svg.fonttype': 'path'}


def _draw_family(ax, c_values):
    for c in c_values:
        curve = make_curve(c)
        lo, hi, _ = clip_to_domain(curve, -HALF_WIDTH, HALF_WIDTH)
        samples = curve.sample(lo, hi, SAMPLES)
        ax.plot(samples.x, samples.y, label=f"c = {c:g}")
        for line in lines_for(c):
            lx, ly = line.sample(np.linspace(-HALF_WIDTH, HALF_WIDTH, 2))
            ax.plot(lx, ly, linestyle='--', linewidth=0.8, color='gray')


def _draw_round_point(ax):
    for c in ROUND_POINT_SET:
        trace = rescaled_trace(c, n=SAMPLES)
        ax.plot(trace.x, trace.y, label=f"c = {c:g}")
    t = np.linspace(0.0, 2.0 * np.pi, 361)
    ax.plot(np.cos(t), np.sin(t), linestyle=':', color='black', label='unit circle')


def _save(fig, path):
    with matplotlib.rc_context(SVG_RC):
        fig.savefig(path, format='svg', metadata={'Date': None})


def write_figures(out_dir):
    """Write one SVG per family plus the rescaled round-point traces; returns the paths"""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    jobs = [(name, lambda ax, cs=cs: _draw_family(ax, cs)) for name, cs in FIGURE_SETS.items()]
    jobs.append(('round_point_rescaled', _draw_round_point))

    for name, draw in jobs:
        fig = Figure(figsize=(6.0, 4.5))
        ax = fig.add_subplot()
        draw(ax)
        ax.set_aspect('equal', adjustable='datalim')
        ax.set_xlabel('x')
        ax.set_ylabel('y')
        ax.set_title(name.replace('_', ' '))
        ax.legend(loc='best', fontsize='small')
        path = os.path.join(out_dir, f"{name}.svg")
        _save(fig, path)
        written.append(path)
        logger.info(f"Wrote {path}")
    return written
