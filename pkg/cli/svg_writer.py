"""
Plain SVG rendering of a single sampled curve

Output depends only on the input arrays, so files can be compared byte for
byte.
"""

import numpy as np

PADDING = 0.05
WIDTH = 800
HEIGHT = 600


def _fmt(value):
    return f"{value:.6f}"


def render_svg(x, y, caption):
    """
    SVG document with one polyline, both axes and a caption.

    The plane's y axis points up, so y is negated for screen coordinates.
    The view box is the bounding box padded by 5% of its larger side.
    """
    x = np.asarray(x, dtype=float)
    sy = -np.asarray(y, dtype=float)
    x_min, x_max = float(np.min(x)), float(np.max(x))
    y_min, y_max = float(np.min(sy)), float(np.max(sy))
    span = max(x_max - x_min, y_max - y_min) or 1.0
    pad = PADDING * span
    left, top = x_min - pad, y_min - pad
    width, height = (x_max - x_min) + 2.0 * pad, (y_max - y_min) + 2.0 * pad
    right, bottom = left + width, top + height
    font = 0.04 * max(width, height)

    points = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in zip(x, sy))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="{_fmt(left)} {_fmt(top)} {_fmt(width)} {_fmt(height)}">',
        f'<line class="axis" x1="{_fmt(left)}" y1="0.000000" x2="{_fmt(right)}" y2="0.000000" '
        'stroke="#999999" stroke-width="1" vector-effect="non-scaling-stroke"/>',
        f'<line class="axis" x1="0.000000" y1="{_fmt(top)}" x2="0.000000" y2="{_fmt(bottom)}" '
        'stroke="#999999" stroke-width="1" vector-effect="non-scaling-stroke"/>',
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="2" '
        f'vector-effect="non-scaling-stroke" points="{points}"/>',
        f'<text x="{_fmt(left + pad)}" y="{_fmt(top + pad + font)}" font-family="sans-serif" '
        f'font-size="{_fmt(font)}">{caption}</text>',
        '</svg>',
    ]
    return "\n".join(lines) + "\n"


def curve_caption(c):
    return f"k_phi = {c:g}"
