"""
Command-line surface for WeightedCurves

Subcommands: sample, verify, oracle, geodesic, sweep, figures. Exit codes
are 0 on success, 1 for usage or validation failures (including a failed
verify), 2 for I/O errors and 3 when two points cannot be connected.
"""

import argparse
import logging
import sys

import pandas as pd

from cli.config import FORMATS, config_from_args
from cli.figures import write_figures
from cli.svg_writer import curve_caption, render_svg
from core.convergence import convergence_sweep, reports_frame
from core.errors import NotConnectableError, WeightedCurvesError
from core.families import make_curve
from core.geodesics import connect, path_weighted_length
from core.geometry import weighted_curvature
from core.ode_oracle import align, canonical_xi0, integrate_xi, max_deviation
from core.verification import (DEFAULT_C_VALUES, DEFAULT_STEP, DEFAULT_TOL,
                               ORACLE_DOMAIN_FRACTION, VerificationSuite)

logger = logging.getLogger('weightedcurves.cli')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NOT_CONNECTABLE = 3

CSV_FLOAT_FORMAT = '%.17g'


def _emit(text, out):
    """Write text to the path out, or to stdout when out is None"""
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.info(f"Wrote {out}")


def _csv(frame):
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n')


def cmd_sample(config):
    curve = make_curve(config.c, reflect=config.reflect)
    samples = curve.sample(config.s_min, config.s_max, config.n)
    if config.format == 'svg':
        _emit(render_svg(samples.x, samples.y, curve_caption(config.c)), config.out)
        return EXIT_OK

    kf = weighted_curvature(samples.xp, samples.yp, samples.xpp, samples.ypp)
    frame = pd.DataFrame({'s': samples.s, 'x': samples.x, 'y': samples.y,
                          'xp': samples.xp, 'yp': samples.yp, 'kf': kf})
    _emit(_csv(frame), config.out)
    return EXIT_OK


def cmd_verify(config):
    suite = VerificationSuite(config.c_list, tol=config.tol, step=config.step, reflect=config.reflect)
    suite.run()
    for r in suite.results:
        status = 'ok' if r.passed else 'FAIL'
        print(f"{status:4}  c={r.c:<6g} {r.check:<22} max_error={r.max_error:.3e}  tol={r.tolerance:.1e}")
    if config.out is not None:
        _emit(_csv(suite.to_frame()), config.out)

    if suite.passed:
        print(f"All {len(suite.results)} checks passed")
        return EXIT_OK
    for r in suite.failures():
        print(f"failed: (c={r.c:g}, s={r.worst_s:.10g}, check={r.check})", file=sys.stderr)
    return EXIT_USAGE


def cmd_oracle(config):
    frames = []
    for c in sorted(config.c_list):
        curve = make_curve(c, reflect=config.reflect)
        if curve.is_bounded:
            half = ORACLE_DOMAIN_FRACTION * curve.domain[1]
            s_range = (-half, half)
        else:
            s_range = (config.s_min, config.s_max)
        xi0 = canonical_xi0(curve)
        traj = integrate_xi(c, xi0, s_range, config.step)
        alignment = align(traj, curve)
        deviation = max_deviation(traj, curve, alignment, grid_step=config.grid_step)
        print(f"c={c:<6g} xi0={xi0:.10f} s_shift={alignment.s_shift:.3e} "
              f"max_deviation={deviation:.3e}")
        if config.out is not None:
            frame = traj.to_frame()
            frame.insert(0, 'c', c)
            frames.append(frame)
    if frames:
        _emit(_csv(pd.concat(frames, ignore_index=True)), config.out)
    return EXIT_OK


def cmd_geodesic(config):
    sol = connect(config.P, config.Q)
    print(f"kind: {sol.kind.value}")
    print(f"x0: {sol.x0:.12g}")
    print(f"y0: {sol.y0:.12g}")
    print(f"sP: {sol.sP:.12g}")
    print(f"sQ: {sol.sQ:.12g}")
    print(f"weighted_length: {path_weighted_length(sol):.12g}")
    return EXIT_OK


def cmd_sweep(config):
    reports = convergence_sweep(config.c_list)
    _emit(_csv(reports_frame(reports)), config.out)
    return EXIT_OK


def cmd_figures(config):
    for path in write_figures(config.out or 'figures'):
        print(path)
    return EXIT_OK


HANDLERS = {
    'sample': cmd_sample,
    'verify': cmd_verify,
    'oracle': cmd_oracle,
    'geodesic': cmd_geodesic,
    'sweep': cmd_sweep,
    'figures': cmd_figures,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog='weightedcurves',
        description='Constant weighted curvature curves in the plane with density e^y')
    parser.add_argument('--verbose', action='store_true', help='Log progress to the console')
    parser.add_argument('--log-dir', default=None, help='Also write a timestamped log file here')
    sub = parser.add_subparsers(dest='command', required=True)

    sample = sub.add_parser('sample', help='Sample a curve to CSV or SVG')
    sample.add_argument('--c', type=float, required=True, help='Constant weighted curvature')
    sample.add_argument('--s-min', type=float, default=-5.0)
    sample.add_argument('--s-max', type=float, default=5.0)
    sample.add_argument('--n', type=int, default=1001, help='Number of samples')
    sample.add_argument('--format', choices=FORMATS, default='csv')
    sample.add_argument('--out', default=None, help='Output file (default: stdout)')
    sample.add_argument('--reflect', action='store_true', help='Use the mirrored family')

    verify = sub.add_parser('verify', help='Run the invariant checks')
    verify.add_argument('--c-list', type=float, nargs='*', default=list(DEFAULT_C_VALUES))
    verify.add_argument('--tol', type=float, default=DEFAULT_TOL)
    verify.add_argument('--step', type=float, default=DEFAULT_STEP, help='Oracle step')
    verify.add_argument('--reflect', action='store_true')
    verify.add_argument('--out', default=None, help='Optional CSV report')

    oracle = sub.add_parser('oracle', help='Compare the RK4 oracle with the closed forms')
    oracle.add_argument('--c-list', type=float, nargs='*', default=list(DEFAULT_C_VALUES))
    oracle.add_argument('--s-min', type=float, default=-5.0)
    oracle.add_argument('--s-max', type=float, default=5.0)
    oracle.add_argument('--step', type=float, default=DEFAULT_STEP)
    oracle.add_argument('--grid-step', type=float, default=None,
                        help='Compare on a coarser grid (PCHIP resampling)')
    oracle.add_argument('--reflect', action='store_true')
    oracle.add_argument('--out', default=None, help='Optional CSV of (c, s, xi, x, y)')

    geodesic = sub.add_parser('geodesic', help='Connect two points by a weighted geodesic')
    geodesic.add_argument('--P', type=float, nargs=2, required=True, metavar=('X', 'Y'))
    geodesic.add_argument('--Q', type=float, nargs=2, required=True, metavar=('X', 'Y'))

    sweep = sub.add_parser('sweep', help='Round-point convergence sweep')
    sweep.add_argument('--c-list', type=float, nargs='*', required=True)
    sweep.add_argument('--out', default=None, help='Output CSV (default: stdout)')

    figures = sub.add_parser('figures', help='Write the family figures as SVG')
    figures.add_argument('--out', default='figures', help='Output directory')

    return parser


def main(argv=None, setup=None):
    """Parse argv, run the subcommand and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        if setup is not None:
            setup(args.verbose, args.log_dir)
        config = config_from_args(args)
        return HANDLERS[config.subcommand](config)
    except NotConnectableError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_NOT_CONNECTABLE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_IO
    except (WeightedCurvesError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
