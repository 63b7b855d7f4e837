"""
Validated command-line configuration for WeightedCurves
"""

import logging
import math
from dataclasses import dataclass, replace

from core.errors import ConfigError
from core.families import Branch, classify, clip_to_domain, make_curve
from core.geometry import Point2
from core.verification import DEFAULT_C_VALUES, DEFAULT_STEP, DEFAULT_TOL

logger = logging.getLogger('weightedcurves.cli.config')

SUBCOMMANDS = ('sample', 'verify', 'oracle', 'geodesic', 'sweep', 'figures')
FORMATS = ('csv', 'svg')


@dataclass(frozen=True)
class CliConfig:
    """Everything a subcommand needs, checked once at the boundary"""
    subcommand: str
    c: float = None
    c_list: tuple = DEFAULT_C_VALUES
    s_min: float = -5.0
    s_max: float = 5.0
    n: int = 1001
    format: str = 'csv'
    out: str = None
    tol: float = DEFAULT_TOL
    step: float = DEFAULT_STEP
    reflect: bool = False
    P: Point2 = None
    Q: Point2 = None
    grid_step: float = None
    clipped: bool = False

    def validate(self):
        """Return the config with the s-range clipped where needed; raise ConfigError otherwise"""
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand '{self.subcommand}'")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}, got '{self.format}'")
        if self.n < 2:
            raise ConfigError(f"--n must be at least 2, got {self.n}")
        if not (math.isfinite(self.s_min) and math.isfinite(self.s_max)) or not self.s_min < self.s_max:
            raise ConfigError(f"need s_min < s_max, got [{self.s_min}, {self.s_max}]")
        if not self.tol > 0.0:
            raise ConfigError(f"--tol must be positive, got {self.tol}")
        if not self.step > 0.0:
            raise ConfigError(f"--step must be positive, got {self.step}")
        if self.grid_step is not None and not self.grid_step > 0.0:
            raise ConfigError(f"--grid-step must be positive, got {self.grid_step}")

        if self.subcommand in ('verify', 'oracle', 'sweep') and not self.c_list:
            raise ConfigError("--c-list needs at least one value")
        if self.subcommand == 'sweep':
            bad = [c for c in self.c_list if not c > 1.0]
            if bad:
                raise ConfigError(f"sweep needs every c > 1, got {bad}")
        if self.subcommand == 'geodesic' and (self.P is None or self.Q is None):
            raise ConfigError("geodesic needs both --P and --Q")
        if self.subcommand == 'sample':
            return self._clip_sample_range()
        return self

    def _clip_sample_range(self):
        if self.c is None:
            raise ConfigError("sample needs --c")
        if classify(self.c) not in (Branch.SUB_NEG_ONE, Branch.SUPER_ONE):
            return self
        curve = make_curve(self.c, reflect=self.reflect)
        lo, hi, clipped = clip_to_domain(curve, self.s_min, self.s_max)
        if not clipped:
            return self
        d_lo, d_hi = curve.domain
        logger.warning(f"domain clipped to ({d_lo:.7f}, {d_hi:.7f})")
        return replace(self, s_min=lo, s_max=hi, clipped=True)


def _point(values):
    return None if values is None else Point2(float(values[0]), float(values[1]))


def config_from_args(args):
    """Build and validate a CliConfig from an argparse namespace"""
    c_list = getattr(args, 'c_list', None)
    config = CliConfig(
        subcommand=args.command,
        c=getattr(args, 'c', None),
        c_list=DEFAULT_C_VALUES if c_list is None else tuple(c_list),
        s_min=getattr(args, 's_min', -5.0),
        s_max=getattr(args, 's_max', 5.0),
        n=getattr(args, 'n', 1001),
        format=getattr(args, 'format', 'csv'),
        out=getattr(args, 'out', None),
        tol=getattr(args, 'tol', DEFAULT_TOL),
        step=getattr(args, 'step', DEFAULT_STEP),
        reflect=getattr(args, 'reflect', False),
        P=_point(getattr(args, 'P', None)),
        Q=_point(getattr(args, 'Q', None)),
        grid_step=getattr(args, 'grid_step', None),
    )
    return config.validate()
