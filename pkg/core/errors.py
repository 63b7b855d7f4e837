"""
Exceptions raised by the WeightedCurves library.

The CLI maps these onto its exit codes, so every failure a user can
trigger has its own class.
"""


class WeightedCurvesError(Exception):
    """Base class for all library errors"""


class DomainError(WeightedCurvesError, ValueError):
    """Parameter outside the admissible s-interval of a curve"""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class TangentError(WeightedCurvesError, ValueError):
    """Tangent vector is not unit length (curve not arc-length parametrized)"""


class SamplingError(WeightedCurvesError, ValueError):
    """Malformed samples, boundary index or non-uniform grid"""


class DegenerateDensityError(WeightedCurvesError, ValueError):
    """Density is constant where a log-linear slope is required"""


class IntegrationError(WeightedCurvesError, ArithmeticError):
    """Invalid step or numerical blow-up in the ODE oracle"""


class AlignmentError(WeightedCurvesError):
    """Trajectory and closed form cannot be superposed"""


class NotConnectableError(WeightedCurvesError):
    """No weighted geodesic joins the two points"""


class GeodesicSolveError(WeightedCurvesError):
    """Root finder failed to isolate a unique connecting arc"""


class ConfigError(WeightedCurvesError, ValueError):
    """Invalid command-line configuration"""


class CoincidentPointsError(WeightedCurvesError, ValueError):
    """Geodesic endpoints are the same point"""


class ConsistencyError(WeightedCurvesError, ArithmeticError):
    """Two independent evaluations of the same quantity disagree"""
