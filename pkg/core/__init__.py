"""
Core functionality package for WeightedCurves
"""

__version__ = "1.0.0"
