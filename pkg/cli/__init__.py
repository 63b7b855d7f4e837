"""Command-line interface package for WeightedCurves"""
