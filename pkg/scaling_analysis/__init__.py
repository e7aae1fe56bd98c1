#!/usr/bin/env python3
"""
scaling_analysis/__init__.py
Colapso de tamaño finito y estimación de umbrales sobre curvas de conjunto
"""

from .collapse import CollapseFit, collapse_parameters, collapse_quality, rescale
from .curves import DegenerateGridError, EnsembleCurve
from .threshold import NoCrossingError, ThresholdEstimate, crossing_estimate, crossings, estimate_threshold

__all__ = [
    'CollapseFit', 'collapse_parameters', 'collapse_quality', 'rescale',
    'DegenerateGridError', 'EnsembleCurve',
    'NoCrossingError', 'ThresholdEstimate', 'crossing_estimate', 'crossings', 'estimate_threshold',
]
