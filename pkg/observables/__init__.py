#!/usr/bin/env python3
"""
observables/__init__.py
Parámetros de orden, información mutua y estimadores de ensemble
"""

from .entanglement import (H_EE, EntanglementFit, chord_length, cross_ratio, fit_entanglement_coefficient,
                           half_cut_mutual_information, interval_mutual_information, mutual_information)
from .regions import RegionSpec, interval_sites
from .susceptibility import (EnsembleEstimate, chi_pm, chi_pm_from_lattice, chi_sg, chi_sg_from_lattice,
                             ensemble_estimate)

__all__ = [
    'H_EE', 'EntanglementFit', 'chord_length', 'cross_ratio', 'fit_entanglement_coefficient',
    'half_cut_mutual_information', 'interval_mutual_information', 'mutual_information',
    'RegionSpec', 'interval_sites',
    'EnsembleEstimate', 'chi_pm', 'chi_pm_from_lattice', 'chi_sg', 'chi_sg_from_lattice',
    'ensemble_estimate',
]
