#!/usr/bin/env python3
"""
percolation_map/__init__.py
Traducción de historiales a redes de enlaces, clusters y caminos que evitan errores
"""

from .clusters import PM, QUASI_GHZ, SG, ClusterStats, SpeciesFilter, cluster_stats, top_boundary_labels
from .fixtures import FixtureFormatError, dumps_lattice, loads_lattice
from .lattice import (NO_AXIS, BondLattice, BondSpecies, MalformedRecordError, RecordNotMappableError,
                      circuit_to_bonds)
from .paths import InvalidPathError, Path, find_error_avoiding_path, z_cum
from .sampling import sample_bond_lattice

__all__ = [
    'PM', 'QUASI_GHZ', 'SG', 'ClusterStats', 'SpeciesFilter', 'cluster_stats', 'top_boundary_labels',
    'FixtureFormatError', 'dumps_lattice', 'loads_lattice',
    'NO_AXIS', 'BondLattice', 'BondSpecies', 'MalformedRecordError', 'RecordNotMappableError',
    'circuit_to_bonds',
    'InvalidPathError', 'Path', 'find_error_avoiding_path', 'z_cum',
    'sample_bond_lattice',
]
