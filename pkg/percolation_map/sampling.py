#!/usr/bin/env python3
"""
percolation_map/sampling.py
Muestreo directo de la red de enlaces sin simular el estado cuántico

Sortea las mismas ranuras que un ensayo de Clifford con las tasas del modelo y
las traduce a especies. Los resultados de los enlaces conectados no se sortean
(no hay regla de Born sin estado) y se dejan en +1; los estimadores de
percolación solo miran la conectividad.
"""

import logging

import numpy as np

from circuit_models import ModelConfig, layer_schedule

from .lattice import BondLattice, BondSpecies, RecordNotMappableError

logger = logging.getLogger(__name__)

_AXIS = {"zz": 0, "zz_x": 0, "zz_y": 1}


def _species(u: np.ndarray, cortes, especies) -> np.ndarray:
    return np.select([u < c for c in cortes], especies[:-1], especies[-1]).astype(np.int8)


def sample_bond_lattice(config: ModelConfig, rng: np.random.Generator) -> BondLattice:
    """
    Red de enlaces de un ensayo sorteado directamente a partir de las tasas.

    Espaciales: medida ZZ → Connected, desfase ZZ → Decorated, nada → Broken.
    Temporales: medida X → Broken, desfase X o acoplamiento al baño → Decorated,
    nada → Connected. Las capas del baño no tocan la red del sistema.
    """
    if config.kind == "Toric2D":
        raise RecordNotMappableError("el código tórico no tiene traducción a percolación de enlaces")
    if config.p_u > 0:
        raise RecordNotMappableError("los unitarios Z₂ no tienen traducción a percolación de enlaces")
    lattice = BondLattice.empty(config.dims, config.T)
    n = lattice.n_sites
    for t in range(1, config.T + 1):
        fila = t - 1
        for capa in layer_schedule(config, t):
            u = rng.random(n) if capa in _AXIS or capa == "site" else None
            if capa in _AXIS:
                lattice.spatial_axis[fila] = _AXIS[capa]
                lattice.spatial[fila] = _species(
                    u, (config.p_zz_m, config.p_zz_m + config.p_zz_e),
                    (BondSpecies.CONNECTED, BondSpecies.DECORATED, BondSpecies.BROKEN))
                lattice.outcomes[fila] = np.where(lattice.spatial[fila] == BondSpecies.CONNECTED, 1, 0)
            elif capa == "site":
                lattice.temporal[fila] = _species(
                    u, (config.p_x_m, config.p_x_m + config.p_x_e + config.p_x_i),
                    (BondSpecies.BROKEN, BondSpecies.DECORATED, BondSpecies.CONNECTED))
    lattice.__post_init__()
    logger.debug(f"Red muestreada {config.kind} L={config.L} T={config.T}: {lattice.species_counts()}")
    return lattice
