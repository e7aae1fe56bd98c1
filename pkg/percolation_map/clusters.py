#!/usr/bin/env python3
"""
percolation_map/clusters.py
Clusters de enlaces abiertos, percolación temporal y enrollamiento espacial
"""

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .lattice import NO_AXIS, BondLattice, BondSpecies

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpeciesFilter:
    """Especies que cuentan como enlace abierto; `dual` trabaja sobre la red dual (solo d = 1)."""

    name: str
    open_species: FrozenSet[int]
    dual: bool = False

    @classmethod
    def preset(cls, name: str) -> "SpeciesFilter":
        try:
            return _PRESETS[name.upper()]
        except KeyError as exc:
            raise ValueError(f"filtro desconocido: {name}") from exc


SG = SpeciesFilter("SG", frozenset({BondSpecies.CONNECTED}))
QUASI_GHZ = SpeciesFilter("QUASI_GHZ", frozenset({BondSpecies.CONNECTED, BondSpecies.DECORATED}))
PM = SpeciesFilter("PM", frozenset({BondSpecies.BROKEN}), dual=True)
_PRESETS = {"SG": SG, "QUASI_GHZ": QUASI_GHZ, "PM": PM}


@dataclass
class ClusterStats:
    sizes: np.ndarray
    labels: np.ndarray
    spans_time: bool
    spans_space: bool
    spans_axes: Tuple[bool, ...] = field(default_factory=tuple)
    dual: bool = False

    @property
    def n_clusters(self) -> int:
        return int(self.sizes.size)

    @property
    def largest(self) -> int:
        return int(self.sizes.max()) if self.sizes.size else 0


def _primal_edges(lattice: BondLattice, filtro: SpeciesFilter):
    """Aristas abiertas (u, v, es_costura_por_eje) de la red primal."""
    n, T = lattice.n_sites, lattice.T
    abiertos = np.array(sorted(filtro.open_species), dtype=np.int8)
    tt, ss = np.nonzero(np.isin(lattice.temporal, abiertos))
    u_list = [tt * n + ss]
    v_list = [(tt + 1) * n + ss]
    seams = [np.zeros((tt.size, lattice.d), dtype=bool)]
    for fila in np.flatnonzero(lattice.spatial_axis != NO_AXIS):
        eje = int(lattice.spatial_axis[fila])
        pares = lattice.bond_pairs(eje)
        sel = np.isin(lattice.spatial[fila], abiertos)
        base = (fila + 1) * n
        u_list.append(base + pares[sel, 0])
        v_list.append(base + pares[sel, 1])
        costura = np.zeros((int(sel.sum()), lattice.d), dtype=bool)
        costura[:, eje] = lattice.seam_mask(eje)[sel]
        seams.append(costura)
    return np.concatenate(u_list), np.concatenate(v_list), np.concatenate(seams), lattice.n_nodes


def _dual_edges(lattice: BondLattice, filtro: SpeciesFilter):
    """
    Aristas abiertas de la red dual de una red 1+1d.

    Cara (b, t), t = 1..T, entre los sitios b, b+1 y las rebanadas t−1, t;
    índice (t−1)·L + b. Las rebanadas sin capa espacial cuentan como rotas.
    """
    if lattice.d != 1:
        raise ValueError("la red dual solo está definida para d = 1")
    L, T = lattice.n_sites, lattice.T
    abiertos = np.array(sorted(filtro.open_species), dtype=np.int8)
    # Vertical (s, t) separa las caras (s−1, t) y (s, t)
    tt, ss = np.nonzero(np.isin(lattice.temporal, abiertos))
    u1 = tt * L + (ss - 1) % L
    v1 = tt * L + ss
    seam1 = (ss == 0)[:, None]
    # Horizontal b en la rebanada t (1 ≤ t ≤ T−1) separa (b, t) y (b, t+1)
    espacial = lattice.spatial[:-1]
    tt2, bb = np.nonzero(np.isin(espacial, abiertos))
    u2 = tt2 * L + bb
    v2 = (tt2 + 1) * L + bb
    seam2 = np.zeros((bb.size, 1), dtype=bool)
    return (np.concatenate([u1, u2]), np.concatenate([v1, v2]),
            np.concatenate([seam1, seam2]), T * L)


def _components(u: np.ndarray, v: np.ndarray, n_nodes: int) -> np.ndarray:
    grafo = coo_matrix((np.ones(u.size, dtype=np.int8), (u, v)), shape=(n_nodes, n_nodes))
    _, labels = connected_components(grafo, directed=False)
    return labels


def _wraps(u, v, seam_axis, n_nodes) -> bool:
    """Truco de la duplicación: el cluster se enrolla si une un nodo con su copia."""
    cruza = seam_axis
    uu = np.concatenate([u, u + n_nodes])
    vv = np.concatenate([np.where(cruza, v + n_nodes, v), np.where(cruza, v, v + n_nodes)])
    labels = _components(uu, vv, 2 * n_nodes)
    return bool(np.any(labels[:n_nodes] == labels[n_nodes:]))


def cluster_stats(lattice: BondLattice, species_filter: SpeciesFilter = SG) -> ClusterStats:
    """
    Clusters de los enlaces abiertos según el filtro.

    spans_time: algún cluster toca la primera y la última rebanada.
    spans_space: algún cluster se enrolla en alguna dirección espacial.
    """
    if species_filter.dual:
        u, v, seams, n_nodes = _dual_edges(lattice, species_filter)
        filas = lattice.T
    else:
        u, v, seams, n_nodes = _primal_edges(lattice, species_filter)
        filas = lattice.T + 1
    labels = _components(u, v, n_nodes)
    sizes = np.sort(np.bincount(labels))[::-1]
    ancho = n_nodes // filas
    spans_time = bool(np.intersect1d(labels[:ancho], labels[-ancho:]).size)
    spans_axes = tuple(_wraps(u, v, seams[:, a], n_nodes) for a in range(seams.shape[1]))
    return ClusterStats(sizes=sizes, labels=labels, spans_time=spans_time,
                        spans_space=any(spans_axes), spans_axes=spans_axes,
                        dual=species_filter.dual)


def top_boundary_labels(lattice: BondLattice, species_filter: SpeciesFilter = SG) -> np.ndarray:
    """Etiquetas de cluster de los sitios de la última rebanada (red primal)."""
    if species_filter.dual:
        raise ValueError("la frontera superior se define sobre la red primal")
    u, v, _, n_nodes = _primal_edges(lattice, species_filter)
    labels = _components(u, v, n_nodes)
    return labels[lattice.T * lattice.n_sites:]
