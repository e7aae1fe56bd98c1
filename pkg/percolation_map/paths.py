#!/usr/bin/env python3
"""
percolation_map/paths.py
Caminos de expansión que evitan errores y su producto acumulado de síndromes
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order

from .lattice import NO_AXIS, BondLattice, BondSpecies


class InvalidPathError(ValueError):
    """El camino usa un enlace roto, decorado o inexistente."""


@dataclass
class Path:
    """Camino como lista ordenada de nodos (s, τ) y de enlaces recorridos."""

    nodes: List[Tuple[int, int]]
    bonds: List[Tuple[str, int, int]] = field(default_factory=list)

    @classmethod
    def from_nodes(cls, nodes, lattice: BondLattice) -> "Path":
        bonds = []
        for (s1, t1), (s2, t2) in zip(nodes[:-1], nodes[1:]):
            if s1 == s2 and abs(t1 - t2) == 1:
                bonds.append(("temporal", s1, max(t1, t2)))
            elif t1 == t2 and 1 <= t1 <= lattice.T and lattice.spatial_axis[t1 - 1] != NO_AXIS:
                b = lattice.bond_between(s1, s2, int(lattice.spatial_axis[t1 - 1]))
                if b is None:
                    raise InvalidPathError(f"({s1},{t1}) y ({s2},{t2}) no son vecinos")
                bonds.append(("spatial", b, t1))
            else:
                raise InvalidPathError(f"salto inválido ({s1},{t1}) → ({s2},{t2})")
        return cls(nodes=list(nodes), bonds=bonds)

    @property
    def start(self) -> Tuple[int, int]:
        return self.nodes[0]

    @property
    def end(self) -> Tuple[int, int]:
        return self.nodes[-1]


def connected_graph(lattice: BondLattice):
    """Grafo (coo) de los enlaces conectados, temporales y espaciales."""
    n = lattice.n_sites
    tt, ss = np.nonzero(lattice.temporal == BondSpecies.CONNECTED)
    u = [tt * n + ss]
    v = [(tt + 1) * n + ss]
    for fila in np.flatnonzero(lattice.spatial_axis != NO_AXIS):
        pares = lattice.bond_pairs(int(lattice.spatial_axis[fila]))
        sel = lattice.spatial[fila] == BondSpecies.CONNECTED
        u.append((fila + 1) * n + pares[sel, 0])
        v.append((fila + 1) * n + pares[sel, 1])
    return np.concatenate(u), np.concatenate(v)


def find_error_avoiding_path(lattice: BondLattice, end_site: Optional[int] = None) -> Optional[Path]:
    """
    Camino de (u, 0) a (v, T) solo por enlaces conectados, o None.

    BFS desde una super-fuente unida a toda la rebanada τ = 0; si no se fija
    `end_site`, se elige el menor sitio alcanzable de la rebanada final.
    """
    n, T = lattice.n_sites, lattice.T
    u, v = connected_graph(lattice)
    fuente = lattice.n_nodes
    u = np.concatenate([u, np.full(n, fuente)])
    v = np.concatenate([v, np.arange(n)])
    total = lattice.n_nodes + 1
    grafo = coo_matrix((np.ones(u.size, dtype=np.int8), (u, v)), shape=(total, total)).tocsr()
    _, predecesores = breadth_first_order(grafo, fuente, directed=False, return_predecessors=True)
    superiores = T * n + np.arange(n)
    alcanzables = np.flatnonzero(predecesores[superiores] >= 0)
    if end_site is not None:
        if end_site not in alcanzables:
            return None
        destino = int(end_site)
    elif alcanzables.size:
        destino = int(alcanzables[0])
    else:
        return None
    nodo = T * n + destino
    camino = []
    while nodo != fuente:
        tau, s = divmod(int(nodo), n)
        camino.append((s, tau))
        nodo = predecesores[nodo]
    camino.reverse()
    return Path.from_nodes(camino, lattice)


def z_cum(lattice: BondLattice, path: Path) -> int:
    """Producto de los resultados de síndrome sobre los enlaces espaciales del camino."""
    signo = 1
    for tipo, indice, t in path.bonds:
        if tipo == "temporal":
            if lattice.temporal[t - 1, indice] != BondSpecies.CONNECTED:
                raise InvalidPathError(f"enlace temporal ({indice}, {t}) no conectado")
        else:
            if lattice.spatial[t - 1, indice] != BondSpecies.CONNECTED:
                raise InvalidPathError(f"enlace espacial ({indice}, {t}) no conectado")
            signo *= int(lattice.outcomes[t - 1, indice])
    return signo
