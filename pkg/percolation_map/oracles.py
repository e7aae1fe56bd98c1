#!/usr/bin/env python3
"""
percolation_map/oracles.py
Oráculos exhaustivos (BFS/DFS en Python puro) para validar clusters y caminos
"""

from collections import defaultdict, deque
from typing import Dict, Iterator, List, Set, Tuple

from .clusters import SpeciesFilter
from .lattice import NO_AXIS, BondLattice, BondSpecies

Node = Tuple[int, int]


def adjacency(lattice: BondLattice, open_species) -> Dict[Node, Set[Node]]:
    """Lista de adyacencia primal construida enlace a enlace."""
    adj: Dict[Node, Set[Node]] = defaultdict(set)
    n = lattice.n_sites
    for t in range(1, lattice.T + 1):
        for s in range(n):
            if int(lattice.temporal[t - 1, s]) in open_species:
                adj[(s, t - 1)].add((s, t))
                adj[(s, t)].add((s, t - 1))
        eje = int(lattice.spatial_axis[t - 1])
        if eje == NO_AXIS:
            continue
        pares = lattice.bond_pairs(eje)
        for b in range(n):
            if int(lattice.spatial[t - 1, b]) in open_species:
                i, j = int(pares[b, 0]), int(pares[b, 1])
                adj[(i, t)].add((j, t))
                adj[(j, t)].add((i, t))
    return adj


def bfs_clusters(lattice: BondLattice, species_filter: SpeciesFilter) -> List[Set[Node]]:
    """Particiona los nodos primales en clusters por BFS."""
    adj = adjacency(lattice, species_filter.open_species)
    vistos: Set[Node] = set()
    clusters = []
    for t in range(lattice.T + 1):
        for s in range(lattice.n_sites):
            if (s, t) in vistos:
                continue
            cluster = {(s, t)}
            cola = deque([(s, t)])
            vistos.add((s, t))
            while cola:
                nodo = cola.popleft()
                for vecino in adj[nodo]:
                    if vecino not in vistos:
                        vistos.add(vecino)
                        cluster.add(vecino)
                        cola.append(vecino)
            clusters.append(cluster)
    return clusters


def dfs_path_exists(lattice: BondLattice) -> bool:
    adj = adjacency(lattice, {int(BondSpecies.CONNECTED)})
    pila = [(s, 0) for s in range(lattice.n_sites)]
    vistos = set(pila)
    while pila:
        s, t = pila.pop()
        if t == lattice.T:
            return True
        for vecino in adj[(s, t)]:
            if vecino not in vistos:
                vistos.add(vecino)
                pila.append(vecino)
    return False


def spanning_paths(lattice: BondLattice, limit: int = 10000) -> Iterator[List[Node]]:
    """Enumera caminos simples de τ = 0 a τ = T por enlaces conectados."""
    adj = adjacency(lattice, {int(BondSpecies.CONNECTED)})
    emitidos = 0

    def extender(camino, en_camino):
        nonlocal emitidos
        s, t = camino[-1]
        if t == lattice.T:
            emitidos += 1
            yield list(camino)
            return
        for vecino in sorted(adj[(s, t)]):
            if emitidos >= limit:
                return
            if vecino in en_camino or vecino[1] == 0:
                continue
            camino.append(vecino)
            en_camino.add(vecino)
            yield from extender(camino, en_camino)
            camino.pop()
            en_camino.discard(vecino)

    for s in range(lattice.n_sites):
        yield from extender([(s, 0)], {(s, 0)})
        if emitidos >= limit:
            return
