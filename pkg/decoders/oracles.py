#!/usr/bin/env python3
"""
decoders/oracles.py
Oráculos exhaustivos en Python puro: caminos dirigidos, membranas y emparejamientos

Recorren el backbone sitio a sitio con enteros exactos, sin el gauge ni las
sumas por tramos del decodificador, para poder contrastarlo en redes pequeñas.
"""

import itertools
import math
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .backbone import BackboneGraph, CheckLayer

Move = Tuple[int, int]   # (destino, producto de resultados)


def _ring_geometry(dims: Tuple[int, ...], family: str):
    """(posición, longitud, sitio(pos, anillo)) para recorrer un anillo de la familia."""
    if family == "zz":
        L = dims[0]
        return (lambda s: (s, 0)), L, (lambda pos, anillo: pos % L)
    Lx, Ly = dims[0], dims[1]
    if family in ("zz_x", "rows"):
        return (lambda s: (s % Lx, s // Lx)), Lx, (lambda pos, y: y * Lx + pos % Lx)
    if family in ("zz_y", "columns"):
        return (lambda s: (s // Lx, s % Lx)), Ly, (lambda pos, x: (pos % Ly) * Lx + x)
    raise ValueError(f"familia sin anillos: {family}")


def layer_moves(dims: Tuple[int, ...], layer: CheckLayer, family: str = None) -> Dict[int, List[Move]]:
    """
    Movimientos permitidos desde cada sitio en una capa: quedarse, o avanzar a
    izquierda o derecha mientras el enlace esté medido. El enlace de la última
    posición de un anillo medido por completo no se cruza.
    """
    family = family or layer.family
    posicion, ell, sitio = _ring_geometry(dims, family)
    n = layer.measured.size
    movimientos: Dict[int, List[Move]] = {}
    for s in range(n):
        pos, anillo = posicion(s)
        enlaces = [sitio(k, anillo) for k in range(ell)]
        completo = all(layer.measured[b] for b in enlaces)

        def usable(k):
            b = sitio(k, anillo)
            return layer.measured[b] and not (completo and k % ell == ell - 1)

        destinos = [(s, 1)]
        signo, k = 1, pos
        for _ in range(ell - 1):
            if not usable(k):
                break
            signo *= int(layer.outcomes[sitio(k, anillo)])
            k += 1
            destinos.append((sitio(k, anillo), signo))
        signo, k = 1, pos
        for _ in range(ell - 1):
            if not usable(k - 1):
                break
            signo *= int(layer.outcomes[sitio(k - 1, anillo)])
            k -= 1
            destinos.append((sitio(k, anillo), signo))
        movimientos[s] = destinos
    return movimientos


def enumerate_directed_paths(backbone: BackboneGraph, end_site: int) -> int:
    """Σ de los productos de resultados de todos los caminos dirigidos que acaban en `end_site`."""
    capas = [layer_moves(backbone.dims, c) for c in sorted(backbone.layers, key=lambda c: c.t)]
    return _walk_sum(capas, backbone.n_sites, end_site)


def _walk_sum(capas: Sequence[Dict[int, List[Move]]], n: int, end_site: int) -> int:
    total = 0

    def seguir(k: int, s: int, peso: int):
        nonlocal total
        if k == len(capas):
            if s == end_site:
                total += peso
            return
        for destino, signo in capas[k][s]:
            seguir(k + 1, destino, peso * signo)

    for inicio in range(n):
        seguir(0, inicio, 1)
    return total


def _arcs(layer: CheckLayer, L: int, plaqueta, anillo: int, desde: int, hasta: int) -> List[List[int]]:
    """Arcos de plaquetas medidas que llevan de `desde` a `hasta` en un anillo."""
    if desde == hasta:
        return [[]]
    completo = all(layer.measured[plaqueta(anillo, k)] for k in range(L))
    arcos = []
    for paso in (1, -1):
        posiciones, k = [], desde
        while k != hasta:
            posiciones.append(k if paso == 1 else (k - 1) % L)
            k = (k + paso) % L
        if completo and L - 1 in posiciones:
            continue
        if all(layer.measured[plaqueta(anillo, q)] for q in posiciones):
            arcos.append([plaqueta(anillo, q) for q in posiciones])
    return arcos


def enumerate_membranes(backbone: BackboneGraph, logical: str = "Z1") -> int:
    """
    Suma de Box_cum sobre todas las funciones de altura h(·, t) de la red 2+1d.

    Cada membrana es la secuencia completa de vectores de altura, uno por capa de
    plaquetas; su peso es el producto de los resultados de todas las plaquetas que
    barre. Se recorren una a una todas las secuencias conjuntas que terminan en h ≡ 0.
    """
    L = backbone.dims[0]
    if logical == "Z1":
        plaqueta = lambda anillo, k: anillo * L + k
    elif logical == "Z2":
        plaqueta = lambda anillo, k: k * L + anillo
    else:
        raise ValueError(f"lógico desconocido: {logical}")
    capas = [c for c in sorted(backbone.layers, key=lambda c: c.t) if c.family == "plaquette"]
    # por capa y fila: desde → [(hasta, producto de las plaquetas barridas)]
    transiciones = [
        [{x: [(x2, math.prod(int(capa.outcomes[p]) for p in arco))
              for x2 in range(L) for arco in _arcs(capa, L, plaqueta, y, x, x2)]
          for x in range(L)}
         for y in range(L)]
        for capa in capas
    ]
    # poda: solo posiciones desde las que aún se alcanza h = 0 en la última capa
    alcanzables = [{0}] * L
    for k in reversed(range(len(capas))):
        for y in range(L):
            transiciones[k][y] = {x: [(x2, s) for x2, s in mov if x2 in alcanzables[y]]
                                  for x, mov in transiciones[k][y].items()}
        alcanzables = [{x for x, mov in transiciones[k][y].items() if mov} for y in range(L)]
    total = 0

    def seguir(k: int, h: Tuple[int, ...], peso: int):
        nonlocal total
        if k == len(capas):
            if not any(h):
                total += peso
            return
        filas = transiciones[k]
        for eleccion in itertools.product(*(filas[y][h[y]] for y in range(L))):
            seguir(k + 1, tuple(x for x, _ in eleccion), peso * math.prod(s for _, s in eleccion))

    for inicio in itertools.product(*(sorted(a) for a in alcanzables)):
        seguir(0, inicio, 1)
    return total


def spacetime_distance(code: str, dims: Tuple[int, ...], a: Tuple[int, int], b: Tuple[int, int]) -> int:
    """Distancia de Manhattan entre defectos (chequeo, ronda) en el toro espacio-temporal."""
    (ca, ra), (cb, rb) = a, b
    L = dims[0]
    if code == "toric":
        dx = abs(ca % L - cb % L)
        dy = abs(ca // L - cb // L)
        return min(dx, L - dx) + min(dy, L - dy) + abs(ra - rb)
    d = abs(ca - cb)
    return min(d, L - d) + abs(ra - rb)


def brute_force_pairing_weight(code: str, dims: Tuple[int, ...], defects: Sequence[Tuple[int, int]]) -> int:
    """Peso mínimo sobre todos los emparejamientos perfectos de los defectos."""
    if len(defects) % 2:
        raise ValueError("número impar de defectos")
    defectos = tuple(sorted(defects))

    @lru_cache(maxsize=None)
    def mejor(resto: Tuple[Tuple[int, int], ...]) -> int:
        if not resto:
            return 0
        primero, cola = resto[0], resto[1:]
        return min(spacetime_distance(code, dims, primero, otro) + mejor(cola[:k] + cola[k + 1:])
                   for k, otro in enumerate(cola))

    return mejor(defectos)


def defect_list(events: np.ndarray) -> List[Tuple[int, int]]:
    """Pares (chequeo, ronda) de una matriz de defectos (n_checks, R)."""
    return [(int(c), int(r)) for c, r in zip(*np.nonzero(events))]
