#!/usr/bin/env python3
"""
circuit_models/geometry.py
Geometría de los modelos: anillos, toros de sitios y aristas del código tórico

Convenciones:
    1d      enlace b une los sitios b y (b+1) mod L
    2d      sitio s = y·Lx + x; enlace x con índice y·Lx + x une (x,y)-(x+1,y),
            enlace y con el mismo índice une (x,y)-(x,y+1)
    tórico  h(x,y) = y·L + x, v(x,y) = L² + y·L + x
"""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def ring_bonds(L: int) -> np.ndarray:
    sitios = np.arange(L)
    bonds = np.stack([sitios, (sitios + 1) % L], axis=1)
    bonds.flags.writeable = False
    return bonds


def site_index(x, y, Lx: int):
    return np.asarray(y) * Lx + np.asarray(x)


@lru_cache(maxsize=None)
def grid_bonds(Lx: int, Ly: int, axis: int) -> np.ndarray:
    """Enlaces (n, 2) de la red periódica Lx × Ly en la dirección `axis` (0 = x, 1 = y)."""
    y, x = np.divmod(np.arange(Lx * Ly), Lx)
    if axis == 0:
        vecino = site_index((x + 1) % Lx, y, Lx)
    elif axis == 1:
        vecino = site_index(x, (y + 1) % Ly, Lx)
    else:
        raise ValueError(f"eje inválido: {axis}")
    bonds = np.stack([np.arange(Lx * Ly), vecino], axis=1)
    bonds.flags.writeable = False
    return bonds


def h_edge(x, y, L: int):
    return (np.asarray(y) % L) * L + (np.asarray(x) % L)


def v_edge(x, y, L: int):
    return L * L + (np.asarray(y) % L) * L + (np.asarray(x) % L)


@lru_cache(maxsize=None)
def plaquettes(L: int) -> np.ndarray:
    """Aristas (L², 4) de cada plaqueta p(x,y) = {h(x,y), h(x,y+1), v(x,y), v(x+1,y)}."""
    y, x = np.divmod(np.arange(L * L), L)
    plaq = np.stack([h_edge(x, y, L), h_edge(x, y + 1, L), v_edge(x, y, L), v_edge(x + 1, y, L)], axis=1)
    plaq.flags.writeable = False
    return plaq


@lru_cache(maxsize=None)
def stars(L: int) -> np.ndarray:
    """Aristas (L², 4) de cada estrella s(x,y) = {h(x,y), h(x−1,y), v(x,y), v(x,y−1)}."""
    y, x = np.divmod(np.arange(L * L), L)
    st = np.stack([h_edge(x, y, L), h_edge(x - 1, y, L), v_edge(x, y, L), v_edge(x, y - 1, L)], axis=1)
    st.flags.writeable = False
    return st


@lru_cache(maxsize=None)
def edge_plaquettes(L: int) -> np.ndarray:
    """Las dos plaquetas (2L², 2) que contienen cada arista."""
    x = np.tile(np.arange(L), L)
    y = np.repeat(np.arange(L), L)
    pares = np.zeros((2 * L * L, 2), dtype=np.int64)
    # h(x,y) está en p(x,y) y p(x,y−1); v(x,y) en p(x,y) y p(x−1,y)
    pares[h_edge(x, y, L)] = np.stack([site_index(x, y, L), site_index(x, (y - 1) % L, L)], axis=1)
    pares[v_edge(x, y, L)] = np.stack([site_index(x, y, L), site_index((x - 1) % L, y, L)], axis=1)
    pares.flags.writeable = False
    return pares


def toric_logical_support(L: int, logical: str) -> np.ndarray:
    """
    Soporte de los operadores lógicos del toro.

    Z1: Z en v(0,y) ∀y     X1: X en v(x,0) ∀x
    Z2: Z en h(x,0) ∀x     X2: X en h(0,y) ∀y
    """
    r = np.arange(L)
    soportes = {
        "Z1": v_edge(0, r, L),
        "X1": v_edge(r, 0, L),
        "Z2": h_edge(r, 0, L),
        "X2": h_edge(0, r, L),
    }
    try:
        return np.asarray(soportes[logical], dtype=np.int64)
    except KeyError as exc:
        raise ValueError(f"lógico desconocido: {logical}") from exc
