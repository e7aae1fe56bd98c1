#!/usr/bin/env python3
"""
observables/regions.py
Regiones de sitios A, B para susceptibilidades e información mutua
"""

from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np


@dataclass(frozen=True)
class RegionSpec:
    """
    Par de regiones disjuntas A, B sobre los L sitios del sistema.

    En 2d los sitios se indexan s = y·Lx + x y `L` es el número total de sitios.
    """

    L: int
    A: Tuple[int, ...]
    B: Tuple[int, ...]

    def __post_init__(self):
        a = tuple(sorted(int(s) for s in self.A))
        b = tuple(sorted(int(s) for s in self.B))
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        if not a or not b:
            raise ValueError("las regiones A y B no pueden estar vacías")
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise ValueError("sitios repetidos en una región")
        if set(a) & set(b):
            raise ValueError("las regiones A y B se solapan")
        if min(a + b) < 0 or max(a + b) >= self.L:
            raise ValueError(f"regiones fuera de [0, {self.L})")

    @classmethod
    def interval(cls, L: int, a_start: int, a_len: int, b_start: int, b_len: int) -> "RegionSpec":
        """Intervalos periódicos [a_start, a_start + a_len) y [b_start, b_start + b_len)."""
        return cls(L=L,
                   A=tuple((a_start + k) % L for k in range(a_len)),
                   B=tuple((b_start + k) % L for k in range(b_len)))

    @classmethod
    def antipodal_eighths(cls, L: int) -> "RegionSpec":
        """A = [0, L/8), B = [L/2, L/2 + L/8), con L/8 redondeado hacia abajo."""
        m = L // 8
        if m == 0:
            raise ValueError(f"L = {L} demasiado pequeño para regiones de tamaño L/8")
        return cls.interval(L, 0, m, L // 2, m)

    @classmethod
    def rectangles(cls, Lx: int, Ly: int, a: Tuple[int, int, int, int],
                   b: Tuple[int, int, int, int]) -> "RegionSpec":
        """Rectángulos (x0, y0, ancho, alto) en un toro Lx × Ly."""
        def sitios(rect):
            x0, y0, w, h = rect
            return tuple(((y0 + dy) % Ly) * Lx + (x0 + dx) % Lx for dy in range(h) for dx in range(w))
        return cls(L=Lx * Ly, A=sitios(a), B=sitios(b))

    @property
    def size(self) -> Tuple[int, int]:
        return len(self.A), len(self.B)

    def pairs(self) -> np.ndarray:
        """Todas las parejas (i, j) con i ∈ A, j ∈ B, forma (|A|·|B|, 2)."""
        i, j = np.meshgrid(np.array(self.A), np.array(self.B), indexing="ij")
        return np.stack([i.ravel(), j.ravel()], axis=1)


def interval_sites(start: int, stop: int) -> Iterable[int]:
    """Sitios de la cadena X entre i y j, ambos incluidos (sin dar la vuelta)."""
    lo, hi = min(start, stop), max(start, stop)
    return range(lo, hi + 1)
