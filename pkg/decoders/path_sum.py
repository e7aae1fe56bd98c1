#!/usr/bin/env python3
"""
decoders/path_sum.py
Decodificador de suma de caminos: signo de f(v, T) sobre el backbone dirigido

f(i, t) = f(i, t−1) + Σ_{j~i} f(j, t−1) · ∏ resultados del tramo que une j e i,
con j~i si ambos están en el mismo tramo maximal de chequeos medidos en la capa t.
Un anillo medido por completo se corta en su último enlace.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from circuit_models import TrialOutput
from stabilizer_core import pauli_z

from .backbone import BackboneGraph
from .verdict import DecodeVerdict, prepare_quantum, repetition_correction

logger = logging.getLogger(__name__)


class PathSumPrecisionError(RuntimeError):
    """La pasada en coma flotante y el gemelo entero exacto discrepan en el signo."""


@dataclass(frozen=True)
class PathSumValue:
    sign: int
    log_magnitude: float
    exact: Optional[int] = None

    def __post_init__(self):
        if self.exact is not None and (self.exact > 0) - (self.exact < 0) != self.sign:
            raise PathSumPrecisionError(f"signo {self.sign} frente al valor exacto {self.exact}")


# ═══════════════════════════════════════════════════════════════════
# Mezcla por tramos
# ═══════════════════════════════════════════════════════════════════


def mix_ring(f: np.ndarray, measured: np.ndarray, outcomes: np.ndarray) -> np.ndarray:
    """
    Aplica una capa de chequeos a los valores de un anillo (orden del anillo).

    Con el gauge G_k = ∏ resultados desde el inicio del recorrido, el producto
    entre dos sitios del mismo tramo es G_i·G_j, así que
    f'(i) = G_i · Σ_{j ∈ tramo(i)} G_j f(j). Vale igual para float y para enteros
    de Python (dtype=object).
    """
    ell = f.size
    m = np.asarray(measured, dtype=bool).copy()
    if not m.any():
        return f.copy()
    if m.all():
        m[-1] = False
    u = int(np.flatnonzero(~m)[0])
    orden = (u + 1 + np.arange(ell)) % ell
    previo = (orden - 1) % ell
    nuevo_tramo = ~m[previo]
    gauge = np.cumprod(np.where(m[previo], outcomes[previo], 1)).astype(np.int64)
    valores = gauge * f[orden]
    inicios = np.flatnonzero(nuevo_tramo)
    sumas = np.add.reduceat(valores, inicios)
    tramo = np.cumsum(nuevo_tramo) - 1
    salida = np.empty_like(f)
    salida[orden] = gauge * sumas[tramo]
    return salida


def rings_for(dims: Tuple[int, ...], family: str) -> np.ndarray:
    """
    Anillos (R, ℓ) de índices de sitio en el orden del enlace: el enlace con el
    índice del sitio k une k con el siguiente del anillo.
    """
    if family == "zz":
        return np.arange(dims[0])[None, :]
    Lx, Ly = dims[0], dims[1]
    red = np.arange(Lx * Ly).reshape(Ly, Lx)
    if family in ("zz_x", "rows"):
        return red
    if family in ("zz_y", "columns"):
        return red.T.copy()
    raise ValueError(f"familia sin anillos: {family}")


class PathSumEngine:
    """Recursión hacia delante de f sobre capas de chequeos, flotante o exacta."""

    def __init__(self, n: int, exact: bool = False):
        self.exact = exact
        self.f = np.array([1] * n, dtype=object) if exact else np.ones(n)
        self.log2_scale = 0

    def apply(self, rings: np.ndarray, measured: np.ndarray, outcomes: np.ndarray) -> None:
        for anillo in rings:
            self.f[anillo] = mix_ring(self.f[anillo], measured[anillo], outcomes[anillo])
        if not self.exact:
            self._renormalize()

    def _renormalize(self) -> None:
        # reescalado común positivo: no cambia ningún signo
        maximo = float(np.max(np.abs(self.f)))
        if maximo == 0.0:
            return
        e = int(np.frexp(maximo)[1])
        self.f = np.ldexp(self.f, -e)
        self.log2_scale += e

    def value(self, site: int) -> PathSumValue:
        x = self.f[site]
        if self.exact:
            x = int(x)
            signo = (x > 0) - (x < 0)
            return PathSumValue(signo, math.log2(abs(x)) if x else float("-inf"), exact=x)
        signo = int(np.sign(x))
        magnitud = float(np.log2(abs(x))) + self.log2_scale if x != 0 else float("-inf")
        return PathSumValue(signo, magnitud)


def run_path_sum(backbone: BackboneGraph, exact: bool = False) -> PathSumEngine:
    if backbone.code != "repetition":
        raise ValueError("la suma de caminos se define sobre el código de repetición")
    motor = PathSumEngine(backbone.n_sites, exact=exact)
    for capa in backbone.layers:
        motor.apply(rings_for(backbone.dims, capa.family), capa.measured, capa.outcomes)
    return motor


def path_sum_sign(backbone: BackboneGraph, exact: bool = False, audit: bool = False) -> List[PathSumValue]:
    """
    Signo de f(v, T) para cada sitio v de la última rebanada.

    Con `audit` se ejecuta también el gemelo entero y cualquier discrepancia de
    signo lanza PathSumPrecisionError.
    """
    motor = run_path_sum(backbone, exact=exact)
    valores = [motor.value(v) for v in range(backbone.n_sites)]
    if audit and not exact:
        gemelo = run_path_sum(backbone, exact=True)
        for v, val in enumerate(valores):
            exacto = gemelo.value(v)
            if exacto.sign != val.sign:
                raise PathSumPrecisionError(f"sitio {v}: flotante {val.sign}, exacto {exacto.exact}")
    return valores


def decode_path_sum(source, site: int = 0, exact: bool = False, audit: bool = False,
                    rng: Optional[np.random.Generator] = None) -> DecodeVerdict:
    """Decodifica un ClassicalHistory o un TrialOutput (evaluado sobre el estado)."""
    if isinstance(source, TrialOutput):
        ctx = prepare_quantum(source, rng)
        if ctx.code != "repetition":
            raise ValueError("use decode_membrane para el código tórico")
        valor = path_sum_sign(ctx.backbone, exact=exact, audit=audit)[site]
        truth = (ctx.state.contains(pauli_z(ctx.state.n, site)),)
        recuperado = False
        if valor.sign != 0:
            correccion = repetition_correction(ctx.code, ctx.dims, ctx.backbone.final_layers, site, valor.sign)
            recuperado = ctx.recovered_with(correccion)
        return DecodeVerdict("path_sum", (valor.sign,), truth,
                             {"log2_f": valor.log_magnitude}, recovered=recuperado)
    valor = path_sum_sign(source.backbone, exact=exact, audit=audit)[site]
    return DecodeVerdict("path_sum", (valor.sign,), (int(source.truth[site]),), {"log2_f": valor.log_magnitude})

