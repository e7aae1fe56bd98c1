#!/usr/bin/env python3
"""
scaling_analysis/collapse.py
Colapso de tamaño finito: x = (p − p_c)·L^{1/ν}, y = media·L^{−γ}

La curva maestra se estima en cada punto por regresión lineal local (núcleo
gaussiano) usando solo los puntos de los demás tamaños. El ancho de banda se
elige en una rejilla minimizando ese mismo error de validación cruzada.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .curves import DegenerateGridError, EnsembleCurve

logger = logging.getLogger(__name__)

# Anchos de banda relativos al rango de x
BANDWIDTHS = (0.02, 0.05, 0.1, 0.2, 0.4)


@dataclass(frozen=True)
class CollapseFit:
    p_c: float
    nu: float
    gamma: float
    cost: float


def rescale(curve: EnsembleCurve, p_c: float, nu: float, gamma: float = 0.0):
    """Coordenadas de colapso (x, y, dy) y el tamaño de cada punto."""
    if nu <= 0:
        raise DegenerateGridError(f"ν debe ser positivo (ν = {nu})")
    p, L, media, _ = curve.arrays()
    Lf = L.astype(float)
    x = (p - p_c) * Lf ** (1.0 / nu)
    factor = Lf ** (-gamma)
    return x, media * factor, curve.error_floor() * factor, L


def _loso_residuals(x, y, dy, L, h: float):
    """Residuos normalizados frente a la curva de los otros tamaños, con el tamaño de cada punto."""
    dx = x[None, :] - x[:, None]
    otros = L[None, :] != L[:, None]
    k = np.exp(-0.5 * (dx / h) ** 2) * otros / dy[None, :] ** 2
    s0, s1, s2 = k.sum(1), (k * dx).sum(1), (k * dx ** 2).sum(1)
    t0, t1 = (k * y[None, :]).sum(1), (k * dx * y[None, :]).sum(1)
    det = s0 * s2 - s1 ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        lineal = (s2 * t0 - s1 * t1) / det
        constante = t0 / s0
    ajuste = np.where(np.abs(det) > 1e-12 * np.maximum(s0 * s2, 1e-300), lineal, constante)
    # sin extrapolar: solo puntos dentro del rango de x de los otros tamaños
    xmin = np.where(otros, x[None, :], np.inf).min(1)
    xmax = np.where(otros, x[None, :], -np.inf).max(1)
    dentro = (x >= xmin) & (x <= xmax) & (s0 > 0) & np.isfinite(ajuste)
    return (y - ajuste)[dentro] / dy[dentro], L[dentro]


def collapse_quality(curve: EnsembleCurve, p_c: float, nu: float, gamma: float = 0.0,
                     bandwidths: Optional[Sequence[float]] = None) -> float:
    """
    Coste del colapso (menor es mejor): media de los residuos cuadráticos
    normalizados con el mejor ancho de banda de la rejilla.

    Devuelve inf si menos de dos tamaños se solapan en la ventana reescalada.
    """
    curve.require_sizes(2)
    if min(len(curve.for_size(L)) for L in curve.sizes) < 3:
        raise DegenerateGridError("cada tamaño necesita al menos tres valores de p")
    x, y, dy, L = rescale(curve, p_c, nu, gamma)
    if np.ptp(y) == 0:
        logger.warning("⚠️ Curvas planas: el coste del colapso es 0 para cualquier p_c")
        return 0.0
    rango = np.ptp(x)
    if rango == 0:
        raise DegenerateGridError("todas las abscisas reescaladas coinciden")
    mejor = np.inf
    for b in bandwidths or BANDWIDTHS:
        r, tamanos = _loso_residuals(x, y, dy, L, b * rango)
        # al menos dos tamaños solapados en la ventana reescalada
        if r.size >= 3 and np.unique(tamanos).size >= 2:
            mejor = min(mejor, float(np.mean(r ** 2)))
    if not np.isfinite(mejor):
        logger.debug(f"⚠️ Sin solape entre tamaños para p_c={p_c:.4f} ν={nu:.3f}: coste infinito")
    return mejor


def collapse_parameters(curve: EnsembleCurve, p_c0: float, nu0: float, gamma: float = 0.0,
                        fit_gamma: bool = False) -> CollapseFit:
    """Minimiza el coste de colapso con Nelder-Mead desde (p_c0, ν0[, γ])."""
    inicio = [p_c0, nu0] + ([gamma] if fit_gamma else [])

    def coste(v):
        if v[1] <= 0.05:
            return 1e12
        g = v[2] if fit_gamma else gamma
        valor = collapse_quality(curve, v[0], v[1], g)
        return valor if np.isfinite(valor) else 1e12

    res = minimize(coste, inicio, method="Nelder-Mead",
                   options={"xatol": 1e-5, "fatol": 1e-8, "maxiter": 2000})
    g = float(res.x[2]) if fit_gamma else gamma
    ajuste = CollapseFit(p_c=float(res.x[0]), nu=float(res.x[1]), gamma=g, cost=float(res.fun))
    logger.debug(f"✅ Colapso: p_c={ajuste.p_c:.4f} ν={ajuste.nu:.3f} γ={ajuste.gamma:.3f} coste={ajuste.cost:.3g}")
    return ajuste
