#!/usr/bin/env python3
"""
scaling_analysis/threshold.py
Umbral de decodificación: cruces entre tamaños consecutivos y colapso, con errores bootstrap
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .collapse import collapse_parameters
from .curves import EnsembleCurve

logger = logging.getLogger(__name__)

N_BOOTSTRAP = 200


class NoCrossingError(ValueError):
    """Las curvas de tamaños consecutivos no se cortan en la rejilla."""


@dataclass(frozen=True)
class ThresholdEstimate:
    p_cross: float
    p_cross_err: float
    p_c: float
    p_c_err: float
    nu: float
    nu_err: float
    crossings: Tuple[Tuple[int, int, float], ...] = ()


def _crossing(p: np.ndarray, diferencia: np.ndarray) -> Optional[float]:
    """
    Cambio de signo de la diferencia entre dos tamaños, por interpolación lineal.

    Si el ruido produce varios, se elige el que mejor separa la diferencia en
    dos lados de signo opuesto (máximo de |Σ_{p<c} d − Σ_{p>c} d|).
    """
    signo = np.sign(diferencia)
    candidatos = []
    for k in range(len(p)):
        if signo[k] == 0:
            izq = signo[:k][signo[:k] != 0]
            der = signo[k + 1:][signo[k + 1:] != 0]
            if izq.size and der.size and izq[-1] != der[0]:
                candidatos.append(float(p[k]))
        elif k + 1 < len(p) and signo[k] * signo[k + 1] < 0:
            a, b = diferencia[k], diferencia[k + 1]
            candidatos.append(float(p[k] + (p[k + 1] - p[k]) * a / (a - b)))
    if not candidatos:
        return None
    puntuacion = [abs(diferencia[p < c].sum() - diferencia[p > c].sum()) for c in candidatos]
    return candidatos[int(np.argmax(puntuacion))]


def crossings(curve: EnsembleCurve) -> List[Tuple[int, int, float]]:
    """Cruces (L1, L2, p×) entre pares de tamaños consecutivos sobre los p comunes."""
    curve.require_sizes(2)
    tamanos = curve.sizes
    salida = []
    for L1, L2 in zip(tamanos[:-1], tamanos[1:]):
        a = curve.for_size(L1).set_index("p")["mean"]
        b = curve.for_size(L2).set_index("p")["mean"]
        comunes = a.index.intersection(b.index).sort_values()
        if len(comunes) < 2:
            continue
        cruce = _crossing(comunes.to_numpy(), (b[comunes] - a[comunes]).to_numpy())
        if cruce is not None:
            salida.append((L1, L2, cruce))
    if not salida:
        raise NoCrossingError(f"sin cruces entre los tamaños {tamanos}")
    return salida


def crossing_estimate(curve: EnsembleCurve) -> float:
    """
    Extrapola los cruces por pares en 1/L̄ (media geométrica del par) cuando hay
    al menos tres; con menos se promedian.
    """
    cruces = crossings(curve)
    valores = np.array([c for _, _, c in cruces])
    if len(cruces) < 3:
        return float(valores.mean())
    inversos = np.array([1.0 / np.sqrt(L1 * L2) for L1, L2, _ in cruces])
    pendiente, ordenada = np.polyfit(inversos, valores, 1)
    p = curve.data["p"]
    if not p.min() <= ordenada <= p.max():
        return float(valores[-1])
    return float(ordenada)


def estimate_threshold(curve: EnsembleCurve, nu0: float = 1.0, n_bootstrap: int = N_BOOTSTRAP,
                       rng: Optional[np.random.Generator] = None, collapse: bool = True) -> ThresholdEstimate:
    """
    Estimadores del umbral por cruces y por colapso, con errores de bootstrap
    paramétrico (réplicas sin cruce se descartan).
    """
    rng = rng if rng is not None else np.random.default_rng()
    cruces = crossings(curve)
    p_cross = crossing_estimate(curve)
    if collapse:
        ajuste = collapse_parameters(curve, p_cross, nu0)
        p_c, nu = ajuste.p_c, ajuste.nu
    else:
        p_c, nu = p_cross, float("nan")

    muestras_cruce, muestras_pc, muestras_nu = [], [], []
    for _ in range(n_bootstrap):
        replica = curve.resample(rng)
        try:
            muestras_cruce.append(crossing_estimate(replica))
        except NoCrossingError:
            continue
        if collapse:
            r = collapse_parameters(replica, p_c, nu)
            muestras_pc.append(r.p_c)
            muestras_nu.append(r.nu)
    if len(muestras_cruce) < n_bootstrap // 2:
        logger.warning(f"⚠️ Solo {len(muestras_cruce)}/{n_bootstrap} réplicas bootstrap con cruce")

    def desviacion(m):
        return float(np.std(m, ddof=1)) if len(m) > 1 else float("nan")

    estimacion = ThresholdEstimate(p_cross=p_cross, p_cross_err=desviacion(muestras_cruce),
                                   p_c=p_c, p_c_err=desviacion(muestras_pc),
                                   nu=nu, nu_err=desviacion(muestras_nu), crossings=tuple(cruces))
    logger.info(f"✅ Umbral: cruce {estimacion.p_cross:.4f} ± {estimacion.p_cross_err:.4f}, "
                f"colapso {estimacion.p_c:.4f} ± {estimacion.p_c_err:.4f}, ν = {estimacion.nu:.2f}")
    return estimacion
