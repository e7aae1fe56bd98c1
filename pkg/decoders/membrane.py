#!/usr/bin/env python3
"""
decoders/membrane.py
Suma sobre membranas dirigidas (funciones de altura) del código tórico

Para Z̄₁ la membrana es una función de altura x(y, t): en cada fila y es un
camino dirigido sobre las aristas verticales v(x, y), cuyos "enlaces" son las
plaquetas p(x, y). Como el peso de una membrana es el producto de los pesos de
sus filas, la suma factoriza en sumas de caminos 1d por fila, evaluadas en
x = 0. Para Z̄₂ se intercambian filas y columnas (aristas h(x, y)).
"""

import logging
import math
from typing import Optional

import numpy as np

from circuit_models import TrialOutput

from .backbone import BackboneGraph
from .path_sum import PathSumEngine, PathSumPrecisionError, PathSumValue, rings_for
from .verdict import DecodeVerdict, logical_signs, prepare_quantum

logger = logging.getLogger(__name__)

_STRIPS = {"Z1": "rows", "Z2": "columns"}


def strip_engines(backbone: BackboneGraph, logical: str, exact: bool = False):
    """Una recursión 1d independiente por franja (fila para Z1, columna para Z2)."""
    if backbone.code != "toric":
        raise ValueError("las membranas se definen sobre el código tórico")
    try:
        franjas = rings_for(backbone.dims, _STRIPS[logical])
    except KeyError as exc:
        raise ValueError(f"lógico desconocido: {logical}") from exc
    motores = []
    for franja in franjas:
        motor = PathSumEngine(franja.size, exact=exact)
        anillo = np.arange(franja.size)[None, :]
        for capa in backbone.layers:
            if capa.family != "plaquette":
                continue
            motor.apply(anillo, capa.measured[franja], capa.outcomes[franja])
        motores.append(motor)
    return motores


def membrane_sum_sign(backbone: BackboneGraph, logical: str = "Z1", exact: bool = False,
                      audit: bool = False) -> PathSumValue:
    """Signo de la suma de Box_cum sobre membranas dirigidas para el lógico elegido."""
    valores = [m.value(0) for m in strip_engines(backbone, logical, exact=exact)]
    signo = int(np.prod([v.sign for v in valores]))
    magnitud = float(sum(v.log_magnitude for v in valores)) if signo else float("-inf")
    exacto = math.prod(v.exact for v in valores) if exact else None
    if audit and not exact:
        gemelo = membrane_sum_sign(backbone, logical, exact=True)
        if gemelo.sign != signo:
            raise PathSumPrecisionError(f"{logical}: flotante {signo}, exacto {gemelo.exact}")
    return PathSumValue(signo, magnitud, exact=exacto)


def decode_membrane(source, exact: bool = False, rng: Optional[np.random.Generator] = None) -> DecodeVerdict:
    """Predicción de (Z̄₁, Z̄₂) para un historial tórico o un TrialOutput del toro."""
    if isinstance(source, TrialOutput):
        ctx = prepare_quantum(source, rng)
        backbone = ctx.backbone
        truth = logical_signs(ctx.state, "toric", ctx.dims)
    else:
        backbone = source.backbone
        truth = tuple(int(s) for s in source.truth)
    valores = [membrane_sum_sign(backbone, z, exact=exact) for z in ("Z1", "Z2")]
    predicho = tuple(v.sign for v in valores)
    return DecodeVerdict("membrane", predicho, truth,
                         {"log2_f_Z1": valores[0].log_magnitude, "log2_f_Z2": valores[1].log_magnitude})
