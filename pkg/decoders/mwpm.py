#!/usr/bin/env python3
"""
decoders/mwpm.py
Emparejamiento perfecto de peso mínimo (pymatching) sobre el historial de síndromes

Los chequeos no medidos se toman con resultado +1. Los defectos son los cambios
de síndrome entre rondas consecutivas; la última ronda es la capa perfecta.
Pesos uniformes: la distancia entre defectos es la de Manhattan en espacio-tiempo.
"""

import logging
from typing import List, Optional

import numpy as np
from pymatching import Matching
from scipy.sparse import csr_matrix

from circuit_models import TrialOutput
from circuit_models.geometry import toric_logical_support

from .backbone import BackboneGraph, CheckLayer, check_supports
from .verdict import DecodeVerdict, logical_signs, prepare_quantum

logger = logging.getLogger(__name__)


class OddDefectCountError(RuntimeError):
    """Número impar de defectos: el historial no es consistente."""


def _code_of_backbone(backbone: BackboneGraph) -> str:
    if backbone.code == "toric":
        return "toric2d"
    if len(backbone.dims) == 1:
        return "repetition1d"
    raise ValueError("MWPM solo cubre el código de repetición 1d y el código tórico")


def check_matrix(backbone: BackboneGraph) -> csr_matrix:
    """Matriz de chequeos H (n_checks × n_qubits) de la única familia Z del código."""
    familia = "plaquette" if backbone.code == "toric" else "zz"
    soportes = check_supports(backbone.code, backbone.dims, familia)
    filas = np.repeat(np.arange(len(soportes)), soportes.shape[1])
    return csr_matrix((np.ones(filas.size, dtype=np.uint8), (filas, soportes.ravel())),
                      shape=(len(soportes), backbone.n_sites))


def syndrome_rounds(backbone: BackboneGraph) -> List[CheckLayer]:
    """Rondas en orden temporal: capas de chequeo del volumen más la capa final."""
    rondas = sorted(backbone.layers, key=lambda c: c.t)
    if not backbone.final_layers:
        raise ValueError("el backbone necesita la capa final perfecta")
    return rondas


def detection_events(backbone: BackboneGraph) -> np.ndarray:
    """Defectos d_r = s_r ⊕ s_{r−1} con s_{−1} = 0; forma (n_checks, R)."""
    sindromes = np.stack([c.syndrome for c in syndrome_rounds(backbone)], axis=1)
    previos = np.concatenate([np.zeros((sindromes.shape[0], 1), dtype=np.uint8), sindromes[:, :-1]], axis=1)
    return sindromes ^ previos


def build_matching(backbone: BackboneGraph) -> Matching:
    _code_of_backbone(backbone)
    return Matching.from_check_matrix(check_matrix(backbone), repetitions=len(syndrome_rounds(backbone)))


def mwpm_correction(backbone: BackboneGraph):
    """Corrección X neta sobre los qubits de datos y peso del emparejamiento."""
    defectos = detection_events(backbone)
    total = int(defectos.sum())
    if total % 2:
        raise OddDefectCountError(f"{total} defectos en un código sin frontera")
    if total == 0:
        return np.zeros(backbone.n_sites, dtype=bool), 0.0
    correccion, peso = build_matching(backbone).decode(defectos, return_weight=True)
    return np.asarray(correccion, dtype=bool), float(peso)


def predicted_signs(backbone: BackboneGraph, correction: np.ndarray, site: int = 0):
    if backbone.code == "toric":
        L = backbone.dims[0]
        return tuple(1 - 2 * (int(correction[toric_logical_support(L, z)].sum()) % 2) for z in ("Z1", "Z2"))
    return (-1 if correction[site] else 1,)


def mwpm_decode(source, code: Optional[str] = None, site: int = 0,
                rng: Optional[np.random.Generator] = None) -> DecodeVerdict:
    """
    Decodifica un ClassicalHistory o un TrialOutput por MWPM.

    Args:
        code: "repetition1d" o "toric2d"; si se indica debe coincidir con el de la fuente.
    """
    ctx = None
    if isinstance(source, TrialOutput):
        ctx = prepare_quantum(source, rng)
        backbone = ctx.backbone
    else:
        backbone = source.backbone
    propio = _code_of_backbone(backbone)
    if code is not None and code != propio:
        raise ValueError(f"código {code} incompatible con el historial ({propio})")
    correccion, peso = mwpm_correction(backbone)
    predicho = predicted_signs(backbone, correccion, site)
    contadores = {"matching_weight": peso, "n_defects": int(detection_events(backbone).sum())}
    if ctx is None:
        truth = tuple(int(s) for s in source.truth) if backbone.code == "toric" else (int(source.truth[site]),)
        return DecodeVerdict("mwpm", predicho, truth, contadores)
    truth = logical_signs(ctx.state, ctx.code, ctx.dims, site)
    return DecodeVerdict("mwpm", predicho, truth, contadores, recovered=ctx.recovered_with(correccion))
