#!/usr/bin/env python3
"""
decoders/verdict.py
Veredicto de decodificación y evaluación cuántica de la recuperación

Para un TrialOutput el éxito se evalúa sobre el propio estado: se miden todos
los chequeos (capa 𝓜), se aplica la corrección X propuesta y se compara el
grupo estabilizador con el de la rama inicial.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order

from circuit_models import TrialOutput
from circuit_models.geometry import toric_logical_support
from stabilizer_core import PauliOperator, StabilizerState

from .backbone import BackboneGraph, CheckLayer, check_supports, code_of, final_families

logger = logging.getLogger(__name__)


@dataclass
class DecodeVerdict:
    """
    Predicción de signo por generador lógico frente a la verdad.

    Repetición: un único signo, el de Z en el sitio evaluado. Toro: (Z̄₁, Z̄₂).
    Un 0 en `predicted` (cancelación exacta o sin camino) siempre es fallo; un 0 en
    `truth` indica que la información lógica se perdió en el propio estado.
    """

    decoder: str
    predicted: Tuple[int, ...]
    truth: Tuple[int, ...]
    counters: Dict[str, float] = field(default_factory=dict)
    recovered: Optional[bool] = None

    @property
    def success(self) -> bool:
        return all(p != 0 and p == t for p, t in zip(self.predicted, self.truth))

    def as_row(self) -> dict:
        fila = {"decoder": self.decoder, "success": int(self.success)}
        fila.update(self.counters)
        return fila


# ═══════════════════════════════════════════════════════════════════
# Capa 𝓜 y correcciones
# ═══════════════════════════════════════════════════════════════════


def _check_operator(n: int, soporte) -> PauliOperator:
    return PauliOperator.from_sites(n, z_sites=[int(s) for s in soporte])


def measure_final_layers(state: StabilizerState, code: str, dims: Tuple[int, ...], T: int,
                         rng: np.random.Generator) -> List[CheckLayer]:
    """Mide todos los chequeos Z sobre `state` (in-place) y devuelve las capas perfectas."""
    capas = []
    for k, familia in enumerate(final_families(code, dims)):
        soportes = check_supports(code, dims, familia)
        resultados = np.array([state.measure(_check_operator(state.n, s), rng).outcome for s in soportes],
                              dtype=np.int8)
        capas.append(CheckLayer.perfect(T + 1 + k, familia, resultados))
    return capas


def relative_bits(code: str, dims: Tuple[int, ...], final_layers: List[CheckLayer], root: int) -> np.ndarray:
    """
    Bits m_j ⊕ m_root deducidos de las capas finales perfectas del código de
    repetición, recorriendo sus enlaces en anchura desde `root`.
    """
    if code != "repetition":
        raise ValueError("los bits relativos solo se definen en el código de repetición")
    n = int(np.prod(dims))
    u, v, w = [], [], []
    for capa in final_layers:
        pares = check_supports(code, dims, capa.family)
        u.append(pares[:, 0])
        v.append(pares[:, 1])
        # peso 1 → paridad par, 2 → impar (los ceros desaparecen de la matriz dispersa)
        w.append(np.where(capa.outcomes == -1, 2, 1))
    u, v, w = np.concatenate(u), np.concatenate(v), np.concatenate(w)
    grafo = coo_matrix((np.concatenate([w, w]), (np.concatenate([u, v]), np.concatenate([v, u]))),
                       shape=(n, n)).tocsr()
    grafo.sum_duplicates()
    orden, predecesores = breadth_first_order(grafo, root, directed=True, return_predecessors=True)
    if orden.size != n:
        raise ValueError("las capas finales no conectan todos los sitios")
    bits = np.zeros(n, dtype=np.uint8)
    for nodo in orden[1:]:
        padre = predecesores[nodo]
        bits[nodo] = bits[padre] ^ (int(grafo[padre, nodo]) % 2 == 0)
    return bits


def repetition_correction(code: str, dims: Tuple[int, ...], final_layers: List[CheckLayer],
                          site: int, predicted_sign: int) -> np.ndarray:
    """Sitios sobre los que aplicar X para dejar todos los bits en 0 según la predicción en `site`."""
    bits = relative_bits(code, dims, final_layers, site)
    return (bits ^ (1 if predicted_sign < 0 else 0)).astype(bool)


def apply_x_correction(state: StabilizerState, correction: np.ndarray) -> None:
    sitios = np.flatnonzero(correction)
    if sitios.size:
        state.apply_pauli(PauliOperator.from_sites(state.n, x_sites=sitios))


def logical_signs(state: StabilizerState, code: str, dims: Tuple[int, ...], site: int = 0) -> Tuple[int, ...]:
    """Signo de los Z lógicos en el estado (0 si ya no pertenecen al grupo)."""
    if code == "toric":
        L = dims[0]
        return tuple(state.contains(_check_operator(state.n, toric_logical_support(L, z))) for z in ("Z1", "Z2"))
    return (state.contains(_check_operator(state.n, [site])),)


@dataclass
class QuantumContext:
    """Estado tras la capa 𝓜 y backbone completo de un ensayo cuántico."""

    trial: TrialOutput
    state: StabilizerState
    backbone: BackboneGraph

    @property
    def code(self) -> str:
        return self.backbone.code

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.backbone.dims

    def recovered_with(self, correction: np.ndarray) -> bool:
        estado = self.state.copy()
        apply_x_correction(estado, correction)
        return estado.same_group_as(self.trial.initial_state)


def prepare_quantum(trial: TrialOutput, rng: Optional[np.random.Generator] = None) -> QuantumContext:
    """Aplica la capa 𝓜 a una copia del estado final y completa el backbone."""
    cfg = trial.config
    if cfg.kind not in ("Baseline1D", "Repetition2D", "Toric2D"):
        raise ValueError(f"el modelo {cfg.kind} no porta un código decodificable")
    code = code_of(cfg.kind)
    estado = trial.final_state.copy()
    inicial = logical_signs(trial.initial_state, code, cfg.dims)
    if any(s != 1 for s in inicial):
        raise ValueError("el estado inicial debe fijar los Z lógicos a +1 (use logical_zero_state)")
    rng = rng if rng is not None else np.random.default_rng()
    finales = measure_final_layers(estado, code, cfg.dims, cfg.T, rng)
    return QuantumContext(trial=trial, state=estado, backbone=BackboneGraph.from_record(trial.record, finales))
