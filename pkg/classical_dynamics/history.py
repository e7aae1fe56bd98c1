#!/usr/bin/env python3
"""
classical_dynamics/history.py
Dinámica clásica de bit-flip y síndromes: entradas del decodificador sin simulación cuántica

Se arranca con todos los bits a 0 y se sigue el mismo calendario de capas que
los circuitos: en las capas de chequeo cada paridad se "mide" con probabilidad
p_ZZ^M (p_□^M en el toro) y en las capas de sitio cada bit se voltea con
probabilidad p^err. Al final se miden todos los chequeos sin errores de lectura.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from circuit_models import ModelConfig, layer_schedule
from circuit_models.geometry import toric_logical_support
from decoders.backbone import (BackboneGraph, CheckLayer, check_supports, code_of,
                               perfect_layers_from_bits)
from percolation_map import BondLattice, BondSpecies

logger = logging.getLogger(__name__)

_AXIS = {"zz": 0, "zz_x": 0, "zz_y": 1}


@dataclass
class ClassicalHistory:
    """Entradas del decodificador y verdad de referencia de un ensayo clásico."""

    config: ModelConfig
    bits: np.ndarray
    flips: np.ndarray
    backbone: BackboneGraph
    truth: np.ndarray
    lattice: Optional[BondLattice] = None
    n_readout_errors: int = 0

    @property
    def code(self) -> str:
        return self.backbone.code

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.backbone.dims

    @property
    def T(self) -> int:
        return self.backbone.T


def _truth(code: str, dims: Tuple[int, ...], bits: np.ndarray) -> np.ndarray:
    if code == "toric":
        L = dims[0]
        return np.array([1 - 2 * (int(bits[toric_logical_support(L, z)].sum()) % 2) for z in ("Z1", "Z2")],
                        dtype=np.int8)
    return np.where(bits == 1, -1, 1).astype(np.int8)


def sample_from_config(config: ModelConfig, rng: np.random.Generator) -> ClassicalHistory:
    """
    Historial clásico con las tasas de `config`: p_err = p_X^M + p_X^E y la lectura
    defectuosa de `readout_error`. Las capas de estrellas no afectan a los bits.
    """
    if config.kind not in ("Baseline1D", "Repetition2D", "Toric2D"):
        raise ValueError(f"la dinámica clásica no cubre el modelo {config.kind}")
    code = code_of(config.kind)
    dims = config.dims
    n, T = config.n_system, config.T
    p_check = config.p_plaq_m if code == "toric" else config.p_zz_m
    p_err = config.p_err
    lectura = config.readout_error

    bits = np.zeros(n, dtype=np.uint8)
    flips = np.zeros((T, n), dtype=bool)
    capas = []
    lattice = BondLattice.empty(dims, T) if code == "repetition" else None
    errores_lectura = 0

    for t in range(1, T + 1):
        for capa in layer_schedule(config, t):
            if capa == "site":
                volteo = rng.random(n) < p_err
                bits ^= volteo.astype(np.uint8)
                flips[t - 1] = volteo
                if lattice is not None:
                    lattice.temporal[t - 1] = np.where(volteo, BondSpecies.DECORATED, BondSpecies.CONNECTED)
            elif capa == "star":
                continue
            else:
                soportes = check_supports(code, dims, capa)
                u = rng.random(len(soportes))
                fallo = (rng.random(len(soportes)) < lectura) if lectura > 0 else np.zeros(len(soportes), dtype=bool)
                medido = u < p_check
                paridad = np.bitwise_xor.reduce(bits[soportes], axis=1)
                resultado = np.where(paridad, -1, 1)
                resultado = np.where(fallo, -resultado, resultado)
                resultado = np.where(medido, resultado, 0).astype(np.int8)
                errores_lectura += int(np.count_nonzero(fallo & medido))
                capas.append(CheckLayer(t, capa, medido, resultado))
                if lattice is not None:
                    lattice.spatial_axis[t - 1] = _AXIS[capa]
                    lattice.spatial[t - 1] = np.where(medido, BondSpecies.CONNECTED, BondSpecies.BROKEN)
                    lattice.outcomes[t - 1] = resultado

    finales = perfect_layers_from_bits(code, dims, bits, T + 1)
    backbone = BackboneGraph(code, dims, T, capas + finales)
    if lattice is not None:
        lattice.__post_init__()
    logger.debug(f"✅ Historial clásico {config.kind} L={config.L} T={T}: "
                 f"{int(flips.sum())} volteos, {errores_lectura} lecturas erróneas")
    return ClassicalHistory(config=config, bits=bits, flips=flips, backbone=backbone,
                            truth=_truth(code, dims, bits), lattice=lattice,
                            n_readout_errors=errores_lectura)


def sample_history(d: int, L: int, T: int, p_zz_m: float, p_err: float, faulty: bool = False,
                   rng: Optional[np.random.Generator] = None, L_y: Optional[int] = None,
                   p_faulty: Optional[float] = None) -> ClassicalHistory:
    """
    Código de repetición en d = 1 (anillo) o d = 2 (toro Lx × Ly, capas x/y alternas).

    Con `faulty`, cada resultado registrado se invierte con probabilidad
    `p_faulty` (por defecto p^err); los bits no cambian y la capa final es perfecta.
    """
    config = ModelConfig.repetition(L=L, T=T, p_zz_m=p_zz_m, p_err=p_err, d=d, faulty=faulty,
                                    L_y=L_y, p_faulty=p_faulty)
    return sample_from_config(config, rng if rng is not None else np.random.default_rng())


def sample_toric_history(L: int, T: int, p_plaq_m: float, p_err: float, faulty: bool = False,
                         rng: Optional[np.random.Generator] = None,
                         p_faulty: Optional[float] = None) -> ClassicalHistory:
    """Bit-flip del código tórico: bits en aristas, plaquetas medidas a tasa p_□^M."""
    config = ModelConfig.toric(L=L, T=T, p_plaq_m=p_plaq_m, p_err=p_err, faulty=faulty, p_faulty=p_faulty)
    return sample_from_config(config, rng if rng is not None else np.random.default_rng())
