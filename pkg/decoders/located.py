#!/usr/bin/env python3
"""
decoders/located.py
Decodificador con errores localizados: un camino que evita errores y su Z_cum

Con las posiciones de los errores conocidas basta un camino de τ = 0 a τ = T
por enlaces conectados: Z en su extremo final vale Z_cum, y las capas finales
perfectas trasladan ese signo al sitio evaluado.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from circuit_models import TrialOutput
from percolation_map import BondLattice, circuit_to_bonds, find_error_avoiding_path, z_cum
from stabilizer_core import pauli_z

from .backbone import CheckLayer
from .verdict import DecodeVerdict, prepare_quantum, relative_bits, repetition_correction

logger = logging.getLogger(__name__)


def located_sign(lattice: BondLattice, final_layers: List[CheckLayer], site: int = 0) -> Tuple[int, int]:
    """
    Signo predicho de Z en `site` y longitud del camino usado.

    Devuelve (0, 0) si no existe camino que atraviese el historial.
    """
    camino = find_error_avoiding_path(lattice)
    if camino is None:
        return 0, 0
    extremo = camino.end[0]
    bits = relative_bits("repetition", lattice.dims, final_layers, site)
    signo = z_cum(lattice, camino) * (-1 if bits[extremo] else 1)
    return signo, len(camino.bonds)


def decode_located(trial: TrialOutput, site: int = 0, rng: Optional[np.random.Generator] = None) -> DecodeVerdict:
    """Decodifica un ensayo cuántico del código de repetición con sus errores localizados."""
    lattice = circuit_to_bonds(trial.record)
    ctx = prepare_quantum(trial, rng)
    signo, longitud = located_sign(lattice, ctx.backbone.final_layers, site)
    truth = (ctx.state.contains(pauli_z(ctx.state.n, site)),)
    contadores = {"has_path": int(signo != 0), "path_length": longitud}
    if signo == 0:
        logger.debug("⚠️ Sin camino que evite errores: fallo por geometría")
        return DecodeVerdict("located", (0,), truth, contadores, recovered=False)
    correccion = repetition_correction(ctx.code, ctx.dims, ctx.backbone.final_layers, site, signo)
    return DecodeVerdict("located", (signo,), truth, contadores, recovered=ctx.recovered_with(correccion))


def decode_located_history(history, site: int = 0) -> DecodeVerdict:
    if history.lattice is None:
        raise ValueError("el historial no tiene red de enlaces (solo código de repetición)")
    signo, longitud = located_sign(history.lattice, history.backbone.final_layers, site)
    return DecodeVerdict("located", (signo,), (int(history.truth[site]),),
                         {"has_path": int(signo != 0), "path_length": longitud})
