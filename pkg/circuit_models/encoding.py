#!/usr/bin/env python3
"""
circuit_models/encoding.py
Estados lógicos ρ_g de los códigos de repetición (1d, 2d) y tórico
"""

import logging
from typing import List

from stabilizer_core import PauliOperator, StabilizerState

from .config import ModelConfig
from .geometry import grid_bonds, plaquettes, ring_bonds, stars, toric_logical_support

logger = logging.getLogger(__name__)

BRANCHES = ("1", "X", "Y", "Z")


class InvalidBranchError(ValueError):
    """Rama lógica no válida para el modelo."""


def _logical(x_op: PauliOperator, z_op: PauliOperator, branch: str):
    if branch == "1":
        return None
    if branch == "X":
        return x_op
    if branch == "Z":
        return z_op
    if branch == "Y":
        return (x_op * z_op).times_i(1)
    raise InvalidBranchError(f"rama desconocida: {branch!r}")


def repetition_checks(config: ModelConfig) -> List[PauliOperator]:
    """Estabilizadores ZZ independientes del código de repetición (árbol generador)."""
    n = config.n_system
    if config.kind == "Repetition2D":
        Lx, Ly = config.L, config.Ly
        fila_x = grid_bonds(Lx, Ly, 0)
        col_y = grid_bonds(Lx, Ly, 1)
        arbol = [fila_x[y * Lx + x] for y in range(Ly) for x in range(Lx - 1)]
        arbol += [col_y[y * Lx] for y in range(Ly - 1)]
    else:
        arbol = ring_bonds(config.L)[:-1]
    return [PauliOperator.from_sites(n, z_sites=[int(i), int(j)]) for i, j in arbol]


def repetition_logicals(config: ModelConfig):
    """(𝐗, Z̄) del código de repetición: 𝐗 = ∏X, Z̄ = Z_0."""
    n = config.n_system
    return (PauliOperator.from_sites(n, x_sites=range(n)), PauliOperator.from_sites(n, z_sites=[0]))


def toric_logicals(L: int) -> dict:
    n = 2 * L * L
    return {nombre: (PauliOperator.from_sites(n, x_sites=toric_logical_support(L, nombre))
                     if nombre.startswith("X") else
                     PauliOperator.from_sites(n, z_sites=toric_logical_support(L, nombre)))
            for nombre in ("X1", "Z1", "X2", "Z2")}


def toric_checks(L: int, include_stars: bool = True) -> List[PauliOperator]:
    """Todas las plaquetas y estrellas salvo una de cada (independientes)."""
    n = 2 * L * L
    gens = [PauliOperator.from_sites(n, z_sites=p) for p in plaquettes(L)[:-1]]
    if include_stars:
        gens += [PauliOperator.from_sites(n, x_sites=s) for s in stars(L)[:-1]]
    return gens


def encode_logical(branch: str, config: ModelConfig) -> StabilizerState:
    """
    Devuelve ρ_g como estado estabilizador: estabilizadores del código más el
    generador lógico de la rama (ninguno para la rama "1").

    En el toro la rama tiene dos caracteres, uno por qubit lógico ("Z1" = 𝐙₁𝟙₂).
    """
    if config.kind in ("Baseline1D", "Repetition2D"):
        if branch not in BRANCHES:
            raise InvalidBranchError(f"rama {branch!r} inválida para el código de repetición")
        gens = repetition_checks(config)
        x_op, z_op = repetition_logicals(config)
        g = _logical(x_op, z_op, branch)
    elif config.kind == "Toric2D":
        if len(branch) != 2 or any(c not in BRANCHES for c in branch):
            raise InvalidBranchError(f"rama tórica {branch!r}: se esperan dos caracteres de {BRANCHES}")
        L = config.L
        logicos = toric_logicals(L)
        gens = toric_checks(L)
        g = None
        for qubit, c in zip(("1", "2"), branch):
            factor = _logical(logicos["X" + qubit], logicos["Z" + qubit], c)
            if factor is not None:
                g = factor if g is None else g * factor
    else:
        raise InvalidBranchError(f"{config.kind} no porta un código")
    if g is not None:
        gens = gens + [g]
    state = StabilizerState.from_generators(gens, n=config.n_system, check=config.n_system <= 512)
    logger.debug(f"✅ Rama {branch} codificada: n={state.n}, k={state.k}")
    return state


def initial_state(config: ModelConfig, branch: str = None) -> StabilizerState:
    """|+⟩ en todo el sistema (y |0⟩ en el baño de la escalera) o una rama lógica."""
    if branch is not None:
        return encode_logical(branch, config)
    if config.kind == "Ladder":
        L = config.L
        gens = [PauliOperator.from_sites(2 * L, x_sites=[j]) for j in range(L)]
        gens += [PauliOperator.from_sites(2 * L, z_sites=[L + j]) for j in range(L)]
        return StabilizerState.from_generators(gens, n=2 * L, check=False)
    if config.kind == "Toric2D":
        raise InvalidBranchError("el código tórico necesita una rama lógica como estado inicial")
    return StabilizerState.product_state(config.n_system, "+")


def logical_zero_state(config: ModelConfig) -> StabilizerState:
    """
    Estado de código con todos los Z lógicos fijados a +1: ρ_Z en el código de
    repetición y |00⟩ lógico (Z̄₁ y Z̄₂ a la vez) en el toro.
    """
    if config.kind != "Toric2D":
        return encode_logical("Z", config)
    logicos = toric_logicals(config.L)
    gens = toric_checks(config.L) + [logicos["Z1"], logicos["Z2"]]
    return StabilizerState.from_generators(gens, n=config.n_system, check=config.n_system <= 512)


__all__ = ["BRANCHES", "InvalidBranchError", "encode_logical", "initial_state", "logical_zero_state",
           "repetition_checks", "repetition_logicals", "toric_checks", "toric_logicals"]