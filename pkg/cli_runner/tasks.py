#!/usr/bin/env python3
"""
cli_runner/tasks.py
Un ensayo de un punto de la rejilla: semilla propia, medida y valores por columna

Cada ensayo recibe su propio generador Philox derivado de
(semilla maestra, índice de punto, índice de ensayo), de modo que el resultado
no depende del reparto entre procesos.
"""

import logging
from typing import Dict, List, Sequence

import numpy as np

from circuit_models import initial_state, logical_zero_state, run_trial
from classical_dynamics import sample_from_config
from decoders import decode_located, decode_located_history, decode_membrane, decode_path_sum, mwpm_decode
from observables import (RegionSpec, chi_pm, chi_pm_from_lattice, chi_sg, chi_sg_from_lattice,
                         half_cut_mutual_information, interval_mutual_information, mutual_information)
from percolation_map import PM, QUASI_GHZ, SG, circuit_to_bonds, cluster_stats, sample_bond_lattice

from .experiment import ExperimentConfig, GridPoint

logger = logging.getLogger(__name__)


def trial_rng(seed: int, grid_index: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(
        np.random.SeedSequence(entropy=seed, spawn_key=(grid_index, trial_index))))


def column_names(config: ExperimentConfig) -> List[str]:
    """Columnas (observable o decodificador) que produce cada ensayo, en orden."""
    if config.command == "decode-sweep":
        return list(config.decoders)
    if config.command == "percolation":
        return list(config.flags)
    columnas = []
    for nombre in config.observables:
        if nombre == "interval_mi":
            columnas.extend(f"interval_mi_x{x}" for x in config.intervals)
        else:
            columnas.append(nombre)
    return columnas


def _run_values(config: ExperimentConfig, punto: GridPoint, rng: np.random.Generator) -> Dict[str, float]:
    modelo = config.build_model(punto.L, punto.T, punto.value)
    regiones = RegionSpec.antipodal_eighths(modelo.L)
    if config.engine == "percolation":
        lattice = sample_bond_lattice(modelo, rng)
        por_red = {"chi_sg": chi_sg_from_lattice, "chi_pm": chi_pm_from_lattice}
        return {o: float(por_red[o](lattice, regiones)) for o in config.observables}

    estado = run_trial(modelo, initial_state(modelo), rng).final_state
    valores: Dict[str, float] = {}
    for nombre in config.observables:
        if nombre == "chi_sg":
            valores[nombre] = chi_sg(estado, regiones)
        elif nombre == "chi_pm":
            valores[nombre] = chi_pm(estado, regiones)
        elif nombre == "mi_antipodal":
            valores[nombre] = float(mutual_information(estado, regiones.A, regiones.B))
        elif nombre == "half_cut_mi":
            valores[nombre] = float(half_cut_mutual_information(estado, modelo.L, "system"))
        elif nombre == "half_cut_mi_bath":
            valores[nombre] = float(half_cut_mutual_information(estado, modelo.L, "bath"))
        elif nombre == "interval_mi":
            for x in config.intervals:
                valores[f"interval_mi_x{x}"] = float(interval_mutual_information(estado, modelo.L, x))
    return valores


def _decode_values(config: ExperimentConfig, punto: GridPoint, rng: np.random.Generator) -> Dict[str, float]:
    modelo = config.build_model(punto.L, punto.T, punto.value)
    valores: Dict[str, float] = {}
    if config.engine == "classical":
        historia = sample_from_config(modelo, rng)
        clasicos = {
            "located": lambda: decode_located_history(historia),
            "path_sum": lambda: decode_path_sum(historia),
            "mwpm": lambda: mwpm_decode(historia),
            "membrane": lambda: decode_membrane(historia),
        }
        for nombre in config.decoders:
            valores[nombre] = float(clasicos[nombre]().success)
        return valores

    ensayo = run_trial(modelo, logical_zero_state(modelo), rng)
    cuanticos = {
        "located": lambda: decode_located(ensayo, rng=rng),
        "path_sum": lambda: decode_path_sum(ensayo, rng=rng),
        "mwpm": lambda: mwpm_decode(ensayo, rng=rng),
        "membrane": lambda: decode_membrane(ensayo, rng=rng),
    }
    for nombre in config.decoders:
        valores[nombre] = float(cuanticos[nombre]().success)
    return valores


def _percolation_values(config: ExperimentConfig, punto: GridPoint, rng: np.random.Generator) -> Dict[str, float]:
    modelo = config.build_model(punto.L, punto.T, punto.value)
    if config.engine == "percolation":
        lattice = sample_bond_lattice(modelo, rng)
    else:
        lattice = circuit_to_bonds(run_trial(modelo, initial_state(modelo), rng).record)
    valores: Dict[str, float] = {}
    for nombre in config.flags:
        if nombre == "sg_spans_time":
            valores[nombre] = float(cluster_stats(lattice, SG).spans_time)
        elif nombre == "quasi_ghz_spans_time":
            valores[nombre] = float(cluster_stats(lattice, QUASI_GHZ).spans_time)
        elif nombre == "pm_spans_space":
            valores[nombre] = float(cluster_stats(lattice, PM).spans_space)
        elif nombre == "largest_sg_fraction":
            valores[nombre] = cluster_stats(lattice, SG).largest / lattice.n_nodes
    return valores


_MEDIDAS = {"run": _run_values, "decode-sweep": _decode_values, "percolation": _percolation_values}


def run_one_trial(config: ExperimentConfig, punto: GridPoint, trial_index: int) -> Dict[str, float]:
    rng = trial_rng(config.seed, punto.index, trial_index)
    return _MEDIDAS[config.command](config, punto, rng)


def run_block(config: ExperimentConfig, punto: GridPoint, trial_indices: Sequence[int]) -> np.ndarray:
    """
    Ejecuta un bloque de ensayos de un punto.

    Returns:
        Matriz (len(trial_indices), n_columnas) en el orden de column_names.
    """
    columnas = column_names(config)
    salida = np.empty((len(trial_indices), len(columnas)), dtype=float)
    for fila, k in enumerate(trial_indices):
        valores = run_one_trial(config, punto, k)
        salida[fila] = [valores[c] for c in columnas]
    return salida
