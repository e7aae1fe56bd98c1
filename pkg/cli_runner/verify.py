#!/usr/bin/env python3
"""
cli_runner/verify.py
Baterías de comprobación contra los oráculos exhaustivos de cada paquete
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from circuit_models import ModelConfig, encode_logical, run_trial
from classical_dynamics import sample_history, sample_toric_history
from decoders import (detection_events, membrane_sum_sign, mwpm_correction, path_sum_sign,
                      verify_recovery_conditions)
from decoders.oracles import brute_force_pairing_weight, defect_list, enumerate_directed_paths, enumerate_membranes
from percolation_map import QUASI_GHZ, SG, cluster_stats, sample_bond_lattice
from percolation_map.oracles import bfs_clusters
from stabilizer_core import PauliOperator, StabilizerState, random_clifford
from stabilizer_core.oracle import DenseOracle

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def _pauli_aleatorio(n: int, rng: np.random.Generator) -> PauliOperator:
    x = rng.integers(2, size=n).astype(bool)
    z = rng.integers(2, size=n).astype(bool)
    return PauliOperator.from_bits(x, z, 1 if rng.integers(2) == 0 else -1)


def stabilizer_vs_dense(rng: np.random.Generator, casos: int) -> int:
    """Secuencias de Clifford, medidas y desfases en n ≤ 10 frente a la matriz densidad."""
    aciertos = 0
    for _ in range(casos):
        n = int(rng.integers(2, 11))
        estado = StabilizerState.product_state(n)
        oraculo = DenseOracle.from_state(estado)
        bien = True
        for _ in range(40):
            op = int(rng.integers(3))
            if op == 0:
                i, j = (int(s) for s in rng.choice(n, size=2, replace=False))
                puerta = random_clifford(2, rng)
                estado.apply_clifford(puerta, [i, j])
                oraculo.apply_clifford(puerta, [i, j])
            elif op == 1:
                p = _pauli_aleatorio(n, rng)
                resultado = estado.measure(p, rng)
                bien &= abs(oraculo.measure(p, resultado.outcome) - resultado.probability) < 1e-9
            else:
                p = _pauli_aleatorio(n, rng)
                estado.dephase(p)
                oraculo.dephase(p)
        bien &= oraculo.trace_distance(DenseOracle.from_state(estado)) < 1e-10
        aciertos += bool(bien)
    return aciertos


def path_sum_vs_enumeration(rng: np.random.Generator, casos: int) -> int:
    aciertos = 0
    for k in range(casos):
        d = 1 + k % 2
        historia = sample_history(d, L=5 if d == 1 else 3, T=5 if d == 1 else 4, p_zz_m=0.6, p_err=0.15, rng=rng)
        valores = path_sum_sign(historia.backbone, exact=True)
        aciertos += all(v.exact == enumerate_directed_paths(historia.backbone, s) for s, v in enumerate(valores))
    return aciertos


def mwpm_vs_brute_force(rng: np.random.Generator, casos: int) -> int:
    aciertos, hechos = 0, 0
    while hechos < casos:
        if hechos % 2:
            historia = sample_toric_history(L=4, T=4, p_plaq_m=0.9, p_err=0.05, rng=rng)
        else:
            historia = sample_history(1, L=8, T=6, p_zz_m=0.9, p_err=0.06, rng=rng)
        defectos = defect_list(detection_events(historia.backbone))
        if not 0 < len(defectos) <= 8:
            continue
        _, peso = mwpm_correction(historia.backbone)
        aciertos += peso == brute_force_pairing_weight(historia.code, historia.dims, defectos)
        hechos += 1
    return aciertos


def membrane_vs_enumeration(rng: np.random.Generator, casos: int) -> int:
    aciertos = 0
    for k in range(casos):
        logico = "Z1" if k % 2 == 0 else "Z2"
        historia = sample_toric_history(L=3, T=3, p_plaq_m=0.5, p_err=0.1, rng=rng)
        valor = membrane_sum_sign(historia.backbone, logico, exact=True)
        aciertos += valor.exact == enumerate_membranes(historia.backbone, logico)
    return aciertos


def clusters_vs_bfs(rng: np.random.Generator, casos: int) -> int:
    aciertos = 0
    for k in range(casos):
        cfg = (ModelConfig.baseline(L=8, T=8, p=float(rng.uniform(0.3, 0.7)), q=0.5) if k % 2 == 0
               else ModelConfig.repetition(L=4, T=8, p_zz_m=0.6, p_err=0.2, d=2))
        lattice = sample_bond_lattice(cfg, rng)
        bien = True
        for filtro in (SG, QUASI_GHZ):
            tamanos = sorted((len(c) for c in bfs_clusters(lattice, filtro)), reverse=True)
            bien &= list(cluster_stats(lattice, filtro).sizes) == tamanos
        aciertos += bool(bien)
    return aciertos


def recovery_conditions(rng: np.random.Generator, casos: int) -> int:
    """
    Con camino que esquiva errores, las cuatro ramas se recuperan; sin él, la rama
    Z se confunde con ρ_𝟙. Ambas rutas (estabilizador y matriz densidad) deben coincidir.
    """
    aciertos = 0
    for k in range(casos):
        cfg = ModelConfig.repetition(L=6, T=6, p_zz_m=0.8, p_err=0.1 if k % 2 == 0 else 0.35)
        ensayo = run_trial(cfg, encode_logical("1", cfg), rng, record_events=True)
        informe = verify_recovery_conditions(ensayo, rng=rng, oracle=True)
        aciertos += informe.consistent
    return aciertos


SUITES: Dict[str, Callable[[np.random.Generator, int], int]] = {
    "stabilizer_vs_dense": stabilizer_vs_dense,
    "path_sum_vs_enumeration": path_sum_vs_enumeration,
    "mwpm_vs_brute_force": mwpm_vs_brute_force,
    "membrane_vs_enumeration": membrane_vs_enumeration,
    "clusters_vs_bfs": clusters_vs_bfs,
    "recovery_conditions": recovery_conditions,
}


def run_suites(casos: int = 20, seed: int = 0, names: Optional[List[str]] = None) -> List[SuiteResult]:
    """Ejecuta las baterías elegidas (todas por defecto) con generadores independientes."""
    elegidas = list(SUITES) if not names else names
    desconocidas = set(elegidas) - set(SUITES)
    if desconocidas:
        raise ValueError(f"baterías desconocidas: {sorted(desconocidas)}")
    semillas = np.random.SeedSequence(seed).spawn(len(SUITES))
    resultados = []
    for (nombre, suite), semilla in zip(SUITES.items(), semillas):
        if nombre not in elegidas:
            continue
        aciertos = suite(np.random.default_rng(semilla), casos)
        resultado = SuiteResult(nombre, int(aciertos), casos)
        if resultado.ok:
            logger.info(f"✅ {nombre}: {aciertos}/{casos}")
        else:
            logger.error(f"❌ {nombre}: {aciertos}/{casos}")
        resultados.append(resultado)
    return resultados
