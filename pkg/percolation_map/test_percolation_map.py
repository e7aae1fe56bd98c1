#!/usr/bin/env python3
"""
percolation_map/test_percolation_map.py
Pruebas de la traducción a enlaces, clusters, caminos y formato de fixtures
"""

import numpy as np
import pytest

from circuit_models import ModelConfig, encode_logical, initial_state, run_trial
from percolation_map import (PM, QUASI_GHZ, SG, BondLattice, BondSpecies, FixtureFormatError,
                             InvalidPathError, Path, RecordNotMappableError, circuit_to_bonds,
                             cluster_stats, dumps_lattice, find_error_avoiding_path, loads_lattice,
                             sample_bond_lattice, top_boundary_labels, z_cum)
from percolation_map.oracles import bfs_clusters, dfs_path_exists, spanning_paths
from stabilizer_core import pauli_z


def random_lattice(rng, L, T, p_conn=0.6, p_dec=0.0, d=1):
    dims = (L,) if d == 1 else (L, L)
    n = int(np.prod(dims))
    ejes = np.where(np.arange(T) % 2 == 0, 0, -1) if d == 1 else np.where(np.arange(T) % 2 == 0, np.arange(T) // 2 % 2, -1)
    lattice = BondLattice.empty(dims, T, ejes)
    for fila in range(T):
        u = rng.random(n)
        if ejes[fila] >= 0:
            lattice.spatial[fila] = np.where(u < p_conn, BondSpecies.CONNECTED,
                                             np.where(u < p_conn + p_dec, BondSpecies.DECORATED, BondSpecies.BROKEN))
            signos = np.where(rng.random(n) < 0.5, 1, -1)
            lattice.outcomes[fila] = np.where(lattice.spatial[fila] == BondSpecies.CONNECTED, signos, 0)
        v = rng.random(n)
        lattice.temporal[fila] = np.where(v < p_conn, BondSpecies.CONNECTED,
                                          np.where(v < p_conn + p_dec, BondSpecies.DECORATED, BondSpecies.BROKEN))
    lattice.__post_init__()
    return lattice


class TestCircuitToBonds:

    def test_empty_record(self):
        cfg = ModelConfig(kind="Baseline1D", L=6, T=4)
        lattice = circuit_to_bonds(run_trial(cfg, initial_state(cfg), np.random.default_rng(0)).record)
        assert np.all(lattice.temporal == BondSpecies.CONNECTED)
        assert np.all(lattice.spatial == BondSpecies.BROKEN)

    def test_full_measurement_full_dephasing(self):
        cfg = ModelConfig(kind="Baseline1D", L=6, T=4, p_zz_m=1.0, p_x_e=1.0)
        lattice = circuit_to_bonds(run_trial(cfg, initial_state(cfg), np.random.default_rng(1)).record)
        assert np.all(lattice.spatial[0::2] == BondSpecies.CONNECTED)
        assert np.all(lattice.temporal[1::2] == BondSpecies.DECORATED)
        assert np.all(np.abs(lattice.outcomes[0::2]) == 1)

    def test_unitaries_not_mappable(self):
        cfg = ModelConfig.perturbed(L=6, T=4, p=0.5, p_u=1.0)
        with pytest.raises(RecordNotMappableError):
            circuit_to_bonds(run_trial(cfg, initial_state(cfg), np.random.default_rng(2)).record)

    def test_toric_not_mappable(self):
        cfg = ModelConfig.toric(L=3, T=2, p_plaq_m=1.0, p_err=0.1)
        with pytest.raises(RecordNotMappableError):
            circuit_to_bonds(run_trial(cfg, encode_logical("ZZ", cfg), np.random.default_rng(3)).record)

    def test_two_dimensional_axes(self):
        cfg = ModelConfig.repetition(L=3, T=4, p_zz_m=1.0, p_err=0.0, d=2)
        lattice = circuit_to_bonds(run_trial(cfg, encode_logical("Z", cfg), np.random.default_rng(4)).record)
        np.testing.assert_array_equal(lattice.spatial_axis, [0, -1, 1, -1])


class TestClusters:

    def test_all_connected_single_cluster(self):
        lattice = BondLattice.empty((5,), 4, [0, 0, 0, 0])
        lattice.spatial[:] = BondSpecies.CONNECTED
        lattice.outcomes[:] = 1
        stats = cluster_stats(lattice, SG)
        assert stats.n_clusters == 1
        assert stats.spans_time and stats.spans_space

    @pytest.mark.parametrize("d", [1, 2])
    def test_matches_bfs_oracle(self, d):
        rng = np.random.default_rng(10 + d)
        for _ in range(20):
            lattice = random_lattice(rng, 8 if d == 1 else 4, 8, p_conn=0.5, p_dec=0.2, d=d)
            for filtro in (SG, QUASI_GHZ):
                stats = cluster_stats(lattice, filtro)
                oraculo = bfs_clusters(lattice, filtro)
                np.testing.assert_array_equal(stats.sizes, sorted((len(c) for c in oraculo), reverse=True))
                n = lattice.n_sites
                for cluster in oraculo:
                    etiquetas = {stats.labels[t * n + s] for s, t in cluster}
                    assert len(etiquetas) == 1

    def test_duality_exclusive(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            lattice = random_lattice(rng, 8, 8, p_conn=0.5)
            assert not (cluster_stats(lattice, SG).spans_time and cluster_stats(lattice, PM).spans_space)

    def test_pm_filter_on_broken_layer(self):
        lattice = BondLattice.empty((6,), 4, [0, -1, 0, -1])
        lattice.temporal[1] = BondSpecies.BROKEN
        assert cluster_stats(lattice, PM).spans_space
        assert not cluster_stats(lattice, SG).spans_time

    def test_top_boundary_labels(self):
        lattice = BondLattice.empty((4,), 2, [0, 0])
        lattice.spatial[1, 0] = BondSpecies.CONNECTED
        lattice.outcomes[1, 0] = -1
        etiquetas = top_boundary_labels(lattice, SG)
        assert etiquetas[0] == etiquetas[1]
        assert len(set(etiquetas.tolist())) == 3


class TestPaths:

    def test_vertical_path(self):
        lattice = BondLattice.empty((5,), 4)
        camino = find_error_avoiding_path(lattice)
        assert camino.nodes == [(0, t) for t in range(5)]
        assert z_cum(lattice, camino) == 1

    def test_cut_blocks(self):
        lattice = BondLattice.empty((5,), 4)
        lattice.temporal[2] = BondSpecies.BROKEN
        assert find_error_avoiding_path(lattice) is None

    def test_detour_through_negative_bond(self):
        lattice = BondLattice.empty((4,), 3, [-1, 0, -1])
        lattice.temporal[2, 0] = BondSpecies.BROKEN
        lattice.temporal[0, 1:] = BondSpecies.BROKEN
        lattice.spatial[1, 0] = BondSpecies.CONNECTED
        lattice.outcomes[1, 0] = -1
        camino = find_error_avoiding_path(lattice)
        assert camino.start == (0, 0) and camino.end == (1, 3)
        assert z_cum(lattice, camino) == -1

    def test_end_site_constraint(self):
        lattice = BondLattice.empty((4,), 2)
        assert find_error_avoiding_path(lattice, end_site=2).end == (2, 2)
        lattice.temporal[1, 2] = BondSpecies.BROKEN
        assert find_error_avoiding_path(lattice, end_site=2) is None

    def test_invalid_path(self):
        lattice = BondLattice.empty((4,), 2)
        lattice.temporal[0, 0] = BondSpecies.DECORATED
        with pytest.raises(InvalidPathError):
            z_cum(lattice, Path.from_nodes([(0, 0), (0, 1), (0, 2)], lattice))

    def test_existence_matches_dfs(self):
        rng = np.random.default_rng(20)
        for _ in range(500):
            lattice = random_lattice(rng, 10, 10, p_conn=0.55)
            assert (find_error_avoiding_path(lattice) is not None) == dfs_path_exists(lattice)

    def test_adding_connected_bond_is_monotone(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            lattice = random_lattice(rng, 8, 8, p_conn=0.5)
            antes = find_error_avoiding_path(lattice) is not None
            t, s = rng.integers(8), rng.integers(8)
            lattice.temporal[t, s] = BondSpecies.CONNECTED
            if antes:
                assert find_error_avoiding_path(lattice) is not None

    def test_spanning_paths_agree_per_end_site(self):
        cfg = ModelConfig.repetition(L=4, T=6, p_zz_m=0.8, p_err=0.15)
        encontrados = 0
        for seed in range(40):
            salida = run_trial(cfg, encode_logical("Z", cfg), np.random.default_rng(seed))
            lattice = circuit_to_bonds(salida.record)
            if find_error_avoiding_path(lattice) is None:
                continue
            por_destino = {}
            for c in spanning_paths(lattice, limit=2000):
                por_destino.setdefault(c[-1][0], set()).add(z_cum(lattice, Path.from_nodes(c, lattice)))
            n = salida.final_state.n
            for v, valores in por_destino.items():
                assert len(valores) == 1
                assert valores == {salida.final_state.contains(pauli_z(n, v))}
            encontrados += 1
        assert encontrados > 0


class TestFixtures:

    def test_round_trip(self):
        lattice = random_lattice(np.random.default_rng(30), 6, 5, p_conn=0.5, p_dec=0.2)
        texto = dumps_lattice(lattice)
        leida, _ = loads_lattice(texto)
        np.testing.assert_array_equal(leida.temporal, lattice.temporal)
        np.testing.assert_array_equal(leida.spatial, lattice.spatial)
        np.testing.assert_array_equal(leida.outcomes, lattice.outcomes)

    def test_run_length_example(self):
        texto = "# bond-lattice v1\ndims 4\nT 2\n1 S0 C+ C- 2B\n1 T 4C\n2 T B 2D C\n"
        lattice, _ = loads_lattice(texto)
        np.testing.assert_array_equal(lattice.outcomes[0], [1, -1, 0, 0])
        np.testing.assert_array_equal(lattice.temporal[1], [0, 2, 2, 1])

    @pytest.mark.parametrize("texto", [
        "dims 4\nT 1\n1 T 3C\n",
        "dims 4\nT 1\n1 T 4X\n",
        "dims 4\nT 1\n1 S0 4C\n1 T 4C\n",
        "dims 4\nT 2\n1 T 4C\n",
    ])
    def test_malformed(self, texto):
        with pytest.raises(FixtureFormatError):
            loads_lattice(texto)


class TestSampleBondLattice:

    def test_all_measured_chain(self, rng):
        cfg = ModelConfig.baseline(L=6, T=6, p=1.0)
        lattice = sample_bond_lattice(cfg, rng)
        assert np.all(lattice.temporal == BondSpecies.CONNECTED)
        assert np.all(lattice.spatial[0::2] == BondSpecies.CONNECTED)
        assert np.all(lattice.outcomes[0::2] == 1)
        assert cluster_stats(lattice, SG).spans_time

    def test_all_broken_in_time(self, rng):
        cfg = ModelConfig.baseline(L=6, T=6, p=0.0, q=0.0)
        lattice = sample_bond_lattice(cfg, rng)
        assert np.all(lattice.temporal[1::2] == BondSpecies.BROKEN)
        assert np.all(lattice.spatial == BondSpecies.BROKEN)
        assert not cluster_stats(lattice, SG).spans_time

    def test_schedule_matches_circuit(self):
        cfg = ModelConfig.repetition(L=3, T=8, p_zz_m=0.7, p_err=0.1, d=2)
        directa = sample_bond_lattice(cfg, np.random.default_rng(42))
        salida = run_trial(cfg, encode_logical("Z", cfg), np.random.default_rng(42))
        np.testing.assert_array_equal(directa.spatial_axis, circuit_to_bonds(salida.record).spatial_axis)

    def test_coupling_is_decorated(self):
        cfg = ModelConfig.ladder(L=4, T=4, p=0.0, q=1.0)
        lattice = sample_bond_lattice(cfg, np.random.default_rng(43))
        assert np.all(lattice.temporal[1::2] == BondSpecies.DECORATED)

    @pytest.mark.parametrize("cfg", [
        ModelConfig.toric(L=3, T=2, p_plaq_m=1.0, p_err=0.0),
        ModelConfig.perturbed(L=4, T=2, p=0.5, p_u=0.1),
    ])
    def test_not_mappable(self, cfg):
        with pytest.raises(RecordNotMappableError):
            sample_bond_lattice(cfg, np.random.default_rng(44))

    @pytest.mark.slow
    def test_spanning_rate_matches_clifford_trials(self):
        cfg = ModelConfig.baseline(L=8, T=8, p=0.5)
        rng = np.random.default_rng(45)
        directa = np.mean([cluster_stats(sample_bond_lattice(cfg, rng), SG).spans_time for _ in range(400)])
        clifford = np.mean([
            cluster_stats(circuit_to_bonds(run_trial(cfg, initial_state(cfg), rng).record), SG).spans_time
            for _ in range(400)
        ])
        assert abs(directa - clifford) < 4 * np.sqrt(0.25 / 200)
