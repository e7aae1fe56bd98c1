#!/usr/bin/env python3
"""
classical_dynamics/test_classical_dynamics.py
Pruebas del muestreo clásico de historiales y de su formato de fixture
"""

import numpy as np
import pytest

from circuit_models import ModelConfig
from classical_dynamics import (dumps_history, load_history, loads_history, sample_from_config, sample_history,
                                sample_toric_history, save_history)
from percolation_map import BondSpecies, FixtureFormatError


class TestSampleHistory:

    def test_no_errors_all_plus(self):
        historia = sample_history(1, L=8, T=8, p_zz_m=0.5, p_err=0.0, rng=np.random.default_rng(0))
        assert not historia.bits.any()
        np.testing.assert_array_equal(historia.truth, np.ones(8))
        for capa in historia.backbone.layers:
            assert np.all(capa.outcomes[capa.measured] == 1)

    @pytest.mark.parametrize("T", [4, 5, 6])
    def test_certain_flips_are_global(self, T):
        historia = sample_history(1, L=6, T=T, p_zz_m=1.0, p_err=1.0, rng=np.random.default_rng(T))
        esperado = -1 if (T // 2) % 2 else 1
        np.testing.assert_array_equal(historia.truth, np.full(6, esperado))
        assert np.all(historia.flips[1::2])
        for capa in historia.backbone.layers:
            assert np.all(capa.outcomes == 1)

    def test_measured_layer_has_even_syndrome(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            historia = sample_history(1, L=7, T=10, p_zz_m=1.0, p_err=0.2, rng=rng)
            for capa in historia.backbone.layers:
                assert capa.syndrome.sum() % 2 == 0

    def test_final_layer_matches_bits(self):
        historia = sample_history(1, L=6, T=8, p_zz_m=0.5, p_err=0.3, rng=np.random.default_rng(2))
        final, = historia.backbone.final_layers
        bits = historia.bits
        np.testing.assert_array_equal(final.outcomes, np.where(bits ^ np.roll(bits, -1), -1, 1))

    def test_lattice_mirrors_backbone(self):
        historia = sample_history(1, L=6, T=8, p_zz_m=0.6, p_err=0.2, rng=np.random.default_rng(3))
        lattice = historia.lattice
        np.testing.assert_array_equal(lattice.temporal == BondSpecies.DECORATED, historia.flips)
        for capa in historia.backbone.bulk_layers:
            np.testing.assert_array_equal(lattice.spatial[capa.t - 1] == BondSpecies.CONNECTED, capa.measured)

    def test_two_dimensional_schedule(self):
        historia = sample_history(2, L=3, T=8, p_zz_m=1.0, p_err=0.1, rng=np.random.default_rng(4))
        familias = [c.family for c in historia.backbone.layers]
        assert familias == ["zz_x", "zz_y", "zz_x", "zz_y", "zz_x", "zz_y"]
        np.testing.assert_array_equal(historia.lattice.spatial_axis, [0, -1, 1, -1, 0, -1, 1, -1])

    def test_faulty_readout_leaves_bits(self):
        historia = sample_history(1, L=8, T=10, p_zz_m=1.0, p_err=0.0, faulty=True, p_faulty=0.5,
                                  rng=np.random.default_rng(5))
        assert not historia.bits.any()
        assert historia.n_readout_errors > 0
        assert any((c.outcomes == -1).any() for c in historia.backbone.bulk_layers)
        assert np.all(historia.backbone.final_layers[0].outcomes == 1)

    def test_rejects_models_without_code(self):
        cfg = ModelConfig.ladder(L=4, T=2, p=0.5)
        with pytest.raises(ValueError):
            sample_from_config(cfg, np.random.default_rng(6))


class TestToricHistory:

    def test_error_free_truth(self):
        historia = sample_toric_history(L=3, T=4, p_plaq_m=0.5, p_err=0.0, rng=np.random.default_rng(7))
        np.testing.assert_array_equal(historia.truth, [1, 1])
        assert historia.lattice is None
        assert historia.backbone.n_sites == 18

    def test_plaquette_syndrome_parity(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            historia = sample_toric_history(L=4, T=6, p_plaq_m=1.0, p_err=0.1, rng=rng)
            for capa in historia.backbone.layers:
                assert capa.family == "plaquette"
                assert capa.syndrome.sum() % 2 == 0


class TestHistoryFixtures:

    @pytest.mark.parametrize("d,faulty", [(1, False), (1, True), (2, False)])
    def test_round_trip(self, d, faulty):
        historia = sample_history(d, L=4, T=6, p_zz_m=0.7, p_err=0.1, faulty=faulty,
                                  rng=np.random.default_rng(9))
        leida = loads_history(dumps_history(historia))
        np.testing.assert_array_equal(leida.bits, historia.bits)
        np.testing.assert_array_equal(leida.truth, historia.truth)
        np.testing.assert_array_equal(leida.flips, historia.flips)
        assert len(leida.backbone.layers) == len(historia.backbone.layers)
        for a, b in zip(leida.backbone.layers, historia.backbone.layers):
            assert (a.t, a.family) == (b.t, b.family)
            np.testing.assert_array_equal(a.outcomes, b.outcomes)
        assert leida.config.readout_error == pytest.approx(historia.config.readout_error)

    def test_toric_has_no_fixture(self):
        historia = sample_toric_history(L=3, T=2, p_plaq_m=1.0, p_err=0.0, rng=np.random.default_rng(10))
        with pytest.raises(ValueError):
            dumps_history(historia)

    def test_missing_lines(self):
        historia = sample_history(1, L=4, T=2, p_zz_m=1.0, p_err=0.0, rng=np.random.default_rng(11))
        texto = "\n".join(l for l in dumps_history(historia).splitlines() if not l.startswith("bits"))
        with pytest.raises(FixtureFormatError):
            loads_history(texto)

    def test_save_and_load_file(self, tmp_path):
        historia = sample_history(1, L=5, T=4, p_zz_m=0.8, p_err=0.1, rng=np.random.default_rng(12))
        ruta = save_history(historia, "cadena", directorio=tmp_path)
        assert ruta.name == "cadena.lattice"
        np.testing.assert_array_equal(load_history(ruta).bits, historia.bits)

    def test_default_directory(self, tmp_path, monkeypatch):
        import config.paths
        monkeypatch.setattr(config.paths, "FIXTURES_DIR", tmp_path / "fixtures")
        historia = sample_history(1, L=4, T=2, p_zz_m=1.0, p_err=0.0, rng=np.random.default_rng(13))
        assert save_history(historia, "vacia").parent == tmp_path / "fixtures"
