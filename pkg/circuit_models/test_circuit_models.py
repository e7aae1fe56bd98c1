#!/usr/bin/env python3
"""
circuit_models/test_circuit_models.py
Pruebas de configuración, codificación lógica y ejecución de ensayos
"""

import numpy as np
import pytest
from pydantic import ValidationError

from circuit_models import (DimensionMismatchError, GateCode, InvalidBranchError, ModelConfig,
                            encode_logical, initial_state, replay_record, run_trial)
from stabilizer_core import PauliOperator, global_x
from stabilizer_core.oracle import DenseOracle


def labels(state):
    return [g.to_label() for g in state.generators()]


class TestModelConfig:

    def test_baseline_parameterization(self):
        cfg = ModelConfig.baseline(L=8, T=4, p=0.6, q=0.5)
        assert cfg.p_zz_m == pytest.approx(0.6)
        assert cfg.p_x_m == pytest.approx(0.2)
        assert cfg.p_x_e == pytest.approx(0.2)

    def test_rate_family_overflow(self):
        with pytest.raises(ValidationError):
            ModelConfig(kind="Baseline1D", L=8, T=4, p_x_m=0.7, p_x_e=0.5)

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError):
            ModelConfig(kind="Baseline1D", L=8, T=4, p_zz=0.5)

    def test_ladder_needs_even_L(self):
        with pytest.raises(ValidationError):
            ModelConfig.ladder(L=7, T=4, p=0.5)

    def test_faulty_defaults_to_error_rate(self):
        cfg = ModelConfig.repetition(L=8, T=8, p_zz_m=1.0, p_err=0.05, faulty=True)
        assert cfg.readout_error == pytest.approx(0.05)

    def test_frozen(self):
        cfg = ModelConfig.baseline(L=8, T=4, p=0.5)
        with pytest.raises(ValidationError):
            cfg.L = 10


class TestEncodeLogical:

    def test_repetition_branch_z(self):
        cfg = ModelConfig.repetition(L=3, T=2, p_zz_m=1.0, p_err=0.0)
        assert labels(encode_logical("Z", cfg)) == ["+ZZI", "+IZZ", "+ZII"]

    def test_repetition_branch_identity_is_mixed(self):
        cfg = ModelConfig.repetition(L=3, T=2, p_zz_m=1.0, p_err=0.0)
        state = encode_logical("1", cfg)
        assert labels(state) == ["+ZZI", "+IZZ"]
        assert state.k == 2

    def test_repetition_branch_y(self):
        cfg = ModelConfig.repetition(L=3, T=2, p_zz_m=1.0, p_err=0.0)
        assert encode_logical("Y", cfg).generators()[-1].to_label() == "+YXX"

    def test_toric_branch_count(self):
        cfg = ModelConfig.toric(L=4, T=2, p_plaq_m=1.0, p_err=0.0)
        state = encode_logical("Z1", cfg)
        assert state.k == 2 * 16 - 1
        state.check_invariants()

    def test_repetition_2d_tree(self):
        cfg = ModelConfig.repetition(L=3, T=4, p_zz_m=1.0, p_err=0.0, d=2)
        assert encode_logical("1", cfg).k == 8

    def test_invalid_branch(self):
        with pytest.raises(InvalidBranchError):
            encode_logical("X", ModelConfig.perturbed(L=8, T=2, p=0.5))
        with pytest.raises(InvalidBranchError):
            encode_logical("W", ModelConfig.repetition(L=3, T=2, p_zz_m=1.0, p_err=0.0))


class TestRunTrial:

    def test_all_bonds_give_ghz(self):
        cfg = ModelConfig.baseline(L=6, T=2, p=1.0, q=0.0)
        salida = run_trial(cfg, initial_state(cfg), np.random.default_rng(0))
        estado = salida.final_state
        assert estado.contains(global_x(6)) == 1
        for j in range(6):
            assert estado.contains(PauliOperator.from_sites(6, z_sites=[j, (j + 1) % 6])) != 0
        zz = salida.record.step(1, "zz")
        assert np.all(zz.gates == GateCode.MEASURE)
        assert set(np.unique(zz.outcomes)) <= {-1, 1}

    def test_record_covers_schedule(self):
        cfg = ModelConfig.baseline(L=8, T=6, p=0.5, q=0.5)
        salida = run_trial(cfg, initial_state(cfg), np.random.default_rng(1))
        assert [s.t for s in salida.record.steps] == [1, 2, 3, 4, 5, 6]
        for paso in salida.record.steps:
            medidos = paso.gates == GateCode.MEASURE
            assert np.all(paso.outcomes[~medidos] == 0)
            assert np.all(np.abs(paso.outcomes[medidos]) == 1)

    def test_dimension_mismatch(self):
        cfg = ModelConfig.baseline(L=8, T=2, p=0.5)
        with pytest.raises(DimensionMismatchError):
            run_trial(cfg, initial_state(ModelConfig.baseline(L=6, T=2, p=0.5)), np.random.default_rng(0))

    def test_same_seed_is_bit_identical(self):
        cfg = ModelConfig.perturbed(L=8, T=8, p=0.5, p_u=0.3)
        a = run_trial(cfg, initial_state(cfg), np.random.default_rng(5)).final_state
        b = run_trial(cfg, initial_state(cfg), np.random.default_rng(5)).final_state
        np.testing.assert_array_equal(a.xs, b.xs)
        np.testing.assert_array_equal(a.exponents, b.exponents)

    @pytest.mark.parametrize("cfg", [
        ModelConfig.perturbed(L=6, T=10, p=0.5, p_u=0.3),
        ModelConfig.ladder(L=4, T=6, p=0.5, p_bath_m=0.3),
        ModelConfig.repetition(L=3, T=8, p_zz_m=0.7, p_err=0.2, d=2, faulty=True),
        ModelConfig.toric(L=3, T=6, p_plaq_m=0.8, p_err=0.1, p_star_m=0.5),
    ])
    def test_replay_reproduces_final_state(self, cfg):
        inicial = initial_state(cfg, "Z" if cfg.kind == "Repetition2D" else "ZZ" if cfg.kind == "Toric2D" else None)
        salida = run_trial(cfg, inicial, np.random.default_rng(9), record_events=True)
        repetido = replay_record(salida.record, inicial)
        np.testing.assert_array_equal(repetido.xs, salida.final_state.xs)
        np.testing.assert_array_equal(repetido.zs, salida.final_state.zs)
        np.testing.assert_array_equal(repetido.exponents, salida.final_state.exponents)

    def test_symmetric_dynamics_keep_global_x(self):
        cfg = ModelConfig.ladder(L=4, T=10, p=0.4, q=0.5)
        salida = run_trial(cfg, initial_state(cfg), np.random.default_rng(2))
        sistema_x = PauliOperator.from_sites(8, x_sites=range(4))
        assert salida.final_state.contains(sistema_x) == 1

    def test_trajectory_matches_dense_oracle(self):
        cfg = ModelConfig.baseline(L=6, T=8, p=0.5, q=0.5)
        inicial = initial_state(cfg)
        salida = run_trial(cfg, inicial, np.random.default_rng(3), record_events=True)
        oraculo = DenseOracle.from_state(inicial)
        for ev in salida.record.events:
            if ev.kind == "measure":
                assert oraculo.measure(ev.operator, ev.outcome) > 0
            elif ev.kind == "dephase":
                oraculo.dephase(ev.operator)
            else:
                oraculo.apply_clifford(ev.operator, list(ev.sites))
        assert oraculo.trace_distance(DenseOracle.from_state(salida.final_state)) < 1e-10

    def test_faulty_flips_only_recorded(self):
        cfg = ModelConfig.repetition(L=6, T=6, p_zz_m=1.0, p_err=0.0, faulty=True, p_faulty=1.0)
        salida = run_trial(cfg, encode_logical("Z", cfg), np.random.default_rng(4))
        # Sin errores, el resultado físico es +1 y la lectura siempre lo niega
        for paso in salida.record.layers("zz"):
            assert np.all(paso.outcomes == -1)
