#!/usr/bin/env python3
"""
scaling_analysis/test_scaling_analysis.py
Pruebas de colapso y umbral con curvas sintéticas de forma de escala conocida
"""

import numpy as np
import pandas as pd
import pytest

from scaling_analysis import (DegenerateGridError, EnsembleCurve, NoCrossingError, collapse_parameters,
                              collapse_quality, crossing_estimate, crossings, estimate_threshold)


def synthetic_curve(p_c=0.5, nu=4 / 3, gamma=1 / 3, sizes=(16, 32, 64, 128), noise=0.0, seed=0,
                    grid=None, stderr=1e-3):
    rng = np.random.default_rng(seed)
    grid = np.linspace(0.3, 0.7, 41) if grid is None else grid
    filas = []
    for L in sizes:
        x = (grid - p_c) * L ** (1 / nu)
        y = L ** gamma * (1.5 - np.tanh(x))
        y = y + noise * rng.standard_normal(y.size) * L ** gamma
        for p, m in zip(grid, y):
            filas.append({"p": p, "L": L, "mean": m, "stderr": stderr * L ** gamma, "n": 1000})
    return EnsembleCurve(pd.DataFrame(filas), model="sintetico", observable="chi")


def success_curve(p0=0.2, sizes=(8, 16, 32), stderr=0.01, grid=None):
    grid = np.round(np.linspace(p0 - 0.1, p0 + 0.1, 21), 10) if grid is None else grid
    filas = []
    for L in sizes:
        m = 0.5 + 0.5 * np.tanh((p0 - grid) * L)
        for p, v in zip(grid, m):
            filas.append({"p": p, "L": L, "mean": v, "stderr": stderr, "n": 2000})
    return EnsembleCurve(pd.DataFrame(filas), model="rep", observable="path_sum")


class TestEnsembleCurve:

    def test_sorted_and_validated(self):
        curva = EnsembleCurve.from_arrays([0.2, 0.1, 0.1, 0.2], [8, 8, 4, 4], [1, 1, 1, 1],
                                          [0.1, 0.1, 0.1, 0.1], [10, 10, 10, 10])
        assert curva.sizes == [4, 8]
        assert list(curva.data["p"]) == [0.1, 0.2, 0.1, 0.2]

    def test_missing_stderr_rejected(self):
        with pytest.raises(ValueError):
            EnsembleCurve.from_arrays([0.1], [4], [0.5], [np.nan], [10])

    def test_single_trial_allows_missing_stderr(self):
        curva = EnsembleCurve.from_arrays([0.1], [4], [1.0], [np.nan], [1])
        assert curva.error_floor()[0] == pytest.approx(0.5)

    def test_csv_round_trip(self, tmp_path):
        curva = success_curve()
        ruta = tmp_path / "curva.csv"
        curva.to_csv(ruta)
        leida = EnsembleCurve.from_csv(ruta)
        pd.testing.assert_frame_equal(leida.data, curva.data)
        assert leida.model == "rep"

    def test_csv_with_several_observables(self, tmp_path):
        df = pd.concat([success_curve().data.assign(observable="a"), success_curve().data.assign(observable="b")])
        df.insert(0, "model", "rep")
        ruta = tmp_path / "mezcla.csv"
        df.to_csv(ruta, index=False)
        with pytest.raises(ValueError):
            EnsembleCurve.from_csv(ruta)
        assert len(EnsembleCurve.from_csv(ruta, observable="b").data) == len(success_curve().data)


class TestCollapse:

    def test_true_parameters_beat_wrong_ones(self):
        curva = synthetic_curve()
        assert collapse_quality(curva, 0.5, 4 / 3, 1 / 3) < collapse_quality(curva, 0.45, 4 / 3, 1 / 3)
        assert collapse_quality(curva, 0.5, 4 / 3, 1 / 3) < collapse_quality(curva, 0.5, 0.8, 1 / 3)

    def test_recovers_synthetic_exponents(self):
        curva = synthetic_curve(noise=5e-4, seed=1)
        ajuste = collapse_parameters(curva, p_c0=0.47, nu0=1.1, gamma=0.2, fit_gamma=True)
        assert ajuste.p_c == pytest.approx(0.5, abs=0.01)
        assert ajuste.nu == pytest.approx(4 / 3, rel=0.15)
        assert ajuste.gamma == pytest.approx(1 / 3, abs=0.05)

    def test_flat_curves_cost_zero(self):
        filas = [{"p": p, "L": L, "mean": 0.5, "stderr": 0.01, "n": 100}
                 for L in (8, 16) for p in (0.1, 0.2, 0.3, 0.4)]
        curva = EnsembleCurve(pd.DataFrame(filas))
        assert collapse_quality(curva, 0.13, 1.0) == 0.0
        assert collapse_quality(curva, 0.37, 2.0) == 0.0

    def test_single_size_is_degenerate(self):
        curva = synthetic_curve(sizes=(16,))
        with pytest.raises(DegenerateGridError):
            collapse_quality(curva, 0.5, 1.0)

    def test_non_positive_nu(self):
        with pytest.raises(DegenerateGridError):
            collapse_quality(synthetic_curve(), 0.5, 0.0)

    def test_disjoint_sizes_cost_infinite(self):
        filas = [{"p": p, "L": L, "mean": p, "stderr": 0.01, "n": 100}
                 for L, ps in ((8, (0.1, 0.2, 0.3)), (16, (0.6, 0.7, 0.8))) for p in ps]
        curva = EnsembleCurve(pd.DataFrame(filas))
        assert collapse_quality(curva, 0.5, 1.0) == np.inf

    def test_single_overlapping_size_cost_infinite(self):
        # los puntos de L=16 caen entre dos puntos de L=8: solo un tamaño aporta residuos
        filas = [{"p": p, "L": 8, "mean": p, "stderr": 0.01, "n": 100} for p in (0.0, 0.1, 0.2, 0.3, 0.4)]
        filas += [{"p": p, "L": 16, "mean": p, "stderr": 0.01, "n": 100} for p in (0.06, 0.065, 0.07)]
        curva = EnsembleCurve(pd.DataFrame(filas))
        assert collapse_quality(curva, 0.0, 1.0) == np.inf

    def test_infinite_cost_does_not_break_minimizer(self):
        filas = [{"p": p, "L": L, "mean": p, "stderr": 0.01, "n": 100}
                 for L, ps in ((8, (0.1, 0.2, 0.3)), (16, (0.6, 0.7, 0.8))) for p in ps]
        ajuste = collapse_parameters(EnsembleCurve(pd.DataFrame(filas)), p_c0=0.5, nu0=1.0)
        assert np.isfinite(ajuste.cost)


class TestThreshold:

    def test_symmetric_crossing_is_exact(self):
        cruces = crossings(success_curve(p0=0.2))
        for _, _, p in cruces:
            assert p == pytest.approx(0.2, abs=1e-12)

    def test_shift_moves_crossing_by_same_amount(self):
        curva = success_curve(p0=0.2)
        assert crossing_estimate(curva.shifted(0.05)) == pytest.approx(crossing_estimate(curva) + 0.05, abs=1e-9)

    def test_no_crossing(self):
        filas = [{"p": p, "L": L, "mean": 0.9 - p + 0.01 * L, "stderr": 0.01, "n": 100}
                 for L in (8, 16) for p in (0.1, 0.2, 0.3)]
        with pytest.raises(NoCrossingError):
            crossings(EnsembleCurve(pd.DataFrame(filas)))

    def test_estimate_threshold(self):
        estimacion = estimate_threshold(success_curve(p0=0.2), nu0=1.0, n_bootstrap=30,
                                        rng=np.random.default_rng(3))
        assert estimacion.p_cross == pytest.approx(0.2, abs=0.005)
        assert estimacion.p_c == pytest.approx(0.2, abs=0.01)
        assert estimacion.p_cross_err > 0

    def test_bootstrap_error_scales_with_stderr(self):
        ancho = estimate_threshold(success_curve(stderr=0.02), n_bootstrap=400, collapse=False,
                                   rng=np.random.default_rng(4)).p_cross_err
        estrecho = estimate_threshold(success_curve(stderr=0.02 / np.sqrt(2)), n_bootstrap=400, collapse=False,
                                      rng=np.random.default_rng(5)).p_cross_err
        assert ancho / estrecho == pytest.approx(np.sqrt(2), rel=0.2)
