#!/usr/bin/env python3
"""
cli_runner/test_cli_runner.py
Pruebas de la gramática de configuración, la ejecución determinista y la línea de órdenes
"""

import json

import numpy as np
import pandas as pd
import pytest

import cli_runner.executor as executor_mod
from cli_runner import (CSV_COLUMNS, RECIPES, ConfigError, OutputPathError, TrialFailureError, dumps_config,
                        execute, parse_config, recipe, run_suites)
from cli_runner.cli import main

DECODE_TEXT = """
# barrido pequeño del código de repetición
command = decode-sweep
model = repetition
sweep = p_err
values = 0.05, 0.1
fixed.p_zz_m = 0.7
L = 6, 8
decoders = path_sum, located, mwpm
engine = classical
trials = 7
seed = 11
"""


def config_text(**extra) -> str:
    """Texto de DECODE_TEXT con las claves de `extra` sustituidas o añadidas."""
    claves = {}
    for linea in DECODE_TEXT.splitlines():
        if "=" in linea and not linea.lstrip().startswith("#"):
            clave, valor = (s.strip() for s in linea.split("=", 1))
            claves[clave] = valor
    claves.update({k: str(v) for k, v in extra.items()})
    return "".join(f"{k} = {v}\n" for k, v in claves.items())


class TestParseConfig:

    def test_basic(self):
        cfg = parse_config(DECODE_TEXT)
        assert cfg.command == "decode-sweep"
        assert cfg.fixed == {"p_zz_m": 0.7}
        assert cfg.L == (6, 8)
        assert [(p.L, p.value) for p in cfg.grid()] == [(6, 0.05), (6, 0.1), (8, 0.05), (8, 0.1)]
        assert [p.index for p in cfg.grid()] == [0, 1, 2, 3]

    def test_overrides_replace_base_keys(self):
        cfg = parse_config(config_text(trials=30, seed=4))
        assert (cfg.trials, cfg.seed) == (30, 4)

    def test_round_trip(self):
        cfg = parse_config(config_text(T_rule="log", T_factor=2.5, label="prueba"))
        assert parse_config(dumps_config(cfg)) == cfg

    @pytest.mark.parametrize("regla,factor,offset,L,T", [
        ("linear", 4, 0, 16, 64),
        ("log", 2, 0, 16, 6),
        ("const", 16, 0, 64, 16),
        ("linear", 1, 2, 8, 10),
    ])
    def test_time_rule(self, regla, factor, offset, L, T):
        cfg = parse_config(config_text(T_rule=regla, T_factor=factor, T_offset=offset))
        assert cfg.T_for(L) == T

    def test_complement(self):
        cfg = parse_config(DECODE_TEXT.replace("fixed.p_zz_m = 0.7", "complement = p_zz_m"))
        modelo = cfg.build_model(8, 8, 0.1)
        assert modelo.p_zz_m == pytest.approx(0.9)
        assert modelo.p_err == pytest.approx(0.1)

    @pytest.mark.parametrize("texto", [
        config_text(colour="blue"),
        DECODE_TEXT + "trials = 3\n",
        DECODE_TEXT + "trials\n",
        DECODE_TEXT.replace("values = 0.05, 0.1", "values = 0.05,,0.1"),
        DECODE_TEXT.replace("values = 0.05, 0.1", "values ="),
        DECODE_TEXT.replace("trials = 7", "trials = 0"),
        DECODE_TEXT.replace("sweep = p_err", "sweep = p"),
        DECODE_TEXT.replace("fixed.p_zz_m = 0.7", "fixed.p_zz_m = mucho"),
        DECODE_TEXT.replace("decoders = path_sum, located, mwpm", "decoders = membrane"),
        DECODE_TEXT.replace("engine = classical", "engine = percolation"),
        DECODE_TEXT.replace("L = 6, 8", "L = 2"),
    ])
    def test_rejected(self, texto):
        with pytest.raises(ConfigError):
            parse_config(texto)

    def test_run_engine_compatibility(self):
        base = ("command = run\nmodel = baseline\nsweep = p\nvalues = 0.5\nfixed.q = 0.5\nL = 16\n"
                "engine = percolation\n")
        assert parse_config(base + "observables = chi_sg, chi_pm\n").engine == "percolation"
        with pytest.raises(ConfigError):
            parse_config(base + "observables = mi_antipodal\n")
        with pytest.raises(ConfigError):
            parse_config(base.replace("engine = percolation", "engine = stabilizer")
                         + "observables = interval_mi\nintervals = 4, 16\n")


class TestExecute:

    def test_single_trial_single_point(self, tmp_path):
        cfg = parse_config(
            "command = decode-sweep\nmodel = repetition\nsweep = p_err\nvalues = 0.0\nfixed.p_zz_m = 0.6\n"
            f"L = 8\ndecoders = located\nengine = classical\ntrials = 1\nout = {tmp_path / 'uno.csv'}\n")
        resultado = execute(cfg, progress=False)
        tabla = resultado.table
        assert len(tabla) == 1
        assert tabla.loc[0, "mean"] == 1.0
        assert np.isnan(tabla.loc[0, "stderr"])
        assert tabla.loc[0, "n"] == 1
        lineas = resultado.csv_path.read_text().splitlines()
        assert lineas[0] == ",".join(CSV_COLUMNS)
        assert lineas[1].split(",")[6] == ""

    def test_manifest(self, tmp_path):
        cfg = parse_config(config_text(out=tmp_path / "barrido.csv"))
        resultado = execute(cfg, progress=False)
        datos = json.loads(resultado.manifest_path.read_text(encoding="utf-8"))
        assert datos["schema_version"] == 1
        assert datos["seed"] == 11
        assert parse_config(datos["config_text"]) == cfg
        assert datos["rows"] == 4 * 3
        assert not list(tmp_path.glob("*.tmp"))

    def test_identical_for_any_worker_count(self, tmp_path):
        uno = execute(parse_config(config_text(out=tmp_path / "w1.csv", workers=1)), progress=False)
        tres = execute(parse_config(config_text(out=tmp_path / "w3.csv", workers=3)), progress=False)
        assert uno.csv_path.read_bytes() == tres.csv_path.read_bytes()

    def test_seed_changes_rows(self):
        a = execute(parse_config(config_text(trials=30, seed=1)), write=False, progress=False).table
        b = execute(parse_config(config_text(trials=30, seed=2)), write=False, progress=False).table
        assert not a["mean"].equals(b["mean"])

    @pytest.mark.parametrize("engine", ["percolation", "stabilizer"])
    def test_fully_measured_chain(self, engine):
        cfg = parse_config("command = run\nmodel = baseline\nsweep = p\nvalues = 1.0\nfixed.q = 0.5\nL = 16\n"
                           f"observables = chi_sg, chi_pm\nengine = {engine}\ntrials = 3\n")
        tabla = execute(cfg, write=False, progress=False).table.set_index("observable")
        assert tabla.loc["chi_sg", "mean"] == pytest.approx(0.25)
        assert tabla.loc["chi_pm", "mean"] == 0.0
        assert tabla.loc["chi_sg", "stderr"] == 0.0

    def test_percolation_flags(self):
        cfg = parse_config("command = percolation\nmodel = baseline\nsweep = p\nvalues = 1.0\nfixed.q = 0.5\n"
                           "L = 8\nengine = percolation\ntrials = 4\n")
        tabla = execute(cfg, write=False, progress=False).table.set_index("observable")
        assert tabla.loc["sg_spans_time", "mean"] == 1.0
        assert tabla.loc["pm_spans_space", "mean"] == 0.0
        assert tabla.loc["largest_sg_fraction", "mean"] == 1.0

    def test_unwritable_output(self, tmp_path):
        bloqueo = tmp_path / "fichero"
        bloqueo.write_text("x")
        with pytest.raises(OutputPathError):
            execute(parse_config(config_text(out=bloqueo / "sub" / "x.csv")), progress=False)

    def test_failed_block_writes_nothing(self, tmp_path, monkeypatch):
        def falla(*args, **kwargs):
            raise RuntimeError("fallo simulado")
        monkeypatch.setattr(executor_mod, "run_block", falla)
        ruta = tmp_path / "nada.csv"
        with pytest.raises(TrialFailureError):
            execute(parse_config(config_text(out=ruta)), progress=False)
        assert not ruta.exists()


class TestRecipes:

    @pytest.mark.parametrize("fig", sorted(RECIPES))
    @pytest.mark.parametrize("full", [False, True])
    def test_recipes_validate(self, fig, full, tmp_path):
        cfg = recipe(fig, full=full, out_dir=tmp_path, seed=5)
        assert cfg.label == fig
        assert cfg.seed == 5
        assert cfg.out.endswith(f"{fig}.csv")

    def test_fig6a_parameters(self):
        cfg = recipe("fig6a", full=True)
        assert cfg.fixed == {"p_zz_m": 0.6}
        assert cfg.T_rule == "linear"
        assert cfg.T_for(64) == 64

    def test_unknown_recipe(self):
        with pytest.raises(ConfigError):
            recipe("fig99")


class TestVerify:

    def test_all_suites_pass(self):
        resultados = run_suites(casos=3, seed=2)
        assert len(resultados) == 6
        assert all(r.ok for r in resultados), [(r.name, r.passed) for r in resultados if not r.ok]

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suites(names=["nada"])


class TestCli:

    def test_decode_sweep(self, tmp_path):
        ruta_cfg = tmp_path / "barrido.cfg"
        ruta_cfg.write_text(DECODE_TEXT, encoding="utf-8")
        salida = tmp_path / "salida.csv"
        assert main(["decode-sweep", "--config", str(ruta_cfg), "--out", str(salida), "--seed", "3",
                     "--no-progress"]) == 0
        tabla = pd.read_csv(salida)
        assert list(tabla.columns) == CSV_COLUMNS
        assert json.loads(salida.with_suffix(".json").read_text())["seed"] == 3

    def test_command_mismatch(self, tmp_path):
        ruta_cfg = tmp_path / "barrido.cfg"
        ruta_cfg.write_text(DECODE_TEXT, encoding="utf-8")
        assert main(["run", "--config", str(ruta_cfg), "--no-progress"]) == 2

    def test_missing_config(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "no_existe.cfg")]) == 2

    def test_verify(self):
        assert main(["verify", "--cases", "2", "--suite", "clusters_vs_bfs"]) == 0

    def test_collapse(self, tmp_path, capsys):
        p = np.round(np.linspace(0.1, 0.3, 21), 10)
        filas = [{"model": "rep", "observable": "mwpm", "p": v, "L": L, "T": L,
                  "mean": 0.5 + 0.5 * np.tanh((0.2 - v) * L), "stderr": 0.01, "n": 1000}
                 for L in (8, 16, 32) for v in p]
        ruta = tmp_path / "curva.csv"
        pd.DataFrame(filas).to_csv(ruta, index=False)
        assert main(["collapse", "--csv", str(ruta), "--threshold", "--bootstrap", "10"]) == 0
        informe = json.loads(capsys.readouterr().out)
        assert informe["threshold"]["p_cross"] == pytest.approx(0.2, abs=0.005)
        assert informe["collapse"]["p_c"] == pytest.approx(0.2, abs=0.02)
