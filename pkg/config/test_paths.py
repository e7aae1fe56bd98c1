#!/usr/bin/env python3
"""
config/test_paths.py
Pruebas de la resolución de rutas por variables de entorno
"""

import importlib

import pytest

import config.paths as paths


@pytest.fixture
def rutas(tmp_path, monkeypatch):
    monkeypatch.setenv("Z2LAB_DATA_ROOT", str(tmp_path / "datos"))
    for variable in ("Z2LAB_OUTPUTS_DIR", "Z2LAB_FIXTURES_DIR"):
        monkeypatch.delenv(variable, raising=False)
    yield importlib.reload(paths)
    monkeypatch.undo()
    importlib.reload(paths)


def test_directories_under_data_root(rutas, tmp_path):
    raiz = (tmp_path / "datos").resolve()
    assert rutas.DATA_ROOT == raiz
    assert rutas.OUTPUTS_DIR == raiz / "outputs"
    assert rutas.FIXTURES_DIR == raiz / "fixtures"
    assert sorted(p.name for p in raiz.iterdir()) == ["fixtures", "outputs"]


def test_env_override(rutas, tmp_path, monkeypatch):
    monkeypatch.setenv("Z2LAB_OUTPUTS_DIR", str(tmp_path / "otra"))
    recargado = importlib.reload(paths)
    assert recargado.OUTPUTS_DIR == (tmp_path / "otra").resolve()
    assert recargado.OUTPUTS_DIR.is_dir()
