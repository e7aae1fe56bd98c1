#!/usr/bin/env python3
"""
cli_runner/recipes.py
Recetas de reproducción por figura: barridos canónicos a escala completa o de humo
"""

import logging
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np

from .experiment import ConfigError, ExperimentConfig, validate_config

logger = logging.getLogger(__name__)


def _rejilla(inicio: float, fin: float, paso: float) -> list:
    return [float(v) for v in np.round(np.arange(inicio, fin + paso / 2, paso), 6)]


_PATH_SUM_1D = dict(command="decode-sweep", model="repetition", sweep="p_err",
                    values=[0.0, 0.02, 0.05, 0.1], fixed={"p_zz_m": 0.6},
                    decoders=["path_sum", "located"], engine="classical", trials=10_000)

# Escala completa; `smoke` reduce tamaños y ensayos para una comprobación rápida
RECIPES: Dict[str, dict] = {
    "fig2": dict(command="run", model="baseline", sweep="p", values=_rejilla(0.2, 0.7, 0.025),
                 fixed={"q": 0.5}, observables=["chi_sg", "chi_pm"], engine="percolation",
                 L=[64, 128, 256], T_rule="linear", T_factor=4, trials=2000),
    "fig5": dict(command="percolation", model="baseline", sweep="p", values=_rejilla(0.2, 0.7, 0.05),
                 fixed={"q": 0.5}, engine="percolation", L=[32, 64, 128], T_factor=4, trials=2000),
    "fig6a": dict(_PATH_SUM_1D, L=[16, 32, 64, 128, 256, 512], T_rule="linear"),
    "fig6b": dict(_PATH_SUM_1D, L=[16, 32, 64, 128, 256, 512], T_rule="log", T_factor=2),
    "fig6c": dict(_PATH_SUM_1D, L=[16, 32, 64, 128, 256, 512], T_rule="const", T_factor=16),
    "fig7": dict(command="decode-sweep", model="repetition", d=2, sweep="p_err",
                 values=_rejilla(0.15, 0.26, 0.01), fixed={"p_zz_m": 0.6}, decoders=["path_sum"],
                 engine="classical", L=[8, 12, 16, 24, 32], trials=4000),
    "fig7f": dict(command="decode-sweep", model="repetition", d=2, faulty=True, sweep="p_err",
                  values=_rejilla(0.10, 0.22, 0.01), fixed={"p_zz_m": 0.6}, decoders=["path_sum"],
                  engine="classical", L=[8, 12, 16, 24, 32], trials=4000),
    "fig8": dict(command="run", model="perturbed", sweep="p", values=_rejilla(0.2, 0.7, 0.05),
                 fixed={"q": 0.5, "p_u": 0.1}, observables=["chi_sg", "chi_pm"],
                 L=[16, 32, 64], T_factor=2, trials=500),
    "fig9": dict(command="run", model="ladder", sweep="p", values=_rejilla(0.2, 0.7, 0.05),
                 fixed={"q": 0.5, "p_bath_m": 0.5}, observables=["chi_sg", "chi_pm"],
                 L=[16, 32, 64], T_factor=2, trials=500),
    "fig10a": dict(command="decode-sweep", model="repetition", sweep="p_err", values=_rejilla(0.0, 0.3, 0.05),
                   fixed={"p_zz_m": 0.6}, decoders=["path_sum"], engine="classical",
                   L=[16, 32, 64, 128], trials=2000),
    "fig10b": dict(command="decode-sweep", model="repetition", sweep="p_err", values=_rejilla(0.0, 0.3, 0.05),
                   fixed={"p_zz_m": 0.6}, decoders=["path_sum"], engine="stabilizer",
                   L=[16, 32, 64, 128], trials=2000),
    "fig11b": dict(command="decode-sweep", model="repetition", faulty=True, sweep="p_err",
                   values=_rejilla(0.04, 0.16, 0.01), fixed={"p_zz_m": 1.0}, decoders=["mwpm"],
                   engine="classical", L=[8, 16, 32, 64], trials=4000),
    "fig11c": dict(command="decode-sweep", model="repetition", sweep="p_err", complement="p_zz_m",
                   values=_rejilla(0.05, 0.2, 0.01), decoders=["mwpm"], engine="classical",
                   L=[8, 16, 32, 64], trials=4000),
    "fig11d": dict(command="decode-sweep", model="toric", sweep="p_err", complement="p_plaq_m",
                   values=_rejilla(0.01, 0.1, 0.01), decoders=["mwpm", "membrane"], engine="classical",
                   L=[6, 8, 12, 16, 24], trials=2000),
    "fig12": dict(command="run", model="baseline", sweep="p", values=[0.5], fixed={"q": 0.0},
                  observables=["interval_mi"], intervals=[1, 2, 4, 8, 16, 32, 64],
                  L=[128, 256, 512], T_factor=4, trials=200),
    "fig13": dict(command="run", model="ladder", sweep="p", values=_rejilla(0.2, 0.7, 0.05),
                  fixed={"q": 0.5}, observables=["half_cut_mi", "half_cut_mi_bath"],
                  L=[16, 32, 64], T_factor=2, trials=500),
}

SMOKE: Dict[str, dict] = {
    "fig2": dict(L=[16, 32], trials=50),
    "fig5": dict(L=[16, 32], trials=50),
    "fig6a": dict(L=[16, 32], trials=100),
    "fig6b": dict(L=[16, 32], trials=100),
    "fig6c": dict(L=[16, 32], trials=100),
    "fig7": dict(L=[4, 6], trials=50),
    "fig7f": dict(L=[4, 6], trials=50),
    "fig8": dict(L=[8, 16], trials=20),
    "fig9": dict(L=[8, 16], trials=20),
    "fig10a": dict(L=[8, 16], trials=50),
    "fig10b": dict(L=[8, 16], trials=50),
    "fig11b": dict(L=[8, 16], trials=50),
    "fig11c": dict(L=[8, 16], trials=50),
    "fig11d": dict(L=[4, 6], trials=20),
    "fig12": dict(L=[32, 64], intervals=[1, 2, 4, 8, 16], trials=10),
    "fig13": dict(L=[8, 16], trials=20),
}


def recipe(fig_id: str, full: bool = False, out_dir: Union[str, Path] = ".", seed: Optional[int] = None,
           workers: Optional[int] = None) -> ExperimentConfig:
    """Configuración validada de la receta `fig_id` (escala de humo salvo `full`)."""
    if fig_id not in RECIPES:
        raise ConfigError(f"receta desconocida: {fig_id} (disponibles: {', '.join(RECIPES)})")
    datos = dict(RECIPES[fig_id])
    if not full:
        datos.update(SMOKE[fig_id])
    datos["label"] = fig_id
    datos["out"] = str(Path(out_dir) / f"{fig_id}.csv")
    if seed is not None:
        datos["seed"] = seed
    if workers is not None:
        datos["workers"] = workers
    return validate_config(datos)
