#!/usr/bin/env python3
"""
scaling_analysis/curves.py
Curvas de conjunto (p, L) → media ± error, leídas del CSV de resultados
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

COLUMNAS = ["p", "L", "mean", "stderr", "n"]


class DegenerateGridError(ValueError):
    """La rejilla no permite el ajuste (menos de dos tamaños, puntos insuficientes...)."""


@dataclass
class EnsembleCurve:
    """
    Familia de curvas, una por tamaño L, sobre una rejilla de parámetro p.

    `data` es un DataFrame con las columnas p, L, mean, stderr, n ordenado por
    (L, p). Con n = 1 el error estándar es NaN.
    """

    data: pd.DataFrame
    model: str = ""
    observable: str = ""
    t_rule: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        faltan = [c for c in COLUMNAS if c not in self.data.columns]
        if faltan:
            raise ValueError(f"faltan columnas en la curva: {faltan}")
        df = self.data[COLUMNAS].astype({"p": float, "L": int, "mean": float, "stderr": float, "n": int})
        self.data = df.sort_values(["L", "p"]).reset_index(drop=True)
        if (self.data["n"] < 1).any():
            raise ValueError("cada punto necesita al menos un ensayo")
        con_error = self.data[self.data["n"] > 1]["stderr"]
        if (con_error < 0).any() or con_error.isna().any():
            raise ValueError("errores estándar negativos o ausentes con n > 1")
        if self.data.duplicated(["L", "p"]).any():
            raise ValueError("puntos (p, L) repetidos")

    # ------------------------------------------------------------------
    # Construcción
    # ------------------------------------------------------------------
    @classmethod
    def from_arrays(cls, p, L, mean, stderr, n, **meta) -> "EnsembleCurve":
        df = pd.DataFrame({"p": p, "L": L, "mean": mean, "stderr": stderr, "n": n})
        return cls(df, **meta)

    @classmethod
    def from_csv(cls, path: Union[str, Path], model: Optional[str] = None,
                 observable: Optional[str] = None) -> "EnsembleCurve":
        """
        Lee el CSV de cli_runner. Si hay varios modelos u observables hay que
        elegir uno; si hay varios T por tamaño se toma el único T de cada L.
        """
        df = pd.read_csv(path)
        for columna, valor in (("model", model), ("observable", observable)):
            if valor is not None:
                df = df[df[columna] == valor]
            elif columna in df.columns and df[columna].nunique() > 1:
                raise ValueError(f"el CSV mezcla varios valores de '{columna}': indique uno")
        if df.empty:
            raise ValueError(f"sin filas para model={model} observable={observable} en {path}")
        if "T" in df.columns and (df.groupby("L")["T"].nunique() > 1).any():
            raise ValueError("varios T para un mismo L: filtre antes de construir la curva")
        modelo = model or (str(df["model"].iloc[0]) if "model" in df.columns else "")
        observable = observable or (str(df["observable"].iloc[0]) if "observable" in df.columns else "")
        logger.info(f"📦 Curva {modelo}/{observable}: {len(df)} puntos de {path}")
        return cls(df, model=modelo, observable=observable)

    # ------------------------------------------------------------------
    # Consultas
    # ------------------------------------------------------------------
    @property
    def sizes(self) -> List[int]:
        return sorted(int(L) for L in self.data["L"].unique())

    def for_size(self, L: int) -> pd.DataFrame:
        return self.data[self.data["L"] == L]

    def arrays(self):
        """(p, L, mean, stderr) como arrays de numpy."""
        d = self.data
        return d["p"].to_numpy(), d["L"].to_numpy(), d["mean"].to_numpy(), d["stderr"].to_numpy()

    def error_floor(self) -> np.ndarray:
        """Errores para ponderar: NaN o 0 se sustituyen por 1/(2n) (curvas saturadas en 0 o 1)."""
        err = self.data["stderr"].to_numpy(dtype=float)
        suelo = 0.5 / self.data["n"].to_numpy(dtype=float)
        return np.where(np.isfinite(err) & (err > 0), err, suelo)

    def require_sizes(self, minimum: int = 2) -> None:
        if len(self.sizes) < minimum:
            raise DegenerateGridError(f"se necesitan al menos {minimum} tamaños; hay {self.sizes}")

    # ------------------------------------------------------------------
    # Transformaciones
    # ------------------------------------------------------------------
    def shifted(self, dp: float) -> "EnsembleCurve":
        df = self.data.copy()
        df["p"] = df["p"] + dp
        return EnsembleCurve(df, self.model, self.observable, self.t_rule, dict(self.meta))

    def resample(self, rng: np.random.Generator) -> "EnsembleCurve":
        """Réplica bootstrap paramétrica: cada media se redibuja con su error estándar."""
        df = self.data.copy()
        df["mean"] = df["mean"] + rng.standard_normal(len(df)) * self.error_floor()
        return EnsembleCurve(df, self.model, self.observable, self.t_rule, dict(self.meta))

    def to_csv(self, path: Union[str, Path]) -> None:
        df = self.data.copy()
        df.insert(0, "observable", self.observable)
        df.insert(0, "model", self.model)
        df.to_csv(path, index=False)
