#!/usr/bin/env python3
"""
circuit_models/config.py
Configuración inmutable de los modelos de circuito (validada con pydantic)
"""

from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

ModelKind = Literal["Baseline1D", "Perturbed1D", "Ladder", "Repetition2D", "Toric2D"]

_TOL = 1e-12
Rate = Field(default=0.0, ge=0.0, le=1.0)


class ModelConfig(BaseModel):
    """
    Parámetros de un circuito monitorizado.

    Todas las tasas son absolutas: en cada ranura se sortea primero el
    unitario (p_u) y después, por tramos acumulados, la medida y el desfase.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: ModelKind = "Baseline1D"
    L: int = Field(ge=3)
    L_y: Optional[int] = Field(default=None, ge=3)
    T: int = Field(ge=1)

    p_zz_m: float = Rate
    p_x_m: float = Rate
    p_x_e: float = Rate
    p_zz_e: float = Rate
    p_u: float = Rate
    p_bath_m: float = Rate
    p_x_i: float = Rate
    p_plaq_m: float = Rate
    p_star_m: float = Rate

    # Parámetros de la parametrización (informativos, ya volcados en las tasas)
    q: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    q_zz: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    faulty: bool = False
    p_faulty: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    boundary: Literal["periodic"] = "periodic"
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _validar_familias(self) -> "ModelConfig":
        if self.p_u + self.p_zz_m + self.p_zz_e > 1 + _TOL:
            raise ValueError("p_u + p_zz_m + p_zz_e supera 1 en las ranuras de enlace")
        if self.p_u + self.p_x_m + self.p_x_e + self.p_x_i > 1 + _TOL:
            raise ValueError("p_u + p_x_m + p_x_e + p_x_i supera 1 en las ranuras de sitio")
        if self.kind == "Ladder" and self.L % 2:
            raise ValueError("la escalera necesita L par (capa de ladrillos del baño)")
        if self.kind != "Ladder" and (self.p_x_i > 0 or self.p_bath_m > 0):
            raise ValueError("p_x_i y p_bath_m solo tienen sentido en la escalera")
        if self.kind == "Toric2D" and (self.p_zz_m > 0 or self.p_zz_e > 0):
            raise ValueError("el código tórico usa p_plaq_m/p_star_m, no tasas de enlace ZZ")
        if self.kind != "Toric2D" and (self.p_plaq_m > 0 or self.p_star_m > 0):
            raise ValueError("p_plaq_m y p_star_m solo se usan en el código tórico")
        if self.kind != "Perturbed1D" and self.p_u > 0:
            raise ValueError(f"{self.kind} no admite unitarios (p_u > 0)")
        return self

    # ------------------------------------------------------------------
    # Derivados
    # ------------------------------------------------------------------
    @property
    def is_2d(self) -> bool:
        return self.kind in ("Repetition2D", "Toric2D")

    @property
    def Ly(self) -> int:
        return self.L_y if self.L_y is not None else self.L

    @property
    def dims(self) -> Tuple[int, ...]:
        if self.kind == "Repetition2D":
            return (self.L, self.Ly)
        if self.kind == "Toric2D":
            return (self.L, self.L)
        return (self.L,)

    @property
    def n_system(self) -> int:
        """Qubits del sistema (aristas en el código tórico)."""
        if self.kind == "Repetition2D":
            return self.L * self.Ly
        if self.kind == "Toric2D":
            return 2 * self.L * self.L
        return self.L

    @property
    def n_qubits(self) -> int:
        return 2 * self.L if self.kind == "Ladder" else self.n_system

    @property
    def p_err(self) -> float:
        return self.p_x_m + self.p_x_e

    @property
    def readout_error(self) -> float:
        """Probabilidad de lectura errónea si `faulty`; por defecto p_err."""
        if not self.faulty:
            return 0.0
        return self.p_faulty if self.p_faulty is not None else self.p_err

    # ------------------------------------------------------------------
    # Parametrizaciones
    # ------------------------------------------------------------------
    @classmethod
    def baseline(cls, L: int, T: int, p: float, q: float = 0.5, q_zz: float = 0.0, **kw) -> "ModelConfig":
        """Cadena base: p_ZZ^M + p_X^M + p_X^E = 1 (con extensión de desfase ZZ)."""
        return cls(kind="Baseline1D", L=L, T=T,
                   p_zz_m=(1 - q_zz) * p, p_zz_e=q_zz * p,
                   p_x_m=(1 - q) * (1 - p), p_x_e=q * (1 - p),
                   q=q, q_zz=q_zz, **kw)

    @classmethod
    def perturbed(cls, L: int, T: int, p: float, q: float = 0.5, p_u: float = 0.1, **kw) -> "ModelConfig":
        return cls(kind="Perturbed1D", L=L, T=T, p_u=p_u,
                   p_zz_m=(1 - p_u) * p,
                   p_x_m=(1 - p_u) * (1 - q) * (1 - p),
                   p_x_e=(1 - p_u) * q * (1 - p),
                   q=q, **kw)

    @classmethod
    def ladder(cls, L: int, T: int, p: float, q: float = 0.5, p_bath_m: float = 0.0, **kw) -> "ModelConfig":
        return cls(kind="Ladder", L=L, T=T, p_zz_m=p,
                   p_x_m=(1 - q) * (1 - p), p_x_i=q * (1 - p),
                   p_bath_m=p_bath_m, q=q, **kw)

    @classmethod
    def repetition(cls, L: int, T: int, p_zz_m: float, p_err: float, d: int = 1,
                   faulty: bool = False, q: float = 1.0, L_y: Optional[int] = None,
                   **kw) -> "ModelConfig":
        """Código de repetición con tasas independientes; q es la fracción de desfase."""
        if d not in (1, 2):
            raise ValueError(f"dimensión no soportada: {d}")
        return cls(kind="Baseline1D" if d == 1 else "Repetition2D", L=L, L_y=L_y if d == 2 else None,
                   T=T, p_zz_m=p_zz_m, p_x_e=q * p_err, p_x_m=(1 - q) * p_err,
                   q=q, faulty=faulty, **kw)

    @classmethod
    def toric(cls, L: int, T: int, p_plaq_m: float, p_err: float, p_star_m: float = 0.0,
              faulty: bool = False, **kw) -> "ModelConfig":
        return cls(kind="Toric2D", L=L, T=T, p_plaq_m=p_plaq_m, p_star_m=p_star_m,
                   p_x_e=p_err, faulty=faulty, **kw)
