#!/usr/bin/env python3
"""
cli_runner/experiment.py
Configuración de experimentos: barridos, regla de T y gramática plana clave = valor

La gramática está documentada en docs/gramatica_config.md. Resumen:

    # comentario
    command   = decode-sweep
    model     = repetition
    sweep     = p_err
    values    = 0.0, 0.02, 0.05
    fixed.p_zz_m = 0.6
    L         = 16, 32, 64
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from circuit_models import ModelConfig

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Fichero o valores de configuración inválidos."""


class OutputPathError(OSError):
    """La ruta de salida no es escribible."""


# Parámetros que acepta cada parametrización (barribles o fijos)
MODEL_PARAMETERS: Dict[str, Tuple[str, ...]] = {
    "baseline": ("p", "q", "q_zz"),
    "perturbed": ("p", "q", "p_u"),
    "ladder": ("p", "q", "p_bath_m"),
    "repetition": ("p_zz_m", "p_err", "q", "p_faulty"),
    "toric": ("p_plaq_m", "p_err", "p_star_m", "p_faulty"),
}

OBSERVABLES = ("chi_sg", "chi_pm", "mi_antipodal", "half_cut_mi", "half_cut_mi_bath", "interval_mi")
LATTICE_OBSERVABLES = ("chi_sg", "chi_pm")
PERCOLATION_FLAGS = ("sg_spans_time", "quasi_ghz_spans_time", "pm_spans_space", "largest_sg_fraction")
DECODERS = ("located", "path_sum", "mwpm", "membrane")

LIST_FIELDS = ("values", "L", "observables", "decoders", "intervals")


@dataclass(frozen=True)
class GridPoint:
    index: int
    L: int
    T: int
    value: float


class ExperimentConfig(BaseModel):
    """Barrido completo de un experimento; valida contra los modelos al construirse."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Literal["run", "decode-sweep", "percolation"] = "run"
    model: Literal["baseline", "perturbed", "ladder", "repetition", "toric"]
    d: int = Field(default=1, ge=1, le=2)
    label: Optional[str] = None

    sweep: str
    values: Tuple[float, ...] = Field(min_length=1)
    fixed: Dict[str, float] = Field(default_factory=dict)
    complement: Optional[str] = None

    L: Tuple[int, ...] = Field(min_length=1)
    T_rule: Literal["const", "log", "linear"] = "linear"
    T_factor: float = Field(default=1.0, gt=0.0)
    T_offset: int = 0

    observables: Tuple[str, ...] = ()
    intervals: Tuple[int, ...] = ()
    decoders: Tuple[str, ...] = ()
    engine: Literal["stabilizer", "percolation", "classical"] = "stabilizer"
    faulty: bool = False

    trials: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0)
    workers: int = Field(default=1, ge=1)
    out: str = "resultados.csv"

    @field_validator("observables", "decoders")
    @classmethod
    def _sin_repetidos(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if len(set(v)) != len(v):
            raise ValueError(f"nombres repetidos: {v}")
        return v

    @model_validator(mode="after")
    def _validar(self) -> "ExperimentConfig":
        parametros = MODEL_PARAMETERS[self.model]
        for nombre in [self.sweep, *self.fixed, *([self.complement] if self.complement else [])]:
            if nombre not in parametros:
                raise ValueError(f"el modelo {self.model} no tiene el parámetro '{nombre}' (admite {parametros})")
        if self.sweep in self.fixed or (self.complement and self.complement in self.fixed):
            raise ValueError("un parámetro barrido no puede estar también en fixed")
        if self.complement == self.sweep:
            raise ValueError("complement debe nombrar un parámetro distinto del barrido")
        if self.d == 2 and self.model != "repetition":
            raise ValueError("d = 2 solo se aplica al modelo repetition")
        if self.faulty and self.model not in ("repetition", "toric"):
            raise ValueError("faulty solo se aplica a los modelos con código")

        if self.command == "run":
            self._validar_run()
        elif self.command == "decode-sweep":
            self._validar_decode()
        else:
            self._validar_percolation()

        for punto in self.grid():
            try:
                self.build_model(punto.L, punto.T, punto.value)
            except (ValidationError, ValueError, TypeError) as e:
                raise ValueError(f"punto L={punto.L}, valor={punto.value} inválido: {e}") from e
        return self

    def _validar_run(self) -> None:
        if not self.observables:
            raise ValueError("run necesita al menos un observable")
        desconocidos = set(self.observables) - set(OBSERVABLES)
        if desconocidos:
            raise ValueError(f"observables desconocidos: {sorted(desconocidos)}")
        if self.model in ("toric",) or self.d != 1:
            raise ValueError("run solo admite cadenas 1d")
        if self.engine == "classical":
            raise ValueError("el motor clásico solo sirve para decode-sweep")
        if self.engine == "percolation" and set(self.observables) - set(LATTICE_OBSERVABLES):
            raise ValueError(f"el motor de percolación solo estima {LATTICE_OBSERVABLES}")
        if "half_cut_mi_bath" in self.observables and self.model != "ladder":
            raise ValueError("half_cut_mi_bath necesita el modelo ladder")
        if "interval_mi" in self.observables and not self.intervals:
            raise ValueError("interval_mi necesita la lista intervals")
        if self.intervals and (min(self.intervals) < 1 or max(self.intervals) >= min(self.L)):
            raise ValueError(f"los intervalos deben estar en [1, {min(self.L)})")
        if self.decoders:
            raise ValueError("run no usa decodificadores")

    def _validar_decode(self) -> None:
        if not self.decoders:
            raise ValueError("decode-sweep necesita al menos un decodificador")
        desconocidos = set(self.decoders) - set(DECODERS)
        if desconocidos:
            raise ValueError(f"decodificadores desconocidos: {sorted(desconocidos)}")
        if self.model not in ("repetition", "toric"):
            raise ValueError("decode-sweep necesita un modelo con código (repetition o toric)")
        if self.engine == "percolation":
            raise ValueError("decode-sweep usa el motor classical o stabilizer")
        if self.model == "toric" and set(self.decoders) - {"mwpm", "membrane"}:
            raise ValueError("el código tórico solo admite los decodificadores mwpm y membrane")
        if self.model == "repetition" and "membrane" in self.decoders:
            raise ValueError("membrane solo se aplica al código tórico")
        if self.model == "repetition" and self.d == 2 and "mwpm" in self.decoders:
            raise ValueError("mwpm solo admite el código de repetición 1d")
        if self.observables:
            raise ValueError("decode-sweep no usa observables")

    def _validar_percolation(self) -> None:
        desconocidos = set(self.observables) - set(PERCOLATION_FLAGS)
        if desconocidos:
            raise ValueError(f"banderas de percolación desconocidas: {sorted(desconocidos)}")
        if self.model == "toric":
            raise ValueError("el código tórico no tiene traducción a percolación")
        if self.engine == "classical":
            raise ValueError("percolation usa el motor percolation o stabilizer")
        if self.d == 2 and "pm_spans_space" in self.flags:
            raise ValueError("el filtro PM solo está definido en 1d")
        if self.decoders:
            raise ValueError("percolation no usa decodificadores")

    # ------------------------------------------------------------------
    # Rejilla
    # ------------------------------------------------------------------
    @property
    def flags(self) -> Tuple[str, ...]:
        """Banderas del subcomando percolation (todas si no se eligen)."""
        if self.observables:
            return self.observables
        return tuple(f for f in PERCOLATION_FLAGS if not (self.d == 2 and f == "pm_spans_space"))

    @property
    def model_label(self) -> str:
        if self.label:
            return self.label
        if self.model == "repetition":
            return f"repetition{self.d}d" + ("_faulty" if self.faulty else "")
        if self.model == "toric":
            return "toric2d" + ("_faulty" if self.faulty else "")
        return self.model

    def T_for(self, L: int) -> int:
        """T(L) según la regla: const → factor, log → factor·ln L, linear → factor·L; más el offset."""
        if self.T_rule == "const":
            base = self.T_factor
        elif self.T_rule == "log":
            base = self.T_factor * math.log(L)
        else:
            base = self.T_factor * L
        return max(1, int(round(base)) + self.T_offset)

    def grid(self) -> List[GridPoint]:
        puntos = []
        for L in self.L:
            T = self.T_for(L)
            for v in self.values:
                puntos.append(GridPoint(index=len(puntos), L=int(L), T=T, value=float(v)))
        return puntos

    def build_model(self, L: int, T: int, value: float) -> ModelConfig:
        params = dict(self.fixed)
        params[self.sweep] = value
        if self.complement:
            params[self.complement] = 1.0 - value
        if self.model == "repetition":
            return ModelConfig.repetition(L=L, T=T, d=self.d, faulty=self.faulty, **params)
        if self.model == "toric":
            return ModelConfig.toric(L=L, T=T, faulty=self.faulty, **params)
        return getattr(ModelConfig, self.model)(L=L, T=T, **params)

    def with_overrides(self, **cambios) -> "ExperimentConfig":
        """Copia validada con los campos dados (los None se ignoran)."""
        datos = self.model_dump()
        datos.update({k: v for k, v in cambios.items() if v is not None})
        return validate_config(datos)


# ═══════════════════════════════════════════════════════════════════
# Gramática plana
# ═══════════════════════════════════════════════════════════════════

def validate_config(datos: dict) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(datos)
    except ValidationError as e:
        raise ConfigError(f"configuración inválida:\n{e}") from e


def parse_config(texto: str) -> ExperimentConfig:
    """Lee la gramática clave = valor; claves desconocidas o repetidas son error."""
    datos: Dict[str, Union[str, List[str], Dict[str, float]]] = {}
    fijos: Dict[str, float] = {}
    for numero, linea in enumerate(texto.splitlines(), start=1):
        linea = linea.split("#", 1)[0].strip()
        if not linea:
            continue
        if "=" not in linea:
            raise ConfigError(f"línea {numero}: se esperaba 'clave = valor'")
        clave, valor = (s.strip() for s in linea.split("=", 1))
        if not clave or not valor:
            raise ConfigError(f"línea {numero}: clave o valor vacío")
        if clave.startswith("fixed."):
            nombre = clave[len("fixed."):]
            if nombre in fijos:
                raise ConfigError(f"línea {numero}: clave repetida '{clave}'")
            try:
                fijos[nombre] = float(valor)
            except ValueError:
                raise ConfigError(f"línea {numero}: '{valor}' no es un número") from None
            continue
        if clave in datos:
            raise ConfigError(f"línea {numero}: clave repetida '{clave}'")
        if clave in LIST_FIELDS:
            elementos = [e.strip() for e in valor.split(",")]
            if any(not e for e in elementos):
                raise ConfigError(f"línea {numero}: elemento vacío en la lista '{clave}'")
            datos[clave] = elementos
        else:
            datos[clave] = valor
    if fijos:
        datos["fixed"] = fijos
    return validate_config(datos)


def _formato(valor) -> str:
    if isinstance(valor, bool):
        return "true" if valor else "false"
    if isinstance(valor, float):
        return repr(valor)
    if isinstance(valor, (tuple, list)):
        return ", ".join(_formato(v) for v in valor)
    return str(valor)


def dumps_config(config: ExperimentConfig) -> str:
    """Serializa en la misma gramática; parse_config(dumps_config(c)) == c."""
    lineas = []
    for nombre, valor in config.model_dump().items():
        if valor is None or (nombre in LIST_FIELDS and len(valor) == 0):
            continue
        if nombre == "fixed":
            lineas.extend(f"fixed.{k} = {_formato(float(v))}" for k, v in sorted(valor.items()))
            continue
        lineas.append(f"{nombre} = {_formato(valor)}")
    return "\n".join(lineas) + "\n"


def load_config(ruta: Union[str, Path]) -> ExperimentConfig:
    try:
        texto = Path(ruta).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"no se puede leer la configuración {ruta}: {e}") from e
    config = parse_config(texto)
    logger.info(f"📦 Configuración cargada: {ruta} ({config.command}, {len(config.grid())} puntos)")
    return config
