#!/usr/bin/env python3
"""
cli_runner/executor.py
Ejecución de un experimento completo: reparto en bloques, agregación y escritura atómica

Los bloques (punto, ensayos) se reparten en un ProcessPoolExecutor; los
resultados se colocan por índice, así que el CSV no depende del número de
procesos ni del orden de llegada.
"""

import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from observables import ensemble_estimate

from .experiment import ExperimentConfig, GridPoint, OutputPathError, dumps_config
from .tasks import column_names, run_block

logger = logging.getLogger(__name__)

MANIFEST_SCHEMA_VERSION = 1
CSV_COLUMNS = ["model", "observable", "p", "L", "T", "mean", "stderr", "n"]


class TrialFailureError(RuntimeError):
    """Algún bloque de ensayos falló; no se escribe CSV parcial."""


@dataclass
class RunResult:
    table: pd.DataFrame
    csv_path: Optional[Path]
    manifest_path: Optional[Path]
    exitosas: int
    fallidas: int


def _bloques(config: ExperimentConfig) -> List[Tuple[GridPoint, range]]:
    """Bloques de ensayos; más pequeños cuantos más procesos para repartir la carga."""
    tamano = max(1, math.ceil(config.trials / (4 * config.workers)))
    return [(punto, range(inicio, min(inicio + tamano, config.trials)))
            for punto in config.grid()
            for inicio in range(0, config.trials, tamano)]


def prepare_output(ruta: Union[str, Path]) -> Path:
    ruta = Path(ruta)
    try:
        ruta.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputPathError(f"no se puede crear {ruta.parent}: {e}") from e
    if not os.access(ruta.parent, os.W_OK) or (ruta.exists() and not os.access(ruta, os.W_OK)):
        raise OutputPathError(f"sin permiso de escritura en {ruta}")
    return ruta


def _escribir_atomico(ruta: Path, escribir) -> None:
    temporal = ruta.with_name(ruta.name + ".tmp")
    try:
        escribir(temporal)
        os.replace(temporal, ruta)
    except OSError as e:
        temporal.unlink(missing_ok=True)
        raise OutputPathError(f"error escribiendo {ruta}: {e}") from e


def aggregate(config: ExperimentConfig, valores: Dict[int, np.ndarray]) -> pd.DataFrame:
    """Una fila por (punto, columna) con media, error estándar (vacío si n = 1) y n."""
    columnas = column_names(config)
    filas = []
    for punto in config.grid():
        matriz = valores[punto.index]
        for j, nombre in enumerate(columnas):
            estimacion = ensemble_estimate(matriz[:, j])
            filas.append({
                "model": config.model_label, "observable": nombre,
                "p": punto.value, "L": punto.L, "T": punto.T,
                "mean": estimacion.mean,
                "stderr": estimacion.stderr if estimacion.n > 1 else np.nan,
                "n": estimacion.n,
            })
    return pd.DataFrame(filas, columns=CSV_COLUMNS)


def manifest(config: ExperimentConfig, table: pd.DataFrame, exitosas: int) -> dict:
    return {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "generado": datetime.now().isoformat(timespec="seconds"),
        "seed": config.seed,
        "config": config.model_dump(mode="json"),
        "config_text": dumps_config(config),
        "columns": CSV_COLUMNS,
        "rows": int(len(table)),
        "bloques_exitosos": exitosas,
    }


def execute(config: ExperimentConfig, write: bool = True, progress: bool = True) -> RunResult:
    """
    Ejecuta todos los ensayos de la rejilla y escribe CSV y manifiesto JSON.

    El manifiesto se escribe junto al CSV con extensión .json. Con write=False
    solo se devuelve la tabla.
    """
    ruta = prepare_output(config.out) if write else None
    bloques = _bloques(config)
    columnas = column_names(config)
    valores = {p.index: np.empty((config.trials, len(columnas))) for p in config.grid()}
    exitosas, fallidas = 0, 0

    logger.info(f"📦 {config.command} {config.model_label}: {len(config.grid())} puntos × "
                f"{config.trials} ensayos en {len(bloques)} bloques, {config.workers} procesos")

    def guardar(punto: GridPoint, indices: range, bloque: np.ndarray) -> None:
        valores[punto.index][indices.start:indices.stop] = bloque

    barra = tqdm(total=len(bloques), desc=config.model_label, disable=not progress)
    if config.workers == 1:
        for punto, indices in bloques:
            try:
                guardar(punto, indices, run_block(config, punto, indices))
                exitosas += 1
            except Exception as e:
                fallidas += 1
                logger.error(f"❌ Bloque L={punto.L} valor={punto.value} ensayos {indices.start}-{indices.stop}: {e}")
                break
            finally:
                barra.update(1)
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futuros = {pool.submit(run_block, config, punto, indices): (punto, indices) for punto, indices in bloques}
            for futuro in as_completed(futuros):
                punto, indices = futuros[futuro]
                try:
                    guardar(punto, indices, futuro.result())
                    exitosas += 1
                except Exception as e:
                    fallidas += 1
                    logger.error(f"❌ Bloque L={punto.L} valor={punto.value} ensayos "
                                 f"{indices.start}-{indices.stop}: {e}")
                    for pendiente in futuros:
                        pendiente.cancel()
                    break
                finally:
                    barra.update(1)
    barra.close()

    if fallidas:
        raise TrialFailureError(f"{fallidas} bloques fallidos de {len(bloques)}; no se escribe salida")

    tabla = aggregate(config, valores)
    manifiesto_ruta = None
    if write:
        _escribir_atomico(ruta, lambda tmp: tabla.to_csv(tmp, index=False))
        manifiesto_ruta = ruta.with_suffix(".json")
        datos = manifest(config, tabla, exitosas)
        _escribir_atomico(manifiesto_ruta,
                          lambda tmp: tmp.write_text(json.dumps(datos, indent=2, ensure_ascii=False), encoding="utf-8"))
        logger.info(f"✅ {len(tabla)} filas en {ruta} (manifiesto {manifiesto_ruta.name})")
    return RunResult(table=tabla, csv_path=ruta, manifest_path=manifiesto_ruta, exitosas=exitosas, fallidas=fallidas)
