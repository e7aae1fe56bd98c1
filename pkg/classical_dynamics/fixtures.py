#!/usr/bin/env python3
"""
classical_dynamics/fixtures.py
Historiales clásicos en el formato de fixtures de redes de enlaces

Además de las filas de la red se escriben las líneas:
    rates p_zz_m=0.6 p_err=0.05 p_faulty=0.05
    final0 S0 C+ C- ...      (una por capa final perfecta)
    bits 0110...
"""

import logging
from pathlib import Path
from typing import Optional

import numpy as np

from circuit_models import ModelConfig
from decoders.backbone import BackboneGraph, CheckLayer, final_families
from percolation_map import BondSpecies, FixtureFormatError, dumps_lattice, loads_lattice
from percolation_map.fixtures import decode_row, encode_row

from .history import ClassicalHistory, _truth

logger = logging.getLogger(__name__)

_EXTRA = ("rates", "final0", "final1", "bits")


def dumps_history(history: ClassicalHistory) -> str:
    if history.lattice is None:
        raise ValueError("solo los historiales del código de repetición tienen formato de fixture")
    cfg = history.config
    lineas = [f"rates p_zz_m={cfg.p_zz_m!r} p_err={cfg.p_err!r} p_faulty={cfg.readout_error!r}"]
    for k, capa in enumerate(history.backbone.final_layers):
        especies = np.where(capa.measured, BondSpecies.CONNECTED, BondSpecies.BROKEN)
        lineas.append(f"final{k} S{k} " + encode_row(especies, capa.outcomes))
    lineas.append("bits " + "".join(str(int(b)) for b in history.bits))
    return dumps_lattice(history.lattice, extra=lineas)


def loads_history(text: str) -> ClassicalHistory:
    lattice, extras = loads_lattice(text, extra_keys=_EXTRA)
    faltan = [k for k in ("rates", "final0", "bits") if k not in extras]
    if faltan:
        raise FixtureFormatError(f"faltan líneas del historial: {faltan}")
    try:
        tasas = dict(tok.split("=", 1) for tok in extras["rates"])
        p_zz_m, p_err, p_faulty = (float(tasas[k]) for k in ("p_zz_m", "p_err", "p_faulty"))
    except (KeyError, ValueError) as exc:
        raise FixtureFormatError(f"línea 'rates' inválida: {extras['rates']}") from exc
    bits_txt = "".join(extras["bits"])
    if len(bits_txt) != lattice.n_sites or set(bits_txt) - {"0", "1"}:
        raise FixtureFormatError("línea 'bits' inválida")
    bits = np.array([int(c) for c in bits_txt], dtype=np.uint8)

    dims = lattice.dims
    finales = []
    for k, familia in enumerate(final_families("repetition", dims)):
        tokens = extras.get(f"final{k}")
        if tokens is None or tokens[0] != f"S{k}":
            raise FixtureFormatError(f"falta la capa final {k}")
        especies, resultados = decode_row(tokens[1:], lattice.n_sites, True, 0)
        if np.any(especies != BondSpecies.CONNECTED):
            raise FixtureFormatError("la capa final debe estar medida por completo")
        finales.append(CheckLayer.perfect(lattice.T + 1 + k, familia, resultados))

    config = ModelConfig.repetition(L=dims[0], T=lattice.T, p_zz_m=p_zz_m, p_err=p_err, d=len(dims),
                                    faulty=p_faulty > 0, L_y=dims[1] if len(dims) == 2 else None,
                                    p_faulty=p_faulty if p_faulty > 0 else None)
    backbone = BackboneGraph.from_lattice(lattice, finales)
    flips = lattice.temporal == BondSpecies.DECORATED
    return ClassicalHistory(config=config, bits=bits, flips=flips, backbone=backbone,
                            truth=_truth("repetition", dims, bits), lattice=lattice)


def save_history(history: ClassicalHistory, nombre: str, directorio: Optional[Path] = None) -> Path:
    """Escribe `<nombre>.lattice` en `directorio` (por defecto, el de fixtures)."""
    from config.paths import FIXTURES_DIR

    destino = Path(directorio) if directorio is not None else FIXTURES_DIR
    destino.mkdir(parents=True, exist_ok=True)
    ruta = destino / f"{nombre}.lattice"
    ruta.write_text(dumps_history(history), encoding="utf-8")
    logger.info(f"✅ Historial guardado en {ruta}")
    return ruta


def load_history(ruta: Path) -> ClassicalHistory:
    return loads_history(Path(ruta).read_text(encoding="utf-8"))
