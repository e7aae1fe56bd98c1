#!/usr/bin/env python3
"""
percolation_map/fixtures.py
Formato de texto run-length para redes de enlaces (ver docs/formato_fixtures.md)

Ejemplo:
    # bond-lattice v1
    dims 4
    T 2
    1 S0 C+ C- 2B
    1 T 4C
    2 T B 2D C
"""

import re
from typing import List, Optional, Tuple

import numpy as np

from .lattice import NO_AXIS, BondLattice, BondSpecies, MalformedRecordError

CABECERA = "# bond-lattice v1"
_TOKEN = re.compile(r"^(\d*)(C\+|C-|C|B|D)$")


class FixtureFormatError(ValueError):
    """Texto de fixture que no respeta la gramática."""


def encode_row(species: np.ndarray, outcomes: Optional[np.ndarray]) -> str:
    simbolos = []
    for k, e in enumerate(species):
        if e == BondSpecies.CONNECTED:
            if outcomes is None:
                simbolos.append("C")
            else:
                simbolos.append("C+" if outcomes[k] > 0 else "C-")
        elif e == BondSpecies.DECORATED:
            simbolos.append("D")
        else:
            simbolos.append("B")
    tokens = []
    i = 0
    while i < len(simbolos):
        j = i
        while j < len(simbolos) and simbolos[j] == simbolos[i]:
            j += 1
        cuenta = j - i
        tokens.append(simbolos[i] if cuenta == 1 else f"{cuenta}{simbolos[i]}")
        i = j
    return " ".join(tokens)


def decode_row(tokens: List[str], n: int, spatial: bool, linea: int) -> Tuple[np.ndarray, np.ndarray]:
    especies, resultados = [], []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not m:
            raise FixtureFormatError(f"línea {linea}: token inválido {tok!r}")
        cuenta = int(m.group(1)) if m.group(1) else 1
        simbolo = m.group(2)
        if spatial and simbolo == "C":
            raise FixtureFormatError(f"línea {linea}: enlace espacial conectado sin resultado")
        if not spatial and simbolo in ("C+", "C-"):
            raise FixtureFormatError(f"línea {linea}: enlace temporal con resultado")
        especie = {"B": BondSpecies.BROKEN, "D": BondSpecies.DECORATED}.get(simbolo, BondSpecies.CONNECTED)
        resultado = {"C+": 1, "C-": -1}.get(simbolo, 0)
        especies.extend([especie] * cuenta)
        resultados.extend([resultado] * cuenta)
    if len(especies) != n:
        raise FixtureFormatError(f"línea {linea}: {len(especies)} enlaces, se esperaban {n}")
    return np.array(especies, dtype=np.int8), np.array(resultados, dtype=np.int8)


def dumps_lattice(lattice: BondLattice, extra: Optional[List[str]] = None) -> str:
    lineas = [CABECERA, "dims " + " ".join(str(d) for d in lattice.dims), f"T {lattice.T}"]
    for fila in range(lattice.T):
        t = fila + 1
        eje = int(lattice.spatial_axis[fila])
        if eje != NO_AXIS:
            lineas.append(f"{t} S{eje} " + encode_row(lattice.spatial[fila], lattice.outcomes[fila]))
        lineas.append(f"{t} T " + encode_row(lattice.temporal[fila], None))
    lineas.extend(extra or [])
    return "\n".join(lineas) + "\n"


def loads_lattice(text: str, extra_keys: Tuple[str, ...] = ()) -> Tuple[BondLattice, dict]:
    """
    Lee una red; devuelve (red, líneas extra) donde las claves de `extra_keys`
    se recogen como listas de tokens.
    """
    dims = None
    T = None
    filas_t = {}
    filas_s = {}
    extras = {}
    for num, bruta in enumerate(text.splitlines(), start=1):
        linea = bruta.strip()
        if not linea or linea.startswith("#"):
            continue
        partes = linea.split()
        clave = partes[0]
        if clave == "dims":
            dims = tuple(int(p) for p in partes[1:])
        elif clave == "T":
            T = int(partes[1])
        elif clave in extra_keys:
            extras[clave] = partes[1:]
        elif clave.isdigit():
            if dims is None or T is None:
                raise FixtureFormatError(f"línea {num}: capa antes de 'dims' y 'T'")
            t = int(clave)
            n = int(np.prod(dims))
            if len(partes) < 2 or not 1 <= t <= T:
                raise FixtureFormatError(f"línea {num}: capa inválida")
            tipo = partes[1]
            if tipo == "T":
                filas_t[t] = decode_row(partes[2:], n, False, num)[0]
            elif re.fullmatch(r"S[01]", tipo):
                especies, resultados = decode_row(partes[2:], n, True, num)
                filas_s[t] = (int(tipo[1]), especies, resultados)
            else:
                raise FixtureFormatError(f"línea {num}: tipo de capa {tipo!r}")
        else:
            raise FixtureFormatError(f"línea {num}: clave desconocida {clave!r}")
    if dims is None or T is None:
        raise FixtureFormatError("faltan 'dims' o 'T'")
    if sorted(filas_t) != list(range(1, T + 1)):
        raise FixtureFormatError("falta alguna fila temporal")
    lattice = BondLattice.empty(dims, T)
    for t, fila in filas_t.items():
        lattice.temporal[t - 1] = fila
    for t, (eje, especies, resultados) in filas_s.items():
        lattice.spatial_axis[t - 1] = eje
        lattice.spatial[t - 1] = especies
        lattice.outcomes[t - 1] = resultados
    try:
        lattice.__post_init__()
    except MalformedRecordError as exc:
        raise FixtureFormatError(str(exc)) from exc
    return lattice, extras
