#!/usr/bin/env python3
"""
stabilizer_core/clifford.py
Puertas de Clifford de 1 y 2 qubits definidas por su tabla de conjugación
"""

import itertools
import logging
from functools import lru_cache
from typing import Sequence

import numpy as np

from .pauli import PauliOperator

logger = logging.getLogger(__name__)


class NonSymplecticGateError(ValueError):
    """La tabla de conjugación no define un automorfismo de Clifford."""


class CliffordGate:
    """
    Clifford local sobre m ∈ {1, 2} qubits.

    `images` son las imágenes U P U† en el orden [X0, Z0, X1, Z1], cada una un
    PauliOperator hermítico de m qubits.
    """

    __slots__ = ("name", "n_qubits", "images", "_tables")

    def __init__(self, name: str, images: Sequence[PauliOperator], validate: bool = True):
        images = list(images)
        if len(images) not in (2, 4):
            raise NonSymplecticGateError(f"{name}: se esperan 2 o 4 imágenes, hay {len(images)}")
        m = len(images) // 2
        self.name = name
        self.n_qubits = m
        self.images = tuple(images)
        if validate:
            self._validate()
        self._tables = tuple(
            (img.x_bits(), img.z_bits(), img.exponent) for img in self.images
        )

    def _validate(self) -> None:
        m = self.n_qubits
        for img in self.images:
            if img.n != m:
                raise NonSymplecticGateError(f"{self.name}: imagen {img} no actúa sobre {m} qubits")
            if not img.is_hermitian or img.is_identity():
                raise NonSymplecticGateError(f"{self.name}: imagen {img} no es un Pauli hermítico no trivial")
        for i, j in itertools.combinations(range(2 * m), 2):
            esperado_anticonmuta = (i // 2 == j // 2)
            if self.images[i].commutes_with(self.images[j]) == esperado_anticonmuta:
                raise NonSymplecticGateError(
                    f"{self.name}: las imágenes {i} y {j} no respetan la forma simpléctica"
                )

    @classmethod
    def from_labels(cls, name: str, labels: Sequence[str]) -> "CliffordGate":
        return cls(name, [PauliOperator.from_label(lbl) for lbl in labels])

    def x_image(self, s: int):
        """(x_bits, z_bits, exponente) de U X_s U†."""
        return self._tables[2 * s]

    def z_image(self, s: int):
        return self._tables[2 * s + 1]

    def conjugate(self, p: PauliOperator) -> PauliOperator:
        """U p U† para un Pauli local de m qubits."""
        if p.n != self.n_qubits:
            raise ValueError("el Pauli no tiene el tamaño de la puerta")
        acc = PauliOperator.identity(self.n_qubits).times_i(p.exponent)
        xb, zb = p.x_bits(), p.z_bits()
        for s in range(self.n_qubits):
            if xb[s]:
                acc = acc * self.images[2 * s]
            if zb[s]:
                acc = acc * self.images[2 * s + 1]
        return acc

    def preserves(self, p: PauliOperator) -> bool:
        return self.conjugate(p) == p

    def labels(self) -> tuple:
        return tuple(img.to_label() for img in self.images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordGate):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"CliffordGate({self.name!r}, {list(self.labels())})"


HADAMARD = CliffordGate.from_labels("H", ["+Z", "+X"])
PHASE = CliffordGate.from_labels("S", ["+Y", "+Z"])
GATE_X = CliffordGate.from_labels("X", ["+X", "-Z"])
GATE_Z = CliffordGate.from_labels("Z", ["-X", "+Z"])
CNOT = CliffordGate.from_labels("CNOT", ["+XX", "+ZI", "+IX", "+ZZ"])
CZ = CliffordGate.from_labels("CZ", ["+XZ", "+ZI", "+ZX", "+IZ"])
SWAP = CliffordGate.from_labels("SWAP", ["+IX", "+IZ", "+XI", "+ZI"])


# ----------------------------------------------------------------------
# Enumeración de grupos de Clifford locales
# ----------------------------------------------------------------------
def _symplectic_form(u: int, v: int, m: int) -> int:
    mask = (1 << m) - 1
    ux, uz = u & mask, u >> m
    vx, vz = v & mask, v >> m
    return (bin(ux & vz).count("1") + bin(uz & vx).count("1")) & 1


def _pauli_from_int(v: int, m: int, sign: int) -> PauliOperator:
    x_bits = [(v >> s) & 1 for s in range(m)]
    z_bits = [(v >> (m + s)) & 1 for s in range(m)]
    return PauliOperator.from_bits(x_bits, z_bits, sign)


@lru_cache(maxsize=None)
def _symplectic_tables(m: int) -> tuple:
    """Todas las tablas simplécticas (imágenes sin signo) sobre m qubits."""
    paulis = range(1, 4 ** m)
    tablas = []
    if m == 1:
        for u, v in itertools.product(paulis, paulis):
            if _symplectic_form(u, v, 1):
                tablas.append((u, v))
        return tuple(tablas)
    for x0, z0 in itertools.product(paulis, paulis):
        if not _symplectic_form(x0, z0, m):
            continue
        for x1 in paulis:
            if _symplectic_form(x0, x1, m) or _symplectic_form(z0, x1, m):
                continue
            for z1 in paulis:
                if (_symplectic_form(x1, z1, m) and not _symplectic_form(x0, z1, m)
                        and not _symplectic_form(z0, z1, m)):
                    tablas.append((x0, z0, x1, z1))
    return tuple(tablas)


@lru_cache(maxsize=None)
def all_cliffords(m: int) -> tuple:
    """Grupo de Clifford de m qubits módulo fase global (24 o 11520 elementos)."""
    if m not in (1, 2):
        raise ValueError("solo se enumeran Cliffords de 1 o 2 qubits")
    puertas = []
    for idx, tabla in enumerate(_symplectic_tables(m)):
        for signos in itertools.product((1, -1), repeat=2 * m):
            imgs = [_pauli_from_int(v, m, s) for v, s in zip(tabla, signos)]
            puertas.append(CliffordGate(f"C{m}_{len(puertas)}", imgs, validate=False))
    logger.debug(f"📦 Enumerados {len(puertas)} Cliffords de {m} qubits")
    return tuple(puertas)


@lru_cache(maxsize=None)
def z2_symmetric_cliffords(m: int) -> tuple:
    """Cliffords que conmutan con X^{⊗m} (384 para m=2, 4 para m=1)."""
    global_x = PauliOperator.from_sites(m, x_sites=range(m))
    return tuple(g for g in all_cliffords(m) if g.preserves(global_x))


@lru_cache(maxsize=None)
def rung_couplings() -> tuple:
    """Cliffords de 2 qubits (sistema, baño) que preservan X del qubit de sistema."""
    x_sys = PauliOperator.from_label("+XI")
    return tuple(g for g in all_cliffords(2) if g.preserves(x_sys))


_FAMILIES = {
    "all": all_cliffords,
    "z2": z2_symmetric_cliffords,
}


def random_clifford(m: int, rng: np.random.Generator, family: str = "all") -> CliffordGate:
    """Muestra uniforme de una familia enumerada de Cliffords."""
    if family == "rung":
        if m != 2:
            raise ValueError("el acoplamiento de peldaño es de 2 qubits")
        grupo = rung_couplings()
    elif family in _FAMILIES:
        grupo = _FAMILIES[family](m)
    else:
        raise ValueError(f"familia de Cliffords desconocida: {family}")
    return grupo[int(rng.integers(len(grupo)))]
