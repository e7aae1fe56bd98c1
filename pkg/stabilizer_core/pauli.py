#!/usr/bin/env python3
"""
stabilizer_core/pauli.py
Operadores de Pauli sobre n qubits con máscaras X/Z empaquetadas
"""

from typing import Iterable

import numpy as np

from .gf2 import n_words, pack_bits, popcount, unpack_bits

_PHASES = (1, 1j, -1, -1j)
_PREFIX = {"+": 0, "": 0, "-": 2, "+i": 1, "i": 1, "-i": 3}
_LETTERS = {"I": (False, False), "X": (True, False), "Z": (False, True), "Y": (True, True)}


class NonHermitianPauliError(ValueError):
    """Se pidió medir o desfasar un Pauli con fase ±i."""


class SiteOutOfRangeError(ValueError):
    """Índice de qubit fuera de [0, n)."""


def _check_sites(n: int, sites: Iterable[int]) -> list:
    sites = [int(s) for s in sites]
    for s in sites:
        if s < 0 or s >= n:
            raise SiteOutOfRangeError(f"sitio {s} fuera de rango para n={n}")
    return sites


class PauliOperator:
    """
    Operador i^e · ∏_j X_j^{x_j} Z_j^{z_j}.

    El exponente `exponent` se guarda en la convención ordenada X·Z por sitio,
    de modo que Y_j = i X_j Z_j aporta 1 al exponente. La fase "física"
    (respecto al producto de X, Y, Z) está en `phase`.
    """

    __slots__ = ("n", "x_mask", "z_mask", "exponent")

    def __init__(self, n: int, x_mask, z_mask, exponent: int = 0):
        self.n = int(n)
        w = n_words(self.n)
        self.x_mask = np.array(x_mask, dtype=np.uint64).reshape(w)
        self.z_mask = np.array(z_mask, dtype=np.uint64).reshape(w)
        self.exponent = int(exponent) % 4

    # ------------------------------------------------------------------
    # Construcción
    # ------------------------------------------------------------------
    @classmethod
    def from_bits(cls, x_bits, z_bits, sign: int = 1) -> "PauliOperator":
        x_bits = np.asarray(x_bits, dtype=bool)
        z_bits = np.asarray(z_bits, dtype=bool)
        y = int(np.count_nonzero(x_bits & z_bits))
        return cls(x_bits.size, pack_bits(x_bits), pack_bits(z_bits), y + (0 if sign == 1 else 2))

    @classmethod
    def from_label(cls, label: str) -> "PauliOperator":
        """Construye desde etiquetas como '+XZI', '-Y', 'iXX' (qubit 0 a la izquierda)."""
        label = label.strip()
        idx = 0
        while idx < len(label) and label[idx] in "+-i":
            idx += 1
        prefix, letters = label[:idx], label[idx:]
        if prefix not in _PREFIX or not letters:
            raise ValueError(f"etiqueta de Pauli inválida: {label!r}")
        try:
            bits = [_LETTERS[c] for c in letters.upper()]
        except KeyError as exc:
            raise ValueError(f"letra de Pauli inválida en {label!r}") from exc
        x_bits = np.array([b[0] for b in bits], dtype=bool)
        z_bits = np.array([b[1] for b in bits], dtype=bool)
        y = int(np.count_nonzero(x_bits & z_bits))
        return cls(len(bits), pack_bits(x_bits), pack_bits(z_bits), y + _PREFIX[prefix])

    @classmethod
    def from_sites(cls, n: int, x_sites: Iterable[int] = (), z_sites: Iterable[int] = (),
                   sign: int = 1) -> "PauliOperator":
        x_bits = np.zeros(n, dtype=bool)
        z_bits = np.zeros(n, dtype=bool)
        # Los sitios repetidos se cancelan (X·X = I)
        for s in _check_sites(n, x_sites):
            x_bits[s] ^= True
        for s in _check_sites(n, z_sites):
            z_bits[s] ^= True
        return cls.from_bits(x_bits, z_bits, sign)

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        w = n_words(n)
        return cls(n, np.zeros(w, dtype=np.uint64), np.zeros(w, dtype=np.uint64), 0)

    # ------------------------------------------------------------------
    # Propiedades
    # ------------------------------------------------------------------
    @property
    def y_count(self) -> int:
        return int(popcount(self.x_mask & self.z_mask))

    @property
    def phase(self) -> complex:
        return _PHASES[(self.exponent - self.y_count) % 4]

    @property
    def is_hermitian(self) -> bool:
        return (self.exponent - self.y_count) % 2 == 0

    @property
    def sign(self) -> int:
        self.require_hermitian()
        return 1 if (self.exponent - self.y_count) % 4 == 0 else -1

    @property
    def weight(self) -> int:
        return int(popcount(self.x_mask | self.z_mask))

    def x_bits(self) -> np.ndarray:
        return unpack_bits(self.x_mask, self.n)

    def z_bits(self) -> np.ndarray:
        return unpack_bits(self.z_mask, self.n)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.x_bits() | self.z_bits())

    def is_identity(self) -> bool:
        return not (self.x_mask.any() or self.z_mask.any())

    def require_hermitian(self) -> None:
        if not self.is_hermitian:
            raise NonHermitianPauliError(f"{self.to_label()} no es hermítico")

    # ------------------------------------------------------------------
    # Álgebra
    # ------------------------------------------------------------------
    def commutes_with(self, other: "PauliOperator") -> bool:
        overlap = popcount(self.x_mask & other.z_mask) + popcount(self.z_mask & other.x_mask)
        return int(overlap) % 2 == 0

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValueError("productos de Paulis con distinto número de qubits")
        e = self.exponent + other.exponent + 2 * int(popcount(self.z_mask & other.x_mask))
        return PauliOperator(self.n, self.x_mask ^ other.x_mask, self.z_mask ^ other.z_mask, e)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x_mask, self.z_mask, self.exponent + 2)

    def times_i(self, power: int = 1) -> "PauliOperator":
        return PauliOperator(self.n, self.x_mask, self.z_mask, self.exponent + power)

    def with_sign(self, sign: int) -> "PauliOperator":
        """Copia hermítica con el signo indicado."""
        return PauliOperator(self.n, self.x_mask, self.z_mask, self.y_count + (0 if sign == 1 else 2))

    def copy(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x_mask, self.z_mask, self.exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (self.n == other.n and self.exponent == other.exponent
                and np.array_equal(self.x_mask, other.x_mask)
                and np.array_equal(self.z_mask, other.z_mask))

    def __hash__(self) -> int:
        return hash((self.n, self.exponent, self.x_mask.tobytes(), self.z_mask.tobytes()))

    def to_label(self) -> str:
        prefix = {1: "+", -1: "-", 1j: "+i", -1j: "-i"}[self.phase]
        letters = []
        for xb, zb in zip(self.x_bits(), self.z_bits()):
            letters.append("Y" if xb and zb else "X" if xb else "Z" if zb else "I")
        return prefix + "".join(letters)

    def __repr__(self) -> str:
        return f"PauliOperator('{self.to_label()}')"


def pauli_x(n: int, *sites: int) -> PauliOperator:
    return PauliOperator.from_sites(n, x_sites=sites)


def pauli_z(n: int, *sites: int) -> PauliOperator:
    return PauliOperator.from_sites(n, z_sites=sites)


def global_x(n: int) -> PauliOperator:
    """Generador de la simetría Z₂ global, 𝐗 = ∏ X_j."""
    return PauliOperator.from_sites(n, x_sites=range(n))
