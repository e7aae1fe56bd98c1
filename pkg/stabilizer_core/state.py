#!/usr/bin/env python3
"""
stabilizer_core/state.py
Estado estabilizador mixto: lista de k ≤ n generadores con signo, sin desestabilizadores

Los generadores se guardan en tres arrays:
    xs, zs      (k, W) uint64 con las máscaras empaquetadas
    exponents   (k,) con el exponente de i en la convención i^e ∏ X^x Z^z
Una forma escalonada (EchelonBasis) se cachea de forma perezosa y se invalida
con cada mutación.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .clifford import CliffordGate
from .gf2 import EchelonBasis, WORD_BITS, get_bit, gf2_rank, n_words, pack_bits, popcount, unpack_bits, write_bit
from .pauli import NonHermitianPauliError, PauliOperator, SiteOutOfRangeError

logger = logging.getLogger(__name__)


class StabilizerInvariantError(RuntimeError):
    """Generadores que no conmutan, dependientes o con fase no hermítica."""


@dataclass(frozen=True)
class MeasurementResult:
    outcome: int
    probability: float
    deterministic: bool


class StabilizerState:
    """Estado estabilizador mixto sobre n qubits."""

    def __init__(self, n: int, xs=None, zs=None, exponents=None):
        self.n = int(n)
        w = n_words(self.n)
        if xs is None:
            self.xs = np.zeros((0, w), dtype=np.uint64)
            self.zs = np.zeros((0, w), dtype=np.uint64)
            self.exponents = np.zeros(0, dtype=np.int64)
        else:
            self.xs = np.array(xs, dtype=np.uint64).reshape(-1, w)
            self.zs = np.array(zs, dtype=np.uint64).reshape(-1, w)
            self.exponents = np.array(exponents, dtype=np.int64).reshape(-1) % 4
        self._basis: Optional[EchelonBasis] = None

    # ------------------------------------------------------------------
    # Construcción
    # ------------------------------------------------------------------
    @classmethod
    def from_generators(cls, generators: Iterable[PauliOperator], n: Optional[int] = None,
                        check: bool = True) -> "StabilizerState":
        generators = list(generators)
        if n is None:
            if not generators:
                raise ValueError("hace falta n para un estado sin generadores")
            n = generators[0].n
        for g in generators:
            if g.n != n:
                raise ValueError(f"generador {g} no actúa sobre {n} qubits")
            g.require_hermitian()
        state = cls(n)
        if generators:
            state.xs = np.stack([g.x_mask for g in generators])
            state.zs = np.stack([g.z_mask for g in generators])
            state.exponents = np.array([g.exponent for g in generators], dtype=np.int64)
        if check:
            state.check_invariants()
        return state

    @classmethod
    def from_labels(cls, labels: Sequence[str]) -> "StabilizerState":
        return cls.from_generators([PauliOperator.from_label(lbl) for lbl in labels])

    @classmethod
    def product_state(cls, n: int, basis: str = "+") -> "StabilizerState":
        """Estado producto |+⟩, |−⟩, |0⟩ o |1⟩ en todos los qubits."""
        if basis not in ("+", "-", "0", "1"):
            raise ValueError(f"base desconocida: {basis}")
        eye = np.eye(n, dtype=bool)
        vacio = np.zeros((n, n), dtype=bool)
        es_x = basis in ("+", "-")
        xs = pack_bits(eye if es_x else vacio)
        zs = pack_bits(vacio if es_x else eye)
        signo = 0 if basis in ("+", "0") else 2
        return cls(n, xs, zs, np.full(n, signo, dtype=np.int64))

    @classmethod
    def maximally_mixed(cls, n: int) -> "StabilizerState":
        return cls(n)

    def copy(self) -> "StabilizerState":
        nuevo = StabilizerState(self.n, self.xs, self.zs, self.exponents)
        nuevo._basis = self._basis
        return nuevo

    # ------------------------------------------------------------------
    # Propiedades
    # ------------------------------------------------------------------
    @property
    def k(self) -> int:
        return int(self.xs.shape[0])

    @property
    def is_pure(self) -> bool:
        return self.k == self.n

    @property
    def entropy(self) -> int:
        """Entropía del sistema completo, n − k bits."""
        return self.n - self.k

    def generator(self, i: int) -> PauliOperator:
        return PauliOperator(self.n, self.xs[i], self.zs[i], int(self.exponents[i]))

    def generators(self) -> List[PauliOperator]:
        return [self.generator(i) for i in range(self.k)]

    def __repr__(self) -> str:
        gens = ", ".join(g.to_label() for g in self.generators()[:6])
        extra = ", ..." if self.k > 6 else ""
        return f"StabilizerState(n={self.n}, k={self.k}, [{gens}{extra}])"

    # ------------------------------------------------------------------
    # Utilidades internas
    # ------------------------------------------------------------------
    def _invalidate(self) -> None:
        self._basis = None

    def _echelon(self) -> EchelonBasis:
        if self._basis is None:
            self._basis = EchelonBasis(np.hstack([self.xs, self.zs]))
        return self._basis

    def _check_pauli(self, p: PauliOperator) -> None:
        if p.n != self.n:
            raise SiteOutOfRangeError(f"Pauli de {p.n} qubits sobre un estado de {self.n}")
        p.require_hermitian()

    def _anticommuting(self, p: PauliOperator) -> np.ndarray:
        overlap = popcount(self.xs & p.z_mask) + popcount(self.zs & p.x_mask)
        return (overlap & 1).astype(bool)

    def _multiply_rows(self, targets: np.ndarray, source: int) -> None:
        """g_t ← g_t · g_source para cada t en `targets`."""
        cruce = popcount(self.zs[targets] & self.xs[source])
        self.exponents[targets] = (self.exponents[targets] + self.exponents[source] + 2 * cruce) % 4
        self.xs[targets] ^= self.xs[source]
        self.zs[targets] ^= self.zs[source]

    def _product(self, combo: np.ndarray) -> tuple:
        """(x, z, e) del producto ordenado de los generadores seleccionados."""
        idx = np.flatnonzero(combo)
        w = self.xs.shape[1]
        if idx.size == 0:
            return np.zeros(w, dtype=np.uint64), np.zeros(w, dtype=np.uint64), 0
        xs, zs = self.xs[idx], self.zs[idx]
        prefijo = np.bitwise_xor.accumulate(zs, axis=0)
        antes = np.vstack([np.zeros((1, w), dtype=np.uint64), prefijo[:-1]])
        cruce = int(popcount(antes & xs).sum())
        e = (int(self.exponents[idx].sum()) + 2 * cruce) % 4
        return np.bitwise_xor.reduce(xs, axis=0), prefijo[-1], e

    def _write_row(self, i: int, p: PauliOperator, outcome: int) -> None:
        self.xs[i] = p.x_mask
        self.zs[i] = p.z_mask
        self.exponents[i] = (p.y_count + (0 if outcome * p.sign == 1 else 2)) % 4

    def _append_row(self, p: PauliOperator, outcome: int) -> None:
        self.xs = np.vstack([self.xs, p.x_mask[None, :]])
        self.zs = np.vstack([self.zs, p.z_mask[None, :]])
        self.exponents = np.append(self.exponents, 0)
        self._write_row(self.k - 1, p, outcome)

    def _validate_region(self, region: Iterable[int]) -> np.ndarray:
        region = np.unique(np.asarray(list(region), dtype=np.int64))
        if region.size and (region[0] < 0 or region[-1] >= self.n):
            raise SiteOutOfRangeError(f"región fuera de [0, {self.n})")
        return region

    # ------------------------------------------------------------------
    # Consultas
    # ------------------------------------------------------------------
    def contains(self, p: PauliOperator) -> int:
        """+1/−1 si ±p pertenece al grupo, 0 si no."""
        self._check_pauli(p)
        if self._anticommuting(p).any():
            return 0
        combo = self._echelon().solve(np.concatenate([p.x_mask, p.z_mask]))
        if combo is None:
            return 0
        x, z, e = self._product(combo)
        y = int(popcount(x & z))
        signo_grupo = 1 if (e - y) % 4 == 0 else -1
        return p.sign * signo_grupo

    def contains_rows(self, x_rows: np.ndarray, z_rows: np.ndarray) -> np.ndarray:
        """Pertenencia (sin signo) de muchos Paulis dados por filas empaquetadas."""
        return self._echelon().contains_many(np.hstack([x_rows, z_rows]))

    def expectation(self, p: PauliOperator) -> int:
        return self.contains(p)

    def entanglement_entropy(self, region: Iterable[int]) -> int:
        """S_A = |A| − (k − rank de los generadores restringidos al complemento)."""
        region = self._validate_region(region)
        if region.size == 0:
            return 0
        complemento = np.ones(self.n, dtype=bool)
        complemento[region] = False
        mascara = pack_bits(complemento)
        rango = gf2_rank(np.hstack([self.xs & mascara, self.zs & mascara]))
        return int(region.size - (self.k - rango))

    def mutual_information(self, a: Iterable[int], b: Iterable[int]) -> int:
        a = self._validate_region(a)
        b = self._validate_region(b)
        union = np.union1d(a, b)
        return self.entanglement_entropy(a) + self.entanglement_entropy(b) - self.entanglement_entropy(union)

    def same_group_as(self, other: "StabilizerState") -> bool:
        """Igualdad de grupos estabilizadores (signos incluidos)."""
        if self.n != other.n or self.k != other.k:
            return False
        return all(self.contains(g) == 1 for g in other.generators())

    def check_invariants(self) -> None:
        """Lanza StabilizerInvariantError si los generadores no forman un grupo válido."""
        if self.k == 0:
            return
        y = popcount(self.xs & self.zs)
        if np.any((self.exponents - y) % 2):
            raise StabilizerInvariantError("hay generadores con fase ±i")
        x = unpack_bits(self.xs, self.n).astype(np.float32)
        z = unpack_bits(self.zs, self.n).astype(np.float32)
        gram = (x @ z.T + z @ x.T).astype(np.int64) % 2
        if gram.any():
            raise StabilizerInvariantError("hay generadores que anticonmutan")
        if self._echelon().rank != self.k:
            raise StabilizerInvariantError("generadores dependientes")

    # ------------------------------------------------------------------
    # Operaciones (in-place)
    # ------------------------------------------------------------------
    def measure(self, p: PauliOperator, rng: Optional[np.random.Generator] = None,
                forced_outcome: Optional[int] = None) -> MeasurementResult:
        """
        Medida proyectiva de p con la regla de Born.

        Con `forced_outcome` no se consume aleatoriedad; si el resultado forzado
        tiene probabilidad nula se devuelve probability=0 y el estado no cambia.
        """
        self._check_pauli(p)
        anti = np.flatnonzero(self._anticommuting(p))
        if anti.size:
            a = int(anti[0])
            if anti.size > 1:
                self._multiply_rows(anti[1:], a)
            outcome = self._draw(rng, forced_outcome)
            self._write_row(a, p, outcome)
            self._invalidate()
            return MeasurementResult(outcome, 0.5, False)
        valor = self.contains(p)
        if valor:
            if forced_outcome is not None and forced_outcome != valor:
                return MeasurementResult(int(forced_outcome), 0.0, True)
            return MeasurementResult(valor, 1.0, True)
        outcome = self._draw(rng, forced_outcome)
        self._append_row(p, outcome)
        self._invalidate()
        return MeasurementResult(outcome, 0.5, False)

    @staticmethod
    def _draw(rng: Optional[np.random.Generator], forced_outcome: Optional[int]) -> int:
        if forced_outcome is not None:
            if forced_outcome not in (1, -1):
                raise ValueError(f"resultado forzado inválido: {forced_outcome}")
            return int(forced_outcome)
        if rng is None:
            raise ValueError("medida indeterminada sin generador aleatorio")
        return 1 if int(rng.integers(2)) == 0 else -1

    def dephase(self, p: PauliOperator) -> bool:
        """Canal ρ → (ρ + pρp)/2. Devuelve True si se perdió un generador."""
        self._check_pauli(p)
        anti = np.flatnonzero(self._anticommuting(p))
        if anti.size == 0:
            return False
        a = int(anti[0])
        if anti.size > 1:
            self._multiply_rows(anti[1:], a)
        conservar = np.ones(self.k, dtype=bool)
        conservar[a] = False
        self.xs = self.xs[conservar]
        self.zs = self.zs[conservar]
        self.exponents = self.exponents[conservar]
        self._invalidate()
        return True

    def apply_pauli(self, p: PauliOperator) -> None:
        """Conjugación por un Pauli: cambia el signo de los generadores que anticonmutan."""
        if p.n != self.n:
            raise SiteOutOfRangeError(f"Pauli de {p.n} qubits sobre un estado de {self.n}")
        anti = self._anticommuting(p)
        self.exponents[anti] = (self.exponents[anti] + 2) % 4

    def apply_clifford(self, gate: CliffordGate, sites: Sequence[int]) -> None:
        sites = [int(s) for s in sites]
        if len(sites) != gate.n_qubits:
            raise ValueError(f"{gate.name} actúa sobre {gate.n_qubits} qubits, recibidos {len(sites)}")
        if len(set(sites)) != len(sites):
            raise ValueError(f"sitios repetidos: {sites}")
        for s in sites:
            if s < 0 or s >= self.n:
                raise SiteOutOfRangeError(f"sitio {s} fuera de rango para n={self.n}")
        if self.k == 0:
            return
        m = gate.n_qubits
        lx = np.zeros((self.k, m), dtype=bool)
        lz = np.zeros((self.k, m), dtype=bool)
        le = np.zeros(self.k, dtype=np.int64)
        for s, site in enumerate(sites):
            tiene_x = get_bit(self.xs, site)
            tiene_z = get_bit(self.zs, site)
            for filas, (ix, iz, ie) in ((tiene_x, gate.x_image(s)), (tiene_z, gate.z_image(s))):
                if not filas.any():
                    continue
                cruce = np.count_nonzero(lz[filas] & ix, axis=1)
                le[filas] += ie + 2 * cruce
                lx[filas] ^= ix
                lz[filas] ^= iz
        for s, site in enumerate(sites):
            write_bit(self.xs, site, lx[:, s])
            write_bit(self.zs, site, lz[:, s])
        self.exponents = (self.exponents + le) % 4
        self._invalidate()


# ----------------------------------------------------------------------
# Interfaz funcional: devuelve estados nuevos
# ----------------------------------------------------------------------
def apply_clifford(state: StabilizerState, gate: CliffordGate, sites: Sequence[int]) -> StabilizerState:
    nuevo = state.copy()
    nuevo.apply_clifford(gate, sites)
    return nuevo


def measure_pauli(state: StabilizerState, p: PauliOperator, rng: np.random.Generator,
                  forced_outcome: Optional[int] = None) -> tuple:
    nuevo = state.copy()
    resultado = nuevo.measure(p, rng, forced_outcome)
    return resultado.outcome, nuevo


def apply_dephasing(state: StabilizerState, p: PauliOperator) -> StabilizerState:
    nuevo = state.copy()
    nuevo.dephase(p)
    return nuevo


def entanglement_entropy(state: StabilizerState, region: Iterable[int]) -> int:
    return state.entanglement_entropy(region)


def mutual_information(state: StabilizerState, a: Iterable[int], b: Iterable[int]) -> int:
    return state.mutual_information(a, b)


def stabilizer_contains(state: StabilizerState, p: PauliOperator) -> int:
    return state.contains(p)


__all__ = [
    "MeasurementResult", "NonHermitianPauliError", "StabilizerInvariantError", "StabilizerState",
    "apply_clifford", "apply_dephasing", "entanglement_entropy", "measure_pauli",
    "mutual_information", "stabilizer_contains", "WORD_BITS",
]
