#!/usr/bin/env python3
"""
stabilizer_core/gf2.py
Álgebra lineal sobre GF(2) con máscaras empaquetadas en palabras de 64 bits
"""

from typing import Iterable, Optional

import numpy as np

WORD_BITS = 64
_ONE = np.uint64(1)


def n_words(n: int) -> int:
    """Número de palabras de 64 bits necesarias para n bits (mínimo 1)."""
    return max(1, (int(n) + WORD_BITS - 1) // WORD_BITS)


def pack_bits(bits) -> np.ndarray:
    """Empaqueta un array booleano (..., n) en palabras uint64 (..., W)."""
    bits = np.asarray(bits, dtype=bool)
    n = bits.shape[-1]
    w = n_words(n)
    padded = np.zeros(bits.shape[:-1] + (w * WORD_BITS,), dtype=bool)
    padded[..., :n] = bits
    packed = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def unpack_bits(words, n: int) -> np.ndarray:
    """Inversa de pack_bits: devuelve un array booleano (..., n)."""
    words = np.ascontiguousarray(words, dtype="<u8")
    as_bytes = words.view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=-1, bitorder="little")
    return bits[..., :n].astype(bool)


def popcount(words, axis: int = -1) -> np.ndarray:
    """Número de bits a 1 a lo largo de las palabras."""
    return np.bitwise_count(np.asarray(words, dtype=np.uint64)).sum(axis=axis, dtype=np.int64)


def get_bit(words, j: int) -> np.ndarray:
    """Bit j de cada fila empaquetada, como bool."""
    words = np.asarray(words, dtype=np.uint64)
    shift = np.uint64(j % WORD_BITS)
    return ((words[..., j // WORD_BITS] >> shift) & _ONE).astype(bool)


def write_bit(words: np.ndarray, j: int, values) -> None:
    """Escribe in-place el bit j de cada fila con `values` (bool por fila)."""
    col = j // WORD_BITS
    shift = np.uint64(j % WORD_BITS)
    mask = _ONE << shift
    values = np.asarray(values, dtype=bool).astype(np.uint64)
    words[..., col] = (words[..., col] & ~mask) | (values << shift)


def site_mask(n: int, sites: Iterable[int]) -> np.ndarray:
    bits = np.zeros(n, dtype=bool)
    bits[list(sites)] = True
    return pack_bits(bits)


class EchelonBasis:
    """
    Forma escalonada reducida de un conjunto de filas empaquetadas.

    Conserva, para cada fila reducida, la combinación de filas originales que
    la produce, de modo que cualquier vector del espacio fila se expresa como
    suma de filas originales leyendo sus bits en las columnas pivote.
    """

    def __init__(self, rows: np.ndarray):
        rows = np.asarray(rows, dtype=np.uint64)
        k, w = rows.shape
        reduced = rows.copy()
        combos = pack_bits(np.eye(k, dtype=bool)) if k else np.zeros((0, 1), dtype=np.uint64)
        pivots = []
        r = 0
        for word in range(w):
            if r == k:
                break
            if not reduced[r:, word].any():
                continue
            candidatos = int(np.bitwise_or.reduce(reduced[r:, word]))
            for bit in range(WORD_BITS):
                if r == k:
                    break
                if not (candidatos >> bit) & 1:
                    continue
                mask = _ONE << np.uint64(bit)
                col = (reduced[r:, word] & mask) != 0
                if not col.any():
                    continue
                piv = r + int(np.argmax(col))
                if piv != r:
                    reduced[[r, piv]] = reduced[[piv, r]]
                    combos[[r, piv]] = combos[[piv, r]]
                hit = (reduced[:, word] & mask) != 0
                hit[r] = False
                if hit.any():
                    reduced[hit] ^= reduced[r]
                    combos[hit] ^= combos[r]
                pivots.append(word * WORD_BITS + bit)
                r += 1
        self.n_rows = k
        self.width = w
        self.rank = r
        self.rows = reduced[:r]
        self.combos = combos[:r]
        self.pivots = np.asarray(pivots, dtype=np.int64)

    def _pivot_bits(self, targets: np.ndarray) -> np.ndarray:
        words = targets[:, self.pivots // WORD_BITS]
        shifts = (self.pivots % WORD_BITS).astype(np.uint64)
        return ((words >> shifts) & _ONE).astype(bool)

    def solve(self, target) -> Optional[np.ndarray]:
        """
        Expresa `target` como combinación de las filas originales.

        Returns:
            array booleano de longitud n_rows con la combinación, o None si
            el vector no pertenece al espacio fila.
        """
        target = np.asarray(target, dtype=np.uint64).reshape(1, self.width)
        if self.rank == 0:
            if target.any():
                return None
            return np.zeros(self.n_rows, dtype=bool)
        sel = self._pivot_bits(target)[0]
        residual = target[0] ^ np.bitwise_xor.reduce(self.rows[sel], axis=0) if sel.any() else target[0]
        if residual.any():
            return None
        if not sel.any():
            return np.zeros(self.n_rows, dtype=bool)
        combo = np.bitwise_xor.reduce(self.combos[sel], axis=0)
        return unpack_bits(combo, self.n_rows)

    def contains_many(self, targets) -> np.ndarray:
        """Pertenencia al espacio fila de muchas filas a la vez (vectorizado)."""
        targets = np.asarray(targets, dtype=np.uint64).reshape(-1, self.width)
        if self.rank == 0:
            return ~targets.any(axis=1)
        n_cols = self.width * WORD_BITS
        sel = self._pivot_bits(targets).astype(np.float32)
        rows = unpack_bits(self.rows, n_cols).astype(np.float32)
        # Recuentos enteros exactos en float32 mientras rank < 2**24
        suma = (sel @ rows).astype(np.int64) & 1
        return np.all(suma.astype(bool) == unpack_bits(targets, n_cols), axis=1)


def gf2_rank(rows) -> int:
    rows = np.asarray(rows, dtype=np.uint64)
    if rows.shape[0] == 0:
        return 0
    return EchelonBasis(rows).rank
