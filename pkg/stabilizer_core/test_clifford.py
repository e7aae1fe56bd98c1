#!/usr/bin/env python3
"""
stabilizer_core/test_clifford.py
Pruebas de Paulis, tablas de conjugación y enumeración de Cliffords
"""

import numpy as np
import pytest

from stabilizer_core import (CNOT, HADAMARD, CliffordGate, NonSymplecticGateError, PauliOperator,
                             StabilizerState, all_cliffords, random_clifford, rung_couplings,
                             z2_symmetric_cliffords)
from stabilizer_core.gf2 import EchelonBasis, gf2_rank, pack_bits, unpack_bits
from stabilizer_core.oracle import DenseOracle, clifford_unitary, pauli_matrix


class TestPauli:

    def test_label_round_trip(self):
        for label in ("+XZI", "-Y", "+iXX", "-iZY"):
            assert PauliOperator.from_label(label).to_label() == label

    def test_products(self):
        x = PauliOperator.from_label("+X")
        z = PauliOperator.from_label("+Z")
        assert (x * z).to_label() == "-iY"
        assert (z * x).to_label() == "+iY"

    def test_commutation(self):
        assert PauliOperator.from_label("+XX").commutes_with(PauliOperator.from_label("+ZZ"))
        assert not PauliOperator.from_label("+XI").commutes_with(PauliOperator.from_label("+ZZ"))

    def test_hermiticity(self):
        assert PauliOperator.from_label("-YZ").is_hermitian
        assert not PauliOperator.from_label("+iX").is_hermitian

    def test_wide_masks(self):
        p = PauliOperator.from_sites(130, x_sites=[0, 64, 129], z_sites=[129])
        assert p.weight == 3
        np.testing.assert_array_equal(p.support(), [0, 64, 129])


class TestGF2:

    def test_pack_unpack(self):
        rng = np.random.default_rng(0)
        bits = rng.integers(2, size=(4, 150)).astype(bool)
        np.testing.assert_array_equal(unpack_bits(pack_bits(bits), 150), bits)

    def test_rank(self):
        filas = pack_bits(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=bool))
        assert gf2_rank(filas) == 2

    def test_solve_combination(self):
        filas = pack_bits(np.array([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]], dtype=bool))
        base = EchelonBasis(filas)
        combo = base.solve(pack_bits(np.array([1, 0, 0, 1], dtype=bool)))
        np.testing.assert_array_equal(combo, [True, True, True])
        assert base.solve(pack_bits(np.array([1, 0, 0, 0], dtype=bool))) is None


class TestCliffordGate:

    def test_non_symplectic_rejected(self):
        with pytest.raises(NonSymplecticGateError):
            CliffordGate.from_labels("mala", ["+X", "+X"])
        with pytest.raises(NonSymplecticGateError):
            CliffordGate.from_labels("mala", ["+XI", "+ZI", "+XI", "+IZ"])

    def test_conjugate(self):
        assert CNOT.conjugate(PauliOperator.from_label("+XI")).to_label() == "+XX"
        assert HADAMARD.conjugate(PauliOperator.from_label("+Y")).to_label() == "-Y"

    @pytest.mark.parametrize("gate", [HADAMARD, CNOT])
    def test_unitary_realizes_table(self, gate):
        u = clifford_unitary(gate)
        m = gate.n_qubits
        for s in range(m):
            local = PauliOperator.from_sites(m, x_sites=[s])
            esperado = pauli_matrix(gate.images[2 * s])
            np.testing.assert_allclose(u @ pauli_matrix(local) @ u.conj().T, esperado, atol=1e-10)


@pytest.mark.slow
class TestEnumeration:

    def test_group_sizes(self):
        assert len(all_cliffords(1)) == 24
        assert len(all_cliffords(2)) == 11520

    def test_symmetric_subgroups(self):
        assert len(z2_symmetric_cliffords(1)) == 4
        assert len(z2_symmetric_cliffords(2)) == 384
        assert len(rung_couplings()) == 384

    def test_symmetric_gate_on_ghz4_matches_oracle(self):
        rng = np.random.default_rng(3)
        state = StabilizerState.from_labels(["+XXXX", "+ZZII", "+IZZI", "+IIZZ"])
        oraculo = DenseOracle.from_state(state)
        gate = random_clifford(2, rng, family="z2")
        state.apply_clifford(gate, [1, 2])
        oraculo.apply_clifford(gate, [1, 2])
        assert oraculo.trace_distance(DenseOracle.from_state(state)) < 1e-10
