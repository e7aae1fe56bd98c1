#!/usr/bin/env python3
"""
stabilizer_core/test_state.py
Pruebas del estado estabilizador mixto frente a ejemplos conocidos y al oráculo denso
"""

import numpy as np
import pytest

from stabilizer_core import (CNOT, HADAMARD, NonHermitianPauliError, PauliOperator, SiteOutOfRangeError,
                             StabilizerState, apply_clifford, apply_dephasing, entanglement_entropy,
                             global_x, measure_pauli, mutual_information, random_clifford,
                             stabilizer_contains)
from stabilizer_core.oracle import DenseOracle


def labels(state):
    return [g.to_label() for g in state.generators()]


def ghz(n):
    gens = ["+" + "X" * n]
    for j in range(n - 1):
        gens.append("+" + "I" * j + "ZZ" + "I" * (n - j - 2))
    return StabilizerState.from_labels(gens)


def random_pauli(n, rng):
    x = rng.integers(2, size=n).astype(bool)
    z = rng.integers(2, size=n).astype(bool)
    return PauliOperator.from_bits(x, z, 1 if rng.integers(2) == 0 else -1)


# ═══════════════════════════════════════════════════════════════════
# Puertas
# ═══════════════════════════════════════════════════════════════════


class TestApplyClifford:

    def test_hadamard_on_zero(self):
        state = apply_clifford(StabilizerState.from_labels(["+Z"]), HADAMARD, [0])
        assert labels(state) == ["+X"]

    def test_cnot_textbook(self):
        state = apply_clifford(StabilizerState.from_labels(["+XI", "+IZ"]), CNOT, [0, 1])
        assert labels(state) == ["+XX", "+ZZ"]

    def test_functional_form_leaves_input(self):
        inicial = StabilizerState.from_labels(["+Z"])
        apply_clifford(inicial, HADAMARD, [0])
        assert labels(inicial) == ["+Z"]

    def test_site_out_of_range(self):
        with pytest.raises(SiteOutOfRangeError):
            apply_clifford(ghz(3), CNOT, [1, 3])

    def test_repeated_sites(self):
        with pytest.raises(ValueError):
            apply_clifford(ghz(3), CNOT, [1, 1])

    def test_z2_clifford_keeps_symmetry_sector(self):
        rng = np.random.default_rng(7)
        state = ghz(4)
        for _ in range(20):
            i = int(rng.integers(3))
            state.apply_clifford(random_clifford(2, rng, family="z2"), [i, i + 1])
            assert state.contains(global_x(4)) == 1
        state.check_invariants()


# ═══════════════════════════════════════════════════════════════════
# Medidas y desfase
# ═══════════════════════════════════════════════════════════════════


class TestMeasure:

    def test_eigenstate_is_deterministic(self):
        rng = np.random.default_rng(0)
        outcome, state = measure_pauli(StabilizerState.from_labels(["+X"]), PauliOperator.from_label("+X"), rng)
        assert outcome == 1
        assert labels(state) == ["+X"]

    def test_zz_on_plus_plus(self):
        rng = np.random.default_rng(1)
        vistos = set()
        for _ in range(40):
            outcome, state = measure_pauli(StabilizerState.product_state(2), PauliOperator.from_label("+ZZ"), rng)
            vistos.add(outcome)
            signo = "+" if outcome == 1 else "-"
            assert labels(state) == [signo + "ZZ", "+XX"]
        assert vistos == {1, -1}

    def test_outside_group_appends(self):
        rng = np.random.default_rng(2)
        state = StabilizerState.maximally_mixed(2)
        resultado = state.measure(PauliOperator.from_label("+ZI"), rng)
        assert state.k == 1
        assert resultado.probability == 0.5

    def test_forced_impossible_outcome(self):
        state = StabilizerState.from_labels(["+Z"])
        resultado = state.measure(PauliOperator.from_label("+Z"), forced_outcome=-1)
        assert resultado.probability == 0.0
        assert labels(state) == ["+Z"]

    def test_non_hermitian_rejected(self):
        with pytest.raises(NonHermitianPauliError):
            measure_pauli(ghz(2), PauliOperator.from_label("iXZ"), np.random.default_rng(0))

    def test_x2_on_ghz3_statistics(self):
        """Distribución y estado post-medida de X₂ sobre GHZ₃ frente al oráculo."""
        rng = np.random.default_rng(3)
        p = PauliOperator.from_label("+IXI")
        cuentas = {1: 0, -1: 0}
        for _ in range(2000):
            inicial = ghz(3)
            oraculo = DenseOracle.from_state(inicial)
            outcome, final = measure_pauli(inicial, p, rng)
            cuentas[outcome] += 1
            prob = oraculo.measure(p, outcome)
            assert prob == pytest.approx(0.5)
            assert oraculo.trace_distance(DenseOracle.from_state(final)) < 1e-10
        # 3σ para una binomial de 2000 ensayos
        assert abs(cuentas[1] - 1000) < 3 * np.sqrt(500)

    def test_same_seed_same_state(self):
        def run(seed):
            rng = np.random.default_rng(seed)
            state = StabilizerState.product_state(6)
            for j in range(5):
                state.measure(PauliOperator.from_sites(6, z_sites=[j, j + 1]), rng)
            return state
        a, b = run(11), run(11)
        np.testing.assert_array_equal(a.xs, b.xs)
        np.testing.assert_array_equal(a.zs, b.zs)
        np.testing.assert_array_equal(a.exponents, b.exponents)


class TestDephasing:

    def test_fixed_point(self):
        state = apply_dephasing(StabilizerState.from_labels(["+X"]), PauliOperator.from_label("+X"))
        assert labels(state) == ["+X"]

    def test_ghz2_loses_zz(self):
        state = apply_dephasing(ghz(2), PauliOperator.from_label("+XI"))
        assert labels(state) == ["+XX"]

    def test_zero_becomes_mixed(self):
        state = apply_dephasing(StabilizerState.from_labels(["+Z"]), PauliOperator.from_label("+X"))
        assert state.k == 0

    def test_never_increases_k(self):
        rng = np.random.default_rng(4)
        state = ghz(5)
        for _ in range(10):
            k = state.k
            state.dephase(random_pauli(5, rng))
            assert state.k <= k
            state.check_invariants()


# ═══════════════════════════════════════════════════════════════════
# Entropías y pertenencia
# ═══════════════════════════════════════════════════════════════════


class TestEntropy:

    def test_product_state(self):
        state = StabilizerState.product_state(5, "0")
        for region in ([0], [1, 2], [0, 2, 4]):
            assert entanglement_entropy(state, region) == 0

    def test_ghz4(self):
        state = ghz(4)
        assert entanglement_entropy(state, [0, 1]) == 1
        assert mutual_information(state, [0, 1], [2, 3]) == 2

    def test_maximally_mixed(self):
        assert entanglement_entropy(StabilizerState.maximally_mixed(4), [0, 2]) == 2

    def test_quasi_ghz_against_oracle(self):
        state = apply_dephasing(ghz(3), PauliOperator.from_label("+IXI"))
        oraculo = DenseOracle.from_state(state)
        assert entanglement_entropy(state, [0]) == pytest.approx(oraculo.entropy([0]))

    def test_invalid_region(self):
        with pytest.raises(SiteOutOfRangeError):
            entanglement_entropy(ghz(3), [5])


class TestContains:

    def test_ghz2(self):
        assert stabilizer_contains(ghz(2), PauliOperator.from_label("+ZZ")) == 1
        assert stabilizer_contains(ghz(2), PauliOperator.from_label("-ZZ")) == -1
        assert stabilizer_contains(ghz(2), PauliOperator.from_label("+ZI")) == 0

    def test_product_with_y(self):
        # XX · ZZ = −YY
        assert stabilizer_contains(ghz(2), PauliOperator.from_label("-YY")) == 1

    def test_random_states_against_oracle(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            state = StabilizerState.product_state(6, "0")
            for _ in range(30):
                i, j = rng.choice(6, size=2, replace=False)
                state.apply_clifford(random_clifford(2, rng), [int(i), int(j)])
            oraculo = DenseOracle.from_state(state)
            for _ in range(20):
                p = random_pauli(6, rng)
                assert stabilizer_contains(state, p) == pytest.approx(oraculo.expectation(p), abs=1e-9)


# ═══════════════════════════════════════════════════════════════════
# Secuencias aleatorias frente al oráculo denso
# ═══════════════════════════════════════════════════════════════════


@pytest.mark.parametrize("n,seed,pasos", [(5, 10, 200), (5, 11, 200), (5, 12, 200), (8, 13, 80), (10, 14, 50)])
def test_random_sequence_matches_dense_oracle(n, seed, pasos):
    rng = np.random.default_rng(seed)
    state = StabilizerState.product_state(n)
    oraculo = DenseOracle.from_state(state)
    for paso in range(pasos):
        op = int(rng.integers(3))
        if op == 0:
            i, j = rng.choice(n, size=2, replace=False)
            gate = random_clifford(2, rng)
            state.apply_clifford(gate, [int(i), int(j)])
            oraculo.apply_clifford(gate, [int(i), int(j)])
        elif op == 1:
            p = random_pauli(n, rng)
            resultado = state.measure(p, rng)
            prob = oraculo.measure(p, resultado.outcome)
            assert prob == pytest.approx(resultado.probability, abs=1e-9)
        else:
            p = random_pauli(n, rng)
            state.dephase(p)
            oraculo.dephase(p)
        state.check_invariants()
    assert oraculo.trace_distance(DenseOracle.from_state(state)) < 1e-10
    mitad = range(n // 2)
    assert entanglement_entropy(state, mitad) == pytest.approx(oraculo.entropy(mitad), abs=1e-9)
