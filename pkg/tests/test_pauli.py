import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from werner import pauli
from werner.analysis import collective_generator
from werner.states import singlet

from conftest import random_hermitian


def test_single_qubit_matrices():
    assert np.array_equal(pauli.sigma(0), np.eye(2))
    assert np.array_equal(pauli.sigma(3), np.diag([1, -1]))
    assert np.array_equal(pauli.sigma(2), np.array([[0, -1j], [1j, 0]]))
    with pytest.raises(ValueError):
        pauli.sigma(4)


def test_sigma_tensor_examples():
    assert np.array_equal(pauli.sigma_tensor((0, 0, 0)), np.eye(8))
    assert np.array_equal(pauli.sigma_tensor((1, 3)), np.kron(pauli.sigma(1), pauli.sigma(3)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_orthogonality_exhaustive(n):
    mats = [pauli.sigma_tensor(i) for i in pauli.multi_indices(n)]
    gram = np.array([[np.trace(a @ b) for b in mats] for a in mats])
    assert np.allclose(gram, 2**n * np.eye(4**n), atol=1e-12)


def test_index_roundtrip():
    for k in range(64):
        assert pauli.index_of(pauli.digits_of(k, 3)) == k
    assert [tuple(i) for i in pauli.multi_indices(2)][:5] == [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_expand_maximally_mixed(n):
    v = pauli.expand(np.eye(2**n) / 2**n, n)
    expected = np.zeros(4**n)
    expected[0] = 2.0**-n
    assert np.allclose(v.coeffs, expected, atol=1e-15)


def test_expand_singlet():
    s = singlet()
    v = pauli.expand(np.outer(s, s.conj()), 2)
    # hand-computed traces: tr(P)/4 = 1/4, tr(sigma_a sigma_a P)/4 = -1/4
    expected = np.zeros(16)
    expected[pauli.index_of((0, 0))] = 0.25
    for a in (1, 2, 3):
        expected[pauli.index_of((a, a))] = -0.25
    assert np.allclose(v.coeffs, expected, atol=1e-15)
    assert v["11"] == pytest.approx(-0.25)


def test_expand_matches_trace_definition(rng):
    h = random_hermitian(rng, 8)
    v = pauli.expand(h, 3)
    for digits in pauli.multi_indices(3):
        assert v[digits] == pytest.approx(np.trace(pauli.sigma_tensor(digits) @ h).real / 8, abs=1e-12)


def test_roundtrip(rng):
    for n in (1, 2, 3, 4):
        h = random_hermitian(rng, 2**n)
        assert np.allclose(pauli.reconstruct(pauli.expand(h, n)), h, atol=1e-12)
    v = pauli.PauliVector(3, rng.standard_normal(64))
    assert np.allclose(pauli.expand(pauli.reconstruct(v), 3).coeffs, v.coeffs, atol=1e-12)
    e0 = pauli.PauliVector(2, np.eye(16)[0])
    assert np.allclose(pauli.reconstruct(e0), np.eye(4))


def test_expand_rejects_bad_input():
    with pytest.raises(ValueError):
        pauli.expand(np.array([[0, 1], [0, 0]]), 1)
    with pytest.raises(ValueError):
        pauli.expand(np.eye(4), 1)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 2**31 - 1))
def test_expand_linear(a, b, seed):
    rng = np.random.default_rng(seed)
    r, t = random_hermitian(rng, 4), random_hermitian(rng, 4)
    lhs = pauli.expand(a * r + b * t, 2).coeffs
    rhs = a * pauli.expand(r, 2).coeffs + b * pauli.expand(t, 2).coeffs
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_werner_family_n2(rng):
    from werner.analysis import werner_residual
    from conftest import random_su2

    for t in (-0.25, 0.0, 1 / 12):
        coeffs = np.zeros(16)
        coeffs[0] = 0.25
        for a in (1, 2, 3):
            coeffs[pauli.index_of((a, a))] = t
        rho = pauli.reconstruct(pauli.PauliVector(2, coeffs))
        assert np.allclose(rho, rho.conj().T)
        assert np.trace(rho).real == pytest.approx(1.0)
        assert werner_residual(rho) < 1e-12
        for _ in range(5):
            g = np.kron(*(2 * [random_su2(rng)]))
            assert np.allclose(g @ rho @ g.conj().T, rho, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_adjoint_generator_matches_brute_force(n):
    for a in (1, 2, 3):
        j = collective_generator(n, a)
        brute = np.zeros((4**n, 4**n))
        for col, digits in enumerate(pauli.multi_indices(n)):
            s = pauli.sigma_tensor(digits)
            brute[:, col] = pauli.expand(-1j * (j @ s - s @ j), n).coeffs
        assert np.allclose(pauli.adjoint_generator(n, a), brute, atol=1e-12)


def test_pauli_vector_json_roundtrip():
    v = pauli.PauliVector(1, [0.5, 0, 0, 0.5])
    assert pauli.PauliVector.from_json(v.to_json()).coeffs.tolist() == [0.5, 0, 0, 0.5]
    with pytest.raises(ValueError):
        pauli.PauliVector(2, [1.0, 2.0])
