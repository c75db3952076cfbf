import numpy as np
import pytest

from werner import linalg
from werner.pauli import sigma
from werner.states import cn_density, singlet

from conftest import random_hermitian

X, Y, Z = sigma(1), sigma(2), sigma(3)


def test_kron_identity_and_xz():
    assert np.array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))
    expected = np.zeros((4, 4))
    expected[0, 2] = expected[2, 0] = 1
    expected[1, 3] = expected[3, 1] = -1
    assert np.array_equal(linalg.kron(X, Z), expected)


def test_kron_factorizes_products(rng):
    a, b = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
    u, v = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    lhs = linalg.kron(a, b) @ np.kron(u, v)
    # direct elementwise construction of (au) (x) (bv)
    au, bv = a @ u, b @ v
    rhs = np.array([au[i // 2] * bv[i % 2] for i in range(4)]).reshape(-1)
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_kron_associative(rng):
    a, b, c = (rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3)) for _ in range(3))
    assert np.allclose(linalg.kron(linalg.kron(a, b), c), linalg.kron(a, linalg.kron(b, c)), atol=1e-12)


def test_basic_products(rng):
    assert linalg.trace(np.eye(4)) == 4
    assert linalg.hs_inner(X, X) == 2
    assert linalg.hs_inner(X, Y) == 0
    a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    b = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    assert np.allclose(linalg.dagger(linalg.matmul(a, b)), linalg.matmul(linalg.dagger(b), linalg.dagger(a)), atol=1e-12)
    with pytest.raises(ValueError):
        linalg.matmul(a, a)
    with pytest.raises(ValueError):
        linalg.hs_inner(a, b)


def test_hs_inner_conjugate_linear_in_first(rng):
    a, b = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) for _ in range(2))
    assert np.isclose(linalg.hs_inner(2j * a, b), -2j * linalg.hs_inner(a, b))


def test_eigenvalues_examples():
    assert linalg.hermitian_eigenvalues(Z) == [-1.0, 1.0]
    s = singlet()
    assert np.allclose(linalg.hermitian_eigenvalues(np.outer(s, s.conj())), [0, 0, 0, 1], atol=1e-14)
    with pytest.raises(ValueError):
        linalg.hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


def test_c3_eigenvalues_match_jacobi_oracle():
    c3 = cn_density(3)
    w = np.array(linalg.hermitian_eigenvalues(c3))
    oracle, _ = linalg.jacobi_eigh(c3)
    assert np.allclose(w, oracle, atol=1e-12)
    assert w.min() >= -1e-12
    assert abs(w.sum() - 1) < 1e-12


@pytest.mark.parametrize("dim", [1, 2, 5, 8, 16])
def test_jacobi_agrees_with_lapack(rng, dim):
    h = random_hermitian(rng, dim)
    w, v = linalg.jacobi_eigh(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-10)
    assert np.linalg.norm(h - v @ np.diag(w) @ v.conj().T) <= 1e-10 * np.linalg.norm(h)


def test_eigh_reconstruction_and_trace(rng):
    h = random_hermitian(rng, 32)
    w, v = linalg.hermitian_eigh(h)
    assert np.linalg.norm(h - v @ np.diag(w) @ v.conj().T) <= 1e-10 * np.linalg.norm(h)
    assert abs(w.sum() - np.trace(h).real) <= 1e-10 * max(1.0, abs(np.trace(h)))


def test_rank_psd_examples():
    assert linalg.rank_psd(np.zeros((3, 3))) == 0
    assert linalg.rank_psd(np.eye(3)) == 3


def test_rank_psd_permutation_invariant(rng):
    b = rng.standard_normal((6, 3))
    g = b @ b.T
    p = np.eye(6)[rng.permutation(6)]
    assert linalg.rank_psd(g) == linalg.rank_psd(p @ g @ p.T) == 3


def test_nullspace_examples():
    assert linalg.real_nullspace(np.eye(3)) == []
    null = linalg.real_nullspace(np.zeros((2, 3)))
    assert len(null) == 3


@pytest.mark.parametrize("rows,cols,rank", [(5, 7, 3), (20, 6, 4), (4, 4, 4), (3, 8, 1)])
def test_rank_nullity(rng, rows, cols, rank):
    m = rng.standard_normal((rows, rank)) @ rng.standard_normal((rank, cols))
    null = np.array(linalg.real_nullspace(m)).reshape(-1, cols)
    assert len(null) + rank == cols
    assert np.allclose(m @ null.T, 0, atol=1e-10)
    assert np.allclose(null @ null.T, np.eye(len(null)), atol=1e-12)


def test_complex_nullspace_via_realify(rng):
    m = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
    assert linalg.nullspace(m).shape[1] == 2
    assert len(linalg.real_nullspace(linalg.realify(m))) == 4
