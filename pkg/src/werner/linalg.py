"""Dense complex/real linear algebra used by every other module.

Matrices are plain ``numpy.ndarray`` objects. Rank and null-space decisions
use a relative tolerance against the largest singular value (or eigenvalue).
"""

from __future__ import annotations

import numpy as np

DEFAULT_REL_TOL = 1e-8
RESIDUAL_TOL = 1e-10


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    return np.kron(_as_matrix(a), _as_matrix(b))


def kron_all(factors) -> np.ndarray:
    """Kronecker product of a sequence, first factor most significant."""
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def matmul(a, b) -> np.ndarray:
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    return _as_matrix(a).conj().T


def trace(a) -> complex:
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace of non-square matrix {a.shape}")
    return complex(np.trace(a))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt pairing tr(a^dagger b); conjugate-linear in ``a``."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hermiticity_error(a) -> float:
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected square matrix, got {a.shape}")
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def _check_hermitian(a, tol: float) -> np.ndarray:
    a = _as_matrix(a)
    err = hermiticity_error(a)
    if err > tol:
        raise ValueError(f"matrix is not Hermitian (max |a - a^dagger| = {err:.3e} > {tol:.1e})")
    return a


def hermitian_eigh(a, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix."""
    a = _check_hermitian(a, tol)
    h = (a + a.conj().T) / 2
    return np.linalg.eigh(h)


def hermitian_eigenvalues(a, tol: float = 1e-10) -> list[float]:
    w, _ = hermitian_eigh(a, tol)
    return [float(x) for x in w]


def jacobi_eigh(a, tol: float = 1e-10, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Each off-diagonal pair (p, q) is first made real by a diagonal phase and
    then annihilated by a real plane rotation. Sweeps repeat until the
    off-diagonal Frobenius mass falls below ``1e-15`` times the total.
    Quadratic per rotation in Python, so only meant for small matrices.
    """
    a = _check_hermitian(a, tol)
    n = a.shape[0]
    h = ((a + a.conj().T) / 2).astype(complex)
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(h)
    if scale == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = np.linalg.norm(h - np.diag(np.diag(h)))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                app, aqq = h[p, p].real, h[q, q].real
                zeta = (aqq - app) / (2.0 * r)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                h[:, idx] = h[:, idx] @ u
                h[idx, :] = u.conj().T @ h[idx, :]
                h[p, q] = h[q, p] = 0.0
                v[:, idx] = v[:, idx] @ u
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(h).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def rank_psd(gram, rel_tol: float = DEFAULT_REL_TOL) -> int:
    """Number of eigenvalues above ``rel_tol * lambda_max``; 0 if lambda_max <= 0."""
    gram = _as_matrix(gram)
    if gram.size == 0:
        return 0
    w = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    lmax = w[-1]
    if lmax <= 0:
        return 0
    return int(np.sum(w > rel_tol * lmax))


def _singular_decomposition(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Singular values (padded with zeros to ``cols``) and right singular vectors."""
    rows, cols = m.shape
    if rows > 2 * cols:
        # tall: the triangular factor carries the same singular values
        m = np.linalg.qr(m, mode="r")
        rows = m.shape[0]
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    s_full = np.zeros(cols)
    s_full[: len(s)] = s
    return s_full, vt


def nullspace(m, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Orthonormal null-space basis as the columns of the returned array.

    Works for real or complex ``m``; a direction is null when its singular
    value is at most ``rel_tol`` times the spectral norm.
    """
    m = _as_matrix(m)
    cols = m.shape[1]
    if m.size == 0:
        return np.eye(cols, dtype=m.dtype)
    s, vt = _singular_decomposition(m)
    smax = s.max()
    if smax == 0.0:
        return np.eye(cols, dtype=vt.dtype)
    null = s <= rel_tol * smax
    return vt[null].conj().T


def real_nullspace(m, rel_tol: float = DEFAULT_REL_TOL) -> list[np.ndarray]:
    m = _as_matrix(m)
    if np.iscomplexobj(m):
        if np.max(np.abs(m.imag), initial=0.0) > 0:
            raise ValueError("real_nullspace expects a real matrix")
        m = m.real
    basis = nullspace(m, rel_tol)
    return [basis[:, k].copy() for k in range(basis.shape[1])]


def numerical_rank(m, rel_tol: float = DEFAULT_REL_TOL) -> int:
    m = _as_matrix(m)
    return m.shape[1] - nullspace(m, rel_tol).shape[1]


def realify(m) -> np.ndarray:
    """Real 2r x 2c matrix acting on (Re x, Im x) like ``m`` acts on x."""
    m = np.asarray(m)
    return np.block([[m.real, -m.imag], [m.imag, m.real]])
