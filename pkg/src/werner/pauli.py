"""Pauli-tensor basis of n-qubit Hermitian matrices.

Coefficients are ordered base-4 lexicographically with qubit 1 as the most
significant digit, and normalized as ``s_I = 2**-n tr(sigma_I rho)`` so that
``reconstruct`` inverts ``expand`` exactly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .linalg import hermiticity_error, kron_all

_SIGMA = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# -i[sigma_a, sigma_b] = 2 eps_abc sigma_c, as a 4x4 real map on Pauli coordinates
_ADJOINT = np.zeros((3, 4, 4))
for _a, _b, _c in itertools.permutations((1, 2, 3)):
    _sign = 1.0 if (_a, _b, _c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1.0
    _ADJOINT[_a - 1, _c, _b] = 2.0 * _sign


def sigma(i: int) -> np.ndarray:
    if i not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0..3, got {i}")
    return _SIGMA[i].copy()


def multi_indices(n: int):
    """All base-4 multi-indices of length n in coefficient order."""
    return itertools.product(range(4), repeat=n)


def index_of(digits) -> int:
    k = 0
    for d in digits:
        if d not in (0, 1, 2, 3):
            raise ValueError(f"Pauli digit must be 0..3, got {d}")
        k = 4 * k + d
    return k


def digits_of(k: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        k, d = divmod(k, 4)
        out.append(d)
    return tuple(reversed(out))


def sigma_tensor(digits) -> np.ndarray:
    digits = tuple(digits)
    if not digits:
        raise ValueError("multi-index must have at least one digit")
    return kron_all(sigma(d) for d in digits)


_STACK = np.stack(_SIGMA)  # (4, 2, 2)


def _pauli_transform(t: np.ndarray, n: int) -> np.ndarray:
    """Return sum_{r,c} prod_k sigma_{i_k}[r_k, c_k] t[r, c] as a length 4**n vector."""
    t = t.reshape((2,) * (2 * n))
    # axes r1..rn c1..cn; peel qubit k off the front, appending its Pauli axis at the end
    for k in range(n):
        t = np.tensordot(t, _STACK, axes=([0, n - k], [1, 2]))
    return t.reshape(-1)


def _pauli_synthesis(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Return sum_I coeffs[I] sigma_I as a 2**n x 2**n matrix."""
    t = np.asarray(coeffs, dtype=complex).reshape((4,) * n)
    for _ in range(n):
        t = np.tensordot(t, _STACK, axes=([0], [0]))
    # axes are now r1 c1 r2 c2 ...
    t = t.transpose([2 * k for k in range(n)] + [2 * k + 1 for k in range(n)])
    return t.reshape(2**n, 2**n)


@dataclass(frozen=True)
class PauliVector:
    """Real coefficients s_I of a Hermitian matrix in the Pauli tensor basis."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float).reshape(-1)
        if coeffs.shape != (4**self.n,):
            raise ValueError(f"expected {4**self.n} coefficients for n={self.n}, got {coeffs.size}")
        object.__setattr__(self, "coeffs", coeffs)

    def __getitem__(self, digits) -> float:
        if isinstance(digits, str):
            digits = [int(c) for c in digits]
        return float(self.coeffs[index_of(digits)])

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [float(x) for x in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "PauliVector":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), np.asarray(obj["coeffs"], dtype=float))


def expand(rho, n: int | None = None, tol: float = 1e-12) -> PauliVector:
    rho = np.asarray(rho)
    if n is None:
        n = int(round(np.log2(rho.shape[0])))
    if rho.shape != (2**n, 2**n):
        raise ValueError(f"expected a {2**n}x{2**n} matrix for n={n}, got {rho.shape}")
    scale = max(1.0, float(np.max(np.abs(rho))))
    if hermiticity_error(rho) > tol * scale:
        raise ValueError("expand requires a Hermitian matrix")
    # tr(sigma_I rho) = sum_rc sigma_I[r, c] rho[c, r]
    raw = _pauli_transform(rho.T, n) / 2**n
    if np.max(np.abs(raw.imag)) > tol * scale:
        raise ValueError("Pauli coefficients are not real; input not Hermitian")
    return PauliVector(n, raw.real)


def reconstruct(v: PauliVector) -> np.ndarray:
    n = v.n
    return _pauli_synthesis(v.coeffs, n)


def traceless_adjoint_generator(k: int, a: int) -> np.ndarray:
    """Restriction of ``adjoint_generator(k, a)`` to words with no identity factor.

    Indices run over digits 1..3 in base-3 lexicographic order. The adjoint
    action never moves a qubit into or out of sigma_0, so the full map is a
    direct sum of these blocks over identity-support patterns.
    """
    if a not in (1, 2, 3):
        raise ValueError(f"generator index must be 1..3, got {a}")
    local = _ADJOINT[a - 1][1:, 1:]
    eye = np.eye(3)
    out = np.zeros((3**k, 3**k))
    for q in range(k):
        term = np.ones((1, 1))
        for j in range(k):
            term = np.kron(term, local if j == q else eye)
        out += term
    return out


def adjoint_generator(n: int, a: int) -> np.ndarray:
    """Real 4**n x 4**n matrix of X -> -i[J_a, X] in Pauli coordinates.

    ``J_a`` is the collective generator sum_k sigma_a at qubit k.
    """
    if a not in (1, 2, 3):
        raise ValueError(f"generator index must be 1..3, got {a}")
    local = _ADJOINT[a - 1]
    eye = np.eye(4)
    out = np.zeros((4**n, 4**n))
    for k in range(n):
        term = np.ones((1, 1))
        for j in range(n):
            term = np.kron(term, local if j == k else eye)
        out += term
    return out
