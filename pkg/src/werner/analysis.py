"""Werner-invariance checks, Werner-space dimensions, twirling and the basis experiment."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import lru_cache
import itertools
from itertools import permutations

import numpy as np

from . import linalg
from .diagrams import Partition, catalan, enumerate_noncrossing_partitions
from .pauli import PauliVector, adjoint_generator, expand, reconstruct, sigma, traceless_adjoint_generator
from .states import diagram_density, permute_qubits_operator, radial_element, sym_element

DEFAULT_SEED = 20120403
DEFAULT_TOL = 1e-10
MAX_CONJECTURE_N = 5


def collective_generator(n: int, a: int) -> np.ndarray:
    """J_a = sum over qubits k of sigma_a acting on qubit k."""
    if a not in (1, 2, 3):
        raise ValueError(f"generator index must be 1..3, got {a}")
    s = sigma(a)
    out = np.zeros((2**n, 2**n), dtype=complex)
    for k in range(n):
        out += np.kron(np.kron(np.eye(2**k), s), np.eye(2 ** (n - k - 1)))
    return out


def _n_qubits(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of 2")
    return n


def werner_residual(rho) -> float:
    rho = np.asarray(rho)
    n = _n_qubits(rho.shape[0])
    return max(float(np.linalg.norm(j @ rho - rho @ j)) for j in (collective_generator(n, a) for a in (1, 2, 3)))


def haar_su2(rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` Haar-random SU(2) matrices from normalized Gaussian quaternions."""
    q = rng.standard_normal((size, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    a, b, c, d = q.T
    g = np.empty((size, 2, 2), dtype=complex)
    g[:, 0, 0] = a + 1j * b
    g[:, 0, 1] = c + 1j * d
    g[:, 1, 0] = -c + 1j * d
    g[:, 1, 1] = a - 1j * b
    return g


def collective_unitaries(gs: np.ndarray, n: int) -> np.ndarray:
    """Batched g^{(x)n} for an array of 2x2 matrices."""
    out = np.ones((gs.shape[0], 1, 1), dtype=complex)
    for _ in range(n):
        out = np.einsum("sij,skl->sikjl", out, gs).reshape(gs.shape[0], out.shape[1] * 2, out.shape[2] * 2)
    return out


@dataclass
class WernerReport:
    n: int
    residual: float
    random_check_max: float
    is_werner: bool
    tol: float
    samples: int
    seed: int

    def to_json(self) -> dict:
        return asdict(self)


def is_werner(rho, tol: float = DEFAULT_TOL, samples: int = 20, seed: int = DEFAULT_SEED) -> WernerReport:
    rho = np.asarray(rho, dtype=complex)
    n = _n_qubits(rho.shape[0])
    residual = werner_residual(rho)
    rng = np.random.default_rng(seed)
    worst = 0.0
    if samples:
        us = collective_unitaries(haar_su2(rng, samples), n)
        conj = us @ rho @ np.conj(np.transpose(us, (0, 2, 1)))
        worst = float(np.max(np.linalg.norm(conj - rho, axis=(1, 2))))
    return WernerReport(
        n=n,
        residual=residual,
        random_check_max=worst,
        is_werner=bool(residual < tol and worst < tol),
        tol=tol,
        samples=samples,
        seed=seed,
    )


def pure_werner_residual(psi) -> float:
    psi = np.asarray(psi)
    n = _n_qubits(psi.shape[0])
    return max(float(np.linalg.norm(collective_generator(n, a) @ psi)) for a in (1, 2, 3))


@lru_cache(maxsize=None)
def _traceless_invariants(k: int, rel_tol: float) -> np.ndarray:
    """Null space of the stacked adjoint maps on words without identity factors."""
    if k == 0:
        return np.ones((1, 1))
    stacked = np.vstack([traceless_adjoint_generator(k, a) for a in (1, 2, 3)])
    return linalg.nullspace(stacked, rel_tol)


@lru_cache(maxsize=None)
def commutant_basis(n: int, rel_tol: float = linalg.DEFAULT_REL_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the Werner space in Pauli coordinates.

    The commutator maps preserve which qubits carry sigma_0, so the null
    space is assembled block by block over support sets S, each block being
    the k = |S| qubit problem on digits 1..3.
    """
    columns = []
    powers = 4 ** np.arange(n - 1, -1, -1)
    for support in itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(n + 1)):
        local = _traceless_invariants(len(support), rel_tol)
        if local.shape[1] == 0:
            continue
        # full index of each traceless word placed on ``support``
        if support:
            digits = np.array(list(itertools.product((1, 2, 3), repeat=len(support))))
            rows = digits @ powers[list(support)]
        else:
            rows = np.zeros(1, dtype=int)
        block = np.zeros((4**n, local.shape[1]))
        block[rows] = local
        columns.append(block)
    basis = np.hstack(columns)
    basis.setflags(write=False)
    return basis


def commutant_basis_dense(n: int, rel_tol: float = linalg.DEFAULT_REL_TOL) -> np.ndarray:
    """Same space from the full stacked 3*4^n x 4^n map; slow beyond n = 5."""
    stacked = np.vstack([adjoint_generator(n, a) for a in (1, 2, 3)])
    return linalg.nullspace(stacked, rel_tol)


def commutant_dimension(n: int, rel_tol: float = linalg.DEFAULT_REL_TOL) -> int:
    return commutant_basis(n, rel_tol).shape[1]


def pure_werner_basis(n: int, rel_tol: float = linalg.DEFAULT_REL_TOL, dense: bool = False) -> np.ndarray:
    """Orthonormal basis (columns) of {psi : J_a psi = 0, a = 1, 2, 3}.

    J_3 is diagonal, so the kernel sits inside the span of basis states with
    as many 0s as 1s; only those columns enter the null-space problem unless
    ``dense`` is set.
    """
    stacked = np.vstack([collective_generator(n, a) for a in (1, 2, 3)])
    if dense:
        return linalg.nullspace(stacked, rel_tol)
    balanced = [k for k in range(2**n) if 2 * k.bit_count() == n]
    out = np.zeros((2**n, 0), dtype=complex)
    if balanced:
        null = linalg.nullspace(stacked[:, balanced], rel_tol)
        out = np.zeros((2**n, null.shape[1]), dtype=complex)
        out[balanced] = null
    return out


def pure_werner_dimension(n: int, rel_tol: float = linalg.DEFAULT_REL_TOL) -> int:
    return pure_werner_basis(n, rel_tol).shape[1]


def _project_hermitian(h: np.ndarray, n: int) -> np.ndarray:
    b = commutant_basis(n)
    s = expand((h + h.conj().T) / 2, n, tol=1e-9).coeffs
    return reconstruct(PauliVector(n, b @ (b.T @ s)))


def twirl_project(rho) -> np.ndarray:
    """Hilbert-Schmidt orthogonal projection onto the commutant of {g^{(x)n}}."""
    rho = np.asarray(rho, dtype=complex)
    n = _n_qubits(rho.shape[0])
    herm = (rho + rho.conj().T) / 2
    anti = (rho - rho.conj().T) / 2j
    out = _project_hermitian(herm, n)
    if np.max(np.abs(anti), initial=0.0) > 0:
        out = out + 1j * _project_hermitian(anti, n)
    return out


def monte_carlo_twirl(rho, samples: int = 100_000, seed: int = DEFAULT_SEED, chunk: int = 10_000) -> np.ndarray:
    """Average of g^{(x)n} rho g^{(x)n dagger} over seeded Haar samples."""
    rho = np.asarray(rho, dtype=complex)
    n = _n_qubits(rho.shape[0])
    rng = np.random.default_rng(seed)
    acc = np.zeros_like(rho)
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        us = collective_unitaries(haar_su2(rng, k), n)
        acc += np.einsum("sij,jk,slk->il", us, rho, us.conj())
        done += k
    return acc / samples


def gram_rank_test(states, rel_tol: float = linalg.DEFAULT_REL_TOL) -> tuple[np.ndarray, int]:
    states = [np.asarray(s) for s in states]
    flat = np.stack([s.reshape(-1) for s in states])
    gram = (flat.conj() @ flat.T).real
    return gram, linalg.rank_psd(gram, rel_tol)


@dataclass
class ConjectureReport:
    n: int
    num_diagrams: int
    gram_rank: int
    catalan: int
    commutant_dim: int
    verdict: str
    max_werner_residual: float
    max_span_residual: float
    gram_eigenvalues: list[float] = field(default_factory=list)
    diagrams: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def conjecture_test(
    n: int,
    rel_tol: float = linalg.DEFAULT_REL_TOL,
    tol: float = DEFAULT_TOL,
    force: bool = False,
) -> ConjectureReport:
    """Check whether the non-crossing diagram densities are a basis of the Werner space."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_CONJECTURE_N and not force:
        raise ValueError(f"n={n} exceeds the default cap {MAX_CONJECTURE_N}; pass force=True")
    diagrams = enumerate_noncrossing_partitions(n)
    states = [diagram_density(d) for d in diagrams]
    gram, rank = gram_rank_test(states, rel_tol)
    cdim = commutant_dimension(n, rel_tol)
    werner = max(werner_residual(s) for s in states)
    span = max(float(np.linalg.norm(s - twirl_project(s))) for s in states)
    if werner >= tol or span >= tol:
        raise RuntimeError(f"diagram states failed self-check: werner residual {werner:.2e}, span residual {span:.2e}")
    cat = catalan(n)
    if rank == len(states) == cat == cdim:
        verdict = "consistent"
    elif rank < len(states):
        verdict = "refuted-independence"
    else:
        verdict = "refuted-span"
    return ConjectureReport(
        n=n,
        num_diagrams=len(states),
        gram_rank=rank,
        catalan=cat,
        commutant_dim=cdim,
        verdict=verdict,
        max_werner_residual=werner,
        max_span_residual=span,
        gram_eigenvalues=[float(x) for x in np.linalg.eigvalsh(gram)],
        diagrams=[str(d) for d in diagrams],
    )


def permutation_error(rho, n: int) -> float:
    """Largest change of ``rho`` under any relabeling of the qubits."""
    return max(float(np.linalg.norm(permute_qubits_operator(rho, perm, n) - rho)) for perm in permutations(range(n)))


@dataclass
class SymmetricReport:
    n: int
    radial_residuals: list[float]
    radial_permutation_errors: list[float]
    span_dimension: int
    radial_span_dimension: int
    expected_dimension: int
    ok: bool

    def to_json(self) -> dict:
        return asdict(self)


def symmetric_werner_test(n: int, tol: float = DEFAULT_TOL, rel_tol: float = linalg.DEFAULT_REL_TOL) -> SymmetricReport:
    """Radial polynomials vs. the permutation-invariant Werner space."""
    radials = [radial_element(m, n) for m in range(n // 2 + 1)]
    residuals = [werner_residual(r) for r in radials]
    perm_errors = [permutation_error(r, n) for r in radials]
    twirled = []
    for n1 in range(n + 1):
        for n2 in range(n + 1 - n1):
            for n3 in range(n + 1 - n1 - n2):
                twirled.append(twirl_project(sym_element(n1, n2, n3, n)))
    _, span_dim = gram_rank_test(twirled, rel_tol)
    _, radial_dim = gram_rank_test(radials, rel_tol)
    _, joint_dim = gram_rank_test(twirled + radials, rel_tol)
    expected = n // 2 + 1
    scale = max(1.0, max(float(np.linalg.norm(r)) for r in radials))
    ok = (
        all(r < tol * scale for r in residuals)
        and all(e < tol * scale for e in perm_errors)
        and span_dim == radial_dim == joint_dim == expected
    )
    return SymmetricReport(
        n=n,
        radial_residuals=residuals,
        radial_permutation_errors=perm_errors,
        span_dimension=span_dim,
        radial_span_dimension=radial_dim,
        expected_dimension=expected,
        ok=ok,
    )


def _real_fit(target, states) -> tuple[np.ndarray, float]:
    flat = np.stack([np.asarray(s).reshape(-1) for s in states]).T
    a = np.vstack([flat.real, flat.imag])
    t = np.asarray(target, dtype=complex).reshape(-1)
    rhs = np.concatenate([t.real, t.imag])
    coef, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    return coef, float(np.linalg.norm(a @ coef - rhs))


def span_residual(target, states) -> float:
    """Frobenius distance from ``target`` to the real span of ``states``."""
    return _real_fit(target, states)[1]


def diagram_expansion(target, n: int) -> tuple[list[Partition], np.ndarray, float]:
    """Real coefficients of ``target`` in the diagram densities, plus the fit residual."""
    diagrams = enumerate_noncrossing_partitions(n)
    coef, res = _real_fit(target, [diagram_density(d) for d in diagrams])
    return diagrams, coef, res
