"""Local-unitary stabilizer algebras of Werner states.

An element of su(2)^n is stored as an ``(n, 3)`` real array ``x``; it stands
for the anti-Hermitian generator ``-i sum_k sum_a x[k, a] sigma_a^(k)``.
Everything here is at the Lie-algebra level, i.e. it describes the identity
component of the stabilizer group only.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg
from .diagrams import Partition, common_coarsening
from .pauli import sigma
from .states import chord_state, diagram_density

SCOPE_NOTE = "Lie-algebra (identity component) comparison; discrete stabilizer components are not tested"


@lru_cache(maxsize=None)
def local_sigma(n: int, k: int, a: int) -> np.ndarray:
    """sigma_a on qubit k (0-based), identity elsewhere."""
    out = np.kron(np.kron(np.eye(2**k), sigma(a)), np.eye(2 ** (n - k - 1)))
    out.setflags(write=False)
    return out


def generator_matrix(x) -> np.ndarray:
    """Hermitian H(x) = sum_k sum_a x[k, a] sigma_a^(k)."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    out = np.zeros((2**n, 2**n), dtype=complex)
    for k in range(n):
        for a in range(3):
            if x[k, a]:
                out += x[k, a] * local_sigma(n, k, a + 1)
    return out


def commutator_residual(x, rho) -> float:
    h = generator_matrix(x)
    return float(np.linalg.norm(h @ rho - rho @ h))


@dataclass
class StabilizerBasis:
    n: int
    basis: list[np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """Basis vectors as columns of a (3n, dim) array."""
        if not self.basis:
            return np.zeros((3 * self.n, 0))
        return np.stack([b.reshape(-1) for b in self.basis], axis=1)

    def contains(self, x, tol: float = 1e-8) -> bool:
        v = np.asarray(x, dtype=float).reshape(-1)
        b = self.matrix()
        return float(np.linalg.norm(v - b @ (b.T @ v))) <= tol * max(1.0, float(np.linalg.norm(v)))


def _n_qubits(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of 2")
    return n


def stabilizer_algebra(rho, rel_tol: float = linalg.DEFAULT_REL_TOL) -> StabilizerBasis:
    """Real null space of x -> [H(x), rho] over the 3n local generators."""
    rho = np.asarray(rho, dtype=complex)
    if linalg.hermiticity_error(rho) > 1e-10 * max(1.0, float(np.max(np.abs(rho)))):
        raise ValueError("stabilizer_algebra expects a Hermitian matrix")
    n = _n_qubits(rho.shape[0])
    cols = []
    for k in range(n):
        for a in (1, 2, 3):
            s = local_sigma(n, k, a)
            c = (s @ rho - rho @ s).reshape(-1)
            cols.append(np.concatenate([c.real, c.imag]))
    null = linalg.nullspace(np.stack(cols, axis=1), rel_tol)
    return StabilizerBasis(n, [null[:, j].reshape(n, 3) for j in range(null.shape[1])])


def delta_generators(d: Partition) -> list[np.ndarray]:
    """Generators of Delta_D: the same sigma_a on every qubit of one block."""
    out = []
    for block in d.blocks:
        for a in range(3):
            x = np.zeros((d.n, 3))
            for q in block:
                x[q - 1, a] = 1.0
            out.append(x)
    return out


def delta_d_dimension(d: Partition) -> int:
    return 3 * len(d.blocks)


def _active(terms, tol: float):
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one (diagram, coefficient) term")
    n = terms[0][0].n
    if any(p.n != n for p, _ in terms):
        raise ValueError("all diagrams must live on the same number of points")
    return [(p, c) for p, c in terms if abs(c) > tol]


def glb_prediction(terms, tol: float = 0.0) -> Partition:
    """Common coarsening of the diagrams carrying a nonzero coefficient."""
    active = _active(terms, tol)
    if not active:
        raise ValueError("every coefficient is zero")
    return common_coarsening([p for p, _ in active])


def combine_diagram_states(terms, tol: float = 0.0) -> np.ndarray:
    """sum_D a_D rho_D, rescaled to trace 1 whenever the trace is nonzero."""
    active = _active(terms, tol)
    if not active:
        raise ValueError("every coefficient is zero")
    rho = sum(c * diagram_density(p) for p, c in active)
    tr = np.trace(rho).real
    if abs(tr) > 1e-12:
        rho = rho / tr
    return rho


@dataclass
class StabilizerReport:
    n: int
    terms: list[tuple[str, float]]
    glb: str
    computed_dim: int
    predicted_dim: int
    containment_ok: bool
    containment_residual: float
    match: bool
    mixture: str
    is_psd: bool
    scope: str = SCOPE_NOTE

    def to_json(self) -> dict:
        return asdict(self)


def stabilizer_conjecture_test(terms, tol: float = 1e-10, rel_tol: float = linalg.DEFAULT_REL_TOL) -> StabilizerReport:
    """Compare the stabilizer algebra of sum a_D rho_D with Delta over the glb diagram."""
    terms = list(terms)
    glb = glb_prediction(terms)
    rho = combine_diagram_states(terms)
    stab = stabilizer_algebra(rho, rel_tol)
    predicted = delta_d_dimension(glb)
    residual = max(commutator_residual(x, rho) for x in delta_generators(glb))
    contained = residual < tol and all(stab.contains(x) for x in delta_generators(glb))
    min_eig = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0])
    return StabilizerReport(
        n=glb.n,
        terms=[(str(p), float(c)) for p, c in terms],
        glb=str(glb),
        computed_dim=stab.dim,
        predicted_dim=predicted,
        containment_ok=bool(contained),
        containment_residual=residual,
        match=stab.dim == predicted,
        mixture="convex" if all(c >= 0 for _, c in terms) else "signed",
        is_psd=min_eig >= -tol,
    )


def bipartition_criterion(terms, tol: float = 0.0) -> bool:
    """Every bipartition of the qubits is crossed by a chord of some active matching."""
    active = _active(terms, tol)
    if any(not m.is_matching for m, _ in active):
        raise ValueError("bipartition_criterion expects perfect matchings")
    n = terms[0][0].n
    if n > 12:
        raise ValueError("bipartition_criterion is exhaustive; n must be at most 12")
    chord_masks = [[(1 << (a - 1)) | (1 << (b - 1)) for a, b in m.blocks] for m, _ in active]
    full = (1 << n) - 1
    # fix qubit 1 inside S to visit each bipartition once
    for rest in range(1 << (n - 1)):
        s = 1 | (rest << 1)
        if s == full:
            continue
        crossed = any(
            any(bin(s & cm).count("1") == 1 for cm in chords)
            for chords in chord_masks
        )
        if not crossed:
            return False
    return True


def pure_stabilizer_algebra(psi, rel_tol: float = linalg.DEFAULT_REL_TOL) -> StabilizerBasis:
    """Solutions of H(x) psi = mu psi with a real phase slack mu, projected to x."""
    psi = np.asarray(psi, dtype=complex)
    n = _n_qubits(psi.shape[0])
    cols = []
    for k in range(n):
        for a in (1, 2, 3):
            c = local_sigma(n, k, a) @ psi
            cols.append(np.concatenate([c.real, c.imag]))
    cols.append(np.concatenate([-psi.real, -psi.imag]))
    null = linalg.nullspace(np.stack(cols, axis=1), rel_tol)
    xs = null[: 3 * n]
    # mu is fixed by x (psi != 0), so dropping it keeps the dimension; re-orthonormalize
    q, r = np.linalg.qr(xs) if xs.shape[1] else (xs, None)
    return StabilizerBasis(n, [q[:, j].reshape(n, 3) for j in range(q.shape[1])])


@dataclass
class PureStabilizerReport:
    n: int
    terms: list[tuple[str, float]]
    dim: int
    mixed_route_dim: int
    criterion: bool
    agrees: bool
    scope: str = SCOPE_NOTE
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def pure_stabilizer_cross_check(terms, tol: float = 0.0, rel_tol: float = linalg.DEFAULT_REL_TOL) -> PureStabilizerReport:
    terms = list(terms)
    active = _active(terms, tol)
    if not active:
        raise ValueError("every coefficient is zero")
    psi = sum(c * chord_state(m) for m, c in active)
    norm = np.linalg.norm(psi)
    if norm <= 1e-12:
        raise ValueError("the combination of chord states vanishes")
    psi = psi / norm
    stab = pure_stabilizer_algebra(psi, rel_tol)
    mixed = stabilizer_algebra(np.outer(psi, psi.conj()), rel_tol)
    crit = bipartition_criterion(terms, tol)
    notes = []
    if mixed.dim != stab.dim:
        notes.append("phase-slack and projector routes disagree")
    return PureStabilizerReport(
        n=psi.shape[0].bit_length() - 1,
        terms=[(str(m), float(c)) for m, c in terms],
        dim=stab.dim,
        mixed_route_dim=mixed.dim,
        criterion=crit,
        agrees=(stab.dim == 3) == crit,
        notes=notes,
    )
