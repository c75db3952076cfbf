"""Batch acceptance checks shared by ``werner suite`` and the test-suite.

Each check returns a :class:`CheckResult`. ``passed`` reflects tool health;
conjecture outcomes are carried in ``findings`` and never fail a check.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import analysis, stabilizer
from .diagrams import (
    Partition,
    all_partitions,
    catalan,
    enumerate_noncrossing_matchings,
    enumerate_noncrossing_partitions,
    is_noncrossing,
)
from .linalg import rank_psd
from .states import chord_state, cn_density, cyclic_state, diagram_density, radial_element, singlet

CATALAN_REL_TOL = 1e-8
RESIDUAL_TOL = 1e-10
EXACT_TOL = 1e-12
MC_TOL = 1e-2
MC_SAMPLES = 100_000


@dataclass
class CheckResult:
    criterion: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    findings: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)


def check_mixed_catalan() -> tuple[bool, dict, dict]:
    dims = {n: analysis.commutant_dimension(n, CATALAN_REL_TOL) for n in range(1, 6)}
    dense = {n: analysis.commutant_basis_dense(n, CATALAN_REL_TOL).shape[1] for n in range(1, 6)}
    expected = {1: 1, 2: 2, 3: 5, 4: 14, 5: 42}
    ok = dims == dense == expected
    return ok, {"commutant_dim": dims, "dense_route_dim": dense, "expected": expected}, {}


def check_pure_catalan() -> tuple[bool, dict, dict]:
    dims = {n: analysis.pure_werner_dimension(n, CATALAN_REL_TOL) for n in range(1, 9)}
    expected = {1: 0, 2: 1, 3: 0, 4: 2, 5: 0, 6: 5, 7: 0, 8: 14}
    return dims == expected, {"pure_dim": dims, "expected": expected}, {}


def check_chord_basis() -> tuple[bool, dict, dict]:
    ok = True
    details = {}
    for n in (2, 4, 6, 8):
        states = [chord_state(m) for m in enumerate_noncrossing_matchings(n)]
        flat = np.stack(states)
        rank = rank_psd(flat.conj() @ flat.T, CATALAN_REL_TOL)
        worst = max(analysis.pure_werner_residual(s) for s in states)
        details[n] = {"count": len(states), "gram_rank": rank, "catalan": catalan(n // 2), "max_residual": worst}
        ok &= rank == len(states) == catalan(n // 2) and worst < RESIDUAL_TOL
    return ok, details, {}


def check_cn_family() -> tuple[bool, dict, dict]:
    s = singlet()
    singlet_err = float(np.max(np.abs(cn_density(2) - np.outer(s, s.conj()))))
    ok = singlet_err < EXACT_TOL
    details: dict = {"c2_vs_singlet": singlet_err}
    for n in range(1, 6):
        rho = cn_density(n)
        tr = float(np.trace(rho).real)
        min_eig = float(np.linalg.eigvalsh(rho)[0])
        res = analysis.werner_residual(rho)
        details[n] = {"trace": tr, "min_eigenvalue": min_eig, "werner_residual": res}
        ok &= abs(tr - 1) < EXACT_TOL and min_eig >= -RESIDUAL_TOL and res < RESIDUAL_TOL
    return ok, details, {}


def check_worked_example() -> tuple[bool, dict, dict]:
    w = np.exp(2j * np.pi / 3)
    expected = np.zeros(8, dtype=complex)
    expected[0b001], expected[0b010], expected[0b100] = 1, w, w**2
    expected /= np.sqrt(3)
    c = cyclic_state("001")
    err = float(np.max(np.abs(c - expected))) if c is not None else float("inf")
    zeros = {s: cyclic_state(s) is None for s in ("00", "11")}
    return err < EXACT_TOL and all(zeros.values()), {"c001_max_error": err, "zero": zeros}, {}


def check_main_conjecture() -> tuple[bool, dict, dict]:
    ok = True
    details, findings = {}, {}
    for n in range(2, 6):
        r = analysis.conjecture_test(n)
        details[n] = {"num_diagrams": r.num_diagrams, "catalan": r.catalan, "commutant_dim": r.commutant_dim}
        findings[n] = {"gram_rank": r.gram_rank, "verdict": r.verdict,
                       "min_gram_eigenvalue": min(r.gram_eigenvalues)}
        ok &= r.num_diagrams == r.catalan == r.commutant_dim
    return ok, details, findings


def check_symmetric() -> tuple[bool, dict, dict]:
    ok = True
    details = {}
    for n in range(1, 5):
        for m in range(n // 2 + 1):
            r = radial_element(m, n)
            res = analysis.werner_residual(r)
            perm = analysis.permutation_error(r, n)
            details[f"radial({m},{n})"] = {"werner_residual": res, "permutation_error": perm}
            ok &= res < RESIDUAL_TOL and perm < RESIDUAL_TOL
    for n in (2, 3, 4):
        rep = analysis.symmetric_werner_test(n)
        details[f"span n={n}"] = {"dimension": rep.span_dimension, "expected": n // 2 + 1}
        ok &= rep.span_dimension == n // 2 + 1
    return ok, details, {}


def check_stabilizer_baseline() -> tuple[bool, dict, dict]:
    ok = True
    details = {}
    for n in range(1, 5):
        worst = 0.0
        mismatches = []
        for d in enumerate_noncrossing_partitions(n):
            rho = diagram_density(d)
            st = stabilizer.stabilizer_algebra(rho)
            res = max(stabilizer.commutator_residual(x, rho) for x in stabilizer.delta_generators(d))
            worst = max(worst, res)
            if st.dim != stabilizer.delta_d_dimension(d):
                mismatches.append(str(d))
        details[n] = {"mismatches": mismatches, "max_containment_residual": worst}
        ok &= not mismatches and worst < RESIDUAL_TOL
    return ok, details, {}


def check_glb_conjecture() -> tuple[bool, dict, dict]:
    ok = True
    details, findings = {}, {}
    for n in (3, 4):
        pairs = list(itertools.combinations(enumerate_noncrossing_partitions(n), 2))
        mismatches = []
        containment_failures = []
        for a, b in pairs:
            r = stabilizer.stabilizer_conjecture_test([(a, 1.0), (b, 1.0)], tol=RESIDUAL_TOL)
            if not r.containment_ok:
                containment_failures.append(f"{a} + {b}")
            if not r.match:
                mismatches.append({"pair": [str(a), str(b)], "computed": r.computed_dim, "predicted": r.predicted_dim})
        details[n] = {"pairs": len(pairs), "containment_failures": containment_failures}
        findings[n] = {"glb_matches": len(pairs) - len(mismatches), "glb_mismatches": mismatches}
        ok &= not containment_failures
    return ok, details, findings


def check_pure_bipartition() -> tuple[bool, dict, dict]:
    m1, m2 = enumerate_noncrossing_matchings(4)
    singles = [stabilizer.pure_stabilizer_cross_check([(m, 1.0)]) for m in (m1, m2)]
    combo = stabilizer.pure_stabilizer_cross_check([(m1, 1.0), (m2, 2.0)])
    ok = all(r.dim == 6 and not r.criterion for r in singles) and combo.dim == 3 and combo.criterion
    details = {
        "single": [{"matching": r.terms[0][0], "dim": r.dim, "criterion": r.criterion} for r in singles],
        "combination": {"dim": combo.dim, "criterion": combo.criterion},
    }
    return ok, details, {}


def random_density(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((2**n, 2**n)) + 1j * rng.standard_normal((2**n, 2**n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def noncrossing_oracle(p: Partition) -> bool:
    owner = p.block_of()
    for a, b, c, d in itertools.combinations(range(1, p.n + 1), 4):
        if owner[a] == owner[c] and owner[b] == owner[d] and owner[a] != owner[b]:
            return False
    return True


def bipartition_oracle(matchings, n: int) -> bool:
    points = range(1, n + 1)
    for size in range(1, n):
        for s in itertools.combinations(points, size):
            s = set(s)
            if not any((a in s) != (b in s) for m in matchings for a, b in m.blocks):
                return False
    return True


def all_matchings(n: int) -> list[Partition]:
    return [p for p in all_partitions(n) if p.is_matching]


def check_oracles(seed: int = analysis.DEFAULT_SEED) -> tuple[bool, dict, dict]:
    rng = np.random.default_rng(seed)
    zero2 = np.zeros((4, 4), dtype=complex)
    zero2[0, 0] = 1.0
    inputs = [zero2, random_density(rng, 2), random_density(rng, 2), random_density(rng, 3), random_density(rng, 3)]
    mc_errors = []
    for k, rho in enumerate(inputs):
        exact = analysis.twirl_project(rho)
        mc = analysis.monte_carlo_twirl(rho, MC_SAMPLES, seed + k)
        mc_errors.append(float(np.linalg.norm(exact - mc)))
    nc_disagree = [str(p) for n in range(1, 7) for p in all_partitions(n) if is_noncrossing(p) != noncrossing_oracle(p)]
    bp_disagree = []
    bp_cases = 0
    for n in (2, 4, 6):
        ms = all_matchings(n)
        for r in range(1, len(ms) + 1):
            for subset in itertools.combinations(ms, r):
                bp_cases += 1
                terms = [(m, 1.0) for m in subset]
                if stabilizer.bipartition_criterion(terms) != bipartition_oracle(subset, n):
                    bp_disagree.append([str(m) for m in subset])
    ok = max(mc_errors) < MC_TOL and not nc_disagree and not bp_disagree
    details = {
        "mc_twirl_errors": mc_errors,
        "noncrossing_disagreements": nc_disagree,
        "bipartition_cases": bp_cases,
        "bipartition_disagreements": bp_disagree[:10],
    }
    return ok, details, {}


CHECKS = [
    (1, "Catalan dimension, mixed", check_mixed_catalan),
    (2, "Catalan dimension, pure", check_pure_catalan),
    (3, "Chord-basis theorem", check_chord_basis),
    (4, "C_n family", check_cn_family),
    (5, "C(001) worked example", check_worked_example),
    (6, "Main-conjecture experiment", check_main_conjecture),
    (7, "Symmetric/radial correspondence", check_symmetric),
    (8, "Stabilizer baseline", check_stabilizer_baseline),
    (9, "glb-conjecture experiment", check_glb_conjecture),
    (10, "Pure bipartition criterion", check_pure_bipartition),
    (11, "Oracle cross-checks", check_oracles),
]


def run_check(criterion: int) -> CheckResult:
    for cid, title, fn in CHECKS:
        if cid == criterion:
            t0 = time.perf_counter()
            passed, details, findings = fn()
            return CheckResult(cid, title, bool(passed), _jsonable(details), _jsonable(findings),
                               time.perf_counter() - t0)
    raise ValueError(f"unknown criterion {criterion}")


def run_suite(criteria=None) -> list[CheckResult]:
    ids = [cid for cid, _, _ in CHECKS] if criteria is None else list(criteria)
    return [run_check(cid) for cid in ids]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj
