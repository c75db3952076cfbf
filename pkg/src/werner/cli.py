"""Command-line front end: ``werner <command> ...``.

Exit codes: 0 on success (including any conjecture finding), 1 on malformed
input or refused requests, 2 on internal numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import analysis, stabilizer
from .diagrams import (
    Partition,
    PartitionSyntaxError,
    catalan,
    enumerate_noncrossing_matchings,
    enumerate_noncrossing_partitions,
    parse_partition,
)
from .pauli import PauliVector, expand, reconstruct
from .states import (
    bits_of,
    chord_state,
    cn_density,
    cyclic_state,
    diagram_density,
    radial_element,
    singlet,
    sym_element,
)

SCHEMA_VERSION = 1
MAX_N_MIXED = 6
MAX_N_PURE = 12


class UsageError(Exception):
    """Bad input; maps to exit code 1."""


def _complex_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _complex_vector(v: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in v]


def _read_matrix(obj) -> np.ndarray:
    if "matrix" in obj:
        m = np.array(obj["matrix"], dtype=float)
        if m.ndim == 3 and m.shape[-1] == 2:
            return m[..., 0] + 1j * m[..., 1]
        if m.ndim == 2:
            return m.astype(complex)
        raise UsageError("'matrix' must be a square array of reals or of [re, im] pairs")
    if "coeffs" in obj:
        return reconstruct(PauliVector.from_json(obj))
    raise UsageError("state JSON needs a 'matrix' or a Pauli 'coeffs' field")


def _check_n(n: int, cap: int, force: bool, what: str = "n"):
    if n < 1:
        raise UsageError(f"{what} must be at least 1")
    if n > cap and not force:
        raise UsageError(f"{what}={n} exceeds the safety cap {cap} (dense 2^n matrices); pass --force to run anyway")


def parse_terms(text: str) -> list[tuple[Partition, float]]:
    """Parse ``"1 2 | 3 4 : 1.0 ; 1 4 | 2 3 : 0.5"``."""
    terms = []
    offset = 0
    for chunk in text.split(";"):
        if ":" not in chunk:
            raise UsageError(f"term at position {offset} lacks ': coefficient'")
        diagram, coeff = chunk.rsplit(":", 1)
        try:
            p = parse_partition(diagram)
        except PartitionSyntaxError as e:
            raise UsageError(f"term at position {offset}: {e}") from e
        try:
            c = float(coeff)
        except ValueError as e:
            raise UsageError(f"bad coefficient {coeff.strip()!r} at position {offset + len(diagram) + 1}") from e
        terms.append((p, c))
        offset += len(chunk) + 1
    ns = {p.n for p, _ in terms}
    if len(ns) != 1:
        raise UsageError(f"all diagrams must use the same points, got sizes {sorted(ns)}")
    return terms


def _diagram(text: str) -> Partition:
    try:
        return parse_partition(text)
    except PartitionSyntaxError as e:
        raise UsageError(f"diagram {text!r}: {e}") from e


def _ints(text: str, k: int, name: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError as e:
        raise UsageError(f"--{name} expects {k} comma-separated integers") from e
    if len(vals) != k:
        raise UsageError(f"--{name} expects {k} comma-separated integers")
    return vals


def cmd_enumerate(args) -> tuple[dict, str]:
    kind = "matchings" if args.matchings else "partitions"
    _check_n(args.n, MAX_N_PURE if args.matchings else 12, args.force)
    if args.matchings:
        try:
            ds = enumerate_noncrossing_matchings(args.n)
        except ValueError as e:
            raise UsageError(str(e)) from e
        cat = catalan(args.n // 2)
    else:
        ds = enumerate_noncrossing_partitions(args.n)
        cat = catalan(args.n)
    text = "\n".join(str(d) for d in ds)
    return {"n": args.n, "kind": kind, "count": len(ds), "catalan": cat, "diagrams": [str(d) for d in ds]}, text


def _build_state(args):
    """Return (kind, n, pure_vector_or_None, matrix)."""
    if args.singlet:
        psi = singlet()
        return "singlet", 2, psi, np.outer(psi, psi.conj())
    if args.chord:
        m = _diagram(args.chord)
        if not m.is_matching:
            raise UsageError("--chord needs blocks of exactly two points")
        _check_n(m.n, MAX_N_PURE, args.force)
        psi = chord_state(m)
        return "chord", m.n, psi, None
    if args.cyclic:
        try:
            bits = bits_of(args.cyclic)
        except ValueError as e:
            raise UsageError(str(e)) from e
        _check_n(len(bits), MAX_N_PURE, args.force)
        psi = cyclic_state(bits)
        return "cyclic", len(bits), psi, None
    if args.cn is not None:
        _check_n(args.cn, MAX_N_MIXED, args.force)
        return "cn", args.cn, None, cn_density(args.cn)
    if args.diagram:
        d = _diagram(args.diagram)
        _check_n(d.n, MAX_N_MIXED, args.force)
        return "diagram", d.n, None, diagram_density(d)
    if args.sym:
        n1, n2, n3, n = _ints(args.sym, 4, "sym")
        _check_n(n, MAX_N_MIXED, args.force)
        try:
            return "sym", n, None, sym_element(n1, n2, n3, n)
        except ValueError as e:
            raise UsageError(str(e)) from e
    if args.radial:
        m, n = _ints(args.radial, 2, "radial")
        _check_n(n, MAX_N_MIXED, args.force)
        try:
            return "radial", n, None, radial_element(m, n)
        except ValueError as e:
            raise UsageError(str(e)) from e
    raise UsageError("choose one of --singlet, --chord, --cyclic, --cn, --diagram, --sym, --radial")


def cmd_state(args) -> tuple[dict, str]:
    kind, n, psi, rho = _build_state(args)
    out = {"n": n, "kind": kind}
    if kind == "cyclic" and psi is None:
        out["zero"] = True
        return out, "zero"
    if args.format == "amps":
        if psi is None:
            raise UsageError(f"--format amps needs a pure state; {kind} is a density matrix")
        out["amps"] = _complex_vector(psi)
        text = "\n".join(f"{k:0{n}b} {z.real:+.17g} {z.imag:+.17g}j" for k, z in enumerate(psi) if abs(z) > 0)
        return out, text
    if rho is None:
        rho = np.outer(psi, psi.conj())
    if args.format == "matrix":
        out["matrix"] = _complex_matrix(rho)
        return out, json.dumps(out["matrix"])
    v = expand(rho, n, tol=1e-10)
    out.update(v.to_json())
    return out, json.dumps(v.to_json())


def _read_state_arg(args) -> np.ndarray:
    if args.diagram:
        d = _diagram(args.diagram)
        _check_n(d.n, MAX_N_MIXED, args.force)
        return diagram_density(d)
    if args.cn is not None:
        _check_n(args.cn, MAX_N_MIXED, args.force)
        return cn_density(args.cn)
    if args.input:
        try:
            with open(args.input) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read {args.input}: {e}") from e
        rho = _read_matrix(obj)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] & (rho.shape[0] - 1):
            raise UsageError(f"state matrix must be square with a power-of-2 side, got {rho.shape}")
        _check_n(rho.shape[0].bit_length() - 1, MAX_N_MIXED, args.force)
        return rho
    raise UsageError("provide --diagram, --cn or --in")


def cmd_check(args) -> tuple[dict, str]:
    rho = _read_state_arg(args)
    rep = analysis.is_werner(rho, tol=args.tol, samples=args.samples, seed=args.seed)
    out = rep.to_json()
    return out, f"residual {rep.residual:.3e}  random-check {rep.random_check_max:.3e}  werner={rep.is_werner}"


def cmd_dimension(args) -> tuple[dict, str]:
    if args.pure:
        _check_n(args.n, MAX_N_PURE, args.force)
        dim = analysis.pure_werner_dimension(args.n, args.rel_tol)
        cat = catalan(args.n // 2) if args.n % 2 == 0 else 0
        return {"n": args.n, "pure_dim": dim, "catalan": cat}, f"pure Werner dimension {dim} (expected {cat})"
    _check_n(args.n, MAX_N_MIXED, args.force)
    dim = analysis.commutant_dimension(args.n, args.rel_tol)
    return {"n": args.n, "commutant_dim": dim, "catalan": catalan(args.n)}, f"commutant dimension {dim} (Catalan {catalan(args.n)})"


def cmd_conjecture(args) -> tuple[dict, str]:
    _check_n(args.n, analysis.MAX_CONJECTURE_N, args.force)
    rep = analysis.conjecture_test(args.n, rel_tol=args.rel_tol, force=args.force)
    out = rep.to_json()
    if args.format == "csv":
        states = [diagram_density(parse_partition(d)) for d in rep.diagrams]
        gram, _ = analysis.gram_rank_test(states, args.rel_tol)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + rep.diagrams)
        for d, row in zip(rep.diagrams, gram):
            w.writerow([d] + [repr(float(x)) for x in row])
        return out, buf.getvalue().rstrip("\n")
    text = (f"n={rep.n} diagrams={rep.num_diagrams} gram_rank={rep.gram_rank} "
            f"catalan={rep.catalan} commutant_dim={rep.commutant_dim} verdict={rep.verdict}")
    return out, text


def cmd_stabilizer(args) -> tuple[dict, str]:
    terms = parse_terms(args.terms)
    n = terms[0][0].n
    if args.pure:
        if not all(p.is_matching for p, _ in terms):
            raise UsageError("--pure needs chord diagrams (blocks of two points)")
        _check_n(n, MAX_N_PURE, args.force)
        rep = stabilizer.pure_stabilizer_cross_check(terms)
        out = rep.to_json()
        out["glb"] = str(stabilizer.glb_prediction(terms))
        out["computed_dim"] = rep.dim
        out["predicted_dim"] = 3
        out["match"] = rep.dim == 3
        text = f"pure stabilizer dim {rep.dim}, criterion {rep.criterion}, agrees {rep.agrees}"
        return out, text
    _check_n(n, MAX_N_MIXED, args.force)
    rep = stabilizer.stabilizer_conjecture_test(terms, tol=args.tol)
    text = (f"computed {rep.computed_dim}, predicted {rep.predicted_dim} (glb {rep.glb}), "
            f"containment {rep.containment_ok}, match {rep.match}")
    return rep.to_json(), text


def cmd_twirl(args) -> tuple[dict, str]:
    rho = _read_state_arg(args)
    n = rho.shape[0].bit_length() - 1
    out = analysis.twirl_project(rho)
    res = {"n": n, "matrix": _complex_matrix(out)}
    if np.max(np.abs(out - out.conj().T)) < 1e-12:
        res.update({"pauli": expand(out, n, tol=1e-10).to_json()})
    if args.monte_carlo:
        mc = analysis.monte_carlo_twirl(rho, args.monte_carlo, args.seed)
        res["monte_carlo_samples"] = args.monte_carlo
        res["monte_carlo_distance"] = float(np.linalg.norm(mc - out))
    return res, json.dumps(res["matrix"])


def cmd_suite(args) -> tuple[dict, str]:
    from .suite import run_suite

    results = run_suite(args.criteria)
    rows = [r.to_json() for r in results]
    lines = [f"{'#':>3}  {'result':6}  {'time/s':>7}  title"]
    for r in results:
        lines.append(f"{r.criterion:>3}  {'PASS' if r.passed else 'FAIL':6}  {r.seconds:7.2f}  {r.title}")
        for k, v in r.findings.items():
            lines.append(f"{'':>3}  finding n={k}: {json.dumps(v, sort_keys=True)}")
    out = {"results": rows, "all_passed": all(r.passed for r in results)}
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["criterion", "title", "passed"])
        for r in results:
            w.writerow([r.criterion, r.title, r.passed])
        return out, buf.getvalue().rstrip("\n")
    return out, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=analysis.DEFAULT_TOL, help="residual tolerance")
    common.add_argument("--rel-tol", type=float, default=1e-8, help="relative tolerance for rank decisions")
    common.add_argument("--seed", type=int, default=analysis.DEFAULT_SEED)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--force", action="store_true", help="allow n above the safety caps")

    def fmt(p, choices=("json", "text"), default="json"):
        p.add_argument("--format", choices=choices, default=default)

    parser = argparse.ArgumentParser(prog="werner", description="Werner-state constructions and checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list non-crossing diagrams")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--matchings", action="store_true")
    g.add_argument("--partitions", action="store_true")
    fmt(p, default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("state", parents=[common], help="build a state")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--singlet", action="store_true")
    g.add_argument("--chord")
    g.add_argument("--cyclic")
    g.add_argument("--cn", type=int)
    g.add_argument("--diagram")
    g.add_argument("--sym", help="n1,n2,n3,n")
    g.add_argument("--radial", help="m,n")
    p.add_argument("--format", choices=("amps", "matrix", "pauli"), default="matrix")
    p.set_defaults(func=cmd_state)

    for name, func, helptext in (("check", cmd_check, "verify Werner invariance"),
                                 ("twirl", cmd_twirl, "project onto the Werner space")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--diagram")
        g.add_argument("--cn", type=int)
        g.add_argument("--in", dest="input", help="state JSON with 'matrix' or Pauli 'coeffs'")
        if name == "check":
            p.add_argument("--samples", type=int, default=20)
        else:
            p.add_argument("--monte-carlo", type=int, default=0, metavar="SAMPLES")
        fmt(p)
        p.set_defaults(func=func)

    p = sub.add_parser("dimension", parents=[common], help="Werner-space dimension")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pure", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("conjecture", parents=[common], help="diagram-state basis experiment")
    p.add_argument("--n", type=int, required=True)
    fmt(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("stabilizer", parents=[common], help="stabilizer algebra vs glb prediction")
    p.add_argument("--terms", required=True, help='e.g. "1 2 | 3 4 : 1.0 ; 1 4 | 2 3 : 1.0"')
    p.add_argument("--pure", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("suite", parents=[common], help="run every acceptance check")
    p.add_argument("--criteria", type=int, nargs="*", help="subset of criterion numbers")
    fmt(p, ("json", "csv", "text"), default="text")
    p.set_defaults(func=cmd_suite)
    return parser


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    try:
        if args.tol <= 0 or args.rel_tol <= 0:
            raise UsageError("--tol and --rel-tol must be positive")
        report, text = args.func(args)
    except (UsageError, PartitionSyntaxError) as e:
        print(f"werner: error: {e}", file=sys.stderr)
        return 1
    except (RuntimeError, np.linalg.LinAlgError, FloatingPointError) as e:
        print(f"werner: numerical failure: {e}", file=sys.stderr)
        return 2
    fmt = getattr(args, "format", "json")
    if fmt in ("json", "amps", "matrix", "pauli"):
        payload = {"schema_version": SCHEMA_VERSION, "command": args.command, **report}
        _emit(json.dumps(payload, sort_keys=True), args.out)
    else:
        _emit(text, args.out)
    if args.command == "suite" and not report["all_passed"]:
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
