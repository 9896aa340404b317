"""Command-line front end and the golden corpus runner.

Exit codes: 0 success, 1 negative result (not a design, infeasible,
nonmember, failed check), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction
from importlib import resources

import mpmath

from . import design as design_mod
from . import hilbert, lattice, search, simplex
from .design import FLOAT_RESIDUAL_TOL, FLOAT_SIGN_TOL, FULL, PAIRS, WeightedDesign
from .harmonics import invariant_harmonic_dims
from .orbits import GCVOrbit
from .scalars import DEFAULT_BITS, format_scalar, is_exact, parse_scalar, to_float

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2
BITS_ENV = "GCV_DESIGN_BITS"
DISPLAY_DIGITS = 6
POLISH_TARGET = 1e-40  # corpus refinements run far past the asserted tolerance


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- formatting


class Formatter:
    """Renders scalars: exact values verbatim, floats to 6 significant digits unless ``full``."""

    def __init__(self, full: bool = False, bits: int = DEFAULT_BITS):
        self.full = full
        self.bits = bits

    def __call__(self, x):
        if isinstance(x, bool) or x is None or isinstance(x, str):
            return x
        if isinstance(x, int):
            return x
        if is_exact(x):
            return format_scalar(x)
        if isinstance(x, float):
            x = mpmath.mpf(x)
        if self.full:
            return format_scalar(x, self.bits)
        return mpmath.nstr(x, DISPLAY_DIGITS)

    def tree(self, obj):
        if isinstance(obj, dict):
            return {str(k): self.tree(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self.tree(v) for v in obj]
        return self(obj)


def _table(obj, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            key = f"{prefix}{k}"
            if isinstance(v, dict):
                lines.extend(_table(v, key + "."))
            elif isinstance(v, list) and v and all(isinstance(r, dict) for r in v):
                lines.append(f"{key}:")
                lines.extend("  " + line for line in _rows(v))
            else:
                lines.append(f"{key}: {_cell(v)}")
        return lines
    if isinstance(obj, list) and obj and all(isinstance(r, dict) for r in obj):
        return _rows(obj)
    return [_cell(obj)]


def _cell(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    return str(v)


def _rows(rows: list[dict]) -> list[str]:
    cols = list(dict.fromkeys(k for r in rows for k in r))
    cells = [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    out.extend("  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells)
    return out


def emit(payload, args) -> None:
    data = Formatter(args.full_precision, args.bits).tree(payload)
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(_table(data)))


# ---------------------------------------------------------------- input


def default_bits() -> int:
    raw = os.environ.get(BITS_ENV)
    if raw is None:
        return DEFAULT_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise InputError(f"{BITS_ENV}={raw!r} is not an integer") from exc
    if bits < 53:
        raise InputError(f"{BITS_ENV} must be at least 53")
    return bits


def corpus_names() -> list[str]:
    root = resources.files("artifact").joinpath("data")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_asset(anchor: str) -> dict:
    path = resources.files("artifact").joinpath("data", f"{anchor}.json")
    if not path.is_file():
        raise InputError(f"no corpus asset named {anchor!r}")
    return json.loads(path.read_text())


def _read_json(args) -> dict:
    try:
        if getattr(args, "anchor", None):
            return load_asset(args.anchor)
        if getattr(args, "json", None):
            return json.loads(args.json)
        if getattr(args, "file", None):
            with open(args.file) as fh:
                return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    raise InputError("give --file, --json or --anchor")


def _design_from(obj: dict) -> WeightedDesign:
    try:
        return WeightedDesign.from_json(obj.get("design", obj))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed design: {exc}") from exc


def _orbits_from(obj: dict) -> list[GCVOrbit]:
    obj = obj.get("design", obj)
    try:
        n = int(obj["n"])
        out = []
        for item in obj["orbits"]:
            A = parse_scalar(item["A"]) if "A" in item else parse_scalar(item["a"]) ** 2
            out.append(GCVOrbit(n, A, int(item["s"])))
        return out
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed orbit list: {exc}") from exc


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _int_vector(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"expected integers, got {text!r}") from exc


def _design_json(d: WeightedDesign) -> dict:
    return {
        "n": d.n,
        "convention": d.convention,
        "orbits": [{"A": o.A, "s": o.s, "W": w} for o, w in d.orbits],
    }


# ---------------------------------------------------------------- subcommands


def _verification(report) -> dict:
    out = {
        "summary": report.summary(),
        "requested": report.requested,
        "verified": report.verified,
        "max_degree": report.max_degree,
        "exact": report.exact,
        "path": report.path,
        "residuals": {str(k): v for k, v in sorted(report.residuals.items())},
    }
    if report.failing:
        deg, label, res = report.failing
        out["failing"] = {"degree": deg, "at": str(label), "residual": res}
    return out


def verify_with_probe(d: WeightedDesign, t: int, mode: str, tol: float, bits: int, path: str = "auto"):
    """Verify at ``t``; on success also test the next even degree to report where it fails."""
    report = design_mod.verify_design(d, t, mode, tol, bits, path)
    if not report.verified:
        return report
    probe_degree = t + 1 if t % 2 else t + 2
    probe_path = path if path == "moment" or probe_degree <= 11 else "auto"
    probe = design_mod.verify_design(d, probe_degree, mode, tol, bits, probe_path)
    if probe.verified:
        return report
    probe.requested = t
    probe.verified = True
    return probe


def cmd_verify(args) -> int:
    d = _design_from(_read_json(args))
    mode = "float" if args.float or not d.is_exact else "exact"
    if args.exact and not d.is_exact:
        raise InputError("exact verification needs exact parameters")
    report = verify_with_probe(d, args.degree, mode, args.tol, args.bits, args.path)
    emit(_verification(report), args)
    return EXIT_OK if report.verified else EXIT_NEGATIVE


def cmd_solve(args) -> int:
    orbits = _orbits_from(_read_json(args))
    res = design_mod.solve_weights(orbits, args.degree, args.convention, args.tol)
    emit(
        {
            "status": res.status,
            "detail": res.detail,
            "convention": args.convention,
            "orbits": [
                {"A": o.A, "s": o.s, "share": None if res.scaled_weights is None else res.scaled_weights[i],
                 "W": None if res.weights is None else res.weights[i]}
                for i, o in enumerate(orbits)
            ],
        },
        args,
    )
    return EXIT_OK if res.feasible else EXIT_NEGATIVE


def _two_orbits(args) -> tuple[GCVOrbit, GCVOrbit]:
    out = []
    for A_text, a_text, s in ((args.A1, args.a1, args.s1), (args.A2, args.a2, args.s2)):
        if (A_text is None) == (a_text is None):
            raise InputError("give exactly one of --A<i> or --a<i> per orbit")
        A = _scalar(A_text) if A_text is not None else _scalar(a_text) ** 2
        if args.float:
            A = to_float(A, args.bits)
        try:
            out.append(GCVOrbit(args.n, A, s))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    return out[0], out[1]


def _classification(fn, args) -> int:
    o1, o2 = _two_orbits(args)
    tol = args.tol if args.tol is not None else (FLOAT_SIGN_TOL if args.float else None)
    with mpmath.workprec(args.bits):
        c = fn(o1, o2, tol)
    emit(
        {
            "case": c.case,
            "impossible": c.impossible,
            "shares": None if c.scaled_weights is None else list(c.scaled_weights),
            "values": {k: list(v) for k, v in c.values.items()},
        },
        args,
    )
    return EXIT_NEGATIVE if c.case == "none" else EXIT_OK


def cmd_classify7(args) -> int:
    return _classification(design_mod.classify_7, args)


def cmd_classify9(args) -> int:
    return _classification(design_mod.classify_9, args)


def cmd_bounds(args) -> int:
    try:
        bound = design_mod.degree_upper_bound(args.n, args.s)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    emit({"n": args.n, "s": args.s, "bound": bound}, args)
    return EXIT_OK


def _hits(result) -> list[dict]:
    return [{"n": h["n"], "s": h["s"], "A": format_scalar(h["A"])} for h in result.hits]


def cmd_search7(args) -> int:
    result = search.search_single_orbit_7(args.nmax)
    emit({"n_max": args.nmax, "examined": result.examined, "hits": _hits(result)}, args)
    return EXIT_OK if result.hits else EXIT_NEGATIVE


def cmd_tanino(args) -> int:
    if args.smax < 0:
        raise InputError("--smax must be nonnegative")
    hits = search.tanino_scan(args.smax, args.distinct)
    emit(
        {"s_max": args.smax, "count": len(hits), "hits": [{"n": n, "s1": a, "s2": b} for n, a, b in hits]},
        args,
    )
    return EXIT_OK


def cmd_curve(args) -> int:
    pts = search.curve_integer_points(args.xmax, args.ymax, args.xmin, args.ymin)
    emit({"points": [{"x": x, "y": y} for x, y in pts]}, args)
    return EXIT_OK


def cmd_refine(args) -> int:
    d = _design_from(_read_json(args))
    start = search.max_moment_residual(d, args.degree, args.bits)
    try:
        refined = search.refine_design(
            d, args.degree, args.target, args.bits, args.max_iter, resolve_weights=args.resolve_weights
        )
    except (search.NoConvergenceError, search.NegativeWeightError) as exc:
        emit({"status": type(exc).__name__, "detail": str(exc), "initial_residual": start}, args)
        return EXIT_NEGATIVE
    final = search.max_moment_residual(refined, args.degree, args.bits)
    with mpmath.workprec(args.bits):
        heads = [mpmath.sqrt(to_float(o.A, args.bits)) for o, _ in refined.orbits]
    payload = {
        "status": "converged",
        "initial_residual": start,
        "final_residual": final,
        "orbits": [{"a": a, "s": o.s, "W": w} for a, (o, w) in zip(heads, refined.orbits)],
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(refined.to_json(), fh, indent=1)
    emit(payload, args)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    if args.design_file:
        with open(args.design_file) as fh:
            d = _design_from(json.load(fh))
        if args.t is None:
            raise InputError("--t is required with --design-file")
        try:
            h = hilbert.design_to_identity(d, args.t, bits=args.bits)
        except hilbert.NotIndexDesignError as exc:
            emit({"passed": False, "detail": str(exc)}, args)
            return EXIT_NEGATIVE
    else:
        obj = _read_json(args)
        try:
            h = hilbert.HilbertIdentity.from_json(obj.get("identity", obj))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed identity: {exc}") from exc
    report = hilbert.verify_identity(h, args.tol, args.bits)
    payload = {
        "n": h.n,
        "t": h.t,
        "c": h.c,
        "terms": len(h.terms),
        "passed": report.passed,
        "exact": report.exact,
        "monomials_checked": report.monomials_checked,
        "worst": report.worst,
    }
    if report.first_failure:
        payload["first_failure"] = {"monomial": list(report.first_failure[0]), "residual": report.first_failure[1]}
    warning = hilbert.degree_bound_tripwire(h, report)
    if warning:
        payload["warning"] = warning
    emit(payload, args)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_simplex(args) -> int:
    obj = _read_json(args)
    if "nodes" in obj and "weights" in obj and "orbits" not in obj:
        try:
            sc = simplex.SimplexCubature.from_json(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed simplex cubature: {exc}") from exc
        degree = args.degree if args.degree is not None else sc.degree
    else:
        if args.sphere_degree is None:
            raise InputError("--sphere-degree is required for a sphere design")
        try:
            sc = simplex.sphere_to_simplex(_design_from(obj), args.sphere_degree, args.bits)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        degree = sc.degree
    if degree is None:
        raise InputError("no degree given")
    report = simplex.verify_simplex_cubature(sc, degree, args.tol, args.bits)
    payload = {
        "n": sc.n,
        "degree": degree,
        "verified": report.verified,
        "max_degree": report.max_degree,
        "nodes": [{"node": list(z), "weight": w} for z, w in zip(sc.nodes, sc.weights)],
    }
    if report.failing:
        payload["failing"] = {"alpha": list(report.failing[0]), "residual": report.failing[1]}
    emit(payload, args)
    return EXIT_OK if report.verified else EXIT_NEGATIVE


def cmd_lattice(args) -> int:
    task = args.task
    if task == "golay":
        code = lattice.golay_code()
        emit(
            {
                "size": len(code),
                "weights": lattice.weight_distribution(code),
                "minimum_distance": lattice.minimum_distance(code),
                "self_dual": lattice.is_self_dual(code),
            },
            args,
        )
        return EXIT_OK
    if task == "leech-shell":
        X = lattice.leech_minimal_shell()
        members = all(lattice.leech_contains(row) for row in X) if args.check_members else None
        rep = lattice.shell_design_check(X, 11)
        emit(
            {
                "size": rep.size,
                "norm": rep.norm,
                "orbit_sizes": rep.orbit_sizes,
                "all_members": members,
                "verified_degree": rep.verified_degree,
            },
            args,
        )
        return EXIT_OK if rep.verified and members is not False else EXIT_NEGATIVE
    if task in ("leech-member", "bw16-member", "embed"):
        if not args.vector:
            raise InputError("--vector is required")
        if task == "embed":
            y = [_scalar(x) for x in args.vector.replace(",", " ").split()]
            try:
                u, member = lattice.shorter_leech_embed(y)
            except lattice.NonIntegralImageError as exc:
                raise InputError(f"non-integral image: {exc}") from exc
            except ValueError as exc:
                raise InputError(str(exc)) from exc
            emit({"u": list(u), "member": member, "norm": lattice.leech_norm(u)}, args)
            return EXIT_OK if member else EXIT_NEGATIVE
        u = _int_vector(args.vector)
        try:
            member = lattice.leech_contains(u) if task == "leech-member" else lattice.bw16_contains(u)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        emit({"vector": u, "member": member}, args)
        return EXIT_OK if member else EXIT_NEGATIVE
    if task == "d4":
        if args.norm is None:
            raise InputError("--norm is required")
        norm = _scalar(args.norm)
        try:
            parts = lattice.gcv_decomposition(args.which, norm)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        emit(
            {
                "lattice": args.which,
                "norm": norm,
                "points": sum(c for _, c in parts),
                "orbits": [{"A": o.A, "s": o.s, "points": c} for o, c in parts],
            },
            args,
        )
        return EXIT_OK
    if task == "e-shell":
        if args.norm is None:
            raise InputError("--norm is required")
        d = lattice.e_shell_design(_scalar(args.norm))
        report = verify_with_probe(d, args.degree, "exact", FLOAT_RESIDUAL_TOL, args.bits)
        emit({"design": _design_json(d), **_verification(report)}, args)
        return EXIT_OK if report.verified else EXIT_NEGATIVE
    raise InputError(f"unknown lattice task {task!r}")


def cmd_molien(args) -> int:
    try:
        dims = invariant_harmonic_dims(args.n, args.max_degree)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    emit({"n": args.n, "dims": [{"degree": k, "dim": v} for k, v in dims if k % 2 == 0]}, args)
    return EXIT_OK


# ---------------------------------------------------------------- corpus


def _check_design(asset: dict, bits: int) -> str:
    d = _design_from(asset)
    t = asset["degree"]
    report = verify_with_probe(d, t, "exact", FLOAT_RESIDUAL_TOL, bits)
    if not report.verified:
        raise AssertionError(report.summary())
    fails = asset.get("fails")
    if fails is not None and report.max_degree != fails - 1:
        raise AssertionError(f"expected failure at degree {fails}, got {report.summary()}")
    return report.summary()


def _check_identity(asset: dict, bits: int) -> str:
    h = hilbert.HilbertIdentity.from_json(asset["identity"])
    report = hilbert.verify_identity(h, bits=bits)
    if not report.passed:
        raise AssertionError(f"first failure at {report.first_failure}")
    return f"identity holds, c = {format_scalar(h.c)}, {len(h.terms)} terms"


def _check_simplex(asset: dict, bits: int) -> str:
    d = _design_from(load_asset(asset["source"]))
    sc = simplex.sphere_to_simplex(d, asset["t_sphere"], bits)
    want = {
        tuple(parse_scalar(c) for c in z): parse_scalar(w) for z, w in zip(asset["nodes"], asset["weights"])
    }
    if sc.as_dict() != want:
        raise AssertionError(f"image {sc.as_dict()} differs from the recorded nodes")
    report = simplex.verify_simplex_cubature(sc, sc.degree, bits=bits)
    if not report.verified:
        raise AssertionError(f"simplex rule fails at {report.failing}")
    return f"{len(sc.nodes)} nodes, simplex degree {sc.degree}"


def _check_refine(asset: dict, bits: int) -> str:
    d = _design_from(asset)
    t, target = asset["degree"], asset["target"]
    expected_error = asset.get("expect_error")
    try:
        refined = search.refine_design(d, t, POLISH_TARGET, bits)
    except search.NegativeWeightError as exc:
        if expected_error == "negative-weight":
            return f"expected-failure: {exc}"
        raise AssertionError(str(exc)) from exc
    if expected_error:
        raise AssertionError(f"expected {expected_error}, but refinement succeeded")
    res = search.max_moment_residual(refined, t, bits)
    if not res < target:
        raise AssertionError(f"residual {mpmath.nstr(res, 3)} above {target}")
    note = f"degree {t} residual {mpmath.nstr(res, 3)}"
    if "system" in asset:
        with mpmath.workprec(bits):
            (o1, w1), (o2, _) = refined.orbits
            eqs = search.nine_design_system(asset["system"], o1.A, o2.A, w1 * refined.effective_size(o1))
            worst = max(abs(e) for e in eqs)
        if not worst < target:
            raise AssertionError(f"polynomial system residual {mpmath.nstr(worst, 3)}")
        note += f", system residual {mpmath.nstr(worst, 3)}"
    return note


def _check_lattice(asset: dict, bits: int) -> str:
    check = asset["check"]
    rng = random.Random(0)
    if check == "d4_shells":
        expect = {
            ("D4", 2): [(Fraction(1), 1, 24)],
            ("D4", 6): [(Fraction(4), 2, 96)],
            ("D4prime", 2): [(Fraction(1), 3, 16), (Fraction(1), 0, 8)],
            ("D4prime", 6): [(Fraction(9), 3, 64), (Fraction(1), 2, 32)],
        }
        for (which, norm), want in expect.items():
            got = sorted(((o.A, o.s, c) for o, c in lattice.gcv_decomposition(which, norm)), reverse=True)
            if got != sorted(want, reverse=True):
                raise AssertionError(f"{which} shell {norm}: {got}")
        return "first two shells of D4 and D4' decompose as recorded"
    if check == "e_shells":
        for norm in asset["norms"]:
            rep = design_mod.verify_design(lattice.e_shell_design(norm), 7)
            if not rep.verified:
                raise AssertionError(f"E_{norm}: {rep.summary()}")
        schur = _design_from(load_asset("eq_schur"))
        points = {(o.A, o.s) for o, _ in schur.orbits}
        shell = {(o.A, o.s) for o, _ in lattice.e_shell_design(2).orbits}
        shell |= {(o.A, o.s) for o, _ in lattice.e_shell_design(6, ("D4",)).orbits}
        if points != shell:
            raise AssertionError("E_2 with (D4)_6 is not Schur's point set")
        return f"E_{asset['norms']} are 7-designs; E_2 with (D4)_6 is Schur's point set"
    if check == "golay":
        code = lattice.golay_code()
        dist = lattice.weight_distribution(code)
        if dist != {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1} or not lattice.is_self_dual(code):
            raise AssertionError(f"weight distribution {dist}")
        return "weights 1/759/2576/759/1, self-dual"
    if check == "leech_shell":
        X = lattice.leech_minimal_shell()
        if len(X) != 196560 or not all(lattice.leech_contains(row) for row in X):
            raise AssertionError("minimal shell construction")
        rep = lattice.shell_design_check(X, 11)
        if not rep.verified or rep.verified_degree < 11:
            raise AssertionError(f"verified degree {rep.verified_degree}")
        return f"196560 members, verified degree {rep.verified_degree}"
    if check == "bw16":
        base = [8] + [4] * 8 + [0] * 7
        for _ in range(asset["samples"]):
            if not lattice.bw16_contains(lattice.random_signed_permutation(base, rng)):
                raise AssertionError("image outside the lattice")
        return f"{asset['samples']} signed permutations are members"
    if check == "shorter_leech":
        base = [8] + [4] * 11 + [0] * 11
        for _ in range(asset["samples"]):
            _, ok = lattice.shorter_leech_embed(lattice.random_signed_permutation(base, rng))
            if not ok:
                raise AssertionError("image outside the shorter Leech lattice")
        return f"{asset['samples']} images are members with u1 = u2"
    raise AssertionError(f"unknown lattice check {check!r}")


_CHECKS = {
    "design": _check_design,
    "identity": _check_identity,
    "simplex": _check_simplex,
    "refine": _check_refine,
    "lattice": _check_lattice,
}


def run_corpus(anchors: list[str], bits: int = DEFAULT_BITS) -> list[dict]:
    results = []
    for anchor in anchors:
        asset = load_asset(anchor)
        start = time.perf_counter()
        try:
            detail = _CHECKS[asset["kind"]](asset, bits)
            ok = True
        except (AssertionError, ValueError, ArithmeticError) as exc:
            detail, ok = f"{type(exc).__name__}: {exc}", False
        results.append({"anchor": anchor, "ok": ok, "seconds": round(time.perf_counter() - start, 2), "detail": detail})
    return results


def cmd_corpus(args) -> int:
    if args.list:
        emit({"anchors": corpus_names()}, args)
        return EXIT_OK
    anchors = corpus_names() if args.all else (args.anchor or [])
    if not anchors:
        raise InputError("give --all or at least one --anchor")
    for a in anchors:
        load_asset(a)
    results = run_corpus(anchors, args.bits)
    failed = [r["anchor"] for r in results if not r["ok"]]
    emit({"results": results, "failed": failed}, args)
    if failed:
        print("regression in: " + ", ".join(failed), file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _source_args(p):
    p.add_argument("--file", help="JSON input file")
    p.add_argument("--json", help="inline JSON input")
    p.add_argument("--anchor", help="corpus asset name")


def build_parser(bits: int) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--full-precision", action="store_true", help="print floats at full working precision")
    common.add_argument("--bits", type=int, default=bits, help=f"working precision (default from {BITS_ENV})")

    def tol(p, default):
        p.add_argument("--tol", type=float, default=default, help="float tolerance")

    parser = _Parser(prog="gcv-design", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="check a weighted design up to a degree")
    _source_args(p)
    p.add_argument("--degree", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--float", action="store_true")
    p.add_argument("--path", choices=("auto", "moment", "harmonic"), default="auto")
    tol(p, FLOAT_RESIDUAL_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="solve for weights on given orbits")
    _source_args(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--convention", choices=(FULL, PAIRS), default=FULL)
    tol(p, FLOAT_SIGN_TOL)
    p.set_defaults(func=cmd_solve)

    for name, fn in (("classify7", cmd_classify7), ("classify9", cmd_classify9)):
        p = sub.add_parser(name, parents=[common], help="classify a pair of orbits")
        p.add_argument("--n", type=int, required=True)
        for i in (1, 2):
            p.add_argument(f"--A{i}", help="squared head value")
            p.add_argument(f"--a{i}", help="head value")
            p.add_argument(f"--s{i}", type=int, required=True)
        p.add_argument("--float", action="store_true", help="classify in floating point")
        tol(p, None)
        p.set_defaults(func=fn)

    p = sub.add_parser("bounds", parents=[common], help="degree upper bound for given tail lengths")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, nargs="+", required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search7", parents=[common], help="single-orbit 7-designs")
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_search7)

    p = sub.add_parser("tanino", parents=[common], help="integer solutions of the two-orbit cubic")
    p.add_argument("--smax", type=int, required=True)
    p.add_argument("--distinct", action="store_true", help="only s1 != s2")
    p.set_defaults(func=cmd_tanino)

    p = sub.add_parser("curve", parents=[common], help="integer points on the quartic curve")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--ymax", type=int, required=True)
    p.add_argument("--xmin", type=int, default=0)
    p.add_argument("--ymin", type=int, default=0)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("refine", parents=[common], help="Newton refinement of a numeric design")
    _source_args(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--target", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--resolve-weights", action="store_true")
    p.add_argument("--out", help="write the refined design here")
    tol(p, FLOAT_RESIDUAL_TOL)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("hilbert", parents=[common], help="verify a Hilbert identity")
    _source_args(p)
    p.add_argument("--design-file", help="derive the identity from this design")
    p.add_argument("--t", type=int)
    tol(p, FLOAT_RESIDUAL_TOL)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("simplex", parents=[common], help="push a design to the simplex and verify")
    _source_args(p)
    p.add_argument("--sphere-degree", type=int)
    p.add_argument("--degree", type=int, help="simplex degree for a simplex cubature input")
    tol(p, FLOAT_RESIDUAL_TOL)
    p.set_defaults(func=cmd_simplex)

    p = sub.add_parser("lattice", parents=[common], help="lattice constructions and membership")
    p.add_argument(
        "task", choices=("golay", "leech-shell", "leech-member", "bw16-member", "embed", "d4", "e-shell")
    )
    p.add_argument("--vector", help="coordinates separated by commas or spaces")
    p.add_argument("--which", choices=("D4", "D4star", "D4prime"), default="D4")
    p.add_argument("--norm")
    p.add_argument("--degree", type=int, default=7)
    p.add_argument("--check-members", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("molien", parents=[common], help="dimensions of invariant harmonic spaces")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=10)
    p.set_defaults(func=cmd_molien)

    p = sub.add_parser("corpus", parents=[common], help="re-verify the golden corpus")
    p.add_argument("--all", action="store_true")
    p.add_argument("--anchor", action="append")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        bits = default_bits()
        args = build_parser(bits).parse_args(argv)
        with mpmath.workprec(args.bits):
            return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
