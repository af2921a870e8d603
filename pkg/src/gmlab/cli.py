"""Command-line front end: ``gmlab <verb> [algebra.json] [flags]``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input or usage error.
Reports are JSON by default; ``--format text`` prints the same data flattened.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import AlgebraError, ClosureCapExceeded, build, load_algebra, right_ideal_closure, subalgebra_closure
from .axioms import AbstractAlgebra, audit_lemmas, reconstruct_and_compare, verify_gm_type
from .exact import FieldError, FieldSpec, format_scalar, parse_scalar
from .forms import frobenius_defect, gram
from .fusion import FusionError, infer_law, miyamoto_group, parse_law, verify_axis
from .spectral import decompose
from .transposition import DEFAULT_CAP, SystemError_, TranspositionSystem, construct_model, validate_system

VERBS = ["build", "validate", "spectrum", "fusion", "miyamoto", "form", "ideal", "closure", "verify-gm", "audit",
         "report-all"]


class UsageError(Exception):
    pass


INPUT_ERRORS = (UsageError, FieldError, SystemError_, AlgebraError, FusionError, ValueError, KeyError, TypeError,
                OSError, json.JSONDecodeError)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gmlab", description="Exact laboratory for generalized Monster type algebras.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("file", nargs="?", help="algebra JSON (from build) or abstract structure-constant JSON")
    ap.add_argument("--model", help="dihedral:<p> | frobenius:<p>,<d> | burnside23 | file:<path>")
    ap.add_argument("--field", help="Q or F:<q>")
    ap.add_argument("--eta", help="rational, default -1/(p-2)")
    ap.add_argument("--axis", help="basis index, or comma list")
    ap.add_argument("--side", choices=["left", "right"], default="left")
    ap.add_argument("--law", default="infer", help="M:<a>,<b> | GM:<a>,<b> | infer")
    ap.add_argument("--out")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    ap.add_argument("--max-dim", type=int, help="dimension cap for subalgebra closure")
    ap.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element cap for group closure")
    ap.add_argument("--force", action="store_true", help="allow a field of bad characteristic")
    ap.add_argument("--parallel", action="store_true", help="fan per-axis checks out to worker processes")
    return ap


# ---------------------------------------------------------------- inputs


def _read_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _algebra_json(args) -> dict:
    """Canonical {field, eta, system[, force]} description of the requested algebra."""
    if args.file and args.model:
        raise UsageError("give either an algebra file or --model, not both")
    if args.file:
        if args.field or args.eta:
            raise UsageError("--field and --eta come from the algebra file")
        obj = _read_json(args.file)
        if "system" not in obj:
            raise UsageError(f"{args.file} is not an algebra file (no 'system' key)")
        if args.force:
            obj = dict(obj, force=True)
        return obj
    if not args.model:
        raise UsageError("an algebra file or --model is required")
    tsys = construct_model(args.model)
    F = FieldSpec.parse(args.field or "Q")
    eta = parse_scalar(args.eta, F) if args.eta else F(Fraction(-1, tsys.p - 2))
    obj = {"field": str(F), "eta": format_scalar(eta), "system": tsys.to_json()}
    if args.force:
        obj["force"] = True
    return obj


def _axes(args, n: int, default=None) -> list:
    if args.axis is None:
        if default is None:
            raise UsageError("--axis is required")
        return list(default)
    try:
        axes = [int(x) for x in args.axis.split(",")]
    except ValueError as e:
        raise UsageError(f"bad --axis {args.axis!r}") from None
    bad = [a for a in axes if not 0 <= a < n]
    if bad:
        raise UsageError(f"axis {bad[0]} out of range 0..{n - 1}")
    return axes


def _digest(obj) -> str:
    return "sha256:" + hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


# ---------------------------------------------------------------- per-axis work (picklable for --parallel)


def _axis_job(job):
    verb, alg, axis, extra = job
    A = load_algebra(alg)
    if verb == "spectrum":
        d = decompose(A, axis, extra["side"])
        return {
            "axis": axis,
            "spectrum": [[format_scalar(lam), len(b)] for lam, b in d.parts if b],
            "deficit": d.deficit,
            "semisimple": d.semisimple,
            "primitive": d.primitive,
            "pass": d.semisimple and d.primitive,
        }
    if verb == "fusion":
        try:
            if extra["law"] == "infer":
                law = infer_law(A, axis, extra["side"])
                return {"axis": axis, "inferred": law.to_json(), "grading": _grading_json(law), "pass": True}
            rep = verify_axis(A, axis, parse_law(extra["law"], A.field), extra["side"])
        except FusionError as e:
            return {"axis": axis, "pass": False, "reason": str(e)}
        return rep.to_json()
    if verb == "ideal":
        dim = len(right_ideal_closure(A, A.basis_vector(axis)))
        return {"axis": axis, "dim": dim, "pass": dim == A.n}
    raise UsageError(verb)


def _grading_json(law):
    g = law.grading()
    if g is None:
        return None
    plus, minus = g
    return {"plus": [format_scalar(v) for v in law.values if v in plus],
            "minus": [format_scalar(v) for v in law.values if v in minus]}


def _per_axis(verb, alg, axes, extra, parallel):
    jobs = [(verb, alg, a, extra) for a in axes]
    if parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as ex:
            return list(ex.map(_axis_job, jobs))  # map keeps input order
    return [_axis_job(j) for j in jobs]


# ---------------------------------------------------------------- verbs


def cmd_build(args):
    alg = _algebra_json(args)
    A = load_algebra(alg)
    out = A.to_json()
    if alg.get("force"):
        out["force"] = True
    if args.out:
        Path(args.out).write_text(json.dumps(out, indent=2) + "\n")
        args.out = None  # the report itself goes to stdout
        return alg, {"written": True, "dim": A.n, "p": A.p, "field": str(A.field),
                     "eta": format_scalar(A.eta)}, True
    return alg, {"algebra": out, "dim": A.n}, True


def cmd_validate(args):
    if args.file and args.model:
        raise UsageError("give either a system file or --model, not both")
    if args.file:
        obj = _read_json(args.file)
        tsys = TranspositionSystem.from_json(obj.get("system", obj))
    elif args.model:
        tsys = construct_model(args.model)
    else:
        raise UsageError("a system file or --model is required")
    rep = validate_system(tsys)
    return tsys.to_json(), dict(rep.to_json(), n=tsys.n, p=tsys.p), rep.ok


def cmd_spectrum(args):
    alg = _algebra_json(args)
    A = load_algebra(alg)
    res = _per_axis("spectrum", alg, _axes(args, A.n, range(A.n)), {"side": args.side}, args.parallel)
    return alg, {"side": args.side, "axes": res}, all(r["pass"] for r in res)


def cmd_fusion(args):
    alg = _algebra_json(args)
    A = load_algebra(alg)
    parse_law(args.law, A.field)  # fail fast on a malformed law
    extra = {"side": args.side, "law": args.law}
    res = _per_axis("fusion", alg, _axes(args, A.n, range(A.n)), extra, args.parallel)
    return alg, {"side": args.side, "law": args.law, "axes": res}, all(r["pass"] for r in res)


def cmd_ideal(args):
    alg = _algebra_json(args)
    A = load_algebra(alg)
    res = _per_axis("ideal", alg, _axes(args, A.n, range(A.n)), {}, args.parallel)
    return alg, {"dim": A.n, "generators": res}, all(r["pass"] for r in res)


def cmd_miyamoto(args):
    alg = _algebra_json(args)
    A = load_algebra(alg)
    r = miyamoto_group(A, args.cap)
    order = r.order if r.complete else f">={r.order}"
    conj = r.conjugation_order if r.complete else f">={r.conjugation_order}"
    res = {"order": order, "complete": r.complete, "conjugation_order": conj,
           "matches_conjugation": r.matches_conjugation}
    return alg, res, r.complete and r.matches_conjugation


def cmd_form(args):
    alg = _algebra_json(args)
    A = load_algebra(alg)
    g = gram(A)
    defect = frobenius_defect(A, args.side)
    res = dict(g.to_json())
    res["side"] = args.side
    res["frobenius_defect_count"] = len(defect)
    res["frobenius_defect"] = [[a, b, c, format_scalar(l), format_scalar(r)] for a, b, c, l, r in defect[:20]]
    return alg, res, not defect and g.determinant_matches


def cmd_closure(args):
    alg = _algebra_json(args)
    A = load_algebra(alg)
    seeds = _axes(args, A.n)
    try:
        basis = subalgebra_closure(A, [A.basis_vector(i) for i in seeds], args.max_dim)
        closed = True
    except ClosureCapExceeded as e:
        basis, closed = e.basis, False
    res = {"seeds": seeds, "dim": len(basis), "closed": closed,
           "basis": [[format_scalar(x) for x in v] for v in basis]}
    return alg, res, closed


def cmd_verify_gm(args):
    if args.file:
        if args.model:
            raise UsageError("give either a file or --model, not both")
        obj = _read_json(args.file)
        X = AbstractAlgebra.from_json(obj) if "products" in obj else AbstractAlgebra.from_gm(load_algebra(obj))
    else:
        X = AbstractAlgebra.from_gm(load_algebra(_algebra_json(args)))
    src = X.to_json()
    rep = verify_gm_type(X)
    rec = reconstruct_and_compare(X, rep)
    res = rep.to_json()
    res["reconstruction"] = rec
    return src, res, rep.passed and rec["isomorphic"]


def cmd_audit(args):
    alg = _algebra_json(args)
    A = load_algebra(alg)
    axes = _axes(args, A.n, (0, 1))
    if len(axes) != 2 or axes[0] == axes[1]:
        raise UsageError("audit needs --axis a,b with two distinct indices")
    rep = audit_lemmas(A, *axes)
    res = rep.to_json()
    res["mismatches"] = [e["name"] for e in rep.entries if not e["match"]]
    return alg, res, not res["mismatches"]


def _criterion_job(index):
    from .acceptance import CRITERIA

    name, fn = CRITERIA[index]
    return name, [{"label": c.label, "pass": c.ok, "detail": c.detail} for c in fn()]


def cmd_report_all(args):
    from .acceptance import CRITERIA

    idx = range(len(CRITERIA))
    if args.parallel:
        with ProcessPoolExecutor() as ex:
            done = list(ex.map(_criterion_job, idx))
    else:
        done = [_criterion_job(i) for i in idx]
    crit = [{"criterion": name, "pass": all(c["pass"] for c in checks), "checks": checks} for name, checks in done]
    summary = {"passed": sum(c["pass"] for c in crit), "total": len(crit)}
    return {"suite": "acceptance"}, {"summary": summary, "criteria": crit}, summary["passed"] == summary["total"]


HANDLERS = {
    "build": cmd_build, "validate": cmd_validate, "spectrum": cmd_spectrum, "fusion": cmd_fusion,
    "miyamoto": cmd_miyamoto, "form": cmd_form, "ideal": cmd_ideal, "closure": cmd_closure,
    "verify-gm": cmd_verify_gm, "audit": cmd_audit, "report-all": cmd_report_all,
}


# ---------------------------------------------------------------- output


def _strict(o):
    raise TypeError(f"unserialisable value {o!r}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=_strict) + "\n"
    lines = []

    def walk(prefix, x):
        if isinstance(x, dict):
            for k, v in x.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(x, list) and any(isinstance(v, (dict, list)) for v in x):
            for i, v in enumerate(x):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix}: {json.dumps(x, default=_strict)}")

    walk("", report)
    return "\n".join(lines) + "\n"


def _glue_negative(argv):
    """Turn ``--eta -1/3`` into ``--eta=-1/3`` so argparse does not read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--eta", "--law") and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = make_parser().parse_args(_glue_negative(argv))
    except SystemExit as e:
        return int(e.code or 0)
    start = time.perf_counter()
    try:
        inputs, results, ok = HANDLERS[args.verb](args)
    except ClosureCapExceeded as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 2
    except INPUT_ERRORS as e:
        print(json.dumps({"error": f"{type(e).__name__}: {e}"}), file=sys.stderr)
        return 2
    report = {
        "tool": "gmlab",
        "version": __version__,
        "command": argv,
        "inputs_digest": _digest(inputs),
        "results": results,
        "pass": ok,
    }
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    # wall time varies run to run, so it stays out of the report
    print(f"elapsed_ms {int((time.perf_counter() - start) * 1000)}", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
