"""Command line entry point: ``joinperm <subcommand> ...``.

Every subcommand prints one JSON report on standard output.  Exit codes:
0 success, 2 schema error, 3 instance too large, 4 budget exhausted.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import prf, reals, topology, uv
from .coding import encode_tuple
from .enumeration import Enumeration
from .errors import BudgetExhausted, InstanceTooLarge, SchemaError
from .join import DEFAULT_CAP, Collection, constant_range, criterion_check, jp_bruteforce, sjp_bruteforce
from .schema import freeze, load_instance

EXIT_SCHEMA, EXIT_TOO_LARGE, EXIT_BUDGET = 2, 3, 4


def _sorted(xs):
    return sorted(xs, key=lambda v: json.dumps(v, sort_keys=True))


def _jsonable(x):
    return list(map(_jsonable, x)) if isinstance(x, tuple) else x


def _set_out(s):
    return _sorted(_jsonable(x) for x in s)


def _map_out(f):
    if f is None:
        return None
    return _sorted([_jsonable(x), _jsonable(y)] for x, y in f.items())


def _collection(data):
    return Collection([{freeze(x) for x in m} for m in data["collection"]])


def _space(d):
    return topology.FiniteTopology([freeze(x) for x in d["carrier"]],
                                   [{freeze(x) for x in o} for o in d["opens"]])


def _uv(data):
    U = uv.IndexedFamily([{freeze(x) for x in m} for m in data["U"]])
    V = uv.IndexedFamily([{freeze(x) for x in m} for m in data["V"]])
    return U, V


def _require(data, *kinds):
    if data["kind"] not in kinds:
        raise SchemaError(f"this subcommand needs kind {' or '.join(kinds)}, got {data['kind']}")


def cmd_check_sep(args):
    data = load_instance(args.file)
    kind = data["kind"]
    skip = not args.include_trivial
    if kind == "real":
        try:
            table = reals.partition_separators(data["cuts"])
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(str(exc)) from exc
        return {"kind": kind, "holds": True, "failures": [],
                "separators": {str(K): repr(sep.open_set) for K, sep in table.items()
                               if not skip or 0 < K < len(table) - 1}}
    A = _collection(data)
    if kind == "topology":
        verdict = topology.continuity_criterion(A, _space(data["space"]), skip)
        seps = {str(K): _set_out(H) for K, H in verdict.separators.items()}
    elif kind == "uv_desk":
        U, _ = _uv(data)
        verdict = uv.uv_criterion(A, U, skip)
        seps = {str(K): {"codes": sorted(H.codes()), "set": _set_out(H.denoted(U))}
                for K, H in verdict.separators.items()}
    else:
        # finite members are enumerable, so the smallest separator P always works
        verdict = criterion_check(A, lambda P, Q: P, skip)
        seps = {str(K): _set_out(H) for K, H in verdict.separators.items()}
    return {"kind": kind, "holds": verdict.holds, "failures": verdict.failures,
            "separators": seps}


def _values(data):
    if "values" in data:
        return [freeze(v) for v in data["values"]]
    if data["kind"] == "topology":
        return _sorted(freeze(v) for v in data["target"]["carrier"])
    if data["kind"] == "uv_desk":
        return sorted(_uv(data)[1].ground, key=repr)
    raise SchemaError("a 'values' list is required for this instance")


def cmd_check_sjp(args):
    data = load_instance(args.file)
    _require(data, "topology", "uv_desk", "prf")
    cls = args.cls or {"topology": "continuity", "uv_desk": "uv"}.get(data["kind"], "constant-range")
    if cls == "continuity":
        _require(data, "topology")
        oracle = topology.continuity_class(_space(data["space"]), _space(data["target"]))
    elif cls == "uv":
        _require(data, "uv_desk")
        oracle = uv.uv_class(*_uv(data))
    else:
        oracle = constant_range
    run = sjp_bruteforce if args.mode == "sjp" else jp_bruteforce
    res = run(_collection(data), oracle, _values(data), cap=args.cap)
    return {"class": cls, "mode": args.mode, "verdict": res.verdict,
            "counterexample": _map_out(res.counterexample), "checked": res.checked}


def cmd_check_theorem(args):
    data = load_instance(args.file)
    _require(data, "topology", "uv_desk")
    A = _collection(data)
    if data["kind"] == "topology":
        res = topology.theorem_tcont_check(A, _space(data["space"]), _space(data["target"]), args.cap)
    else:
        res = uv.theorem_tcomp_check(A, *_uv(data), cap=args.cap)
    return res.as_dict()


def build_glue(data):
    """GlueInstance for a prf instance file (members are explicit finite sets)."""
    n = data["arity"]

    def point(x):
        x = freeze(x)
        t = (x,) if isinstance(x, int) else x
        if len(t) != n or not all(isinstance(v, int) and v >= 0 for v in t):
            raise SchemaError(f"{_jsonable(x)} is not a {n}-tuple of naturals")
        return t

    members = [[point(x) for x in m] for m in data["collection"]]
    enums = [Enumeration.from_items(sorted(encode_tuple(x) for x in m)) for m in members]
    pieces = []
    for spec in data["pieces"]:
        table = {point(x): y for x, y in spec.get("table", [])}
        default = spec.get("default")
        pieces.append(prf.PartialEvaluator(
            lambda x, b, table=table, default=default: table.get(x, default)))
    seps = data.get("separators", "re")
    if seps == "re":
        table = prf.separators_from_re(enums)
    else:
        table = prf.SeparatorTable()
        for key, H in seps.items():
            table[int(key)] = Enumeration.from_items(sorted(encode_tuple(point(x)) for x in H))
    return prf.GlueInstance(n, pieces, table)


def cmd_glue_eval(args):
    data = load_instance(args.file)
    _require(data, "prf")
    try:
        x = tuple(int(v) for v in args.x.split(","))
    except ValueError as exc:
        raise SchemaError(f"--x must be comma-separated naturals: {args.x}") from exc
    G = build_glue(data)
    try:
        y = prf.glue_eval(G, x, args.budget)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    return {"x": list(x), "budget": args.budget, "result": "diverged" if y is None else y}


def _rational(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not a rational: {s!r}") from exc


def _eps(s):
    eps = _rational(s)
    if eps <= 0:
        raise SchemaError(f"eps must be positive: {s!r}")
    return eps


def _interval_report(I):
    return {"interval": I.as_strings(), "approx": [float(I.lo), float(I.hi)],
            "width": reals.fmt_rational(I.width)}


def cmd_arctan(args):
    x, eps = _rational(args.x), _eps(args.eps)
    I = reals.eval_to_precision(reals.arctan_name(reals.rat_name(x)), eps, args.budget)
    return {"x": reals.fmt_rational(x), "eps": reals.fmt_rational(eps), **_interval_report(I)}


def cmd_cases(args):
    x, t, y, z = (_rational(v) for v in (args.x, args.t, args.y, args.z))
    eps = _eps(args.eps)
    name = reals.cases_name(*(reals.rat_name(v) for v in (x, t, y, z)))
    head = {k: reals.fmt_rational(v) for k, v in zip("xtyz", (x, t, y, z))}
    head["eps"] = reals.fmt_rational(eps)
    try:
        I = reals.eval_to_precision(name, eps, args.budget)
    except BudgetExhausted as exc:
        best = exc.narrowest
        exc.report = {**head, "status": "budget-exhausted", "budget": args.budget,
                      "narrowest_width": None if best is None else reals.fmt_rational(best.width)}
        raise
    return {**head, "status": "ok", **_interval_report(I)}


def build_parser():
    p = argparse.ArgumentParser(prog="joinperm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-sep", help="separator criterion with its table or failing masks")
    s.add_argument("file")
    s.add_argument("--include-trivial", action="store_true")
    s.set_defaults(func=cmd_check_sep)

    s = sub.add_parser("check-sjp", help="brute-force (strong) join permitting verdict")
    s.add_argument("file")
    s.add_argument("--class", dest="cls", choices=["continuity", "uv", "constant-range"])
    s.add_argument("--mode", choices=["sjp", "jp"], default="sjp")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.set_defaults(func=cmd_check_sjp)

    s = sub.add_parser("check-theorem", help="criterion vs brute force for topology or uv_desk")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.set_defaults(func=cmd_check_theorem)

    s = sub.add_parser("glue-eval", help="evaluate a glued partial function")
    s.add_argument("file")
    s.add_argument("--x", required=True, help="comma-separated tuple, e.g. 3 or 1,2")
    s.add_argument("--budget", type=int, required=True)
    s.set_defaults(func=cmd_glue_eval)

    s = sub.add_parser("arctan", help="enclose arctan(x) to width eps")
    s.add_argument("--x", required=True)
    s.add_argument("--eps", required=True)
    s.add_argument("--budget", type=int, default=reals.DEFAULT_BUDGET)
    s.set_defaults(func=cmd_arctan)

    s = sub.add_parser("cases", help="enclose cases(x, t, y, z) to width eps")
    for v in "xtyz":
        s.add_argument(f"--{v}", required=True)
    s.add_argument("--eps", required=True)
    s.add_argument("--budget", type=int, default=reals.DEFAULT_BUDGET)
    s.set_defaults(func=cmd_cases)
    return p


def _emit(obj, stream):
    stream.write(json.dumps(obj, sort_keys=True) + "\n")


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except SchemaError as exc:
        _emit({"error": "schema", "message": str(exc)}, stderr)
        return EXIT_SCHEMA
    except InstanceTooLarge as exc:
        _emit({"error": "instance-too-large", "message": str(exc)}, stderr)
        return EXIT_TOO_LARGE
    except BudgetExhausted as exc:
        _emit(getattr(exc, "report", None) or {"status": "budget-exhausted", "message": str(exc)},
              stdout)
        return EXIT_BUDGET
    _emit(report, stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
