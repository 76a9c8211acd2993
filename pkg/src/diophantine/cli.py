"""Command-line front end: ``diophantine pell|compile|check|verify``.

Exit codes: 0 success (or "true"), 1 checked and false, 2 usage error,
3 inconclusive because a search or size cap was hit.  Numbers are read and
written as decimal strings; ``--json`` output carries no timestamps so it is
byte-stable across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from diophantine.formula import (
    CompiledDioph,
    ParseError,
    ScanTooLarge,
    ScopeError,
    SearchLimitExceeded,
    check_scope,
    compile_formula,
    membership,
    param_count,
    parse_formula,
    search,
)
from diophantine.matiyasevich import (
    WitnessCache,
    WitnessTooLarge,
    POW_MAX_BITS,
    eval_big,
    pow_formula,
    pow_negative_check,
    pow_polynomial,
    pow_witness_paths,
    to_decimal,
    verify_pell_theorem3,
    verify_pow,
)
from diophantine.pell import PellBase, enumerate_solutions, pell_pair, solution_index

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

DEFAULT_POW_BOUND = 40
DEFAULT_MAX_BITS = 1 << 16
DEFAULT_MAX_POINTS = 10**7
DEFAULT_NODE_LIMIT = 2_000_000


class UsageError(Exception):
    pass


def _nat(text: str) -> int:
    try:
        n = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")
    return n


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        print(text)


def _base(a: int) -> PellBase:
    if a < 2:
        raise UsageError(f"a must be at least 2, got {a}")
    return PellBase(a)


# pell


def cmd_pell(args) -> int:
    base = _base(args.a)
    if args.enumerate is not None:
        sols = enumerate_solutions(base, args.enumerate)
        _emit(
            {"a": str(args.a), "solutions": [{"x": str(x), "y": str(y)} for x, y in sols]},
            args.json,
            "\n".join(f"x={x} y={y}" for x, y in sols),
        )
        return EXIT_OK
    if args.index is not None:
        x, y = args.index
        n = solution_index(base, x, y)
        if n is None:
            _emit({"a": str(args.a), "x": str(x), "y": str(y), "n": None}, args.json, "no index")
            return EXIT_FALSE
        _emit({"a": str(args.a), "x": str(x), "y": str(y), "n": str(n)}, args.json, f"n={n}")
        return EXIT_OK
    if args.n is None:
        raise UsageError("give n, --enumerate X or --index X Y")
    p = pell_pair(base, args.n)
    _emit(
        {"a": str(args.a), "n": str(p.n), "x": str(p.x), "y": str(p.y)},
        args.json,
        f"x={p.x} y={p.y}",
    )
    return EXIT_OK


# compile


def _load_formula(src: str):
    try:
        f = parse_formula(src)
    except ParseError as exc:
        raise UsageError(f"parse error at {exc}") from None
    return f


def cmd_compile(args) -> int:
    f = _load_formula(_read(args.file))
    try:
        cd = compile_formula(f, args.k)
    except ScopeError as exc:
        raise UsageError(f"scope error: {exc}") from None
    print(cd.to_json())
    return EXIT_OK


# check


def _witness_text(values) -> str:
    return " ".join(to_decimal(t) for t in values) if values else "(empty)"


def _check_poly(args, obj: dict) -> int:
    try:
        if "params" not in obj:
            obj = dict(obj, params=len(args.params), dummies=obj["num_vars"] - len(args.params))
        cd = CompiledDioph.from_json_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad polynomial JSON: {exc}") from None
    if len(args.params) != cd.params:
        raise UsageError(f"polynomial has {cd.params} parameters, got {len(args.params)}")
    try:
        t = membership(cd, args.params, args.bound, max_points=args.max_points)
    except ScanTooLarge as exc:
        _emit({"status": "inconclusive", "reason": str(exc)}, args.json, f"inconclusive: {exc}")
        return EXIT_INCONCLUSIVE
    return _verdict(args, t)


def _verdict(args, t) -> int:
    if t is None:
        _emit(
            {"status": "no witness", "bound": str(args.bound)},
            args.json,
            f"no witness ≤ {args.bound}",
        )
        return EXIT_FALSE
    _emit(
        {"status": "witness", "witness": [to_decimal(x) for x in t]},
        args.json,
        f"witness: {_witness_text(t)}",
    )
    return EXIT_OK


def _check_formula(args, src: str) -> int:
    f = _load_formula(src)
    try:
        check_scope(f, len(args.params))
    except ScopeError as exc:
        raise UsageError(f"scope error: {exc}") from None
    if param_count(f) > len(args.params):
        raise UsageError(f"formula needs {param_count(f)} parameters, got {len(args.params)}")
    try:
        found = search(f, args.params, args.bound, node_limit=args.node_limit)
    except SearchLimitExceeded as exc:
        _emit({"status": "inconclusive", "reason": str(exc)}, args.json, f"inconclusive: {exc}")
        return EXIT_INCONCLUSIVE
    if found is None:
        return _verdict(args, None)
    # binder values in pre-order, i.e. the order the binders appear in the text
    return _verdict(args, [found[p] for p in sorted(found)])


def _check_pow(args) -> int:
    if len(args.params) != 3:
        raise UsageError(f"--pow takes x y w, got {len(args.params)} numbers")
    x, y, w = args.params
    cd = pow_polynomial()
    if w != x**y:
        r = pow_negative_check(x, y, w, args.bound, args.node_limit)
        if r.status == "inconclusive":
            _emit({"status": "inconclusive", "reason": r.detail}, args.json, f"inconclusive: {r.detail}")
            return EXIT_INCONCLUSIVE
        if r.status == "fail":
            found = search(pow_formula(), (x, y, w), args.bound)
            return _verdict(args, [found[p] for p in sorted(found)])
        return _verdict(args, None)
    try:
        witness = pow_witness_paths(x, y, args.max_bits)
    except WitnessTooLarge as exc:
        _emit({"status": "inconclusive", "reason": str(exc)}, args.json, f"inconclusive: {exc}")
        return EXIT_INCONCLUSIVE
    t = cd.lift((x, y, w), witness)
    if t is None or eval_big(cd, (x, y, w), t) != 0:
        _emit({"status": "error"}, args.json, "constructed witness rejected by the polynomial")
        return EXIT_FALSE
    return _verdict(args, t)


def cmd_check(args) -> int:
    if args.pow:
        if args.file is not None:
            try:
                args.params = [_nat(args.file)] + args.params
            except argparse.ArgumentTypeError as exc:
                raise UsageError(str(exc)) from None
        return _check_pow(args)
    if args.file is None:
        raise UsageError("give a polynomial or formula file (or --pow)")
    src = _read(args.file)
    if src.lstrip().startswith("{"):
        try:
            obj = json.loads(src)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return _check_poly(args, obj)
    return _check_formula(args, src)


# verify


def cmd_verify(args) -> int:
    if args.theorem3 is not None:
        a, k_max = args.theorem3
        args.max_bits = DEFAULT_MAX_BITS if args.max_bits is None else args.max_bits
        _base(a)
        cache = WitnessCache(args.cache) if args.cache else None
        report = verify_pell_theorem3(
            a, k_max, witness_bound=args.witness_bound, x_bound=args.x_bound, cache=cache, max_bits=args.max_bits
        )
        if cache is not None and args.update_cache:
            cache.save()
        obj = report.to_json_obj()
        failed = [c for c in report.forward + report.backward if c.status == "fail"]
        text = "\n".join(
            [f"k={c.k} x={to_decimal(c.x)} y={to_decimal(c.y)}: {c.status} ({c.method})" for c in report.forward]
            + [
                f"backward: {len(report.backward)} checks, "
                f"{sum(c.status == 'pass' for c in report.backward)} pass"
            ]
        )
        _emit(obj, args.json, text)
        if failed:
            return EXIT_FALSE
        return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK
    x_max, y_max = args.pow
    args.max_bits = POW_MAX_BITS if args.max_bits is None else args.max_bits
    checks = verify_pow(x_max, y_max, args.bound, args.w_max, args.max_bits, args.node_limit)
    rows = [
        {"x": str(c.x), "y": str(c.y), "w": str(c.w), "expected": c.expected, "status": c.status}
        for c in checks
    ]
    statuses = [c.status for c in checks]
    summary = {s: statuses.count(s) for s in ("pass", "fail", "inconclusive")}
    obj = {"x_max": str(x_max), "y_max": str(y_max), "bound": str(args.bound), "checks": rows, "summary": summary}
    text = "\n".join(
        f"x={r['x']} y={r['y']} w={r['w']}: {r['status']}" for r in rows if r["status"] != "pass" or r["expected"]
    )
    text += f"\n{summary['pass']} pass, {summary['fail']} fail, {summary['inconclusive']} inconclusive"
    _emit(obj, args.json, text)
    if summary["fail"]:
        return EXIT_FALSE
    return EXIT_INCONCLUSIVE if summary["inconclusive"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diophantine", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("pell", help="Pell pairs x_n(a), y_n(a)")
    sp.add_argument("a", type=_nat)
    sp.add_argument("n", type=_nat, nargs="?")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--enumerate", type=_nat, metavar="X_BOUND", help="all solutions with x <= X_BOUND")
    g.add_argument("--index", type=_nat, nargs=2, metavar=("X", "Y"), help="index n of the solution (X, Y)")
    add_json(sp)
    sp.set_defaults(func=cmd_pell)

    sp = sub.add_parser("compile", help="compile a formula file to polynomial JSON")
    sp.add_argument("file", help="s-expression formula file, or - for stdin")
    sp.add_argument("k", type=_nat, help="number of parameters")
    sp.set_defaults(func=cmd_compile)

    sp = sub.add_parser("check", help="membership of a parameter vector")
    sp.add_argument("file", nargs="?", help="polynomial JSON or formula file, or - for stdin")
    sp.add_argument("params", type=_nat, nargs="*")
    sp.add_argument("--pow", action="store_true", help="use the built-in power polynomial (params x y w)")
    sp.add_argument("--bound", type=_nat, default=None, help="bound on dummies / existential witnesses")
    sp.add_argument("--max-points", type=_nat, default=DEFAULT_MAX_POINTS)
    sp.add_argument("--node-limit", type=_nat, default=DEFAULT_NODE_LIMIT)
    sp.add_argument("--max-bits", type=_nat, default=POW_MAX_BITS, help="size cap for constructed witnesses")
    add_json(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verify", help="desk-scale verification sweeps")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--theorem3", type=_nat, nargs=2, metavar=("A", "K_MAX"))
    g.add_argument("--pow", type=_nat, nargs=2, metavar=("X_MAX", "Y_MAX"))
    sp.add_argument("--witness-bound", type=_nat, default=10**6)
    sp.add_argument("--x-bound", type=_nat, default=5000)
    sp.add_argument("--cache", help="witness cache JSON to read")
    sp.add_argument("--update-cache", action="store_true", help="write found witnesses back to --cache")
    sp.add_argument("--bound", type=_nat, default=DEFAULT_POW_BOUND, help="desk bound for negative power checks")
    sp.add_argument("--w-max", type=_nat, default=100)
    sp.add_argument("--max-bits", type=_nat, default=None, help="witness size cap (default 2**16 for --theorem3, 2**20 for --pow)")
    sp.add_argument("--node-limit", type=_nat, default=200_000)
    add_json(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "check" and args.bound is None:
        args.bound = DEFAULT_POW_BOUND if args.pow else 10
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
