"""Command-line front end.

Exit codes: 0 success, 1 verification failed (a witness is printed),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .bounds import (
    DEFAULT_DIGITS,
    asymptotic_limit,
    bound_for_plan,
    decimal_digits,
    reproduce_tables,
)
from .constructions import (
    CertificationError,
    ExtendableTriple,
    PlanError,
    build_edel6,
    certify_triple,
    extended_product,
    parse_plan,
)
from .gf3 import CountOnly, DimensionError, Verdict, is_cap_set, is_extendable
from .io import (
    FormatError,
    admissible_header,
    format_vectors,
    read_vectors,
    write_admissible,
    write_vectors,
)
from .patterns import (
    NotAdmissibleError,
    NotFoundError,
    build_chain,
    build_low_weight,
    is_admissible,
    is_constant_weight,
    is_meta_extendable,
    is_recursively_admissible,
)
from .satgen import (
    DecodeError,
    EncoderBugError,
    EncodingError,
    VarMap,
    brute_force_admissible,
    decode_model,
    emit_dimacs,
    encode,
    parse_solver_output,
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _vec(v) -> str:
    return "".join(map(str, v))


def _report_verdict(v: Verdict, out) -> int:
    if v:
        print("pass", file=out)
        return OK
    print(f"FAIL {v.condition}", file=out)
    if v.condition == "cap" or v.condition.startswith("extendable"):
        print("witness: " + "+".join(_vec(x) for x in v.witness) + "=0", file=out)
    elif v.witness:
        print("witness: " + " ".join(_vec(x) for x in v.witness), file=out)
    if v.detail:
        print(v.detail, file=out)
    return FAILED


def _emit(text: str, path: Optional[str], out) -> None:
    if path:
        Path(path).write_text(text)
    else:
        out.write(text)


# -- verify ------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    kind = args.kind
    files = args.files
    expect = {"cap": 1, "admissible": 1, "extendable": 3, "meta": 3}[kind]
    if len(files) != expect:
        raise UsageError(f"verify {kind} takes {expect} file(s)")
    sets = [read_vectors(f) for f in files]
    if kind == "cap":
        return _report_verdict(is_cap_set(sets[0]), out)
    if kind == "admissible":
        s = sets[0]
        if args.constant_weight:
            v = is_constant_weight(s, *args.constant_weight)
        else:
            v = is_admissible(s)
        if v and args.recursive:
            v = is_recursively_admissible(s)
        return _report_verdict(v, out)
    if kind == "extendable":
        return _report_verdict(is_extendable(*sets), out)
    return _report_verdict(is_meta_extendable(*sets), out)


# -- build -------------------------------------------------------------------

def cmd_build(args, out) -> int:
    what = args.what
    params = args.params
    if what == "edel6":
        if params:
            raise UsageError("build edel6 takes no parameters")
        triple = build_edel6()
        if args.output:
            for name, s in zip(("a0", "a1", "a2"), triple.components):
                write_vectors(f"{args.output}_{name}.txt", s, f"# edel6 {name}")
        else:
            for name, s in zip(("A0", "A1", "A2"), triple.components):
                print(f"# {name} ({len(s)} vectors)", file=out)
                out.write(format_vectors(s))
        return OK
    if what == "chain":
        if len(params) != 1:
            raise UsageError("build chain <m>")
        s = build_chain(params[0])
    elif what == "lowweight":
        if len(params) != 2:
            raise UsageError("build lowweight <m> <w>")
        s = build_low_weight(*params)
    else:
        raise UsageError(f"unknown builder {what!r}")
    if args.output:
        write_admissible(args.output, s)
    else:
        out.write(format_vectors(s, admissible_header(s)))
    return OK


# -- extend ------------------------------------------------------------------

def _load_triple(spec: List[str]) -> ExtendableTriple:
    if spec == ["edel6"]:
        return build_edel6()
    if len(spec) != 3:
        raise UsageError("--triple takes 'edel6' or three files")
    return certify_triple(*(read_vectors(f) for f in spec))


def cmd_extend(args, out) -> int:
    s = read_vectors(args.pattern_file)
    triple = _load_triple(args.triple)
    result = extended_product(s, triple, count_only=args.count_only)
    if isinstance(result, CountOnly):
        print(f"dimension\t{result.dimension}", file=out)
        print(f"size\t{result.size}", file=out)
        return OK
    _emit(format_vectors(result), args.output, out)
    return OK


# -- bound -------------------------------------------------------------------

def _bound_rows_out(rows, fmt: str, exact: bool, out) -> None:
    if exact and hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    if not exact:
        rows = [{k: v for k, v in r.items() if k != "size"} for r in rows]
    else:
        rows = [{**r, "size": str(r["size"])} for r in rows]
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
        return
    if not rows:
        return
    keys = list(rows[0])
    print("\t".join(keys), file=out)
    for r in rows:
        print("\t".join(str(r.get(k, "")) for k in keys), file=out)


def cmd_bound(args, out) -> int:
    digits = args.digits
    rows = []
    if args.what == "plan":
        if len(args.params) != 1:
            raise UsageError("bound plan <planfile>")
        p = parse_plan(Path(args.params[0]).read_text())
        rep = bound_for_plan(p, digits)
        rows.append({"plan": rep.provenance, "dimension": rep.dimension,
                     "size_digits": rep.size_digits, "bound": rep.bound, "size": rep.size})
    elif args.what == "tables":
        for row in reproduce_tables(digits):
            rep = row.report
            size = getattr(rep, "size", None)
            if size is None:
                size = rep.a0 + rep.a1
            rows.append({"plan": row.construction, "dimension": row.dimension,
                         "size_digits": decimal_digits(size), "bound": row.bound,
                         "expected": row.expected,
                         "match": "yes" if row.matches() else "NO", "size": size})
    elif args.what == "limit":
        if len(args.params) != 3:
            raise UsageError("bound limit <n> <a0> <a1>")
        n, a0, a1 = (int(x) for x in args.params)
        rep = asymptotic_limit(n, a0, a1, digits)
        rows.append({"plan": f"limit({n},{a0},{a1})", "dimension": n,
                     "size_digits": decimal_digits(a0 + a1), "bound": rep.limit,
                     "alpha": str(rep.alpha), "size": a0 + a1})
    else:
        raise UsageError(f"unknown bound target {args.what!r}")
    _bound_rows_out(rows, args.format, args.exact, out)
    return OK


# -- sat ---------------------------------------------------------------------

def cmd_sat(args, out) -> int:
    if args.action == "encode":
        f, _ = encode(args.m, args.w, args.profile)
        data = emit_dimacs(f)
        if args.output:
            Path(args.output).write_bytes(data)
        else:
            out.write(data.decode("ascii"))
        return OK
    if args.action == "decode":
        m, w = args.instance
        parsed = parse_solver_output(Path(args.model_file).read_text())
        if parsed.status == "UNSAT":
            print("solver reported UNSATISFIABLE; nothing to decode", file=out)
            return FAILED
        try:
            s = decode_model(parsed.model, VarMap.build(m, w))
        except EncoderBugError as exc:
            print(f"FAIL {exc}", file=out)
            return FAILED
        if args.output:
            write_admissible(args.output, s)
        else:
            out.write(format_vectors(s, admissible_header(s)))
        return OK
    if args.action == "oracle":
        res = brute_force_admissible(args.m, args.w, args.node_budget)
        print(f"I({args.m},{args.w}): {res.status}", file=out)
        if res.certificate is not None and args.output:
            write_admissible(args.output, res.certificate)
        return OK if res.status != "inconclusive" else FAILED
    raise UsageError(f"unknown sat action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capsets", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"capsets {__version__}")
    parser.add_argument("--seed", type=int, help="accepted for compatibility; all algorithms are deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a cap, admissible, extendable or meta set")
    p.add_argument("kind", choices=["cap", "admissible", "extendable", "meta"])
    p.add_argument("files", nargs="+")
    p.add_argument("--recursive", action="store_true")
    p.add_argument("--constant-weight", nargs=2, type=int, metavar=("M", "W"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build", help="build edel6, chain <m> or lowweight <m> <w>")
    p.add_argument("what", choices=["edel6", "chain", "lowweight"])
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("extend", help="extended product of an admissible set and a triple")
    p.add_argument("pattern_file")
    p.add_argument("--triple", nargs="+", required=True, metavar="edel6|FILE")
    p.add_argument("-o", "--output")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("bound", help="bound plan <file> | tables | limit <n> <a0> <a1>")
    p.add_argument("what", choices=["plan", "tables", "limit"])
    p.add_argument("params", nargs="*")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--exact", action="store_true", help="append the full decimal size")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sat", help="CNF encode / decode / brute-force oracle")
    ssub = p.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("encode")
    q.add_argument("m", type=int)
    q.add_argument("w", type=int)
    q.add_argument("--profile", default="none")
    q.add_argument("-o", "--output")
    q = ssub.add_parser("decode")
    q.add_argument("model_file")
    q.add_argument("--instance", nargs=2, type=int, required=True, metavar=("M", "W"))
    q.add_argument("-o", "--output")
    q = ssub.add_parser("oracle")
    q.add_argument("m", type=int)
    q.add_argument("w", type=int)
    q.add_argument("--node-budget", type=int, default=10**6)
    q.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sat)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except (UsageError, FormatError, PlanError, EncodingError, DecodeError,
            DimensionError, NotAdmissibleError, NotFoundError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return USAGE
    except CertificationError as exc:
        print(f"FAIL {exc}", file=out)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
