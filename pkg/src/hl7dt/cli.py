"""Command line front end.

Exit status is 0 on success, 1 when a data type operation fails (the
message goes to stderr) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import bench as bench_mod
from .anyvalue import tag_of, value_parse, value_print
from .errors import HL7Error
from .identity import II, ii_equal
from .interval import IVL, Kind, demotion, ivl_equal, ivl_identical, ivl_parse, ivl_relate, promotion
from .logic import BL, bl_binary, bl_equal, bl_not, bl_parse, format_table, null_result, truth_table
from .numeric import Ordering, real_print
from .quantity import (
    PQ,
    pq_convert,
    pq_equal,
    pq_greaterorequal,
    pq_greaterthan,
    pq_identical,
    pq_lessorequal,
    pq_lessthan,
    pq_order,
    pq_parse,
)
from .terminology import ACCESSORS, CV, ConceptRegistry, cv_accessor, implies
from .timestamp import TS, ts_cmp, ts_equal, ts_identical, ts_parse
from .ucum import UnitRegistry

TYPES = ("nullflavor", "bl", "bn", "real", "pq", "ts", "ivl_ts", "ivl_pq", "cv", "ii", "in")
COMPARE_OPS = ("equal", "identical", "lessthan", "lessorequal", "greaterthan",
               "greaterorequal", "order")
LOGIC_OPS = ("and", "or", "xor", "implies", "not")


class Context:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.json = args.format == "json"
        units = args.registry or os.environ.get("HL7_REGISTRY")
        terms = args.terminology or os.environ.get("HL7_TERMINOLOGY")
        self.units = UnitRegistry.load(units) if units else None
        self.terminology = ConceptRegistry.load(terms) if terms else None

    def parse(self, type_name: str, literal: str, domain: str | None = None) -> Any:
        return value_parse(type_name, literal, units=self.units,
                           terminology=self.terminology, domain=domain)


# output


def _fields(v: Any) -> dict:
    if isinstance(v, BL):
        return {"value": None if v.is_null else v.state, "nullflavor": _nf(v.nullflavor)}
    if isinstance(v, PQ):
        return {"value": real_print(v.value) if v.value is not None else None,
                "unit": str(v.unit) if v.unit is not None else None,
                "nullflavor": _nf(v.nullflavor)}
    if isinstance(v, TS):
        return {"precision": v.precision.name.lower(), "nullflavor": _nf(v.nullflavor)}
    if isinstance(v, IVL):
        return {"kind": v.kind.value, "form": v.form.value,
                "low": value_print(v.low) if v.low is not None else None,
                "high": value_print(v.high) if v.high is not None else None,
                "low_closed": v.low_closed, "high_closed": v.high_closed,
                "nullflavor": _nf(v.nullflavor)}
    if isinstance(v, CV):
        return {"code": v.code, "codesystem": v.codesystem,
                "codesystemversion": v.codesystem_version, "valueset": v.valueset,
                "valuesetversion": v.valueset_version, "originaltext": v.originaltext,
                "nullflavor": _nf(v.nullflavor)}
    if isinstance(v, II):
        return {"root": v.root, "extension": v.extension, "nullflavor": _nf(v.nullflavor)}
    return {}


def _nf(nf) -> str | None:
    return nf.value if nf is not None else None


def emit(ctx: Context, v: Any, type_name: str | None = None) -> None:
    if not ctx.json:
        print(value_print(v))
        return
    if isinstance(v, Ordering):
        obj = {"tag": "ORDERING", "literal": v.value}
    else:
        try:
            tag = tag_of(v).value
        except HL7Error:
            tag = type(v).__name__.upper()
        obj = {"tag": tag, "literal": value_print(v), **_fields(v)}
    if type_name:
        obj["type"] = type_name
    print(json.dumps(obj, sort_keys=False))


# verbs


def cmd_parse(ctx: Context, a) -> None:
    v = ctx.parse(a.type, a.literal, a.domain)
    if a.record:
        if not isinstance(v, CV):
            raise SystemExit("--record applies to --type cv")
        names = [f for f in ACCESSORS if f != "displayname"]
        values = {f: cv_accessor(v, f, ctx.terminology) for f in names}
        if ctx.json:
            print(json.dumps(values))
        else:
            width = max(map(len, names))
            for f in names:
                print(f"{f.ljust(width)} | {values[f] or ''}")
        return
    emit(ctx, v, a.type)


def cmd_canonical(ctx: Context, a) -> None:
    text = a.quantity.strip()
    if text[:1].isdigit() or text[:1] in "+-.":
        p = pq_parse(text, ctx.units)
    else:
        p = pq_parse("1 " + text, ctx.units)
    c = p.canonical(ctx.units)
    value = real_print(p.value * c.factor) if p.value is not None else str(p.nullflavor)
    if ctx.json:
        print(json.dumps({"tag": "PQ", "literal": f"{value} {c.unit_string()}",
                          "factor": real_print(c.factor), "unit": c.unit_string()}))
    else:
        print(f"{value} {c.unit_string()}")


def cmd_convert(ctx: Context, a) -> None:
    emit(ctx, pq_convert(pq_parse(a.source, ctx.units), a.to, ctx.units), "pq")


_PQ_RELATIONS = {
    "lessthan": pq_lessthan, "lessorequal": pq_lessorequal,
    "greaterthan": pq_greaterthan, "greaterorequal": pq_greaterorequal,
}
_TS_ACCEPT = {
    "lessthan": {Ordering.LT}, "lessorequal": {Ordering.LT, Ordering.EQ},
    "greaterthan": {Ordering.GT}, "greaterorequal": {Ordering.GT, Ordering.EQ},
}


def compare(op: str, type_name: str, x, y, ctx: Context):
    reg = ctx.units
    if type_name == "pq":
        if op == "equal":
            return pq_equal(x, y, reg)
        if op == "identical":
            return pq_identical(x, y, reg)
        if op == "order":
            return pq_order(x, y, reg=reg)
        return _PQ_RELATIONS[op](x, y, reg)
    if type_name == "ts":
        if op == "equal":
            return ts_equal(x, y)
        if op == "identical":
            return ts_identical(x, y)
        if x.is_null or y.is_null:
            return null_result(*(t.nullflavor for t in (x, y) if t.is_null))
        r = ts_cmp(x, y)
        return r if op == "order" else BL(r in _TS_ACCEPT[op])
    if type_name in ("ivl_ts", "ivl_pq"):
        if op == "equal":
            return ivl_equal(x, y, reg)
        if op == "identical":
            return ivl_identical(x, y, reg)
    if type_name in ("bl", "bn") and op in ("equal", "identical"):
        return bl_equal(BL(x.value) if type_name == "bn" else x, BL(y.value) if type_name == "bn" else y)
    if type_name in ("ii", "in") and op in ("equal", "identical"):
        return ii_equal(x, y)
    if type_name == "cv" and op in ("equal", "identical"):
        if x.is_null or y.is_null:
            return null_result(*(c.nullflavor for c in (x, y) if c.is_null))
        if op == "equal":
            return BL(x.code == y.code and x.codesystem == y.codesystem)
        return BL(x == y)
    raise HL7Error(f"{op} is not defined on {type_name}")


def cmd_compare(ctx: Context, a) -> None:
    x = ctx.parse(a.type, a.a, a.domain)
    y = ctx.parse(a.type, a.b, a.domain)
    emit(ctx, compare(a.op, a.type, x, y, ctx))


def cmd_logic(ctx: Context, a) -> None:
    mode = ctx.args.mode
    if a.table:
        if a.op == "not":
            raise HL7Error("--table needs a binary operator")
        table = truth_table(a.op, mode)
        if ctx.json:
            print(json.dumps({r: {c: str(v) for c, v in row.items()} for r, row in table.items()}))
        else:
            print(format_table(a.op, table))
        return
    if a.op == "not":
        if len(a.operands) != 1:
            raise HL7Error("not takes one operand")
        emit(ctx, bl_not(bl_parse(a.operands[0])))
        return
    if len(a.operands) != 2:
        raise HL7Error(f"{a.op} takes two operands")
    x, y = (bl_parse(s) for s in a.operands)
    emit(ctx, bl_binary(a.op, x, y, mode))


def cmd_promote(ctx: Context, a) -> None:
    emit(ctx, promotion(ts_parse(a.ts)), "ivl_ts")


def cmd_demote(ctx: Context, a) -> None:
    emit(ctx, demotion(ivl_parse(a.ivl, Kind.TS, ctx.units)), "ts")


def cmd_relate(ctx: Context, a) -> None:
    kind = Kind.TS if a.type == "ivl_ts" else Kind.PQ
    x = ivl_parse(a.a, kind, ctx.units)
    element = ts_parse if kind is Kind.TS else (lambda s: pq_parse(s, ctx.units))
    try:
        y = element(a.b)
    except HL7Error:
        y = ivl_parse(a.b, kind, ctx.units)
    emit(ctx, ivl_relate(a.rel, x, y, ctx.units))


def cmd_implies(ctx: Context, a) -> None:
    x = ctx.parse("cv", a.a, a.domain)
    y = ctx.parse("cv", a.b, a.domain)
    emit(ctx, implies(x, y, ctx.terminology))


def cmd_bench(ctx: Context, a) -> None:
    ns = a.n or [10_000, 100_000]
    log = (lambda msg: print(msg, file=sys.stderr)) if a.verbose else None
    report = bench_mod.run_bench(ns, seed=a.seed, runs=a.runs, rep=a.rep,
                                 budget_s=a.budget if a.budget > 0 else None,
                                 reg=ctx.units, log=log)
    text = bench_mod.report_csv(report)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if a.figures:
        from .plotting import plot_all
        for path in plot_all(report.measurements, a.figures):
            print(f"wrote {path}", file=sys.stderr)
    bad = {n: [k for k, ok in agree.items() if not ok] for n, agree in report.agreement.items()}
    bad = {n: ks for n, ks in bad.items() if ks}
    if bad:
        raise HL7Error(f"packed and decomposed results differ: {bad}")


# argument parsing


def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--registry", metavar="PATH", default=default(None),
                   help="UCUM atom table (default: $HL7_REGISTRY or the shipped table)")
    p.add_argument("--terminology", metavar="PATH", default=default(None),
                   help="concept registry (default: $HL7_TERMINOLOGY or the shipped file)")
    p.add_argument("--mode", choices=("hl7", "altered"), default=default("hl7"),
                   help="treatment of na in and/or")
    p.add_argument("--format", choices=("text", "json"), default=default("text"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hl7dt", description="HL7 data type algebra")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help):
        p = sub.add_parser(name, help=help)
        _common(p, suppress=True)
        p.set_defaults(fn=fn)
        return p

    p = verb("parse", cmd_parse, "parse a literal and print it back")
    p.add_argument("--type", choices=TYPES, required=True)
    p.add_argument("--domain", help="concept domain for short cv literals")
    p.add_argument("--record", action="store_true", help="print every cv accessor")
    p.add_argument("literal")

    p = verb("canonical", cmd_canonical, "express a unit or quantity in base units")
    p.add_argument("quantity")

    p = verb("convert", cmd_convert, "convert a quantity to another unit")
    p.add_argument("--from", dest="source", required=True, metavar="PQ")
    p.add_argument("--to", required=True, metavar="UNIT")

    p = verb("compare", cmd_compare, "compare two values")
    p.add_argument("--op", choices=COMPARE_OPS, required=True)
    p.add_argument("--type", choices=TYPES, default="pq")
    p.add_argument("--domain")
    p.add_argument("a")
    p.add_argument("b")

    p = verb("logic", cmd_logic, "evaluate BL operators or print a truth table")
    p.add_argument("--op", choices=LOGIC_OPS, required=True)
    p.add_argument("--table", action="store_true")
    p.add_argument("operands", nargs="*")

    p = verb("promote", cmd_promote, "timestamp to the interval it denotes")
    p.add_argument("ts")

    p = verb("demote", cmd_demote, "interval back to a timestamp (inv if none)")
    p.add_argument("ivl")

    p = verb("relate", cmd_relate, "interval containment and overlap")
    p.add_argument("--rel", choices=("contains", "overlaps"), required=True)
    p.add_argument("--type", choices=("ivl_ts", "ivl_pq"), default="ivl_ts")
    p.add_argument("a")
    p.add_argument("b")

    p = verb("implies", cmd_implies, "concept subsumption, a << b")
    p.add_argument("--domain")
    p.add_argument("a")
    p.add_argument("b")

    p = verb("bench", cmd_bench, "packed versus decomposed storage benchmark")
    p.add_argument("--n", type=int, action="append", help="row count (repeatable)")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--rep", type=int, default=50, help="probes per timed index lookup")
    p.add_argument("--budget", type=float, default=4.0,
                   help="seconds per operation before stopping early (0 disables)")
    p.add_argument("--out", metavar="CSV")
    p.add_argument("--figures", metavar="DIR", help="write one PNG per operation")
    p.add_argument("--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = Context(args)
        args.fn(ctx, args)
    except (HL7Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
