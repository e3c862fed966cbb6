"""Command line front end.

Exit codes: 0 on success, 1 when a verification fails (a bound is violated,
a scan finds a counterexample, a certificate does not check out), 2 on usage
errors (unknown order, malformed form, unsupported request).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .associates import residue_certificate
from .euclid import DeltaBoundError, verify_delta
from .nonexist import search_imaginary_unit
from .order import builtin_orders, get_order
from .parser import EvalError, ParseError, Session, describe_value, evaluate
from .represent import (
    Form,
    UnsupportedFormError,
    plan_for,
    represent,
    universality_scan,
)
from .units import units_of


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload))
    else:
        print(text)


def _parse_form(text: str) -> Form:
    return Form.parse(text)


def cmd_table(args) -> int:
    order = get_order(args.order)
    table = order.mul_table()
    _emit(table.to_json(), args.json, table.render())
    return 0


def cmd_units(args) -> int:
    order = get_order(args.order)
    us = units_of(order)
    if args.json:
        print(json.dumps(us.to_json()))
    else:
        print(f"{order.name}: {len(us)} units")
        for coords in us:
            from .order import combo_str
            print(f"  {combo_str(coords, order.gen_names):<24} = {order.element(coords)}")
    return 0


def cmd_euclid(args) -> int:
    order = get_order(args.order)
    try:
        report = verify_delta(order, depth=args.depth)
    except DeltaBoundError as err:
        _emit({"error": str(err), "ok": False}, args.json, f"FAIL: {err}")
        return 1
    _emit(report.to_json(), args.json, report.render())
    return 0


def cmd_associates(args) -> int:
    form = _parse_form(args.form)
    plan = plan_for(form)
    order = plan.order
    target = plan.target
    table = residue_certificate(order, target, plan.mode, plan.modulus)
    limit = None if args.full else 20
    _emit(table.to_json(), args.json, table.render(order, target, limit=limit))
    return 0


def cmd_represent(args) -> int:
    form = _parse_form(args.form)
    cert = represent(form, args.n, keep_audit=True)
    if not cert.verify():
        _emit({"error": "certificate failed verification"}, args.json,
              "FAIL: certificate failed verification")
        return 1
    x, y, z, w = cert.rep
    text = (f"{cert.n} = {x}^2 + {form.a}*{y}^2 + {form.b}*{z}^2 + {form.c}*{w}^2"
            f"   [x,y,z,w = {list(cert.rep)}]")
    if args.audit and not args.json:
        text += "\n" + json.dumps(cert.audit, indent=2)
    _emit(cert.to_json(), args.json, text)
    return 0


def cmd_scan(args) -> int:
    form = _parse_form(args.form)
    report = universality_scan(form, args.n_max)
    _emit(report.to_json(), args.json, report.render())
    return 0 if report.ok else 1


def cmd_nonexist(args) -> int:
    hits = search_imaginary_unit(args.max)
    payload = {"e_max": args.max, "solutions": [list(h) for h in hits],
               "ok": not hits}
    if hits:
        _emit(payload, args.json,
              f"FAIL: found {len(hits)} solutions, first {tuple(hits[0])}")
        return 1
    _emit(payload, args.json,
          f"no solution of e^2 = 2b^2 + 5c^2 + 10d^2 with e <= {args.max}")
    return 0


def cmd_repl(args) -> int:
    order = get_order(args.order)
    session = Session(order)
    interactive = sys.stdin.isatty()
    if interactive and not args.json:
        print(f"exact quaternion calculator, order {order.name} in {order.params}")
        print("bind with 'name = expr'; empty line or 'quit' to leave")
    while True:
        try:
            line = input("> " if interactive else "")
        except EOFError:
            break
        line = line.strip()
        if not line and interactive:
            break
        if not line:
            continue
        if line in ("quit", "exit"):
            break
        try:
            if "=" in line:
                name, body = line.split("=", 1)
                value = evaluate(body, session)
                session.bind(name.strip(), value)
                desc = describe_value(session, value)
                desc["bound"] = name.strip()
            else:
                value = evaluate(line, session)
                desc = describe_value(session, value)
        except (ParseError, EvalError) as err:
            if args.json:
                print(json.dumps({"error": str(err)}))
            else:
                print(f"error: {err}")
            continue
        if args.json:
            print(json.dumps(desc))
        else:
            gen = desc["generator_text"]
            if gen is not None:
                print(f"= {gen}   (algebra: {desc['text']})")
            else:
                print(f"= {desc['text']}   (not in {order.name})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quatforms",
        description="exact certificates for universal quaternary forms "
                    "via quaternion orders",
    )
    ap.add_argument("--version", action="version", version=f"quatforms {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("repl", cmd_repl, "interactive exact quaternion calculator")
    p.add_argument("--order", default="H111", help="active order (default H111)")

    p = add("table", cmd_table, "print an order's multiplication table")
    p.add_argument("order", help="H111, H122, H236 or H133")

    p = add("units", cmd_units, "enumerate an order's unit group")
    p.add_argument("order")

    p = add("euclid", cmd_euclid, "certify the Euclidean bound on a grid")
    p.add_argument("order")
    p.add_argument("--depth", type=int, default=24, help="grid depth (default 24)")

    p = add("associates", cmd_associates, "residue table of associate witnesses")
    p.add_argument("form", help="e.g. 1,2,3,6")
    p.add_argument("--full", action="store_true", help="print every residue row")

    p = add("represent", cmd_represent, "certificate that the form represents n")
    p.add_argument("form")
    p.add_argument("n", type=int)
    p.add_argument("--audit", action="store_true", help="include the derivation trail")

    p = add("scan", cmd_scan, "certify all n up to a bound")
    p.add_argument("form")
    p.add_argument("n_max", type=int)

    p = add("nonexist", cmd_nonexist, "scan for the obstruction equation's solutions")
    p.add_argument("--max", type=int, default=1000, help="bound on e (default 1000)")

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (UnsupportedFormError, KeyError, ValueError) as err:
        msg = str(err)
        if args.json:
            print(json.dumps({"error": msg}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 2
    except AssertionError as err:
        if args.json:
            print(json.dumps({"error": str(err), "ok": False}))
        else:
            print(f"FAIL: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
