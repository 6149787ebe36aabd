"""Command-line front end.

Exit codes: 0 pass, 1 law violation, 2 structural or parse error,
3 inconclusive proof search.
"""
from __future__ import annotations

import argparse
import random
import sys
import time

from . import diagram as dg
from .fileformat import (
    Instance,
    ParseError,
    parse_diagram,
    parse_functor,
    parse_instance,
    serialize_diagram,
    serialize_instance,
)
from .fincat import StructuralError, ValidationReport
from .homomorphism import check_f_minus_one, validate_monoidal_functor
from .improve import ImprovementError, choose_inverse_data, improve
from .monoidal import validate_monoidal
from .twogroup import CoherentTwoGroup, check_weak_2group, validate_coherent

OK, VIOLATION, BAD_INPUT, INCONCLUSIVE = 0, 1, 2, 3


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text: str, out) -> None:
    if path is None:
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_instance(path: str) -> Instance:
    inst = parse_instance(_read(path))
    report = validate_monoidal(inst.M)
    if report.structural:
        raise StructuralError("; ".join(report.lines()), report)
    return inst


def _emit(report: ValidationReport, label: str, out) -> int:
    """Print a report section and return its exit code."""
    counts = " ".join(f"{k}={v}" for k, v in sorted(report.counts.items()))
    status = "PASS" if report.ok else "FAIL"
    out.write(f"{label} {status}" + (f" [{counts}]" if counts else "") + "\n")
    for line in report.lines():
        out.write(f"  {line}\n")
    if report.structural:
        return BAD_INPUT
    return OK if report.ok else VIOLATION


def _fail_input(exc: Exception, out) -> int:
    out.write(f"ERROR {type(exc).__name__}: {exc}\n")
    return BAD_INPUT


def _level_report(inst: Instance, level: str) -> ValidationReport:
    if level == "coherent":
        if inst.data is None:
            raise ParseError("level coherent needs DUAL, UNIT_I and COUNIT_E sections")
        return validate_coherent(CoherentTwoGroup(inst.M, inst.data))
    report = validate_monoidal(inst.M)
    if level == "weak" and report.ok:
        check_weak_2group(inst.M, report)
    return report


def cmd_validate(path: str, level: str = "coherent", out=None) -> int:
    out = out or sys.stdout
    try:
        inst = _load_instance(path)
        report = _level_report(inst, level)
    except (OSError, ValueError) as exc:
        return _fail_input(exc, out)
    return _emit(report, f"validate {level}", out)


def cmd_improve(path: str, out_path: str | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        inst = _load_instance(path)
        report = validate_monoidal(inst.M)
        W = check_weak_2group(inst.M, report) if report.ok else None
        if W is None:
            out.write("ERROR input is not a weak 2-group\n")
            for line in report.lines():
                out.write(f"  {line}\n")
            return BAD_INPUT
        choice = inst.data if inst.data is not None else choose_inverse_data(W)
        G = improve(inst.M, choice)
    except ImprovementError as exc:
        out.write(f"ERROR {exc}\n")
        return VIOLATION
    except (OSError, ValueError) as exc:
        return _fail_input(exc, out)
    # summary lines are comments, so stdout stays a valid instance file
    out.write("# improve PASS\n")
    out.write("# UNIT_I " + " ".join(map(str, G.data.unit_i)) + "\n")
    _write(out_path, serialize_instance(Instance(G.M, G.data), expand=True), out)
    return OK


def cmd_check_hom(path_F: str, path_C: str, path_C2: str, out=None) -> int:
    out = out or sys.stdout
    try:
        src = _load_instance(path_C)
        tgt = _load_instance(path_C2)
        Fm = parse_functor(_read(path_F), src.M, tgt.M)
    except (OSError, ValueError) as exc:
        return _fail_input(exc, out)
    code = _emit(validate_monoidal_functor(Fm), "homomorphism", out)
    if code != OK:
        return code
    if src.data is None or tgt.data is None:
        out.write("F-1 SKIPPED (no dual data on source or target)\n")
        return OK
    return _emit(check_f_minus_one(Fm, src.data, tgt.data), "F-1", out)


def cmd_prove(d1_path: str, d2_path: str, max_steps: int = 64, out_path: str | None = None,
              out=None) -> int:
    out = out or sys.stdout
    try:
        d1 = parse_diagram(_read(d1_path))
        d2 = parse_diagram(_read(d2_path))
        start = time.perf_counter()
        trace = dg.equivalent(d1, d2, max_steps=max_steps)
    except (OSError, ValueError) as exc:
        return _fail_input(exc, out)
    elapsed = time.perf_counter() - start
    if trace is None:
        out.write(f"prove INCONCLUSIVE (max_steps {max_steps})\n")
        return INCONCLUSIVE
    out.write(f"prove PASS rules={trace.rule_count} steps={len(trace.steps)} time={elapsed:.3f}s\n")
    text = "".join(line + "\n" for line in trace.lines())
    if out_path is None:
        out.write(text)
    else:
        _write(out_path, text, out)
    return OK


def cmd_gen(directive: str, seed: int = 0, out_path: str | None = None, size: int = 4, out=None) -> int:
    """``diagram:NAME``, ``diagram:random`` or any instance generator."""
    out = out or sys.stdout
    try:
        if directive.startswith("diagram:"):
            name = directive.split(":", 1)[1]
            if name == "random":
                d = dg.random_diagram(random.Random(seed), size)
            elif name in dg.NAMED:
                d = dg.NAMED[name]()
            else:
                raise ParseError(f"unknown diagram {name!r}; known: random {' '.join(dg.NAMED)}")
            text = serialize_diagram(d)
        else:
            inst = parse_instance(f"GENERATOR {directive}\n")
            text = f"# generated from {directive}\n" + serialize_instance(inst, expand=True)
    except ValueError as exc:
        return _fail_input(exc, out)
    _write(out_path, text, out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twogroups", description="Check weak and coherent 2-groups.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", help="check the laws of an instance file")
    v.add_argument("path")
    v.add_argument("--level", choices=("monoidal", "weak", "coherent"), default="coherent")
    i = sub.add_parser("improve", help="replace units so that the zig-zags hold")
    i.add_argument("path")
    i.add_argument("--out")
    h = sub.add_parser("check-hom", help="check a monoidal functor between two instances")
    h.add_argument("functor")
    h.add_argument("source")
    h.add_argument("target")
    pr = sub.add_parser("prove", help="search for a rewrite trace between two diagrams")
    pr.add_argument("d1")
    pr.add_argument("d2")
    pr.add_argument("--max-steps", type=int, default=64)
    pr.add_argument("--out")
    g = sub.add_parser("gen", help="write a generated instance or diagram")
    g.add_argument("directive")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--size", type=int, default=4)
    g.add_argument("--out")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args.path, args.level)
    if args.command == "improve":
        return cmd_improve(args.path, args.out)
    if args.command == "check-hom":
        return cmd_check_hom(args.functor, args.source, args.target)
    if args.command == "prove":
        return cmd_prove(args.d1, args.d2, args.max_steps, args.out)
    return cmd_gen(args.directive, args.seed, args.out, args.size)


if __name__ == "__main__":
    sys.exit(main())
