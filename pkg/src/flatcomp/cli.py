"""Command-line front end.

Exit codes: 0 success, 1 input or validation error, 2 a verification suite
found a counterexample, 3 a precondition failed (target not complete or
lacking least upper bounds).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import completions as comp
from . import enriched as en
from . import filters as fl
from . import preorders as po
from .documents import (
    DocumentError,
    bool_members_from_doc,
    dumps,
    filter_from_doc,
    load_json,
    map_from_doc,
    module_from_doc,
    monotone_map_from_doc,
    preorder_from_doc,
    space_from_doc,
)
from .harness import InstanceGrid, UnknownSuite, get_suite, parse_grid, run_suite, suite_names
from .quantale import Cost, CostParseError

EXIT_OK, EXIT_INPUT, EXIT_SUITE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flatcomp", description="Finite completions of generalized metric spaces and preorders.")
    sub = p.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("-o", "--output", help="write the report here instead of stdout")
        return sp

    v = add("validate", "check the axioms of a space document")
    v.add_argument("-i", "--input", required=True)

    c = add("classify", "classify a filter as Cauchy / flat / weakly flat")
    c.add_argument("-i", "--input", required=True)

    f = add("flat-check", "decide P1/P2 flatness of a module")
    f.add_argument("-i", "--input", required=True)
    f.add_argument("--base", choices=("cost", "bool"), default="cost")

    m = add("complete", "build a completion")
    m.add_argument("-i", "--input", required=True)
    m.add_argument("--mode", required=True, help="cauchy|p1|p2 for cost, down|p1|ideal|dm for bool")
    m.add_argument("--base", choices=("cost", "bool"), default="cost")

    e = add("extend", "extend a map to the completion of its source")
    e.add_argument("-i", "--input", required=True)
    e.add_argument("--mode", required=True, help="cauchy|p1|p2 for cost, p1|ideal for bool")
    e.add_argument("--base", choices=("cost", "bool"), default="cost")

    r = add("rep", "find the representative of a filter")
    r.add_argument("-i", "--input", required=True)

    s = add("verify", "run a verification suite")
    s.add_argument("--suite")
    s.add_argument("--list", action="store_true", help="list registered suites")
    s.add_argument("--grid", help="comma-separated costs, e.g. '0,1/2,1,2,inf'")
    s.add_argument("--max-objects", type=int)
    s.add_argument("--instance", help="re-run a counterexample document")
    return p


def _load(path: str):
    return load_json(path), os.path.dirname(os.path.abspath(path))


def _space_report(doc) -> dict:
    """Every violated axiom instance, without stopping at the first."""
    if not isinstance(doc, dict) or not isinstance(doc.get("objects"), list) or not isinstance(doc.get("dist"), list):
        raise DocumentError("a space document needs 'objects' and 'dist' lists")
    objects = doc["objects"]
    rows = doc["dist"]
    if len(rows) != len(objects) or any(not isinstance(r, list) or len(r) != len(objects) for r in rows):
        raise DocumentError("'dist' must be square and match 'objects'")
    try:
        costs = [[Cost(v) for v in r] for r in rows]
    except (TypeError, ValueError) as e:
        raise DocumentError(f"bad distance entry: {e}") from None
    errs = en.space_violations(objects, costs)
    out = []
    for err in errs:
        if isinstance(err, en.ZeroDiagonalViolation):
            out.append({"axiom": "zero-diagonal", "x": err.x, "value": str(err.value)})
        else:
            xy, yz, xz = err.values
            out.append({"axiom": "triangle", "x": err.x, "y": err.y, "z": err.z,
                        "d_xy": str(xy), "d_yz": str(yz), "d_xz": str(xz)})
    return {"valid": not out, "objects": list(objects), "violations": out}


def _cmd_validate(args):
    doc, _ = _load(args.input)
    report = _space_report(doc)
    return report, (EXIT_OK if report["valid"] else EXIT_INPUT)


def _cmd_classify(args):
    doc, base = _load(args.input)
    return fl.classify(filter_from_doc(doc, base)).as_dict(), EXIT_OK


def _cmd_flat_check(args):
    doc, base = _load(args.input)
    if args.base == "bool":
        p, members = bool_members_from_doc(doc, base)
        return po.bool_flat_check(p, members).as_dict(), EXIT_OK
    m = module_from_doc(doc, base)
    if not isinstance(m, en.LeftModule):
        raise DocumentError("flatness is decided for left modules")
    return {"p1": int(en.is_p1_flat(m)), "p2": int(en.is_p2_flat(m))}, EXIT_OK


def _cmd_complete(args):
    doc, base = _load(args.input)
    if args.base == "bool":
        if args.mode not in po.PREORDER_MODES:
            raise UsageError(f"mode must be one of {', '.join(po.PREORDER_MODES)} with --base bool")
        return po.complete_preorder(preorder_from_doc(doc, base), args.mode).as_report(), EXIT_OK
    if args.mode not in comp.MODES:
        raise UsageError(f"mode must be one of {', '.join(comp.MODES)}")
    return comp.complete(space_from_doc(doc, base), args.mode).as_report(), EXIT_OK


def _cmd_extend(args):
    doc, base = _load(args.input)
    if args.base == "bool":
        if args.mode not in ("p1", "ideal"):
            raise UsageError("mode must be p1 or ideal with --base bool")
        f = monotone_map_from_doc(doc, base)
        c = po.complete_preorder(f.source, args.mode)
        try:
            ext = po.extend_monotone(f, args.mode, c)
        except po.TargetLacksLub as e:
            return {"error": "target-lacks-lub", "witness": list(e.witness)}, EXIT_PRECONDITION
        table = [{"point": list(c.names(k)), "image": f.target.objects[ext.assignment[k]]} for k in range(len(c.points))]
        return {"mode": args.mode, "extension": table}, EXIT_OK
    if args.mode not in comp.MODES:
        raise UsageError(f"mode must be one of {', '.join(comp.MODES)}")
    f = map_from_doc(doc, base)
    c = comp.complete(f.source, args.mode)
    try:
        ext = comp.extend(f, args.mode, c)
    except comp.TargetNotComplete as e:
        return {"error": "target-not-complete", "witness": list(e.witness.base)}, EXIT_PRECONDITION
    table = [{"point": list(p.base), "image": ext(lbl)} for p, lbl in zip(c.points, c.space.objects)]
    return {"mode": args.mode, "extension": table}, EXIT_OK


def _cmd_rep(args):
    doc, base = _load(args.input)
    return {"representative": fl.representative(filter_from_doc(doc, base))}, EXIT_OK


def _cmd_verify(args):
    if args.list:
        return [
            {"name": n, "description": get_suite(n).description, "default_max_objects": get_suite(n).default_max}
            for n in suite_names()
        ], EXIT_OK
    if not args.suite:
        raise UsageError("verify needs --suite NAME or --list")
    suite = get_suite(args.suite)
    grid = None
    if args.grid is not None or args.max_objects is not None:
        values = parse_grid(args.grid) if args.grid is not None else suite.default_grid
        n = args.max_objects if args.max_objects is not None else suite.default_max
        grid = InstanceGrid(n, values)
    instance = None
    if args.instance:
        instance, _ = _load(args.instance)
        if not isinstance(instance, dict) or "instance" not in instance:
            raise DocumentError("a counterexample document needs an 'instance' field")
    report = run_suite(args.suite, grid=grid, instance=instance)
    return report.as_dict(), (EXIT_OK if report.passed else EXIT_SUITE)


COMMANDS = {
    "validate": _cmd_validate,
    "classify": _cmd_classify,
    "flat-check": _cmd_flat_check,
    "complete": _cmd_complete,
    "extend": _cmd_extend,
    "rep": _cmd_rep,
    "verify": _cmd_verify,
}


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        report, code = COMMANDS[args.verb](args)
    except UsageError as e:
        print(f"flatcomp: {e}", file=stderr)
        return EXIT_INPUT
    except UnknownSuite as e:
        print(f"flatcomp: unknown suite {e.args[0]!r}", file=stderr)
        return EXIT_INPUT
    except en.UnknownObject as e:
        print(f"flatcomp: unknown object {e.args[0]!r}", file=stderr)
        return EXIT_INPUT
    except (DocumentError, CostParseError, ValueError) as e:
        print(f"flatcomp: {e}", file=stderr)
        return EXIT_INPUT
    text = dumps(report) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if code == EXIT_PRECONDITION:
        print(f"flatcomp: precondition failed: {report['error']}", file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
