"""Command line front end.

Exit codes: 0 success, 1 verification sweep found a failing check,
2 parse error, 3 insufficient truncation (the required truncation is
printed), 4 internal invariant violation.
"""

import argparse
import json
import sys

from . import io as fio
from . import invariants as inv
from .figmodules import ModuleError, TruncationError, realize
from .functors import Resolution, homology_dims


def _add_common(p):
    p.add_argument("--truncation", type=int, default=None,
                   help="override the truncation (default: the certified "
                        "requirement for the requested invariants)")
    p.add_argument("--field", default=None,
                   help="override the coefficient field: Q or Fp:<p>")
    p.add_argument("--group", default=None,
                   help="override the group: trivial, Z2, Z3, S3, or @file "
                        "with a multiplication table")
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="figmod",
        description="Exact invariants of finitely presented modules over "
                    "categories of decorated injections.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full invariant report for a module")
    p.add_argument("input", help="module description file")
    p.add_argument("--invariants", default=None,
                   help="comma separated subset of: %s"
                        % ",".join(inv.ALL_INVARIANTS))
    _add_common(p)

    p = sub.add_parser("hilbert", help="dimension values and polynomial")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("filtration",
                       help="construct a filtration by induced modules, or "
                            "report the obstructing homology degree")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("verify", help="run the theorem checks on seeded "
                                      "random presentations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    _add_common(p)

    p = sub.add_parser("random", help="emit a seeded random presentation "
                                      "as a description file")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    return ap


def _group_spec(arg):
    if arg.startswith("@"):
        with open(arg[1:]) as fh:
            return json.load(fh)
    return arg


def _load(args, requested=None):
    """Parse the input file (with any overrides) and pick the truncation."""
    with open(args.input) as fh:
        doc = json.load(fh)
    if args.field:
        doc["field"] = args.field
    if args.group:
        doc["group"] = _group_spec(args.group)
    pres, file_trunc = fio.parse_description(doc)
    req = inv.certified_requirements(pres.generation_degree,
                                     pres.relation_degree)
    needed = max(req[name] for name in (requested or inv.ALL_INVARIANTS))
    if args.truncation is not None:
        if args.truncation < needed:
            raise TruncationError(
                "truncation %d below the certified requirement"
                % args.truncation, required=needed)
        truncation = args.truncation
    else:
        truncation = max(file_trunc, needed)
    return pres, realize(pres, truncation)


def _emit(args, report):
    if args.format == "json":
        sys.stdout.buffer.write(fio.report_json(report))
    else:
        sys.stdout.write(fio.report_text(report))


def cmd_analyze(args):
    requested = None
    if args.invariants:
        requested = [s.strip() for s in args.invariants.split(",") if s.strip()]
        for name in requested:
            if name not in inv.ALL_INVARIANTS:
                raise fio.ParseError("unknown invariant %r" % name)
    _, realized = _load(args, requested)
    report = inv.analyze(realized, requested)
    _emit(args, report)
    return 0


def cmd_hilbert(args):
    _, realized = _load(args, ["hilbert"])
    report = inv.analyze(realized, ["hilbert"])
    _emit(args, report)
    return 0


def cmd_filtration(args):
    _, realized = _load(args, ["sharp_filtered"])
    V = realized.module
    flag, witness = inv.sharp_filtered(V)
    report = inv.analyze(realized, ["sharp_filtered"])
    if not flag:
        dims = homology_dims(V, 1, 0, Resolution(V, 0))
        obstruction = [n for n, v in enumerate(dims) if v]
        report["invariants"]["sharp_filtered"]["obstruction_degrees"] = \
            obstruction
    _emit(args, report)
    return 0


def cmd_verify(args):
    field = fio.parse_field(args.field) if args.field else None
    group = fio.parse_group(_group_spec(args.group)) if args.group else None
    truncation = args.truncation if args.truncation is not None else 8
    reports = inv.verify_theorems(args.seed, count=args.count,
                                  field=field, group=group,
                                  truncation=truncation)
    ok = all(r["pass"] for r in reports)
    summary = {"seed": args.seed, "count": args.count,
               "truncation": truncation, "pass": ok, "instances": reports}
    if args.format == "json":
        sys.stdout.buffer.write(fio.report_json(summary))
    else:
        for r in reports:
            status = "pass" if r["pass"] else "FAIL"
            bad = [k for k, c in r["checks"].items() if not c["pass"]]
            line = "seed %-4d %-4s gens %-8s rels %-8s %s" % (
                r["seed"], r["field"], r["generators"], r["relations"], status)
            if bad:
                line += "  failing: " + ",".join(bad)
            print(line)
        print("overall:", "pass" if ok else "FAIL")
    return 0 if ok else 1


def cmd_random(args):
    field = fio.parse_field(args.field) if args.field else None
    group = fio.parse_group(_group_spec(args.group)) if args.group else None
    truncation = args.truncation if args.truncation is not None else 8
    pres, _ = inv.random_presentation(args.seed, field=field, group=group,
                                      truncation=truncation)
    doc = fio.description_dict(pres, truncation)
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "hilbert": cmd_hilbert,
    "filtration": cmd_filtration,
    "verify": cmd_verify,
    "random": cmd_random,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (fio.ParseError, json.JSONDecodeError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except TruncationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        if exc.required is not None:
            print("required truncation: %d" % exc.required, file=sys.stderr)
        return 3
    except ModuleError as exc:
        print("internal invariant violation: %s" % exc, file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
