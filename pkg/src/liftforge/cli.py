"""Command-line front end: factor, enumerate, verify, condition, count, serve.

Exit codes: 0 ok, 1 verification failure, 2 schema error, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bank as bankmod
from .analysis import cascade_conditioning
from .cca import run_schema
from .eea import complexity_report, eea_factor, report_csv, report_text
from .errors import LiftforgeError, SchemaError
from .field import context_from_spec
from .pmat import (
    PolyMatrix2,
    cascade_from_json,
    cascade_to_json,
    cascade_to_text,
    expand,
    pr_check,
)
from .poly import OpCounter
from .signatures import enumerate_left, lifting_signature, uniqueness_check

TABLE_SCHEMAS = [
    ("col 0", "(L,0,0,0; L,0,1,0; L,0,0,0)"),
    ("col 1", "(L,0,0,{0,1}; L,0,1,1)"),
    ("row 0", "(R,0,0,0; R,0,1,0; R,0,0,0)"),
    ("row 1", "(R,0,0,{0,1}; R,{0,1,2},1,1)"),
]


def _add_bank_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--bank", help="builtin bank name "
                     f"({', '.join(bankmod.builtin_names())})")
    src.add_argument("--bank-json", help="path to a bank JSON file")
    src.add_argument("--matrix-json", help="path to a polyphase matrix JSON file")


def _load_matrix(args):
    if args.bank:
        return bankmod.to_polyphase(bankmod.builtin(args.bank))
    if args.bank_json:
        with open(args.bank_json) as fh:
            return bankmod.to_polyphase(bankmod.bank_from_json(json.load(fh)))
    with open(args.matrix_json) as fh:
        data = json.load(fh)
    field_spec = data.get("field", os.environ.get("LIFTFORGE_FIELD", "rational"))
    return PolyMatrix2.from_strings(data["matrix"], context_from_spec(field_spec))


def _print_cascade(cascade, fmt, counter=None):
    if fmt == "json":
        out = {"cascade": cascade_to_json(cascade),
               "signature": lifting_signature(cascade).to_text(),
               "conditioning": cascade_conditioning(cascade).to_json()}
        if counter is not None:
            out["op_counts"] = dict(zip(
                ("pp_add", "sp_mult", "pp_mult", "p_div"), counter.as_tuple()))
        print(json.dumps(out, indent=2))
    else:
        print(cascade_to_text(cascade))
        print(f"signature: {lifting_signature(cascade).to_text()}")
        print(cascade_conditioning(cascade).to_text())
        if counter is not None:
            a, s, m, d = counter.as_tuple()
            print(f"op counts: PP adds {a}, SP mults {s}, PP mults {m}, P divs {d}")


def cmd_factor(args):
    H = _load_matrix(args)
    counter = OpCounter()
    if args.schema:
        cascade = run_schema(H, args.schema, counter)
    else:
        axis, index = args.eea
        cascade, _ = eea_factor(H, axis, int(index), counter)
    _print_cascade(cascade, args.format, counter)
    return 0


def cmd_enumerate(args):
    H = _load_matrix(args)
    cascades = enumerate_left(H)
    if args.format == "json":
        print(json.dumps({
            "count": len(cascades),
            "cascades": [
                {"cascade": cascade_to_json(c),
                 "signature": lifting_signature(c).to_text()}
                for c in cascades
            ],
            "signatures_distinct": uniqueness_check(cascades),
        }, indent=2))
    else:
        print(f"{len(cascades)} left degree-lifting factorizations")
        for i, c in enumerate(cascades):
            print(f"--- factorization {i} "
                  f"signature {lifting_signature(c).to_text()}")
            print(cascade_to_text(c))
        print(f"signatures pairwise distinct: {uniqueness_check(cascades)}")
    return 0


def cmd_verify(args):
    H = _load_matrix(args)
    with open(args.cascade) as fh:
        cascade = cascade_from_json(json.load(fh))
    got = expand(cascade)
    if got == H:
        print("ok: cascade expands to the bank matrix exactly")
        return 0
    for i in range(2):
        for j in range(2):
            if got[i, j] != H[i, j]:
                msg = (f"mismatch at entry ({i},{j}): cascade gives "
                       f"{got[i, j].to_text()}, bank has {H[i, j].to_text()}")
                if args.format == "json":
                    print(json.dumps({"ok": False, "entry": [i, j],
                                      "message": msg}))
                else:
                    print(msg)
                return 1
    return 1


def cmd_condition(args):
    with open(args.cascade) as fh:
        cascade = cascade_from_json(json.load(fh))
    report = cascade_conditioning(cascade)
    print(json.dumps(report.to_json(), indent=2) if args.format == "json"
          else report.to_text())
    return 0


def cmd_count(args):
    H = _load_matrix(args)
    if args.all:
        # EEA/CCA pairs per column and row, as in the published comparison
        targets = []
        for label, schema in TABLE_SCHEMAS:
            axis, idx = label.split()
            targets.append(("EEA", axis, int(idx)))
            targets.append(("CCA", f"{label} CCA", schema))
    elif args.schema:
        targets = [("CCA", "CCA", args.schema)]
    elif args.eea:
        axis, index = args.eea
        targets = [("EEA", axis, int(index))]
    else:
        raise SchemaError("count needs --all, --schema, or --eea")
    rows = complexity_report(H, targets)
    print(report_csv(rows) if args.format == "csv" else report_text(rows))
    return 0


def cmd_serve(args):
    from .server import serve

    serve(port=args.port, host=args.host)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="liftforge",
        description="Causal lifting factorization of two-channel FIR "
                    "perfect-reconstruction filter banks")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="factor a bank into lifting steps")
    _add_bank_args(f)
    how = f.add_mutually_exclusive_group(required=True)
    how.add_argument("--schema", help='factorization schema, e.g. '
                     '"(L,0,0,0; L,0,1,0; L,0,0,0)"')
    how.add_argument("--eea", nargs=2, metavar=("AXIS", "INDEX"),
                     help="Euclidean factorization: row|col 0|1")
    f.add_argument("--format", choices=("text", "json"), default="text")
    f.set_defaults(func=cmd_factor)

    e = sub.add_parser("enumerate",
                       help="all left degree-lifting factorizations")
    _add_bank_args(e)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="check a cascade against a bank")
    _add_bank_args(v)
    v.add_argument("cascade", help="cascade JSON file")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("condition", help="conditioning report for a cascade")
    c.add_argument("cascade", help="cascade JSON file")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_condition)

    n = sub.add_parser("count", help="polynomial-operation counts")
    _add_bank_args(n)
    n.add_argument("--all", action="store_true",
                   help="full EEA/CCA grid over both rows and columns")
    n.add_argument("--schema")
    n.add_argument("--eea", nargs=2, metavar=("AXIS", "INDEX"))
    n.add_argument("--format", choices=("text", "csv"), default="text")
    n.set_defaults(func=cmd_count)

    s = sub.add_parser("serve", help="run the interactive session service")
    s.add_argument("--port", type=int, default=8321)
    s.add_argument("--host", default="127.0.0.1")
    s.set_defaults(func=cmd_serve)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        _fail(args, exc, 2)
        return 2
    except (LiftforgeError, OSError, json.JSONDecodeError) as exc:
        _fail(args, exc, 3)
        return 3


def _fail(args, exc, code):
    if getattr(args, "format", "text") == "json":
        body = {"error": exc.__class__.__name__, "message": str(exc)}
        if isinstance(exc, SchemaError) and exc.step_index is not None:
            body["step_index"] = exc.step_index
        print(json.dumps(body), file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
