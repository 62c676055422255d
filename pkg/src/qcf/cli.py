"""Command line front end: ``qcf <eval|contract|classify|verdict|scan|catalog>``.

Exit codes: 0 success, 1 usage error, 2 evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from qcf.catalog import catalog_get, catalog_names
from qcf.cfeval import (
    DEFAULT_N_MAX,
    DEFAULT_TOL,
    DEFAULT_WINDOW,
    ElementStream,
    approximants,
    limit_estimate,
)
from qcf.classify import classify_lft, tail_parameter
from qcf.contract import contract
from qcf.errors import QCFError
from qcf.numfmt import format_complex, parse_complex, parse_complex_parts
from qcf.qpoly import FamilySpec, check_hypotheses
from qcf.scan import scan_region, write_csv
from qcf.verdict import verdict
from qcf.xcomplex import XC


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _complex_arg(text: str) -> str:
    # keep the text; parsing happens later so --precision can see the digits
    parse_complex(text)
    return text


def _add_family(p, q_required=True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", metavar="NAME")
    src.add_argument("--family", metavar="JSON_FILE")
    if q_required is not None:
        p.add_argument("--q", type=_complex_arg, required=q_required)


def _add_numeric(p):
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcf", description="q-continued fractions from polynomial families")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="numerical limit of the full fraction or one contraction")
    _add_family(p)
    _add_numeric(p)
    p.add_argument("--part", choices=["full", "even", "odd"], default="full")
    p.add_argument("--precision", type=int, help="decimal digits (mpmath evaluation)")

    p = sub.add_parser("contract", help="elements and approximants of the even or odd part")
    _add_family(p)
    p.add_argument("--part", choices=["even", "odd"], required=True)
    p.add_argument("--n", type=int, default=10, help="number of elements to print")
    p.add_argument("--precision", type=int)

    p = sub.add_parser("classify", help="classify the tail map c/(1+w)")
    p.add_argument("--c", type=_complex_arg)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--catalog", metavar="NAME")
    src.add_argument("--family", metavar="JSON_FILE")
    p.add_argument("--q", type=_complex_arg)
    p.add_argument("--part", choices=["full", "even", "odd"])

    p = sub.add_parser("verdict", help="theoretical convergence verdict at q")
    _add_family(p)

    p = sub.add_parser("scan", help="grid scan of verdicts and numerical statuses (CSV)")
    _add_family(p, q_required=None)
    _add_numeric(p)
    for name, default in (("--re-min", -5.0), ("--re-max", 5.0), ("--im-min", -5.0),
                          ("--im-max", 5.0)):
        p.add_argument(name, type=float, default=default)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--out", metavar="CSV_PATH")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("catalog", help="built-in families")
    csub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    csub.add_parser("list")
    show = csub.add_parser("show")
    show.add_argument("name")
    return parser


# ----------------------------------------------------------------------


def _family(args) -> FamilySpec:
    if args.catalog is not None:
        try:
            return catalog_get(args.catalog).fam
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    try:
        return FamilySpec.load(args.family)
    except OSError as exc:
        raise UsageError(f"cannot read family file: {exc}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"invalid family file {args.family}: {exc}") from None


def _stream(fam, q_text, precision):
    if precision is None:
        return ElementStream.from_family(fam, parse_complex(q_text))
    if precision < 1:
        raise UsageError("--precision must be positive")
    return ElementStream.from_family(fam, parse_complex_parts(q_text), precision=precision)


def _num(v):
    if isinstance(v, XC):
        v = v.to_complex()
    return format_complex(v)


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, complex):
        return format_complex(v)
    if isinstance(v, str):
        return str(v)
    return v


def cmd_eval(args, out):
    fam = _family(args)
    stream = _stream(fam, args.q, args.precision)
    if args.part != "full":
        stream = contract(stream, args.part)
    r = limit_estimate(stream, args.tol, args.window, args.n_max)
    _emit({"q": args.q, "part": args.part, "status": str(r.status), "value": _num(r.value),
           "n_used": r.n_used, "final_gap": r.final_gap}, out)


def cmd_contract(args, out):
    if args.n < 1:
        raise UsageError("--n must be positive")
    fam = _family(args)
    stream = contract(_stream(fam, args.q, args.precision), args.part)
    _emit({"n": 0, "b0": _num(stream.b0), "approximant": _num(stream.b0)}, out)
    for n, value in approximants(stream, args.n):
        if n == 0:
            continue
        a, b = stream.element(n)
        _emit({"n": n, "a": _num(a), "b": _num(b), "approximant": _num(value)}, out)


def cmd_classify(args, out):
    if args.c is not None:
        if args.catalog or args.family or args.q or args.part:
            raise UsageError("--c cannot be combined with a family")
        c = parse_complex(args.c)
        extra = {}
    else:
        if not ((args.catalog or args.family) and args.q and args.part):
            raise UsageError("classify needs --c, or a family with --part and --q")
        fam = _family(args)
        tp = tail_parameter(fam, check_hypotheses(fam), args.part, parse_complex(args.q))
        c = tp.c
        extra = {"q": args.q, "part": args.part, "formula_used": tp.formula_used.value}
    cls = classify_lft(c)
    _emit({"c": format_complex(c), **extra, "kind": str(cls.kind), "x": format_complex(cls.x),
           "y": format_complex(cls.y), "margin": cls.margin}, out)


def verdict_json(v) -> dict:
    d = {
        "conclusion": str(v.conclusion),
        "theorem_used": str(v.theorem_used),
        "reason": v.reason,
        "exceptional_set": v.exceptional_set,
        "classification": None,
        "tail_c": format_complex(v.tail_c),
        "hypotheses": None if v.hypotheses is None else _jsonable(asdict(v.hypotheses)),
    }
    if v.classification is not None:
        cls = v.classification
        d["classification"] = {"kind": str(cls.kind), "x": format_complex(cls.x),
                               "y": format_complex(cls.y), "margin": cls.margin}
    return d


def cmd_verdict(args, out):
    fam = _family(args)
    _emit(verdict_json(verdict(fam, parse_complex(args.q))), out)


def cmd_scan(args, out):
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    fam = _family(args)
    rows = scan_region(fam, (args.re_min, args.re_max), (args.im_min, args.im_max), args.grid,
                       tol=args.tol, n_max=args.n_max, window=args.window, workers=args.workers)
    if args.out is None:
        write_csv(rows, out)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)


def cmd_catalog(args, out):
    if args.action == "list":
        for name in catalog_names():
            out.write(name + "\n")
        return
    try:
        entry = catalog_get(args.name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    _emit({"name": entry.name, "family": entry.fam.to_json(), "notes": entry.notes}, out)


_COMMANDS = {"eval": cmd_eval, "contract": cmd_contract, "classify": cmd_classify,
             "verdict": cmd_verdict, "scan": cmd_scan, "catalog": cmd_catalog}


def run_cli(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    except (QCFError, ArithmeticError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    return 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
