"""twoselmer command line.

Exit codes: 0 success, 1 I/O failure, 2 usage or domain error,
3 partial or unverified result.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager

from . import __version__
from .errors import ConfigurationError, DomainError, SearchCapExceeded, TwoSelmerError

SCHEMA = "selmer-census/1"
CAP_ENV = "TWOSELMER_CAP"

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_PARTIAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _default_cap():
    from .quartics import DEFAULT_BOX_CAP

    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_BOX_CAP
    try:
        v = int(raw)
    except ValueError:
        raise ConfigurationError(f"{CAP_ENV}={raw!r} is not an integer") from None
    if v < 1:
        raise ConfigurationError(f"{CAP_ENV} must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twoselmer", description="2-Selmer groups of y^2 = x^3 + Ax + B and height censuses.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt="csv"):
        sp.add_argument("--format", choices=("csv", "json"), default=fmt)
        sp.add_argument("--output", "-o", help="write here instead of stdout")

    def bounded(sp):
        sp.add_argument("--X", dest="X", type=int, required=True, help="height bound, H(A,B) < X")
        sp.add_argument("--mod", action="append", default=[], metavar="m:A=r,B=s",
                        help="congruence condition; repeatable, all must hold")
        sp.add_argument("--jobs", "-j", type=_positive_int, default=1)

    e = sub.add_parser("enumerate", help="minimal curves of height < X")
    bounded(e)
    common(e)
    e.add_argument("--no-torsion", action="store_true", help="leave the torsion column empty")

    s = sub.add_parser("selmer", help="#Sel_2 of one curve")
    s.add_argument("-A", type=int, required=True)
    s.add_argument("-B", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="cross-check with the full 2-torsion descent")
    s.add_argument("--cap", type=_positive_int, default=None)
    common(s, "json")

    ls = sub.add_parser("localsolve", help="local solvability of z^2 = f(x, y)")
    ls.add_argument("form", help="coefficients a,b,c,d,e")
    ls.add_argument("--place", action="append", default=[], help="inf or a prime; default: all relevant places")
    common(ls, "json")

    r = sub.add_parser("reduce", help="canonical GL2(Z)-representative of an integral quartic")
    r.add_argument("form", help="coefficients a,b,c,d,e")
    common(r, "json")

    c = sub.add_parser("census", help="aggregate statistics over H < X")
    bounded(c)
    common(c, "json")
    c.add_argument("--count-only", action="store_true", help="skip Selmer computations")
    c.add_argument("--cap", type=_positive_int, default=None)
    return p


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        yield fh


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _conds(texts):
    from .curves import parse_congruence

    return [parse_congruence(t) for t in texts]


def _torsion_row(key):
    from .curves import csv_row

    return csv_row(key)


def _form(text):
    from .quartics import QuarticForm

    try:
        return QuarticForm.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"bad form {text!r}: {exc}") from None


def cmd_enumerate(args) -> int:
    from .census import _pool_map
    from .curves import CSV_HEADER, csv_row, enumerate_minimal

    if args.X < 1:
        raise ConfigurationError("--X must be >= 1")
    keys = list(enumerate_minimal(args.X, _conds(args.mod)))
    if args.no_torsion:
        rows = [csv_row(k, with_torsion=False) for k in keys]
    else:
        rows = _pool_map(_torsion_row, keys, args.jobs)
    with _sink(args.output) as out:
        if args.format == "csv":
            out.write(CSV_HEADER + "\n")
            for row in rows:
                out.write(row + "\n")
        else:
            names = CSV_HEADER.split(",")
            recs = []
            for row in rows:
                vals = row.split(",")
                recs.append({n: (int(v) if v != "" else None) for n, v in zip(names, vals)})
            out.write(_dump({"schema": SCHEMA, "X": args.X, "mod": args.mod, "curves": recs}))
    return EXIT_OK


def cmd_selmer(args) -> int:
    from .curves import CurveKey, require_nonsingular
    from .selmer import sel2_size, sel2_two_torsion_oracle, two_torsion_dim

    key = require_nonsingular(CurveKey(args.A, args.B))
    cap = args.cap or _default_cap()
    res = sel2_size(key, cap=cap)
    note = res.note
    if args.oracle:
        if two_torsion_dim(key) == 2:
            res = res.with_oracle(sel2_two_torsion_oracle(key) == res.size)
        else:
            note = (note + "; " if note else "") + "oracle needs full rational 2-torsion"
    with _sink(args.output) as out:
        if args.format == "json":
            doc = {"schema": SCHEMA, **res.to_json()}
            if note:
                doc["note"] = note
            out.write(_dump(doc))
        else:
            out.write("A,B,size,dim,oracle_agreement,verified\n")
            oa = "" if res.oracle_agreement is None else int(res.oracle_agreement)
            out.write(f"{key.A},{key.B},{res.size},{res.dim},{oa},{int(res.verified)}\n")
    if not res.verified or res.oracle_agreement is False:
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_localsolve(args) -> int:
    from .localsolve import is_locally_solvable, solvable_over_Qp, solvable_over_R

    f = _form(args.form)
    if f.poly_discriminant == 0:
        raise DomainError("form has zero discriminant")
    if args.place:
        certs = []
        for pl in args.place:
            if pl.lower() in ("inf", "infinity", "oo"):
                certs.append(solvable_over_R(f))
            else:
                try:
                    p = int(pl)
                except ValueError:
                    raise ConfigurationError(f"bad place {pl!r}") from None
                from sympy import isprime

                if not isprime(p):
                    raise ConfigurationError(f"{p} is not prime")
                certs.append(solvable_over_Qp(f, p))
        ok = all(c.solvable for c in certs)
    else:
        ok, certs = is_locally_solvable(f, stop_early=False)
    with _sink(args.output) as out:
        if args.format == "json":
            out.write(_dump({"schema": SCHEMA, "form": list(f.coeffs), "solvable": ok,
                             "certificates": [c.to_json() for c in certs]}))
        else:
            out.write("place,solvable,precision\n")
            for c in certs:
                prec = "" if c.precision is None else c.precision
                out.write(f"{c.place},{int(c.solvable)},{prec}\n")
    return EXIT_OK


def cmd_reduce(args) -> int:
    from .quartics import find_Z_transform, reduce_Z, seminorm

    f = _form(args.form)
    g = reduce_Z(f)
    T = find_Z_transform(f, g)
    with _sink(args.output) as out:
        if args.format == "json":
            out.write(_dump({"schema": SCHEMA, "form": list(f.coeffs), "reduced": list(g.coeffs),
                             "transform": list(T.rows), "I": f.I, "J": f.J,
                             "seminorm": round(seminorm(g), 12)}))
        else:
            out.write("a,b,c,d,e\n" + g.to_csv() + "\n")
    return EXIT_OK


def cmd_census(args) -> int:
    from .census import TIMESERIES_HEADER, run_census

    if args.X < 1:
        raise ConfigurationError("--X must be >= 1")
    cap = args.cap or _default_cap()
    stats = run_census(args.X, _conds(args.mod), count_only=args.count_only, jobs=args.jobs, cap=cap)
    with _sink(args.output) as out:
        if args.format == "json":
            out.write(_dump({"schema": SCHEMA, **stats.to_json()}))
        else:
            out.write(TIMESERIES_HEADER + "\n" + stats.timeseries_row() + "\n")
    if stats.partial:
        sys.stderr.write("partial census; unverified keys: "
                         + " ".join(f"({a},{b})" for a, b in stats.unverified) + "\n")
        return EXIT_PARTIAL
    return EXIT_OK


_COMMANDS = {
    "enumerate": cmd_enumerate,
    "selmer": cmd_selmer,
    "localsolve": cmd_localsolve,
    "reduce": cmd_reduce,
    "census": cmd_census,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigurationError, DomainError) as exc:
        sys.stderr.write(f"twoselmer {args.command}: {exc}\n")
        return EXIT_USAGE
    except SearchCapExceeded as exc:
        sys.stderr.write(f"twoselmer {args.command}: {exc}\n")
        return EXIT_PARTIAL
    except OSError as exc:
        sys.stderr.write(f"twoselmer {args.command}: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
