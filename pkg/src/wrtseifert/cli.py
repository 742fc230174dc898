"""Command-line front end.

Exit status: 0 on success, 1 for invalid input, 2 when an internal
consistency check or a table regression fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

import mpmath

from . import asymptotics, lattice, tables
from .errors import ConsistencyError, DomainError
from .hp import DEFAULT_PRECISION, HPComplex
from .modular import c_value
from .seifert import chern_simons, label_sum, make_manifold, orbit_representatives
from .wrt import tau_exact


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _InputError(message)


def _parse_p(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise _InputError(f"--p must be comma-separated integers, got {text!r}")


def _parse_rows(text: str | None):
    if not text:
        return None
    return [int(x) for x in text.split(",") if x.strip()]


def _rat(x: Fraction) -> str:
    return str(Fraction(x))


def _complex_fields(prefix: str, z: HPComplex) -> dict:
    re, im = z.decimal_parts()
    return {f"{prefix}_re": re, f"{prefix}_im": im}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wrtseifert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, needs_n=False):
        sp.add_argument("--p", required=True, help="comma-separated fiber orders")
        if needs_n:
            sp.add_argument("--n", type=int, required=True, help="level N (table row)")
        sp.add_argument("--prec", type=int, default=DEFAULT_PRECISION, help="precision in bits")
        sp.add_argument("--phi", default=None, help="override the phase invariant (rational)")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")

    sp = sub.add_parser("wrt", help="exact WRT invariant")
    common(sp, True)
    sp.add_argument("--threads", type=int, default=None)

    sp = sub.add_parser("asymptotic", help="dominant term and full expansion")
    common(sp, True)
    sp.add_argument("--tail-terms", type=int, default=6)

    sp = sub.add_parser("tseries", help="tail coefficients T(k)")
    common(sp)
    sp.add_argument("--count", type=int, default=4, help="largest k")
    sp.add_argument("--method", choices=("series", "closed", "both"), default="both")

    sp = sub.add_parser("ohtsuki", help="Ohtsuki coefficients")
    common(sp)
    sp.add_argument("--count", type=int, default=2, help="largest n")

    for name in ("lattice", "conjecture", "cs-table"):
        common(sub.add_parser(name))

    sp = sub.add_parser("regress", help="recompute embedded table rows")
    sp.add_argument("--table", type=int, choices=(1, 2), required=True)
    sp.add_argument("--rows", default=None, help="comma-separated N values")
    sp.add_argument("--slow", action="store_true", help="include the slow rows")
    sp.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
    return parser


def _manifold(args):
    phi = Fraction(args.phi) if getattr(args, "phi", None) else None
    return make_manifold(_parse_p(args.p), phi=phi)


def _cmd_wrt(args) -> list[dict]:
    m = _manifold(args)
    if args.n < 1:
        raise DomainError(f"--n must be >= 1, got {args.n}")
    r = tau_exact(m, args.n + 2, args.prec, args.threads)
    rec = {"p": list(m.p), "N": args.n}
    rec.update(_complex_fields("tau", r.tau))
    rec.update(_complex_fields("Z", r.z))
    rec["prec_bits"] = args.prec
    return [rec]


def _cmd_asymptotic(args) -> list[dict]:
    m = _manifold(args)
    rec = {"p": list(m.p), "N": args.n}
    rec.update(_complex_fields("Z0", asymptotics.z_dominant(m, args.n, args.prec)))
    if m.P <= asymptotics.MAX_EXPANSION_P:
        rep = asymptotics.full_expansion(m, args.n, args.tail_terms, args.prec)
        with mpmath.workprec(args.prec + 32):
            rec.update(_complex_fields("divergent", rep.to_z(rep.divergent_sum(), m.phi)))
        rec.update(_complex_fields("expansion", asymptotics.evaluate_expansion(m, rep)))
        rec["terms"] = len(rep.terms)
    rec["tail_terms"] = args.tail_terms
    rec["prec_bits"] = args.prec
    return [rec]


def _cmd_tseries(args) -> list[dict]:
    m = _manifold(args)
    T = asymptotics.t_series(m, args.count, args.method)
    return [{"p": list(m.p), "k": k, "T": _rat(t)} for k, t in enumerate(T.coefficients)]


def _cmd_ohtsuki(args) -> list[dict]:
    m = _manifold(args)
    lam = asymptotics.ohtsuki_series(m, args.count).lambdas
    return [{"p": list(m.p), "n": n, "lambda": _rat(x)} for n, x in enumerate(lam)]


def _cmd_lattice(args) -> list[dict]:
    m = _manifold(args)
    rec = {"p": list(m.p), "interior_count": lattice.interior_count(m.p)}
    if m.M in (3, 4):
        rec["mordell_count"] = _rat(lattice.mordell_count(m.p))
    rec["c_coefficient"] = _rat(lattice.c_coefficient(m.p))
    if m.P <= lattice.MAX_EHRHART_PRODUCT:
        e = lattice.ehrhart_polynomial(m.p)
        rec["ehrhart"] = [_rat(c) for c in e.closure_poly.coefficients]
    rec["casson_ehrhart_residual"] = _rat(lattice.casson_ehrhart_check(m))
    return [rec]


def _cmd_conjecture(args) -> list[dict]:
    m = _manifold(args)
    r = lattice.conjecture_report(m)
    return [
        {
            "p": list(m.p),
            "D": r.D,
            "gamma": r.gamma,
            "L": r.L,
            "holds": r.holds,
            "vanishing": [str(l) for l in r.vanishing_labels],
        }
    ]


def _cmd_cs_table(args) -> list[dict]:
    m = _manifold(args)
    out = []
    for l in orbit_representatives(m):
        out.append(
            {
                "label": str(l),
                "label_sum": _rat(label_sum(m, l)),
                "cs": _rat(chern_simons(m, l)),
                "C": _rat(c_value(m, l)),
                "torsion": str(asymptotics.torsion_magnitude(m, l, args.prec)),
            }
        )
    return out


def _cmd_regress(args) -> tuple[list[dict], bool]:
    table = tables.TABLES[args.table]
    m = table.manifold()
    wanted = _parse_rows(args.rows)
    rows = [r for r in table.rows if (wanted is None and (args.slow or not r.slow)) or (wanted and r.N in wanted)]
    if wanted:
        missing = set(wanted) - {r.N for r in table.rows}
        if missing:
            raise DomainError(f"table {args.table} has no rows {sorted(missing)}")
    records, ok = [], True
    for r in rows:
        values = {
            "exact": tau_exact(m, r.N + 2, args.prec, args.threads).z,
            "asymptotic": asymptotics.z_dominant(m, r.N, args.prec),
        }
        for column, got in values.items():
            printed = getattr(r, column)
            dev = tables.digit_deviation(printed, got)
            status = "ok" if tables.matches(printed, got) else "MISMATCH"
            if status != "ok":
                mp = tables.misprint(args.table, r.N, column)
                if mp is not None and tables.matches(mp.corrected, got):
                    status = "misprint"
            ok &= status != "MISMATCH"
            records.append(
                {
                    "table": args.table,
                    "N": r.N,
                    "column": column,
                    "expected": str(printed),
                    "got": got.to_string(12),
                    "dev_units": f"{max(dev.values()):.3g}",
                    "status": status,
                }
            )
    return records, ok


_COMMANDS = {
    "wrt": _cmd_wrt,
    "asymptotic": _cmd_asymptotic,
    "tseries": _cmd_tseries,
    "ohtsuki": _cmd_ohtsuki,
    "lattice": _cmd_lattice,
    "conjecture": _cmd_conjecture,
    "cs-table": _cmd_cs_table,
}


def format_records(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "\n".join(json.dumps(r) for r in records) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        keys = list(records[0]) if records else []
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in records:
            w.writerow({k: json.dumps(v) if isinstance(v, list) else v for k, v in r.items()})
        return buf.getvalue()
    lines = []
    for r in records:
        lines.append("  ".join(f"{k}={v}" for k, v in r.items()))
    return "\n".join(lines) + "\n"


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command == "regress":
            records, ok = _cmd_regress(args)
            out.write(format_records(records, args.format))
            if not ok:
                err.write("regression failed\n")
                return 2
        else:
            records = _COMMANDS[args.command](args)
            out.write(format_records(records, args.format))
    except (_InputError, DomainError) as e:
        err.write(f"error: {e}\n")
        return 1
    except ConsistencyError as e:
        err.write(f"consistency failure: {e}\n")
        return 2
    err.write(f"elapsed_ms={int(1000 * (time.perf_counter() - start))}\n")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
