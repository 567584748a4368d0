"""kleinzeta command line.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import sympy

from . import __version__, _accel, config
from .characters import Character
from .charsums import jacobi_sum
from .curves import KLEIN, KLEIN_BIRATIONAL, count, parse_curve
from .cyclotomic import to_quad7
from .errors import BudgetExceeded, KleinZetaError, NonIntegralError, WeilViolation
from .finite_field import build_field, field_of_order, prime_power
from .hecke import ap_triple, verify_theorem1
from .verify import SUITES, Limits, run_suite, summary
from .zeta import NumeratorPoly, ZetaFunction, fermat_field, zeta_fermat, zeta_from_counts, zeta_klein

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CACHE_VERSION = 1
OMEGA_NAMES = ("1", "omega", "omega^2")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# result cache

class Cache:
    """Advisory JSON cache; a wrong version means start empty."""

    def __init__(self, path, verify=False):
        self.path = path
        self.verify = verify
        self.data = {"version": CACHE_VERSION, "counts": {}, "primes": {}}
        self.dirty = False
        self.mismatches = []
        if path and os.path.exists(path):
            try:
                with open(path, encoding="utf-8") as fh:
                    doc = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                print(f"warning: ignoring unreadable cache {path}: {exc}", file=sys.stderr)
                doc = None
            if isinstance(doc, dict) and doc.get("version") == CACHE_VERSION:
                self.data["counts"].update(doc.get("counts", {}))
                self.data["primes"].update(doc.get("primes", {}))
            elif doc is not None:
                print(f"warning: cache {path} has version {doc.get('version')!r}, ignoring it",
                      file=sys.stderr)
                self.dirty = True

    def lookup(self, section, key, compute):
        """Cached value, or compute(); with verify, recompute and compare."""
        table = self.data[section]
        if self.path is None:
            return compute()
        if key in table and not self.verify:
            return table[key]
        value = compute()
        if key in table and table[key] != value:
            self.mismatches.append(f"{section}[{key}]: cached {table[key]!r}, computed {value!r}")
        if table.get(key) != value:
            table[key] = value
            self.dirty = True
        return value

    def save(self):
        if not self.path or not self.dirty:
            return
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.data, fh, sort_keys=True, indent=1)
            fh.write("\n")
        os.replace(tmp, self.path)


# ---------------------------------------------------------------------------
# output

def emit(out, fmt, command, columns, rows, extra=None):
    """Write rows (dicts keyed by ``columns``) in the chosen format."""
    if fmt == "json":
        doc = {"tool": "kleinzeta", "version": __version__, "command": command, "rows": rows}
        if extra:
            doc.update(extra)
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return
    out.write(f"# kleinzeta {__version__}\n")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        out.write(buf.getvalue())
        return
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for r in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")
    if extra:
        for k in sorted(extra):
            out.write(f"# {k}: {_cell(extra[k])}\n")


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.3e}"
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


# ---------------------------------------------------------------------------
# argument helpers

def _prime(text):
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not sympy.isprime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _prime_power(text):
    try:
        q = int(text)
        prime_power(q)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime power") from None
    return q


def _range(text):
    lo, sep, hi = text.partition("..")
    try:
        lo, hi = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _curve(text):
    try:
        return parse_curve(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _check_klein_char(curve, p):
    if curve.tag in (KLEIN, KLEIN_BIRATIONAL) and p == 7:
        raise UsageError("characteristic 7 is ramified for the Klein quartic and is excluded")


# ---------------------------------------------------------------------------
# commands

def cmd_field(args, cache, out):
    fd = field_of_order(args.q)
    row = {"q": fd.q, "p": fd.p, "r": fd.r, "modulus": fd.modulus_str(),
           "generator": fd.format(fd.generator), "generator_code": fd.generator}
    emit(out, args.format, "field", list(row), [row])
    return EXIT_OK


def cmd_count(args, cache, out):
    curve = args.curve
    p, r = prime_power(args.q)
    _check_klein_char(curve, p)
    fd = build_field(p, r)
    methods = ("brute", "formula") if args.method == "both" else (args.method,)
    rows = []
    for m in methods:
        n = cache.lookup("counts", f"{curve.name}|{fd.q}|{m}", lambda: count(curve, fd, m).N)
        rows.append({"curve": curve.name, "q": fd.q, "method": m, "N": n})
    emit(out, args.format, "count", ["curve", "q", "method", "N"], rows)
    return EXIT_OK if len({row["N"] for row in rows}) == 1 else EXIT_FAIL


def cmd_jacobi(args, cache, out):
    fd = field_of_order(args.q)
    if (fd.q - 1) % args.order:
        raise UsageError(f"order {args.order} does not divide q - 1 = {fd.q - 1}")
    chi = Character(fd, args.order, 1)
    j = jacobi_sum(chi**args.a, chi**args.b)
    row = {"q": fd.q, "n": j.n, "a": args.a, "b": args.b, "coeffs": list(j.coeffs), "value": str(j)}
    if j.n == 7:
        try:
            row["sqrt_minus_7_form"] = str(to_quad7(j))
        except ValueError:
            row["sqrt_minus_7_form"] = None
    emit(out, args.format, "jacobi", list(row), [row])
    return EXIT_OK


def _zeta_row(curve_name, p, r, zeta):
    num = zeta.numerator
    return {
        "curve": curve_name,
        "p": p,
        "r": r,
        "numerator": list(num.coeffs),
        "rh_max_residual": num.rh_max_residual(),
        "functional_eq": num.functional_equation(),
        "counts": num.counts(),
    }


def cmd_zeta(args, cache, out):
    curve, p = args.curve, args.p
    _check_klein_char(curve, p)
    if args.route == "counts":
        if curve.tag == KLEIN:
            zeta = zeta_from_counts(curve, p)
            r = 1
        else:
            fd = fermat_field(p, curve.n)
            zeta = zeta_from_counts(curve, p, fd.r)
            r = fd.r
    elif curve.tag == KLEIN:
        def compute():
            return list(zeta_klein(p, args.route, check=False).numerator.coeffs)

        coeffs = cache.lookup("primes", f"{p}|numerator|{args.route}", compute)
        zeta = ZetaFunction(NumeratorPoly(p, 3, coeffs), curve.name, args.route)
        r = 1
    elif curve.tag == "fermat":
        if p % curve.n == 0:
            raise UsageError(f"p = {p} divides the degree {curve.n}")
        fd = fermat_field(p, curve.n)
        zeta = zeta_fermat(fd, curve.n, check=False)
        r = fd.r
    else:
        raise UsageError(f"zeta is available for klein and fermat:N, not {curve.name}")
    row = _zeta_row(curve.name, p, r, zeta)
    emit(out, args.format, "zeta", list(row), [row])
    ok = row["functional_eq"] and row["rh_max_residual"] < 1e-9
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ap(args, cache, out):
    lo, hi = args.p_range
    rows = []
    status = EXIT_OK
    for p in sympy.primerange(max(lo, 2), hi + 1):
        if p == 7:
            rows.append({"p": 7, "a_p": None, "chi7": None, "verified": None, "note": "ramified, excluded"})
            continue

        def compute():
            t = ap_triple(p)
            return {"a_p": t.a0, "chi7_exp": t.chi_exp, "verified": verify_theorem1(p)["ok"]}

        try:
            rec = cache.lookup("primes", f"{p}|ap", compute)
        except BudgetExceeded as exc:
            rows.append({"p": p, "a_p": None, "chi7": None, "verified": None, "note": f"skipped: {exc}"})
            continue
        if not rec["verified"]:
            status = EXIT_FAIL
        rows.append({"p": p, "a_p": rec["a_p"], "chi7": OMEGA_NAMES[rec["chi7_exp"]],
                     "verified": rec["verified"], "note": ""})
    emit(out, args.format, "ap", ["p", "a_p", "chi7", "verified", "note"], rows)
    return status


def cmd_verify(args, cache, out):
    limits = Limits(p_max=args.p_max, q_max=args.q_max)
    results = run_suite(args.suite, limits)
    totals = summary(results)
    rows = [r.as_dict() for r in results]
    emit(out, args.format, "verify", ["suite", "check", "subject", "status", "detail"], rows,
         extra={"summary": totals})
    return EXIT_FAIL if totals["fail"] else EXIT_OK


# ---------------------------------------------------------------------------

def _global_options(parser, defaults):
    def d(value):
        return value if defaults else argparse.SUPPRESS

    parser.add_argument("--format", choices=("text", "json", "csv"), default=d("text"))
    parser.add_argument("--threads", type=int, default=d(None),
                        help="worker threads for the numba kernels (KLEINZETA_THREADS overrides)")
    parser.add_argument("--cache", metavar="PATH", default=d(None), help="JSON result cache (off by default)")
    parser.add_argument("--verify-cache", action="store_true", default=d(False),
                        help="recompute cached entries and fail on any mismatch")
    parser.add_argument("--budget-plane", type=int, default=d(None), metavar="Q",
                        help=f"largest q for O(q^2) scans (default {config.BUDGETS.plane})")
    parser.add_argument("--budget-linear", type=int, default=d(None), metavar="Q",
                        help=f"largest q for O(q) scans (default {config.BUDGETS.linear})")


def build_parser():
    parser = argparse.ArgumentParser(prog="kleinzeta",
                                     description="Exact zeta functions of the Klein quartic and Fermat curves.")
    parser.add_argument("--version", action="version", version=f"kleinzeta {__version__}")
    _global_options(parser, defaults=True)
    # the same options are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="describe F_q")
    p.add_argument("--q", type=_prime_power, required=True)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("count", parents=[common], help="count points of a curve over F_q")
    p.add_argument("--curve", type=_curve, required=True,
                   help="klein, klein-birational, fermat:N or fermat-affine:N")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--method", choices=("brute", "formula", "both"), default="brute")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("jacobi", parents=[common], help="exact Jacobi sum J(chi^a, chi^b) over F_q")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--order", type=int, default=7)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=2)
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("zeta", parents=[common], help="zeta numerator over F_p (Klein) or F_{p^r} with n | p^r - 1 (Fermat)")
    p.add_argument("--curve", type=_curve, default=parse_curve("klein"))
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--route", choices=("auto", "jacobi", "closed", "counts"), default="auto")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("ap", parents=[common], help="a_p and chi7(p) of the level-49 CM forms")
    p.add_argument("--p-range", type=_range, required=True, metavar="LO..HI")
    p.set_defaults(func=cmd_ap)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--p-max", type=int, default=Limits.p_max)
    p.add_argument("--q-max", type=int, default=Limits.q_max)
    p.set_defaults(func=cmd_verify)
    return parser


def _threads(args):
    env = os.environ.get("KLEINZETA_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"KLEINZETA_THREADS must be an integer, got {env!r}") from None
    return args.threads


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {k: v for k, v in (("plane", args.budget_plane), ("linear", args.budget_linear)) if v is not None}
    try:
        threads = _threads(args)
        if threads is not None and threads < 1:
            raise UsageError("thread count must be positive")
        _accel.set_threads(threads)
        with config.budgets(**overrides):
            cache = Cache(args.cache, args.verify_cache)
            code = args.func(args, cache, out)
            cache.save()
    except UsageError as exc:
        print(f"kleinzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"kleinzeta: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NonIntegralError, WeilViolation) as exc:
        print(f"kleinzeta: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (KleinZetaError, ValueError) as exc:
        print(f"kleinzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cache.mismatches:
        for m in cache.mismatches:
            print(f"kleinzeta: cache mismatch: {m}", file=sys.stderr)
        return EXIT_FAIL
    return code


if __name__ == "__main__":
    sys.exit(main())
