"""Batch command line driver.

Exit status: 0 when every check and gate passed, 1 when a numerical gate was
inconclusive or a check failed, 2 on usage errors.  Structured output writes
every integer as a decimal string.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import mpmath

from . import config
from .congruences import admissible_k, modulus_for, verify_theorem3
from .modular import faber_and_jd, jd_via_hecke, omega_identity_check, omega_series, zk_build
from .rademacher import InconclusiveError, jd_coeff_rademacher, p_rademacher
from .series import partition_numbers
from .singular_moduli import corollary2_assemble, trace_P


class UsageError(ValueError):
    pass


def _num(x, digits=30):
    return mpmath.nstr(x, digits)


def _series_map(series, lo, hi):
    return [[str(e), str(series[e])] for e in range(lo, hi + 1)]


def _poly(p):
    return [str(c) for c in p.coeffs]


# ---------------------------------------------------------------------------
# commands; each returns (result payload, provenance list, ok flag)


def cmd_zk(args):
    k = args.k
    if k is None or k < 1:
        raise UsageError("zk needs --k >= 1")
    terms = args.terms if args.terms is not None else config.get("terms")
    if terms < 1:
        raise UsageError("--terms must be >= 1")
    z = zk_build(k, terms + 1)
    result = {
        "k": str(k),
        "coefficients": _series_map(z.series, -k, terms),
        "jpoly_X": _poly(z.jpoly),
        "jpoly_J": _poly(z.jpoly_J),
    }
    return result, list(z.routes), True


def cmd_faber(args):
    d = args.d if args.d is not None else config.get("d")
    if d < 0:
        raise UsageError("--d must be >= 0")
    fabers, _ = faber_and_jd(d, 2)
    omega = omega_series(d)
    ok = all(f == o for f, o in zip(fabers, omega))
    result = {
        "faber": {str(i): _poly(f) for i, f in enumerate(fabers)},
        "omega_agrees": ok,
    }
    return result, ["greedy-reduction", "omega-generating-function"], ok


def cmd_congruence(args):
    p = args.p
    try:
        ks = admissible_k(p) if args.k is None else [args.k]
        m = modulus_for(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports = []
    ok = True
    for k in ks:
        try:
            rep = verify_theorem3(p, k, args.bound)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        ok &= rep.ok
        reports.append(
            {
                "p": str(p),
                "k": str(k),
                "modulus": str(m),
                "bound": str(rep.bound),
                "negative_checked": str(rep.negative_checked),
                "failures": [[str(n), str(r)] for n, r in rep.failures],
                "ok": rep.ok,
            }
        )
    return {"reports": reports}, ["exact-integer", "U(p)"], ok


def cmd_pn(args):
    n = args.n
    if n is None or n < 0:
        raise UsageError("pn needs --n >= 0")
    method = args.method
    if method == "euler":
        return {"n": str(n), "p": str(partition_numbers(n)[n])}, ["pentagonal-recurrence"], True
    if n < 1:
        raise UsageError(f"method {method} needs --n >= 1")
    if method == "rademacher":
        est = p_rademacher(n, args.cmax or config.get("cmax"), args.prec_bits or config.get("prec_bits"))
        result = {
            "n": str(n),
            "p": str(est.nearest),
            "value": _num(est.value),
            "distance": _num(est.distance, 5),
            "terms": str(est.terms),
            "prec_bits": str(est.prec),
        }
        return result, ["rademacher"], True
    tr = trace_P(n, args.prec_bits or config.get("prec_bits"))
    result = {
        "n": str(n),
        "p": str(tr.p_candidate),
        "trace": _num(tr.trace.real),
        "distance": _num(tr.distance, 5),
        "class_count": str(tr.class_count),
        "forms": [[str(f.a), str(f.b), str(f.c)] for f in tr.forms],
        "prec_bits": str(tr.prec),
    }
    return result, ["singular-moduli-trace"], True


def cmd_jd_coeff(args):
    if args.d is None or args.n is None or args.d < 1 or args.n < 1:
        raise UsageError("jd-coeff needs --d >= 1 and --n >= 1")
    est = jd_coeff_rademacher(args.d, args.n, args.cmax or config.get("cmax"), args.prec_bits or config.get("prec_bits"))
    _, jds = faber_and_jd(args.d, args.n + 1)
    exact = jds[args.d][args.n]
    result = {
        "d": str(args.d),
        "n": str(args.n),
        "rounded": str(est.nearest),
        "exact": str(exact),
        "value": _num(est.value, 60),
        "distance": _num(est.distance, 5),
        "terms": str(est.terms),
        "prec_bits": str(est.prec),
        "agrees": est.nearest == exact,
    }
    return result, ["rademacher", "greedy-reduction"], est.nearest == exact


def _check_faber(size):
    fabers, jds = faber_and_jd(size, 2)
    omega = omega_series(size)
    checks = []
    for d in range(size + 1):
        ok = fabers[d] == omega[d]
        entry = {"name": f"F_{d}", "ok": ok}
        if not ok:
            bad = next(i for i in range(max(len(fabers[d].coeffs), len(omega[d].coeffs)))
                       if (fabers[d].coeffs + (0,) * 64)[i] != (omega[d].coeffs + (0,) * 64)[i])
            entry["first_divergence"] = str(bad)
        checks.append(entry)
    return checks


def _check_hecke(size):
    terms = config.get("hecke_terms")
    _, jds = faber_and_jd(size, terms)
    checks = []
    for d in range(1, size + 1):
        h = jd_via_hecke(d, terms)
        bad = next((e for e in range(-d, terms) if h[e] != jds[d][e]), None)
        entry = {"name": f"J_{d}", "ok": bad is None}
        if bad is not None:
            entry["first_divergence"] = str(bad)
        checks.append(entry)
    return checks


def _check_omega(size):
    rep = omega_identity_check(size)
    entry = {"name": f"two-variable M={size}", "ok": rep.ok, "compared": str(rep.compared)}
    if rep.mismatches:
        entry["first_divergence"] = [str(x) for x in rep.mismatches[0]]
    return [entry]


def _check_rademacher_jd(size):
    _, jds = faber_and_jd(size, size + 1)
    checks = []
    for d in range(1, size + 1):
        for n in range(1, size + 1):
            entry = {"name": f"r_{d},{n}"}
            try:
                est = jd_coeff_rademacher(d, n)
                entry["ok"] = est.nearest == jds[d][n]
                entry["distance"] = _num(est.distance, 5)
            except InconclusiveError as exc:
                entry["ok"] = False
                entry["error"] = str(exc)
            checks.append(entry)
    return checks


def _check_corollary2(size):
    terms = config.get("corollary2_terms")
    checks = []
    for k in range(1, size + 1):
        exact = zk_build(k, terms + 1).series
        entry = {"name": f"Z_{k}"}
        try:
            num = corollary2_assemble(k, terms)
            got = num.rounded()
            bad = next((e for e in range(-k, terms + 1) if got[e] != exact[e]), None)
            entry["ok"] = bad is None
            entry["max_distance"] = _num(num.max_distance(), 5)
            if bad is not None:
                entry["first_divergence"] = str(bad)
        except InconclusiveError as exc:
            entry["ok"] = False
            entry["error"] = str(exc)
        checks.append(entry)
    return checks


SUITES = {
    "omega": (_check_omega, "omega_size"),
    "faber": (_check_faber, "faber_size"),
    "hecke": (_check_hecke, "faber_size"),
    "rademacher-jd": (_check_rademacher_jd, "rademacher_jd_size"),
    "corollary2": (_check_corollary2, "corollary2_size"),
}


def cmd_checks(args):
    fn, key = SUITES[args.suite]
    size = args.size if args.size is not None else config.get(key)
    checks = fn(size)
    ok = all(c["ok"] for c in checks)
    return {"suite": args.suite, "size": str(size), "checks": checks, "ok": ok}, [args.suite], ok


COMMANDS = {
    "zk": cmd_zk,
    "faber": cmd_faber,
    "congruence": cmd_congruence,
    "pn": cmd_pn,
    "jd-coeff": cmd_jd_coeff,
    "checks": cmd_checks,
}


# ---------------------------------------------------------------------------
# output


def _text(record, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(record, dict):
        for key, value in record.items():
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(record, list):
        for item in record:
            if isinstance(item, (dict, list)) and not all(isinstance(x, str) for x in item):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            elif isinstance(item, list):
                lines.append(f"{pad}- [{', '.join(item)}]")
            else:
                lines.append(f"{pad}- {item}")
    return lines


def render(record, fmt):
    if fmt == "json":
        return json.dumps(record, indent=2, sort_keys=True)
    return "\n".join(_text(record))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="extremal",
        description="Witten's extremal partition functions Z_k(q) and their checks.",
        epilog="Defaults (override with environment variables):\n" + config.describe(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=None)
    common.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identical output)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zk", parents=[common], help="coefficients and J-polynomial of Z_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--terms", type=int)

    p = sub.add_parser("faber", parents=[common], help="Faber polynomials F_0..F_d")
    p.add_argument("--d", type=int)

    p = sub.add_parser("congruence", parents=[common], help="verify w_k(pn) = 0 mod m_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--bound", type=int)

    p = sub.add_parser("pn", parents=[common], help="partition numbers by three methods")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["euler", "rademacher", "trace"], default="euler")
    p.add_argument("--cmax", type=int)
    p.add_argument("--prec-bits", type=int)

    p = sub.add_parser("jd-coeff", parents=[common], help="Rademacher coefficient of q^n in J_d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cmax", type=int)
    p.add_argument("--prec-bits", type=int)

    p = sub.add_parser("checks", parents=[common], help="cross-route consistency suites")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--size", type=int)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("cmax", "prec_bits"):
        if not hasattr(args, name):
            setattr(args, name, None)
    fmt = args.format or config.get("format")
    params = {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
              for k, v in sorted(vars(args).items())
              if k not in ("command", "format", "timing") and v is not None}
    start = time.perf_counter()
    status = 0
    try:
        result, provenance, ok = COMMANDS[args.command](args)
        status = 0 if ok else 1
    except UsageError as exc:
        print(f"extremal {args.command}: {exc}", file=sys.stderr)
        return 2
    except InconclusiveError as exc:
        result = {"error": str(exc)}
        est = exc.estimate
        if est is not None and hasattr(est, "terms"):
            result["terms"] = str(est.terms)
            result["distance"] = _num(est.distance, 5)
        provenance = []
        status = 1
    record = {
        "command": args.command,
        "parameters": params,
        "result": result,
        "provenance": provenance,
    }
    if args.timing:
        record["timing"] = f"{time.perf_counter() - start:.3f}"
    print(render(record, fmt))
    return status


if __name__ == "__main__":
    sys.exit(main())
