"""Command-line harness: field setup, geodesic enumeration, zeta/determinant
evaluation, heat-trace scans and the cross-module verification suite.

Exit codes: 0 success, 1 I/O error, 2 validation error, 3 numeric-check failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from . import specfun
from .combinatorics import (
    C_const,
    alpha_table,
    b0,
    cosecant_sum,
    ell_exponent,
    piecewise_alpha_check,
    weighted_sum_identity,
)
from .field import (
    FieldError,
    cf_fundamental_unit,
    euler_characteristic,
    load_surface_config,
    make_field,
    validate_surface,
)
from .geodesics import (
    GeodesicError,
    enumerate_he,
    expand_powers,
    load_geodesics,
    save_geodesics,
)
from .spectral import (
    SpectralError,
    corollary_log_det,
    elliptic_small_t_limit,
    geometric_theta,
    sech2_moment,
    small_t_fit,
    telescoping_residual,
)
from .zeta import ZetaDomainError, asymptotic_remainder, log_Zhat

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _max_workers() -> int:
    """HILZETA_THREADS caps the worker count; evaluation is sequential by
    default, so the cap only matters as an upper bound."""
    raw = os.environ.get("HILZETA_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _load_setup(config_path):
    d, locus = load_surface_config(config_path)
    fld = make_field(d)
    return fld, locus


def _load_primitives(args):
    if getattr(args, "geodesics", None):
        return [g for g in load_geodesics(args.geodesics) if g.primitive]
    return []


def _out_stream(args):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="utf-8", newline="")
    return None


def cmd_field(args) -> int:
    fld, locus = _load_setup(args.config)
    e = validate_surface(fld, locus)
    cf = cf_fundamental_unit(fld.d)
    print(f"d = {fld.d}")
    print(f"D = {fld.D}")
    print(f"eps = {fld.eps} = {_fmt(fld.eps.value())}")
    print(f"log eps = {_fmt(fld.log_eps)}")
    print(f"zeta_K(-1) = {fld.zeta_m1}")
    print(f"cf-oracle unit = {cf} ({'match' if cf == fld.eps else 'MISMATCH'})")
    print(f"E(X_K) = {e} (positive even integer: OK)")
    if cf != fld.eps:
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_enumerate(args) -> int:
    fld, locus = _load_setup(args.config)
    validate_surface(fld, locus)
    classes = enumerate_he(fld, args.height)
    if args.out:
        save_geodesics(args.out, classes)
    else:
        save_geodesics("/dev/stdout", classes)
    print(f"classes: {len(classes)}", file=sys.stderr)
    if classes:
        print(f"smallest norm: {_fmt(classes[0].norm)}", file=sys.stderr)
    return EXIT_OK


def cmd_zeta(args) -> int:
    fld, locus = _load_setup(args.config)
    validate_surface(fld, locus)
    primitives = _load_primitives(args)
    out = _out_stream(args)
    stream = out if out is not None else sys.stdout
    try:
        for s in args.s:
            rec = log_Zhat(s, args.m, fld, locus, primitives, args.k_max)
            stream.write(json.dumps(rec.to_json()) + "\n")
    finally:
        if out is not None:
            out.close()
    return EXIT_OK


def cmd_det(args) -> int:
    fld, locus = _load_setup(args.config)
    validate_surface(fld, locus)
    primitives = _load_primitives(args)
    s, m = args.s[0], args.m
    if s == 1.0:
        # The right-hand side at s=1 involves the residue of the completed
        # zeta, which lives on the continuation of the truncated Euler
        # product; refuse the numeric evaluation and print the symbolic form.
        consts = " - ".join(f"C_{q}" for q in range(2, m + 1, 2))
        zhats = " * ".join(
            "Res_{s=1} Zhat_2^(1/2)(s)" if q == 2 else f"Zhat_{q}(1)"
            for q in range(2, m + 1, 2)
        )
        print("s = 1 requires the analytic continuation of the")
        print("hyperbolic-elliptic Euler product; symbolic form:")
        print(
            f"Det'({'Delta' if m == 2 else f'box_{m}'}) = "
            f"exp(-({m - 1})/4 * zeta_K(-1) - {consts}) * {zhats}"
        )
        return EXIT_OK
    val = corollary_log_det(s, m, fld, locus, primitives, args.k_max)
    res = telescoping_residual(s, m, fld, locus, primitives, args.k_max)
    print(f"log Det(box_{m} + s(s-1)) at s={_fmt(s)}: {_fmt(val)}")
    print(f"telescoping residual: {_fmt(res)}")
    if abs(res) > 1e-9:
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_theta(args) -> int:
    fld, locus = _load_setup(args.config)
    validate_surface(fld, locus)
    if any(t <= 0 for t in args.t):
        raise FieldError("all t grid points must be positive")
    if getattr(args, "geodesics", None):
        geos = load_geodesics(args.geodesics)
        prims = [g for g in geos if g.primitive]
        if geos == prims:
            geos = expand_powers(prims, max(g.norm for g in prims) ** 3)
    else:
        geos = []
    out = _out_stream(args)
    stream = out if out is not None else sys.stdout
    writer = csv.writer(stream)
    writer.writerow(["t", "I", "E", "HE", "PS", "HS", "total"])
    samples = []
    try:
        for t in args.t:
            bd = geometric_theta(fld, locus, geos, args.m, t)
            writer.writerow(
                [_fmt(v) for v in (bd.t, bd.I, bd.E, bd.HE, bd.PS, bd.HS, bd.total)]
            )
            samples.append((t, bd.total + (1.0 if args.m == 2 else 0.0)))
    finally:
        if out is not None:
            out.close()
    if len(samples) >= 3:
        a, b, c = small_t_fit(samples)
        z = float(fld.zeta_m1)
        if args.m == 2:
            targets = (
                z / 2.0,
                -fld.log_eps / (2.0 * math.sqrt(math.pi)),
                -z / 6.0 + float(b0(2, locus)) + 1.0,
            )
        else:
            targets = (z, float("nan"), float("nan"))
        print(f"fit: a={_fmt(a)} b={_fmt(b)} c={_fmt(c)}", file=sys.stderr)
        print(
            f"closed forms: a={_fmt(targets[0])} b={_fmt(targets[1])} "
            f"c={_fmt(targets[2])}",
            file=sys.stderr,
        )
    return EXIT_OK


def _verify_checks(fld, locus):
    """Yield (name, measured, tolerance, ok) across the module suites."""
    z = fld.zeta_m1

    e = euler_characteristic(fld, locus)
    yield ("surface-parity", float(e), 0.0, e.denominator == 1 and e > 0 and e.numerator % 2 == 0)

    cf = cf_fundamental_unit(fld.d)
    yield ("unit-cf-oracle", cf.value(), 0.0, cf == fld.eps)

    ok = True
    for nu in range(2, 31):
        for t in range(1, nu):
            if math.gcd(t, nu) != 1:
                continue
            for m in range(2, 21, 2):
                tab = alpha_table(nu, t, m)
                if sorted(tab.alpha) != list(range(nu)):
                    ok = False
                if not piecewise_alpha_check(tab):
                    ok = False
                lhs, rhs = weighted_sum_identity(tab)
                if lhs != rhs:
                    ok = False
                if sum(ell_exponent(l, m, nu, t) for l in range(nu)) != 0:
                    ok = False
    yield ("alpha-combinatorics", 0.0, 0.0, ok)

    worst = 0.0
    for nu in range(2, 51):
        closed = float(cosecant_sum(nu))
        num = sum(
            1.0 / (1.0 - math.cos(2.0 * math.pi * k / nu)) for k in range(1, nu)
        )
        worst = max(worst, abs(num - closed) / max(1.0, closed))
    yield ("cosecant-identity", worst, 1e-10, worst <= 1e-10)

    rems = [abs(specfun.gamma2_stirling_remainder(zz)) for zz in (10.0, 30.0, 100.0, 300.0)]
    yield (
        "gamma2-stirling-trend " + " ".join(f"{r:.2e}" for r in rems),
        rems[2],
        1e-2,
        rems[2] < 1e-2 and all(rems[i] > rems[i + 1] for i in range(3)),
    )

    worst = 0.0
    for x in (0.5, 1.0, 2.5, 7.0):
        worst = max(worst, abs(specfun.log_gamma2(x) - specfun.double_zeta_oracle(x)))
    yield ("gamma2-double-sum-oracle", worst, 1e-6, worst <= 1e-6)

    marks = [abs(asymptotic_remainder(s, m, fld, locus)) for s in (10.0, 20.0, 40.0) for m in (2, 4)]
    dec = all(
        marks[2 * i] > marks[2 * i + 2] and marks[2 * i + 1] > marks[2 * i + 3]
        for i in range(2)
    )
    r30 = max(abs(asymptotic_remainder(30.0, m, fld, locus)) for m in (2, 4))
    yield ("zeta-asymptotic-remainder-decreasing", marks[-2], 0.0, dec)
    yield ("zeta-asymptotic-remainder-at-30", r30, 1e-2, r30 < 1e-2)

    lim = elliptic_small_t_limit(locus, 2)
    tgt = float(b0(2, locus))
    yield ("elliptic-b0-limit", abs(lim - tgt), 1e-6, abs(lim - tgt) <= 1e-6)

    mom = sech2_moment()
    err = abs(mom - 1.0 / (12.0 * math.pi))
    yield ("sech2-moment", err, 1e-10, err <= 1e-10)

    worst = 0.0
    for s in (2.0, 3.5, 10.0):
        for m in (2, 4, 6):
            worst = max(worst, abs(telescoping_residual(s, m, fld, locus, [], 10)))
    yield ("telescoping-residual", worst, 1e-12, worst <= 1e-12)


def cmd_verify(args) -> int:
    fld, locus = _load_setup(args.config)
    failures = 0
    for name, measured, tol, ok in _verify_checks(fld, locus):
        status = "PASS" if ok else "FAIL"
        print(f"{status} {name}: measured={_fmt(measured)} tol={_fmt(tol)}")
        if not ok:
            failures += 1
    print(f"{failures} failures")
    return EXIT_OK if failures == 0 else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilzeta",
        description=(
            "Field invariants, Selberg-type zeta factorizations, heat traces "
            "and regularized determinants for Hilbert modular surfaces"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        if flags.get("m"):
            p.add_argument("--m", type=int, default=2)
        if flags.get("s"):
            p.add_argument("--s", type=float, nargs="+", default=[2.0])
        if flags.get("t"):
            p.add_argument("--t", type=float, nargs="+", default=[0.02, 0.01, 0.005])
        if flags.get("height"):
            p.add_argument("--height", type=int, default=4)
        if flags.get("k_max"):
            p.add_argument("--k-max", dest="k_max", type=int, default=30)
        if flags.get("geodesics"):
            p.add_argument("--geodesics")
        if flags.get("spectrum"):
            p.add_argument("--spectrum")
        if flags.get("out"):
            p.add_argument("--out")
        p.set_defaults(func=func)
        return p

    add("field", cmd_field)
    add("enumerate", cmd_enumerate, height=True, out=True)
    add("zeta", cmd_zeta, m=True, s=True, k_max=True, geodesics=True, out=True)
    add("det", cmd_det, m=True, s=True, k_max=True, geodesics=True)
    add("theta", cmd_theta, m=True, t=True, geodesics=True, out=True)
    add("verify", cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _max_workers()  # validated for side effects only; evaluation is sequential
    try:
        return args.func(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SpectralError, AssertionError) as exc:
        print(f"numeric check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (FieldError, GeodesicError, ZetaDomainError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
