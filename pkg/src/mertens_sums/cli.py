"""Command-line front door: ``mertens sum|poly|constants|hankel|verify``.

Exit codes: 0 success, 2 invalid arguments or domain errors,
3 precision-not-met, 4 capacity exceeded.  ``MERTENS_CACHE_DIR`` enables
the optional sieve bitset cache.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bigreal import DEFAULT_DIGITS, DEFAULT_PRECISION, to_decimal
from .errors import MertensError
from .harness import (
    DEFAULT_GRID_POINTS,
    DEFAULT_GRID_START,
    DEFAULT_GRID_STOP,
    DEFAULT_K_SET,
    GridSpec,
    VerificationAborted,
    emit_report,
    summary_stats,
    verify_grid,
)


def _common_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--prec", type=int, default=DEFAULT_PRECISION, metavar="BITS",
                    help="working precision in bits (default %(default)s)")
    sp.add_argument("--digits", type=int, default=DEFAULT_DIGITS, metavar="D",
                    help="printed decimal digits (default %(default)s)")
    sp.add_argument("--sieve-limit", type=int, default=None, metavar="N",
                    help="prime table limit (default: smallest that covers the request)")
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sp.add_argument("--out", metavar="PATH", default=None,
                    help="write output to PATH instead of stdout")


def _emit(args, text: str | bytes) -> None:
    data = text.encode() if isinstance(text, str) else text
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())


def _cache_dir() -> str | None:
    return os.environ.get("MERTENS_CACHE_DIR") or None


def _build_sieve(limit: int, args):
    from .primes import sieve

    lim = args.sieve_limit if args.sieve_limit is not None else limit
    return sieve(lim, cache_dir=_cache_dir())


def _cmd_constants(args) -> int:
    from .constants import ConstantsBundle, mertens_c1

    bundle = ConstantsBundle.build(args.prec, m_max=max(8, 12))
    if args.c1_method == "direct":
        # independent cross-check route; certifies only the sieve-tail bound
        primes = _build_sieve(10**6, args)
        mertens_c1(args.prec, "direct", primes=primes)
    d = args.digits
    payload = {
        "gamma": to_decimal(bundle.gamma, d),
        "c1": to_decimal(bundle.c1, d),
        "h0": to_decimal(bundle.h0, d),
        "zeta": {str(k): to_decimal(bundle.zeta[k], d) for k in range(2, 11)},
        "recip_gamma_deriv": {
            str(m): to_decimal(bundle.recip_gamma_derivs[m], d) for m in range(9)
        },
    }
    if args.format == "json":
        _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return 0
    lines = [
        f"gamma = {payload['gamma']}",
        f"c1    = {payload['c1']}",
        f"h0    = {payload['h0']}",
    ]
    lines += [f"zeta({k}) = {payload['zeta'][str(k)]}" for k in range(2, 11)]
    lines += [f"a_{m} = {payload['recip_gamma_deriv'][str(m)]}" for m in range(9)]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_poly(args) -> int:
    from .asymptotics import (
        CLOSED_FORM_STRINGS,
        closed_form_coefficients,
        lambda_coeffs,
    )
    from .constants import ConstantsBundle

    k = args.k
    bundle = ConstantsBundle.build(args.prec, m_max=max(12, k))
    table = lambda_coeffs(k, bundle)
    d = args.digits
    if args.format == "json":
        payload = {
            "k": k,
            "coefficients": {str(j): to_decimal(c, d) for j, c in enumerate(table.lam)},
        }
        _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return 0
    lines = [f"P_{k}(X) coefficients (degree: value)"]
    for j, c in enumerate(table.lam):
        lines.append(f"  X^{j}: {to_decimal(c, d)}")
    if args.symbolic:
        if k in CLOSED_FORM_STRINGS:
            lines.append(CLOSED_FORM_STRINGS[k])
            closed = closed_form_coefficients(k, bundle)
            for j, (a, b) in enumerate(zip(table.lam, closed)):
                lines.append(f"  X^{j} delta vs closed form: {to_decimal(abs(a - b), 3)}")
        else:
            lines.append(f"(no recorded closed form for k={k}; numeric table only)")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_hankel(args) -> int:
    from .asymptotics import im_closed_form
    from .constants import ConstantsBundle
    from .hankel import hankel_power_quad, im_quad, power_law_closed_form

    if args.z is not None:
        res = hankel_power_quad(args.z, args.x)
        closed = power_law_closed_form(args.z, args.x)
        label = f"(log x)^z / Gamma(z+1) at z={args.z}, x={args.x}"
    elif args.m is not None:
        res = im_quad(args.m, args.x)
        bundle = ConstantsBundle.build(args.prec, m_max=max(8, args.m))
        closed = float(im_closed_form(args.m, args.x, bundle))
        label = f"I_{args.m}({args.x})"
    else:
        raise MertensArgumentError("one of --m or --z is required")
    abs_delta = abs(res.value - closed)
    rel_delta = abs_delta / abs(closed) if closed != 0 else float("inf")
    payload = {
        "quadrature": repr(res.value),
        "closed_form": repr(closed),
        "abs_delta": f"{abs_delta:.3e}",
        "rel_delta": f"{rel_delta:.3e}",
        "imag_part": f"{res.imag_part:.3e}",
        "error_estimate": f"{res.error_estimate:.3e}",
        "refinements": res.refinements,
    }
    if args.format == "json":
        _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return 0
    lines = [label] + [f"{key} = {val}" for key, val in payload.items()]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_sum(args) -> int:
    from .sums import sk_direct, sk_fast

    primes = _build_sieve(args.x, args)
    if args.method == "direct":
        res = sk_direct(args.k, args.x, primes, precision=args.prec)
    else:
        res = sk_fast(args.k, args.x, primes, precision=args.prec)
    payload = {
        "k": res.k,
        "x": res.x,
        "value": to_decimal(res.value, args.digits),
        "error_bound": to_decimal(res.error_bound, 3),
        "method": res.method,
        "terms": res.terms,
        "elapsed_s": round(res.elapsed, 6),
    }
    if args.format == "json":
        _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return 0
    _emit(args, "\n".join(f"{key} = {val}" for key, val in payload.items()) + "\n")
    return 0


def _cmd_verify(args) -> int:
    from .constants import ConstantsBundle

    ks = args.k if args.k else list(DEFAULT_K_SET)
    grid = GridSpec(start=args.start, stop=args.stop, points=args.points)
    primes = _build_sieve(grid.stop, args)
    bundle = ConstantsBundle.build(args.prec, m_max=max(12, *ks))
    rows = []
    try:
        for k in ks:
            rows.extend(
                verify_grid(k, grid, precision=args.prec, digits=args.digits,
                            primes=primes, bundle=bundle)
            )
    except VerificationAborted as exc:
        rows.extend(exc.rows)
        if rows and args.out:  # persist partial results before failing
            fmt = "json" if args.format == "json" else "csv"
            _emit(args, emit_report(rows, fmt, digits=args.digits))
        raise
    fmt = args.format
    if fmt in ("csv", "json"):
        _emit(args, emit_report(rows, fmt, digits=args.digits))
        return 0
    # text: aligned table plus summary
    widths = [6, 12, 24, 24, 14, 12]
    header = ["k", "x", "S_k", "P_k", "abs_err", "ratio"]
    lines = ["".join(h.ljust(w) for h, w in zip(header, widths))]
    for r in rows:
        cells = [str(r.k), str(r.x), r.s_value[:22], r.main_term[:22],
                 r.abs_err[:12], r.ratio[:10]]
        lines.append("".join(c.ljust(w) for c, w in zip(cells, widths)))
    stats = summary_stats(rows, args.digits)
    lines.append(f"max_ratio    = {stats['max_ratio']}")
    lines.append(f"median_ratio = {stats['median_ratio']}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


class MertensArgumentError(MertensError):
    exit_code = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mertens",
        description="Generalized Mertens prime sums: exact engines, main-term "
                    "polynomials, and contour-quadrature checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("constants", help="print gamma, c1, h0, zeta(2..10), a_0..a_8")
    _common_flags(sp)
    sp.add_argument("--c1-method", choices=("accelerated", "direct"),
                    default="accelerated",
                    help="also run the sieve-based c1 cross-check (direct)")
    sp.set_defaults(func=_cmd_constants)

    sp = sub.add_parser("poly", help="main-term polynomial coefficients")
    _common_flags(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--symbolic", action="store_true",
                    help="also print the recorded closed form (k <= 4) and deltas")
    sp.set_defaults(func=_cmd_poly)

    sp = sub.add_parser("hankel", help="contour quadrature vs closed forms")
    _common_flags(sp)
    sp.add_argument("--m", type=int, default=None, help="order of I_m")
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--z", type=float, default=None,
                    help="check x^s s^(-1-z) against (log x)^z/Gamma(z+1) instead")
    sp.set_defaults(func=_cmd_hankel)

    sp = sub.add_parser("sum", help="evaluate S_k(x)")
    _common_flags(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--method", choices=("direct", "fast"), default="fast")
    sp.set_defaults(func=_cmd_sum)

    sp = sub.add_parser("verify", help="sweep a grid and report normalized remainders")
    _common_flags(sp)
    sp.add_argument("--k", type=int, action="append", default=None,
                    help="repeatable; default 1 2 3 4")
    sp.add_argument("--start", type=int, default=DEFAULT_GRID_START)
    sp.add_argument("--stop", type=int, default=DEFAULT_GRID_STOP)
    sp.add_argument("--points", type=int, default=DEFAULT_GRID_POINTS)
    sp.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage, 0 on --version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MertensError as exc:
        print(f"mertens: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
