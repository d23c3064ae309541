"""Remainder-term verification: sweep x, compare S_k(x) to P_k(loglog x).

For each grid point the harness records the exact sum, the main-term
value, their absolute gap, and the normalized ratio

    ratio = |S_k(x) - P_k(loglog x)| * log x / (loglog x)^(k-1),

whose boundedness over the sweep is the testable content of the
asymptotic statement.  The exponent in the denominator is k-1, not k: the
k-1 normalization stays flat across the grid while the k variant decays,
and the report's spread comparison makes that visible.

All row fields are decimal strings rendered at a fixed digit count, and
every numeric input is deterministic, so reports are byte-identical
across runs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .bigreal import DEFAULT_DIGITS, DEFAULT_PRECISION, to_decimal, working_precision
from .constants import ConstantsBundle
from .asymptotics import evaluate_main_term
from .errors import DomainError, MertensError
from .primes import PrimeTable, sieve
from .sums import sk_fast

DEFAULT_GRID_START = 1_000
DEFAULT_GRID_STOP = 100_000_000
DEFAULT_GRID_POINTS = 25
DEFAULT_K_SET = (1, 2, 3, 4)
RATIO_BOUND = 10.0  # empirical calibration; the asymptotic statement fixes no constant

CSV_HEADER = ["k", "x", "S_k", "P_k", "abs_err", "ratio"]
JSON_SCHEMA_ID = "mertens-verification-report/1"


@dataclass(frozen=True)
class GridSpec:
    """Geometric evaluation grid in [start, stop]."""

    start: int = DEFAULT_GRID_START
    stop: int = DEFAULT_GRID_STOP
    points: int = DEFAULT_GRID_POINTS
    spacing: str = "geometric"

    def __post_init__(self):
        if self.spacing != "geometric":
            raise DomainError(f"unsupported spacing {self.spacing!r}")
        if self.start < 3:
            raise DomainError(f"grid start must be >= 3, got {self.start}")
        if self.stop <= self.start:
            raise DomainError(f"grid stop {self.stop} must exceed start {self.start}")
        if self.points < 2:
            raise DomainError(f"grid needs at least 2 points, got {self.points}")

    def values(self) -> list[int]:
        """Strictly increasing integers; duplicates from rounding removed."""
        ratio = math.log(self.stop / self.start)
        pts = []
        for i in range(self.points):
            v = round(self.start * math.exp(ratio * i / (self.points - 1)))
            if not pts or v > pts[-1]:
                pts.append(int(v))
        return pts


@dataclass(frozen=True)
class VerificationRow:
    """One grid point, all fields as decimal strings (see module docstring)."""

    k: int
    x: int
    s_value: str
    main_term: str
    abs_err: str
    ratio: str


class VerificationAborted(MertensError):
    """A grid sweep failed partway; ``rows`` holds completed points."""

    def __init__(self, cause: Exception, rows: list):
        super().__init__(f"verification aborted: {cause}")
        self.cause = cause
        self.rows = rows
        self.exit_code = getattr(cause, "exit_code", 1)


def verify_row(
    k: int,
    x: int,
    primes: PrimeTable,
    bundle: ConstantsBundle,
    precision: int = DEFAULT_PRECISION,
    digits: int = DEFAULT_DIGITS,
) -> VerificationRow:
    result = sk_fast(k, x, primes, precision=precision)
    with working_precision(precision):
        main = evaluate_main_term(k, x, bundle)
        err = abs(result.value - main)
        loglog = mp.log(mp.log(x))
        ratio = err * mp.log(x) / loglog ** (k - 1)
    return VerificationRow(
        k=k,
        x=int(x),
        s_value=to_decimal(result.value, digits),
        main_term=to_decimal(main, digits),
        abs_err=to_decimal(err, digits),
        ratio=to_decimal(ratio, digits),
    )


def verify_grid(
    k: int,
    grid: GridSpec,
    precision: int = DEFAULT_PRECISION,
    digits: int = DEFAULT_DIGITS,
    primes: PrimeTable | None = None,
    bundle: ConstantsBundle | None = None,
) -> list[VerificationRow]:
    """One row per grid point for a single k.

    Capacity or precision failures abort the sweep with
    :class:`VerificationAborted` carrying the completed rows, so callers
    can persist partial results.
    """
    if primes is None:
        primes = sieve(grid.stop)
    if bundle is None:
        bundle = ConstantsBundle.build(precision, m_max=max(12, k))
    rows: list[VerificationRow] = []
    for x in grid.values():
        try:
            rows.append(verify_row(k, x, primes, bundle, precision, digits))
        except MertensError as exc:
            raise VerificationAborted(exc, rows) from exc
    return rows


def summary_stats(rows: list[VerificationRow], digits: int = DEFAULT_DIGITS) -> dict:
    """Max and median of the normalized ratios, as decimal strings."""
    if not rows:
        raise DomainError("no rows to summarize")
    with mp.workprec(128):
        ratios = sorted(mpf(r.ratio) for r in rows)
        n = len(ratios)
        med = ratios[n // 2] if n % 2 else (ratios[n // 2 - 1] + ratios[n // 2]) / 2
        return {
            "max_ratio": to_decimal(ratios[-1], digits),
            "median_ratio": to_decimal(med, digits),
        }


def emit_report(rows: list[VerificationRow], format: str = "csv",
                digits: int = DEFAULT_DIGITS) -> bytes:
    """Serialize rows (plus summary) to CSV or JSON bytes.

    Output is byte-identical for identical inputs: fixed field order,
    fixed separators, no timestamps.
    """
    if not rows:
        raise DomainError("cannot emit an empty report")
    summary = summary_stats(rows, digits)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([r.k, r.x, r.s_value, r.main_term, r.abs_err, r.ratio])
        buf.write(f"# max_ratio={summary['max_ratio']}\n")
        buf.write(f"# median_ratio={summary['median_ratio']}\n")
        return buf.getvalue().encode()
    if format == "json":
        payload = {
            "schema": JSON_SCHEMA_ID,
            "rows": [
                {
                    "k": r.k,
                    "x": r.x,
                    "S_k": r.s_value,
                    "P_k": r.main_term,
                    "abs_err": r.abs_err,
                    "ratio": r.ratio,
                }
                for r in rows
            ],
            "summary": summary,
        }
        return (json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n").encode()
    raise DomainError(f"unknown report format {format!r}")


def parse_report(data: bytes, format: str = "csv") -> list[VerificationRow]:
    """Inverse of :func:`emit_report` at printed precision."""
    text = data.decode()
    rows: list[VerificationRow] = []
    if format == "csv":
        lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
        reader = csv.reader(lines)
        header = next(reader)
        if header != CSV_HEADER:
            raise DomainError(f"unexpected CSV header {header!r}")
        for rec in reader:
            k, x, s, p, e, q = rec
            rows.append(VerificationRow(int(k), int(x), s, p, e, q))
        return rows
    if format == "json":
        payload = json.loads(text)
        for rec in payload["rows"]:
            rows.append(
                VerificationRow(
                    int(rec["k"]), int(rec["x"]), rec["S_k"], rec["P_k"],
                    rec["abs_err"], rec["ratio"],
                )
            )
        return rows
    raise DomainError(f"unknown report format {format!r}")
