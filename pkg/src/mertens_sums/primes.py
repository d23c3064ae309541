"""Prime generation and prime-indexed series.

A segmented sieve of Eratosthenes producing an immutable :class:`PrimeTable`,
the Moebius function, and the prime zeta function

    P(s) = sum_p p^(-s) = sum_{n>=1} mu(n)/n * log zeta(n s),

evaluated through the Moebius-weighted log-zeta identity, which converges
geometrically for s >= 3/2.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpf

from .bigreal import DEFAULT_PRECISION, check_precision, working_precision
from .constants import MAX_SERIES_PRECISION, zeta_real
from .errors import CapacityError, DomainError

DEFAULT_MAX_LIMIT = 2_000_000_000
# Integers covered per segment.  Chosen so the segment's odd-flag array stays
# comfortably inside L2 while keeping per-segment numpy overhead negligible.
DEFAULT_SEGMENT_SPAN = 1 << 21

_CACHE_MAGIC = b"MERTSIEV"


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, ascending, plus the sieve limit itself.

    Immutable after construction and safe to share across threads.
    """

    limit: int
    primes: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return int(self.primes.size)

    def __len__(self) -> int:
        return int(self.primes.size)

    def __iter__(self):
        return iter(self.primes.tolist())

    def count_upto(self, v: int) -> int:
        """Number of primes <= v (v <= limit)."""
        return int(np.searchsorted(self.primes, v, side="right"))


def _small_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _odd_flags_segment(low: int, high: int, base_odd: np.ndarray) -> np.ndarray:
    """Composite-marking for odd numbers in [low, high); low odd."""
    n_odd = (high - low + 1) // 2
    flags = np.ones(n_odd, dtype=bool)
    for p in base_odd:
        p = int(p)
        p2 = p * p
        if p2 >= high:
            break
        start = max(p2, ((low + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start < high:
            flags[(start - low) // 2 :: p] = False
    return flags


def sieve(
    limit: int,
    *,
    segment_span: int = DEFAULT_SEGMENT_SPAN,
    max_limit: int = DEFAULT_MAX_LIMIT,
    cache_dir: str | None = None,
) -> PrimeTable:
    """All primes <= limit via a segmented odd-only sieve.

    Memory is O(segment) for the working flags plus the output array
    (uint32 below 2^32, int64 above).  ``cache_dir`` optionally persists
    the packed odd-number bitset; the cache is an optimization only and is
    revalidated against a freshly sieved prefix before use.
    """
    limit = int(limit)
    if limit < 0:
        raise DomainError(f"sieve limit must be >= 0, got {limit}")
    if limit > max_limit:
        raise CapacityError(f"sieve limit {limit} exceeds configured maximum {max_limit}")
    dtype = np.uint32 if limit < 2**32 else np.int64
    if limit < 2:
        return PrimeTable(limit, np.empty(0, dtype=dtype))

    if cache_dir:
        cached = _load_cached_flags(cache_dir, limit)
        if cached is not None:
            return _table_from_odd_flags(limit, cached, dtype)

    if limit < (1 << 16):
        table = PrimeTable(limit, _small_sieve(limit).astype(dtype))
        if cache_dir:
            _store_cached_flags(cache_dir, limit, _odd_flags_from_table(table))
        return table

    base = _small_sieve(math.isqrt(limit))
    base_odd = base[1:]
    chunks = [np.array([2], dtype=dtype)]
    all_flags = [] if cache_dir else None
    low = 3
    while low <= limit:
        high = min(low + 2 * segment_span, limit + 1)  # exclusive
        flags = _odd_flags_segment(low, high, base_odd)
        seg = (low + 2 * np.flatnonzero(flags)).astype(dtype)
        chunks.append(seg)
        if all_flags is not None:
            all_flags.append(flags)
        low = high
    primes = np.concatenate(chunks)
    table = PrimeTable(limit, primes)
    if cache_dir and all_flags is not None:
        _store_cached_flags(cache_dir, limit, np.concatenate(all_flags))
    return table


def _odd_flags_from_table(table: PrimeTable) -> np.ndarray:
    """Flags for odd numbers 3,5,... <= limit (bit i <-> 3 + 2i)."""
    n_odd = (table.limit - 1) // 2 if table.limit >= 3 else 0
    flags = np.zeros(n_odd, dtype=bool)
    odd = table.primes[table.primes % 2 == 1]
    flags[(odd.astype(np.int64) - 3) // 2] = True
    return flags


def _table_from_odd_flags(limit: int, flags: np.ndarray, dtype) -> PrimeTable:
    primes = (3 + 2 * np.flatnonzero(flags)).astype(dtype)
    if limit >= 2:
        primes = np.concatenate([np.array([2], dtype=dtype), primes])
    return PrimeTable(limit, primes)


def _cache_path(cache_dir: str, limit: int) -> str:
    return os.path.join(cache_dir, f"sieve_{limit}.bits")


def _store_cached_flags(cache_dir: str, limit: int, flags: np.ndarray) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    packed = np.packbits(flags.astype(np.uint8))
    with open(_cache_path(cache_dir, limit), "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<Q", limit))
        fh.write(packed.tobytes())


def _load_cached_flags(cache_dir: str, limit: int):
    path = _cache_path(cache_dir, limit)
    try:
        with open(path, "rb") as fh:
            magic = fh.read(8)
            if magic != _CACHE_MAGIC:
                return None
            (stored_limit,) = struct.unpack("<Q", fh.read(8))
            if stored_limit != limit:
                return None
            payload = np.frombuffer(fh.read(), dtype=np.uint8)
    except (OSError, struct.error):
        return None
    n_odd = (limit - 1) // 2 if limit >= 3 else 0
    flags = np.unpackbits(payload)[:n_odd].astype(bool)
    if flags.size != n_odd:
        return None
    # Never a source of truth: revalidate a freshly sieved prefix.
    probe = min(limit, 100_000)
    fresh = _odd_flags_from_table(sieve(probe))
    if not np.array_equal(flags[: fresh.size], fresh):
        return None
    return flags


# ----------------------------------------------------------------------

_TRIAL_PRIMES = _small_sieve(1024)


def mobius(n: int) -> int:
    """mu(n): 0 on a squared factor, else (-1)^(number of prime factors)."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"mobius requires an integer n >= 1, got {n!r}")
    if n == 1:
        return 1
    result = 1
    rem = n
    for p in _TRIAL_PRIMES.tolist():
        if p * p > rem:
            break
        if rem % p == 0:
            rem //= p
            if rem % p == 0:
                return 0
            result = -result
    if rem > 1:
        if rem <= _TRIAL_PRIMES[-1] ** 2:
            result = -result
        else:  # n beyond the trial table: factor the leftover naively
            f = 3 if rem % 2 else 2
            while f * f <= rem:
                if rem % f == 0:
                    rem //= f
                    if rem % f == 0:
                        return 0
                    result = -result
                else:
                    f += 1
            if rem > 1:
                result = -result
    return result


def prime_zeta(s, precision: int = DEFAULT_PRECISION):
    """P(s) = sum_p p^(-s) for real s >= 3/2.

    Uses P(s) = sum_n mu(n)/n log zeta(ns), truncated at the first n whose
    log-zeta falls below the error budget; zeta(m) - 1 < 2^(1-m) makes the
    dropped tail geometric.  Below s = 3/2 the series is not used and the
    argument is rejected.
    """
    check_precision(precision, MAX_SERIES_PRECISION)
    with working_precision(precision):
        s_mp = mpf(s)
        if s_mp < mpf(3) / 2:
            raise DomainError(f"prime_zeta requires s >= 3/2, got {s!r}")
        eps = mpf(2) ** (-(precision + 8))
        total = mpf(0)
        n = 1
        while True:
            mu = mobius(n)
            if mu != 0:
                lz = mp.log(_zeta_arg(n * s_mp, s, n, precision))
                total += mpf(mu) / n * lz
                # tail: sum_{j>n} |log zeta(js)|/j <= 2^(1-(n+1)s)/((n+1)(1-2^-s))
                tail = mpf(2) ** (1 - (n + 1) * s_mp) / ((n + 1) * (1 - mpf(2) ** (-s_mp)))
                if abs(lz) < eps / 2 and tail < eps:
                    break
            n += 1
            if n > 100_000:  # unreachable for s >= 3/2; defensive cap
                raise CapacityError("prime_zeta series failed to terminate")
        return +total


def _zeta_arg(ns, s, n, precision):
    # Integer arguments go through the cached integer path; anything else
    # through the same Euler-Maclaurin engine at real argument.
    if isinstance(s, int) or (isinstance(s, float) and s.is_integer()):
        from .constants import zeta_int

        return zeta_int(int(round(float(s))) * n, precision)
    return zeta_real(ns, precision)
