"""Fixed-point kernels behind the memoized sum engine.

Level tables hold S_j at every key of the floor-division key space as
nonnegative integers scaled by 2^frac_bits.  The recurrence

    S_j(v) = sum_{p <= v} S_{j-1}(floor(v/p)) / p

is evaluated with floor division per term, so every arithmetic step is
exact integer work and the only error is the one-sided truncation of each
division, below 2^-frac_bits per term.  Summation order is fixed
(ascending primes within a key, ascending keys), results are
bit-reproducible, and the same integers come out of both implementations:

* a numba-jitted path storing values as big-endian limb rows (uint64
  entries, ``limb_bits`` payload bits each) and short-dividing limbwise;
* a pure-Python path keeping whole ints.  Limbwise short division is
  integer floor division, so the two agree exactly; tests assert this.

Limb width is chosen so the short-division invariant
(carry < p, carry * 2^limb_bits + limb < 2^64) holds for the largest
prime in play, and per-key accumulators never overflow: each quotient
limb is < 2^limb_bits and at most pi(x) < 2^(64 - limb_bits) of them are
added before carries are propagated.
"""

from __future__ import annotations

import math

import numpy as np

try:
    import numba as _nb

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _nb = None
    HAVE_NUMBA = False

HEADROOM_BITS = 24  # integer part: S_k < S_1(x)^k stays far below 2^24 in scope
LEDGER_MARGIN = 16  # frac bits beyond the requested precision
SCALAR_CUTOFF = 50_000  # below this x the pure-Python path wins (no jit latency)


def fixed_point_params(precision: int, max_prime: int) -> tuple[int, int, int]:
    """(limb_bits, n_limbs, frac_bits) for a precision request."""
    limb_bits = 32 if max_prime < (1 << 31) else 30
    if max_prime >= (1 << 34):
        raise ValueError("primes beyond 2^34 are outside the engine's envelope")
    need = precision + LEDGER_MARGIN + HEADROOM_BITS
    n_limbs = -(-need // limb_bits)
    frac_bits = n_limbs * limb_bits - HEADROOM_BITS
    return limb_bits, n_limbs, frac_bits


# ----------------------------------------------------------------------
# Pure-Python reference path.

def scalar_seed(keys, primes, frac_bits: int) -> list[int]:
    """Level 1: running sum of floor(2^frac_bits / p) snapshotted at keys."""
    one = 1 << frac_bits
    out = []
    acc = 0
    ki = 0
    nk = len(keys)
    for p in primes:
        while ki < nk and keys[ki] < p:
            out.append(acc)
            ki += 1
        if ki == nk:
            break
        acc += one // p
    while ki < nk:
        out.append(acc)
        ki += 1
    return out


def scalar_advance(x: int, keys, s: int, primes, prev, prev_counts):
    """One DP level in whole-int arithmetic. Returns (values, counts)."""
    nk = len(keys)
    out = []
    counts = []
    for vi in range(nk):
        v = keys[vi]
        acc = 0
        cnt = 0
        for p in primes:
            if p > v:
                break
            y = v // p
            idx = y - 1 if y <= s else nk - x // y
            acc += prev[idx] // p
            cnt += prev_counts[idx]
        out.append(acc)
        counts.append(cnt)
    return out, counts


# ----------------------------------------------------------------------
# Numba path.  Kernels are compiled lazily on first use and cached on disk.

if HAVE_NUMBA:

    @_nb.njit(cache=True)
    def _seed_kernel(keys, primes, one_limbs, out, limb_bits):
        nk = keys.shape[0]
        L = one_limbs.shape[0]
        shift = np.uint64(limb_bits)
        acc = np.zeros(L, dtype=np.uint64)
        ki = 0
        for j in range(primes.shape[0]):
            p = primes[j]
            while ki < nk and keys[ki] < p:
                for t in range(L):
                    out[ki, t] = acc[t]
                ki += 1
            if ki == nk:
                break
            pu = np.uint64(p)
            carry = np.uint64(0)
            for t in range(L):
                r = (carry << shift) | one_limbs[t]
                q = r // pu
                carry = r - q * pu
                acc[t] += q
        while ki < nk:
            for t in range(L):
                out[ki, t] = acc[t]
            ki += 1
        # propagate carries: quotient limbs were accumulated unrenormalized
        mask = (np.uint64(1) << shift) - np.uint64(1)
        for i in range(nk):
            carry = np.uint64(0)
            for t in range(L - 1, -1, -1):
                val = out[i, t] + carry
                out[i, t] = val & mask
                carry = val >> shift
    @_nb.njit(cache=True)
    def _advance_kernel(keys, s, x, primes, prev, prev_counts, out, out_counts, limb_bits):
        nk = keys.shape[0]
        L = prev.shape[1]
        shift = np.uint64(limb_bits)
        mask = (np.uint64(1) << shift) - np.uint64(1)
        acc = np.zeros(L, dtype=np.uint64)
        for vi in range(nk):
            v = keys[vi]
            for t in range(L):
                acc[t] = np.uint64(0)
            cnt = 0
            for j in range(primes.shape[0]):
                p = primes[j]
                if p > v:
                    break
                y = v // p
                if y <= s:
                    idx = y - 1
                else:
                    idx = nk - x // y
                pu = np.uint64(p)
                carry = np.uint64(0)
                for t in range(L):
                    r = (carry << shift) | prev[idx, t]
                    q = r // pu
                    carry = r - q * pu
                    acc[t] += q
                cnt += prev_counts[idx]
            carry = np.uint64(0)
            for t in range(L - 1, -1, -1):
                val = acc[t] + carry
                out[vi, t] = val & mask
                carry = val >> shift
            out_counts[vi] = cnt


def _ints_to_limbs(values, n_limbs: int, limb_bits: int) -> np.ndarray:
    nk = len(values)
    arr = np.zeros((nk, n_limbs), dtype=np.uint64)
    mask = (1 << limb_bits) - 1
    for i, val in enumerate(values):
        for t in range(n_limbs - 1, -1, -1):
            arr[i, t] = val & mask
            val >>= limb_bits
    return arr


def _limbs_to_ints(arr: np.ndarray, limb_bits: int) -> list[int]:
    nk, n_limbs = arr.shape
    if limb_bits == 32:
        # rows are big-endian 32-bit payloads: decode via bytes in one pass
        packed = arr.astype(">u4").tobytes()
        row_bytes = 4 * n_limbs
        return [
            int.from_bytes(packed[i * row_bytes : (i + 1) * row_bytes], "big")
            for i in range(nk)
        ]
    out = []
    for i in range(nk):
        val = 0
        for t in range(n_limbs):
            val = (val << limb_bits) | int(arr[i, t])
        out.append(val)
    return out


def _one_limbs(frac_bits: int, n_limbs: int, limb_bits: int) -> np.ndarray:
    arr = np.zeros(n_limbs, dtype=np.uint64)
    pos = n_limbs * limb_bits - 1 - frac_bits  # bit offset of 2^frac_bits from the top
    limb_i = pos // limb_bits
    bit_in_limb = limb_bits - 1 - (pos % limb_bits)
    arr[limb_i] = np.uint64(1) << np.uint64(bit_in_limb)
    return arr


class Engine:
    """Runs the seed pass and DP levels over one key space."""

    def __init__(self, x: int, keys: np.ndarray, s: int, primes: np.ndarray,
                 precision: int, force_scalar: bool = False):
        self.x = int(x)
        self.keys = keys
        self.s = int(s)
        self.primes = primes
        max_prime = int(primes[-1]) if primes.size else 2
        self.limb_bits, self.n_limbs, self.frac_bits = fixed_point_params(
            precision, max_prime
        )
        self.use_numba = HAVE_NUMBA and not force_scalar and self.x >= SCALAR_CUTOFF
        self._keys_list = None if self.use_numba else keys.tolist()
        self._primes_list = None if self.use_numba else primes.tolist()

    # -- level 1 ---------------------------------------------------------
    def seed(self) -> tuple[list[int], np.ndarray]:
        """(values, counts) of level 1 at every key; counts[i] = pi(keys[i])."""
        counts = np.searchsorted(self.primes, self.keys, side="right").astype(np.int64)
        if not self.use_numba:
            vals = scalar_seed(self._keys_list, self._primes_list, self.frac_bits)
            return vals, counts
        out = np.zeros((self.keys.size, self.n_limbs), dtype=np.uint64)
        one = _one_limbs(self.frac_bits, self.n_limbs, self.limb_bits)
        _seed_kernel(self.keys, self.primes, one, out, self.limb_bits)
        return _limbs_to_ints(out, self.limb_bits), counts

    # -- level j -> j+1 ----------------------------------------------------
    def advance(self, prev_vals: list[int], prev_counts: np.ndarray):
        if not self.use_numba:
            vals, counts = scalar_advance(
                self.x, self._keys_list, self.s, self._primes_list,
                prev_vals, prev_counts.tolist(),
            )
            return vals, np.asarray(counts, dtype=np.int64)
        prev = _ints_to_limbs(prev_vals, self.n_limbs, self.limb_bits)
        out = np.zeros_like(prev)
        out_counts = np.zeros(self.keys.size, dtype=np.int64)
        _advance_kernel(
            self.keys, self.s, self.x, self.primes, prev,
            prev_counts, out, out_counts, self.limb_bits,
        )
        return _limbs_to_ints(out, self.limb_bits), out_counts

    def run(self, k: int):
        """Levels 1..k; returns (level_k values, level_k counts, level_1 values)."""
        vals, counts = self.seed()
        level1 = vals
        for _ in range(2, k + 1):
            vals, counts = self.advance(vals, counts)
        return vals, counts, level1


def truncation_error_ledger(k: int, pi_x: int, s1_upper: float, frac_bits: int) -> float:
    """Upper bound on |computed - true| for level k at any key.

    Level 1 drops < pi(x) * u with u = 2^-frac_bits; each later level
    inherits the previous bound scaled by sum 1/p <= s1_upper and adds its
    own pi(x) * u.
    """
    u = math.ldexp(1.0, -frac_bits)
    bound = pi_x * u
    for _ in range(2, k + 1):
        bound = bound * s1_upper + pi_x * u
    return bound * 1.0000001  # cover float rounding of the ledger itself
