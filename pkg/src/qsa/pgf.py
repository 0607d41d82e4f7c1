"""Exact probability generating functions of the comparison count.

``g_n(t) = sum_k Pr(X_n = k) t^k`` satisfies the product-form recurrence

    g_n(t) = t^(n-1)/n * sum_{k=1}^{n} g_{k-1}(t) * g_{n-k}(t),

with g_0 = g_1 = 1: the random pivot is the k-th smallest with probability
1/n, partitioning costs n-1 comparisons, and the two sides are independent.

Working with Fraction-coefficient polynomials directly is hopeless at
n = 130 (billions of rational operations), so the builder tracks the
integer-scaled polynomials G_n = n! * g_n.  Multiplying the recurrence by
n! gives the pure-integer form

    G_n(t) = t^(n-1) * sum_{k=1}^{n} C(n-1, k-1) G_{k-1}(t) G_{n-k}(t),

and each integer polynomial product is carried out by Kronecker
substitution: coefficients are packed into fixed-width slots of one huge
integer, multiplied once (GMP-fast when gmpy2 is installed), and unpacked.
Every packed slot value is bounded by n! (the coefficients of G_n are
non-negative and sum to exactly n!), which fixes the slot width.

Coefficients grow like n!, so memory for the full table up to n is
O(n^4 log n) bits; the default ceiling of 130 costs ~40 MB, and raising it
to N costs roughly (N/130)^4 as much.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Mapping, Union

from ._intops import big_mul

DEFAULT_MAX_N = 130


@dataclass(frozen=True)
class DistPoly:
    """Exact distribution of the comparison count for lists of length n.

    ``probs[i]`` is Pr(X_n = min_k + i); the support is the contiguous
    integer range [min_k, max_k] and the probabilities sum to exactly 1.
    """

    n: int
    min_k: int
    probs: tuple[Fraction, ...]

    @property
    def max_k(self) -> int:
        return self.min_k + len(self.probs) - 1

    def prob(self, k: int) -> Fraction:
        if self.min_k <= k <= self.max_k:
            return self.probs[k - self.min_k]
        return Fraction(0)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        for i, p in enumerate(self.probs):
            yield self.min_k + i, p

    def eval(self, t) -> Fraction:
        """Exact polynomial evaluation g_n(t) at a rational point."""
        t = Fraction(t)
        acc = Fraction(0)
        for p in reversed(self.probs):
            acc = acc * t + p
        return acc * t**self.min_k


class PgfCache:
    """Bottom-up memo table of exact PGFs.

    The table is built iteratively (no recursion) and each published
    polynomial is immutable.  ``fold`` exploits the k <-> n+1-k symmetry of
    the recurrence, halving the number of polynomial products; folded and
    unfolded builds produce identical tables.
    """

    def __init__(self, max_n: int = DEFAULT_MAX_N, fold: bool = True):
        if max_n < 1:
            raise ValueError("max_n must be >= 1")
        self._fold = fold
        self._lock = threading.RLock()
        self._offsets: list[int] = []
        self._coeffs: list[list[int]] = []
        self._packed: list[int] = []
        self._dists: dict[int, DistPoly] = {}
        self._capacity = 0
        self._slot_bytes = 0
        self._set_capacity(max_n)

    @property
    def capacity(self) -> int:
        return self._capacity

    def _set_capacity(self, cap: int) -> None:
        # A slot must hold any accumulated coefficient, all of which are
        # bounded by cap! (non-negative, total mass cap!).
        self._capacity = cap
        self._slot_bytes = (factorial(cap).bit_length() + 9) // 8
        self._packed = [self._pack(c) for c in self._coeffs]

    def _pack(self, coeffs: list[int]) -> int:
        sb = self._slot_bytes
        buf = bytearray(len(coeffs) * sb)
        for i, c in enumerate(coeffs):
            nbytes = (c.bit_length() + 7) // 8
            pos = i * sb
            buf[pos : pos + nbytes] = c.to_bytes(nbytes, "little")
        return int.from_bytes(buf, "little")

    def _unpack(self, value: int, count: int) -> list[int]:
        sb = self._slot_bytes
        raw = value.to_bytes(count * sb, "little")
        return [
            int.from_bytes(raw[i * sb : (i + 1) * sb], "little") for i in range(count)
        ]

    def _build_next(self) -> None:
        n = len(self._coeffs)
        if n <= 1:
            offset, coeffs = 0, [1]
        else:
            offs = self._offsets
            lens = [len(c) for c in self._coeffs]
            pair_off = [offs[k - 1] + offs[n - k] for k in range(1, n + 1)]
            base = min(pair_off)
            span = (
                max(
                    pair_off[k - 1] + lens[k - 1] + lens[n - k] - 1
                    for k in range(1, n + 1)
                )
                - base
            )
            slot_bits = self._slot_bytes * 8
            acc = 0
            if self._fold:
                for k in range(1, n // 2 + 1):
                    w = 2 * comb(n - 1, k - 1)
                    prod = big_mul(self._packed[k - 1], self._packed[n - k])
                    acc += w * (prod << ((pair_off[k - 1] - base) * slot_bits))
                if n % 2:
                    k = (n + 1) // 2
                    w = comb(n - 1, k - 1)
                    prod = big_mul(self._packed[k - 1], self._packed[k - 1])
                    acc += w * (prod << ((pair_off[k - 1] - base) * slot_bits))
            else:
                for k in range(1, n + 1):
                    w = comb(n - 1, k - 1)
                    prod = big_mul(self._packed[k - 1], self._packed[n - k])
                    acc += w * (prod << ((pair_off[k - 1] - base) * slot_bits))
            coeffs = self._unpack(acc, span)
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            offset = base + n - 1
            # total mass n! * g_n(1) = n!; also guards slot overflow
            assert sum(coeffs) == factorial(n)
        self._offsets.append(offset)
        self._coeffs.append(coeffs)
        self._packed.append(self._pack(coeffs))

    def _ensure(self, n: int) -> None:
        with self._lock:
            if n > self._capacity:
                self._set_capacity(n)
            while len(self._coeffs) <= n:
                self._build_next()

    def scaled(self, n: int) -> tuple[int, list[int]]:
        """Offset and integer coefficients of n! * g_n (copy-safe view)."""
        if n < 0:
            raise ValueError("n must be non-negative")
        self._ensure(n)
        return self._offsets[n], self._coeffs[n]

    def get(self, n: int) -> DistPoly:
        if n < 0:
            raise ValueError("n must be non-negative")
        self._ensure(n)
        with self._lock:
            dist = self._dists.get(n)
            if dist is None:
                nf = factorial(n)
                offset, coeffs = self._offsets[n], self._coeffs[n]
                dist = DistPoly(
                    n=n,
                    min_k=offset,
                    probs=tuple(Fraction(c, nf) for c in coeffs),
                )
                self._dists[n] = dist
        return dist


_default_cache = PgfCache(DEFAULT_MAX_N)


def pgf(n: int) -> DistPoly:
    """Exact distribution of the comparison count on random length-n input.

    Memoized bottom-up: requesting n forces g_0 .. g_{n-1} as well.  The
    shared table auto-extends past the default ceiling of 130; see the
    module docstring for the memory cost of doing so.
    """
    return _default_cache.get(n)


def scaled_pgf(n: int) -> tuple[int, list[int]]:
    """Offset and coefficients of the integer polynomial n! * g_n."""
    return _default_cache.scaled(n)


CoeffTable = Union[DistPoly, Mapping[int, Fraction]]


def _as_table(x: CoeffTable) -> dict[int, Fraction]:
    if isinstance(x, DistPoly):
        return {k: p for k, p in x.items() if p}
    return {int(k): Fraction(v) for k, v in x.items()}


def convolve(a: CoeffTable, b: CoeffTable) -> dict[int, Fraction]:
    """Exact product of two coefficient tables.

    Degrees add and total mass multiplies; convolving with {0: 1} is the
    identity.  This is the reference implementation for small tables; the
    cache builder above uses the packed-integer route instead.
    """
    ta, tb = _as_table(a), _as_table(b)
    out: dict[int, Fraction] = {}
    for ka, pa in ta.items():
        if not pa:
            continue
        for kb, pb in tb.items():
            if not pb:
                continue
            key = ka + kb
            cur = out.get(key)
            out[key] = pa * pb if cur is None else cur + pa * pb
    return dict(sorted(out.items()))
