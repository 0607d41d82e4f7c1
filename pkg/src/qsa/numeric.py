"""Exact rational scalars, harmonic numbers, and high-precision constants.

All distribution and moment arithmetic in this package is carried out over
``fractions.Fraction`` (arbitrary-precision, always reduced, positive
denominator), so every identity asserted elsewhere is exact rather than
floating-point.  High-precision reals are mpmath floats created under an
explicit working precision; the helpers here never touch the global mpmath
context outside a ``workdps`` block.

Two families of quantities live here:

* generalized harmonic numbers ``H_m(n) = sum_{i=1}^n 1/i^m``, both exact
  (Fraction) and asymptotic (Euler-Maclaurin, for very large ``n``);
* the classical constants gamma, pi and zeta(2..8) that appear in the
  large-``n`` behaviour of the comparison-count moments.

The constants are embedded as 120-digit decimal literals and are
re-verified by independent series evaluations in the test suite, guarding
against transcription slips without shipping a special-function engine.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from mpmath import mp, mpf

from ._intops import big, big_gcd

Rational = Fraction

#: constants() accepts precisions in this inclusive range.  The upper cap
#: exists because the embedded literals carry 120 digits and a 10-digit
#: guard is kept on top of the requested precision.
MIN_PRECISION = 50
MAX_PRECISION = 100

_GAMMA = "0.577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063291746749514631447249807082481"
_PI = "3.141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117067982148086513282306647"
_ZETA = {
    2: "1.64493406684822643647241516664602518921894990120679843773555822937000747040320087383362890061975870530400431896233719068",
    3: "1.202056903159594285399738161511449990764986292340498881792271555341838205786313090186455873609335258146199157795260719418",
    4: "1.082323233711138191516003696541167902774750951918726907682976215444120616186968846556909635941699917232990813908042742415",
    5: "1.036927755143369926331365486457034168057080919501912811974192677903803589786281484560043106557133336379620341466556609043",
    6: "1.017343061984449139714517929790920527901817490032853561842408664004332182901957897882773977938535170530279191162254558867",
    7: "1.008349277381922826839797549849796759599863560565238706417283136571601478317355735346096968913851323968961453651491074887",
    8: "1.004077356197944339378685238508652465258960790649850020329110202652582952574748814395287230372371971124523648470282690026",
}

ZETA_MAX = max(_ZETA)

# -----------------------------------------------------------------------
# Exact harmonic numbers
# -----------------------------------------------------------------------

# Prefix sums are cached per exponent m up to this n; larger arguments go
# through divide-and-conquer summation and a point cache.
_PREFIX_LIMIT = 4000

_prefix: dict[int, list[Fraction]] = {}
_large: dict[tuple[int, int], Fraction] = {}
_cache_lock = threading.Lock()


def _check_harmonic_args(m: int, n: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"harmonic exponent m must be a positive integer, got {m!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"harmonic argument n must be a non-negative integer, got {n!r}")


def _sum_inv_pow(m: int, lo: int, hi: int):
    """Reduced (num, den) of sum_{i=lo}^{hi} 1/i^m by binary splitting."""
    if hi - lo < 16:
        num, den = big(0), big(1)
        for i in range(lo, hi + 1):
            q = big(i) ** m
            num = num * q + den
            den *= q
        g = big_gcd(num, den)
        return num // g, den // g
    mid = (lo + hi) // 2
    p1, q1 = _sum_inv_pow(m, lo, mid)
    p2, q2 = _sum_inv_pow(m, mid + 1, hi)
    num = p1 * q2 + p2 * q1
    den = q1 * q2
    g = big_gcd(num, den)
    return num // g, den // g


def harmonic(m: int, n: int) -> Fraction:
    """Exact generalized harmonic number H_m(n) = sum_{i=1}^{n} 1/i^m.

    ``harmonic(m, 0)`` is the empty sum 0.  Results are cached; prefix
    tables serve small ``n`` and binary splitting serves large ``n``
    (``harmonic(1, 10**6)`` is a ~430000-digit reduced fraction).
    """
    _check_harmonic_args(m, n)
    if n == 0:
        return Fraction(0)
    if n <= _PREFIX_LIMIT:
        with _cache_lock:
            seq = _prefix.setdefault(m, [Fraction(0)])
            while len(seq) <= n:
                i = len(seq)
                seq.append(seq[-1] + Fraction(1, i**m))
            return seq[n]
    with _cache_lock:
        hit = _large.get((m, n))
    if hit is not None:
        return hit
    num, den = _sum_inv_pow(m, 1, n)
    value = Fraction(int(num), int(den))
    with _cache_lock:
        _large[(m, n)] = value
    return value


# -----------------------------------------------------------------------
# Bernoulli numbers (exact, for Euler-Maclaurin corrections)
# -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k (convention B_1 = -1/2)."""
    if k < 0:
        raise ValueError("Bernoulli index must be non-negative")
    if k == 0:
        return Fraction(1)
    if k > 2 and k % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(k):
        acc += comb(k + 1, j) * bernoulli(j)
    return -acc / (k + 1)


# -----------------------------------------------------------------------
# Asymptotic harmonic numbers
# -----------------------------------------------------------------------


def _euler_maclaurin_corrections(m: int, n, terms: int):
    """1/(2 n^m) - sum_{k<=terms} B_{2k}/(2k)! * m(m+1)...(m+2k-2) / n^(m+2k-1).

    These are the decaying correction terms shared by every H_m expansion;
    the caller supplies the divergent/limiting base term.
    """
    val = 1 / (2 * n**m)
    for k in range(1, terms + 1):
        coeff = bernoulli(2 * k) * prod(range(m, m + 2 * k - 1)) / factorial(2 * k)
        val -= mpf(coeff.numerator) / mpf(coeff.denominator) / n ** (m + 2 * k - 1)
    return val


def harmonic_asymptotic(m: int, n: int, terms: int = 4, precision: int = 50) -> mpf:
    """Euler-Maclaurin approximation of H_m(n) for large n.

    For m = 1 this is ``ln n + gamma + 1/(2n) - 1/(12 n^2) + ...``; for
    m >= 2 it is ``zeta(m)`` minus the tail estimate.  ``terms`` counts the
    Bernoulli correction terms; with ``terms >= 4`` the result agrees with
    the exact value to well over 30 digits for n >= 10**4.
    """
    _check_harmonic_args(m, n)
    if n < 1:
        raise ValueError("asymptotic expansion requires n >= 1")
    if terms < 0:
        raise ValueError("terms must be non-negative")
    if not 30 <= precision <= MAX_PRECISION:
        raise ValueError(f"precision must lie in [30, {MAX_PRECISION}]")
    with mp.workdps(precision + 10):
        nn = mpf(n)
        if m == 1:
            base = mp.log(nn) + mpf(_GAMMA)
        else:
            base = mpf(_ZETA[m]) if m <= ZETA_MAX else _zeta_series(m, precision)
            base -= nn ** (1 - m) / (m - 1)
        return base + _euler_maclaurin_corrections(m, nn, terms)


def _zeta_series(m: int, precision: int) -> mpf:
    # Tail-accelerated summation for exponents outside the literal table.
    cut = 100
    with mp.workdps(precision + 10):
        head = harmonic(m, cut)
        val = mpf(head.numerator) / mpf(head.denominator)
        ncut = mpf(cut)
        val += ncut ** (1 - m) / (m - 1)
        return val - _euler_maclaurin_corrections(m, ncut, 20)


# -----------------------------------------------------------------------
# Embedded constants
# -----------------------------------------------------------------------


@dataclass(frozen=True)
class Constants:
    """gamma, pi and zeta(2..8) rounded to ``precision`` significant digits."""

    gamma: mpf
    pi: mpf
    zeta: dict[int, mpf] = field(repr=False)
    precision: int = MIN_PRECISION


def constants(precision: int = MIN_PRECISION) -> Constants:
    """The mathematical constants used by the asymptotic evaluations.

    ``precision`` is the number of significant decimal digits and must lie
    in [50, 100]; the embedded reference literals carry 120 digits.
    """
    if not isinstance(precision, int) or precision < MIN_PRECISION:
        raise ValueError(f"precision below {MIN_PRECISION} rejected, got {precision!r}")
    if precision > MAX_PRECISION:
        raise ValueError(
            f"precision above {MAX_PRECISION} exceeds the embedded literal accuracy"
        )
    with mp.workdps(precision + 10):
        return Constants(
            gamma=mpf(_GAMMA),
            pi=mpf(_PI),
            zeta={m: mpf(s) for m, s in _ZETA.items()},
            precision=precision,
        )
