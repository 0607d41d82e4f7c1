"""Limiting behaviour of the fitted moment closed forms.

The scaled moments m_r(n)/m_2(n)^(r/2) converge to finite constants; this
module evaluates them numerically from verified closed forms, never by
symbolic series manipulation.  Two substitution modes are used:

* limit substitution, H_1(n) -> ln n + gamma and H_m(n) -> zeta(m),
  applied to the *top n-degree* terms only.  For a genuine limit the top
  terms carry no H_1 factor, so the value is n-independent; the three-
  decade stability gate (n = 10^6, 10^7, 10^8, >= 12 agreeing digits)
  exists precisely to catch expressions whose leading part still drifts
  like ln n or was contaminated by slowly-decaying terms;
* full Euler-Maclaurin substitution of every term (``evaluate_asymptotic``)
  for finite-n diagnostics such as the coefficient-of-variation decay,
  where the O(ln n / n) remainder is the point, not a nuisance.

Leading coefficients are extracted from the full expression evaluated at
astronomically large n (10^30..10^40), where the subleading ln n terms sit
20+ digits below the limit.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import StabilityError
from .fitting import HarmonicExpr, known_mean, known_central_moment
from .numeric import MAX_PRECISION, constants, harmonic_asymptotic

LIMIT_POINTS = (10**6, 10**7, 10**8)
LEAD_POINTS = (10**30, 10**35, 10**40)


@dataclass(frozen=True)
class AsymptoticValue:
    """A numerically-evaluated limit plus its stability evidence."""

    value: mpf
    n_used: tuple[int, ...]
    stability: int  # digits agreeing across the evaluation points


def _check_precision(precision: int) -> None:
    if not 30 <= precision <= MAX_PRECISION:
        raise ValueError(f"precision must lie in [30, {MAX_PRECISION}]")


def _limit_value(terms, n: int, consts) -> mpf:
    """sum c * n^a * prod(sub(H_m))^e with H_1 -> ln n + gamma, H_m -> zeta(m)."""
    nn = mpf(n)
    log_term = mp.log(nn) + consts.gamma
    total = mpf(0)
    for mono, coeff in terms.items():
        val = mpf(coeff.numerator) / mpf(coeff.denominator) * nn**mono.n_power
        for m, e in mono.h_powers:
            val *= (log_term if m == 1 else consts.zeta[m]) ** e
        total += val
    return total


def _agreement_digits(values, cap: int) -> int:
    scale = max(abs(v) for v in values)
    spread = max(values) - min(values)
    if spread == 0:
        return cap
    if scale == 0:
        return 0
    digits = int(mp.floor(mp.log10(scale / spread)))
    return max(0, min(cap, digits))


def scaled_moment_limit(
    r: int,
    expr_r: HarmonicExpr,
    expr_2: HarmonicExpr,
    precision: int = 50,
    *,
    points: tuple[int, ...] = LIMIT_POINTS,
    min_stability: int = 12,
) -> AsymptoticValue:
    """Limit of m_r(n)/m_2(n)^(r/2) from verified closed forms.

    Evaluates the leading parts at each point with limit substitution and
    requires ``min_stability`` agreeing digits; an expression whose top
    terms retain ln n growth (or with mismatched degrees, e.g. an
    unverified fit) fails the gate with :class:`StabilityError` instead of
    silently returning a drifting number.  Odd-order limits keep their
    sign.
    """
    if r < 2:
        raise ValueError("scaled moments are defined for r >= 2")
    _check_precision(precision)
    if len(points) < 2:
        raise ValueError("need at least two evaluation points")
    with mp.workdps(precision + 15):
        consts = constants(min(precision + 10, MAX_PRECISION))
        tops_r = expr_r.top_terms()
        tops_2 = expr_2.top_terms()
        values = []
        for n in points:
            num = _limit_value(tops_r, n, consts)
            den = _limit_value(tops_2, n, consts)
            if den <= 0:
                raise StabilityError(
                    f"variance leading part is non-positive at n={n}"
                )
            values.append(num / den ** (mpf(r) / 2))
        stability = _agreement_digits(values, precision)
        if stability < min_stability:
            raise StabilityError(
                f"scaled moment limit r={r} unstable: {stability} agreeing "
                f"digits across n={points}, need {min_stability}"
            )
        return AsymptoticValue(
            value=+values[-1], n_used=tuple(points), stability=stability
        )


def leading_coefficient(
    expr: HarmonicExpr,
    precision: int = 50,
    *,
    points: tuple[int, ...] = LEAD_POINTS,
    min_stability: int = 20,
) -> mpf:
    """Numeric limit of expr(n)/n^deg under limit substitution.

    ``deg`` is the top n-degree of the expression.  Evaluation points are
    large enough that subleading ln n terms lie beyond ``min_stability``
    digits; instability is raised, not returned.
    """
    _check_precision(precision)
    if expr.is_zero():
        raise ValueError("leading coefficient of the zero expression")
    with mp.workdps(precision + 15):
        consts = constants(min(precision + 10, MAX_PRECISION))
        terms = expr.terms
        deg = expr.max_n_power()
        values = [_limit_value(terms, n, consts) / mpf(n) ** deg for n in points]
        stability = _agreement_digits(values, precision)
        if stability < min_stability:
            raise StabilityError(
                f"leading coefficient unstable: {stability} agreeing digits "
                f"across n={points}, need {min_stability}"
            )
        return +values[-1]


def evaluate_asymptotic(
    expr: HarmonicExpr, n: int, precision: int = 50, terms: int = 4
) -> mpf:
    """Evaluate a closed form at (possibly huge) n via Euler-Maclaurin
    harmonic values rather than exact rationals."""
    _check_precision(precision)
    if n < 1:
        raise ValueError("n must be >= 1")
    with mp.workdps(precision + 10):
        nn = mpf(n)
        h_cache: dict[int, mpf] = {}
        total = mpf(0)
        for mono, coeff in expr.terms.items():
            val = mpf(coeff.numerator) / mpf(coeff.denominator) * nn**mono.n_power
            for m, e in mono.h_powers:
                hm = h_cache.get(m)
                if hm is None:
                    hm = h_cache[m] = harmonic_asymptotic(
                        m, n, terms=terms, precision=min(precision + 5, MAX_PRECISION)
                    )
                val *= hm**e
            total += val
        return +total


def mean_over_nlogn(n: int, precision: int = 50) -> mpf:
    """Diagnostic ratio c_n/(n ln n); approaches 2 like O(1/ln n)."""
    _check_precision(precision)
    with mp.workdps(precision + 10):
        cn = evaluate_asymptotic(known_mean(), n, precision)
        return +(cn / (mpf(n) * mp.log(n)))


def coefficient_of_variation(n: int, precision: int = 50) -> mpf:
    """sqrt(m_2(n))/c_n; small and shrinking like O(1/ln n)."""
    _check_precision(precision)
    with mp.workdps(precision + 10):
        cn = evaluate_asymptotic(known_mean(), n, precision)
        var = evaluate_asymptotic(known_central_moment(2), n, precision)
        return +(mp.sqrt(var) / cn)


def mean_asymptotic_check(precision: int = 50) -> mpf:
    """The mean-growth constant 2/ln 2 (~2.88539008).

    Quicksort's average 2 n ln n comparisons are this factor above the
    best-case n log2 n.  Before returning, the classical mean formula is
    checked to approach 2 n ln n numerically: at n = 10^8 the ratio
    (c_n - (2 gamma - 4) n)/(n ln n) must be within 1e-5 of 2.
    """
    _check_precision(precision)
    with mp.workdps(precision + 10):
        n = 10**8
        cn = evaluate_asymptotic(known_mean(), n, precision)
        gamma = constants(min(precision + 5, MAX_PRECISION)).gamma
        ratio = (cn - (2 * gamma - 4) * n) / (mpf(n) * mp.log(n))
        if abs(ratio - 2) > mpf("1e-5"):
            raise StabilityError(
                f"mean growth sanity check failed: ratio {ratio} not near 2"
            )
        return +(2 / mp.log(2))
