"""Template enumeration, exact fitting, and the escalating guesser."""

from fractions import Fraction

import pytest

from qsa.errors import GuessError, InsufficientDataError
from qsa.fitting import (
    REFUTED,
    UNDETERMINED,
    VERIFIED,
    HarmonicExpr,
    Monomial,
    _rational_reconstruct,
    fit,
    guess_moment,
    known_central_moment,
    known_mean,
    template,
)
from qsa.moments import central_moment, moment_table


def mean_data(n_max):
    return moment_table(n_max, 1, kind="raw").values


class TestMonomial:
    def test_canonicalization(self):
        m = Monomial(2, ((2, 1), (1, 3), (3, 0)))
        assert m.h_powers == ((1, 3), (2, 1))
        assert m.weight == 5

    def test_validation(self):
        with pytest.raises(ValueError):
            Monomial(-1)
        with pytest.raises(ValueError):
            Monomial(0, ((0, 2),))

    def test_evaluate(self):
        m = Monomial(1, ((1, 1),))
        assert m.evaluate(3) == 3 * Fraction(11, 6)

    def test_str(self):
        assert str(Monomial(0)) == "1"
        assert str(Monomial(2, ((1, 2), (3, 1)))) == "n^2*H1^2*H3"


class TestTemplate:
    def test_degree_one_template(self):
        monos = template(1, 1, 1)
        assert {str(m) for m in monos} == {"1", "n", "H1", "n*H1"}

    def test_degree_two_contains_expected(self):
        labels = {str(m) for m in template(2, 2, 2)}
        assert {"n^2", "n*H1", "n^2*H2", "H1^2"} <= labels
        assert len(labels) == 12

    def test_contains_every_fourth_moment_monomial(self):
        basis = set(template(4, 4, 4))
        assert set(known_central_moment(4).terms) <= basis

    def test_deterministic_order(self):
        assert template(3, 3, 3) == template(3, 3, 3)

    def test_bounds_respected(self):
        for mono in template(5, 3, 4):
            assert mono.n_power <= 3
            assert mono.weight <= 4
            assert all(m <= 5 for m, _ in mono.h_powers)


class TestHarmonicExpr:
    def test_polynomial_algebra(self):
        N = HarmonicExpr.variable()
        expr = (N + 1) ** 2
        assert expr == N**2 + 2 * N + 1

    def test_mean_formula_values(self):
        expr = known_mean()
        assert expr.evaluate(1) == 0
        assert expr.evaluate(3) == Fraction(8, 3)

    def test_variance_formula_at_two(self):
        assert known_central_moment(2).evaluate(2) == 0

    def test_zero_handling(self):
        z = HarmonicExpr.zero()
        assert z.is_zero()
        assert (known_mean() - known_mean()).is_zero()

    def test_evaluate_rejects_bad_n(self):
        with pytest.raises(ValueError):
            known_mean().evaluate(0)

    def test_json_round_trip(self):
        expr = known_central_moment(4)
        assert HarmonicExpr.from_json(expr.to_json()) == expr

    def test_canonical_term_order_is_lexicographic(self):
        expr = known_central_moment(2)
        keys = [m.sort_key(2) for m, _ in expr.canonical_terms()]
        assert keys == sorted(keys)


class TestRationalReconstruction:
    def test_round_trip(self):
        m = 7**48  # coprime to every denominator below
        for q in (Fraction(2260, 9), Fraction(-19), Fraction(768), Fraction(-1, 12)):
            residue = q.numerator * pow(q.denominator, -1, m) % m
            assert _rational_reconstruct(residue, m) == q

    def test_zero(self):
        assert _rational_reconstruct(0, 10**20) == 0


class TestFit:
    def test_mean_recovery(self):
        # four-term template, train on 1..9, verify through 306
        monos = template(1, 1, 1)
        report = fit(mean_data(306), monos, (1, 9), (10, 306))
        assert report.status == VERIFIED
        by_label = {str(m): c for m, c in report.expr.terms.items()}
        assert by_label == {"n": -4, "H1": 2, "n*H1": 2}
        assert report.expr.coefficient(Monomial(0)) == 0
        assert not any(report.residuals)

    def test_constant_zero_data(self):
        data = {n: Fraction(0) for n in range(1, 40)}
        report = fit(data, template(1, 1, 1), (1, 9), (10, 39))
        assert report.status == VERIFIED
        assert report.expr.is_zero()

    def test_refuted_template(self):
        # the mean is not affine in n
        monos = [Monomial(0), Monomial(1)]
        report = fit(mean_data(60), monos, (1, 20), (21, 60))
        assert report.status == REFUTED
        assert report.expr is None

    def test_underdetermined_duplicate_columns(self):
        monos = [Monomial(0), Monomial(0), Monomial(1)]
        data = {n: Fraction(3 * n + 2) for n in range(1, 41)}
        report = fit(data, monos, (1, 20), (21, 40))
        assert report.status == UNDETERMINED
        assert report.expr is None

    def test_training_set_independence(self):
        monos = template(1, 1, 1)
        data = mean_data(120)
        r1 = fit(data, monos, (1, 9), (40, 120))
        r2 = fit(data, monos, (10, 18), (40, 120))
        assert r1.status == r2.status == VERIFIED
        assert r1.expr == r2.expr

    def test_insufficient_training_points(self):
        with pytest.raises(InsufficientDataError):
            fit(mean_data(20), template(1, 1, 1), (1, 5), (6, 20))

    def test_missing_data_rejected(self):
        data = {n: Fraction(n) for n in range(1, 10)}
        with pytest.raises(InsufficientDataError):
            fit(data, template(1, 1, 1), (1, 9), (10, 20))

    def test_test_failure_reports_residuals(self):
        # train window fits an affine model exactly, test window refutes it
        data = {n: Fraction(n) for n in range(1, 31)}
        data.update({n: Fraction(n + 1) for n in range(21, 31)})
        monos = [Monomial(0), Monomial(1)]
        report = fit(data, monos, (1, 20), (21, 30))
        assert report.status == REFUTED
        assert report.expr is not None
        assert all(res == 1 for res in report.residuals)


class TestGuessMoment:
    def test_order_one_is_classical_mean(self):
        report = guess_moment(1)
        assert report.status == VERIFIED
        assert report.degree == 1
        assert report.expr == known_mean()

    def test_order_two_matches_transcription(self):
        report = guess_moment(2)
        assert report.status == VERIFIED
        assert report.degree == 2
        assert report.expr == known_central_moment(2)

    def test_order_three_matches_transcription(self):
        report = guess_moment(3)
        assert report.expr == known_central_moment(3)
        assert report.degree == 3

    def test_fitted_forms_reproduce_exact_moments(self):
        report = guess_moment(2)
        for n in range(1, 40):
            assert report.expr.evaluate(n) == central_moment(n, 2)

    def test_data_cap_enforced(self):
        with pytest.raises(InsufficientDataError):
            guess_moment(2, n_max_data=10)

    def test_escalation_exhaustion_names_template(self):
        # powers of two admit no harmonic-polynomial closed form
        data = {n: Fraction(2) ** n for n in range(1, 400)}
        with pytest.raises(GuessError) as err:
            guess_moment(2, data=data)
        assert "n-degree <= 2" in str(err.value)

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            guess_moment(0)
