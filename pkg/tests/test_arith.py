import decimal
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from parryindex.arith import (ContinuedFraction, QuadraticNumber, beta_of,
                              convergent_denominator_closed_form, convergent_denominators,
                              denominators_from_zero, limit_index, number_dict, slope_cf,
                              sturmian_index_term, sturmian_supremum, sturmian_term)
from parryindex.words import ParryParams

from conftest import GRID

CTX = decimal.Context(prec=60)
fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
radicands = st.sampled_from([2, 3, 5, 8, 12, 13, 17, 20, 21, 32, 45])


def dec(x: QuadraticNumber) -> decimal.Decimal:
    """High-precision value straight from the definition (the test oracle)."""
    a = CTX.divide(x.a.numerator, x.a.denominator)
    b = CTX.divide(x.b.numerator, x.b.denominator)
    return CTX.add(a, CTX.multiply(b, CTX.sqrt(x.d)))


class TestQuadraticNumber:
    @given(fractions, fractions, radicands)
    def test_sign_matches_decimal(self, a, b, d):
        x = QuadraticNumber(a, b, d)
        value = dec(x)
        assume(abs(value) > decimal.Decimal("1e-40") or (a == 0 and b == 0))
        assert x.sign() == (value > 0) - (value < 0)

    @given(fractions, fractions, fractions, fractions, radicands)
    def test_field_operations(self, a, b, c, e, d):
        x, y = QuadraticNumber(a, b, d), QuadraticNumber(c, e, d)
        tol = decimal.Decimal("1e-40")
        assert abs(dec(x + y) - CTX.add(dec(x), dec(y))) < tol
        assert abs(dec(x * y) - CTX.multiply(dec(x), dec(y))) < tol
        assert x - x == 0
        if y:
            assert (x / y) * y == x

    @given(fractions, fractions, radicands)
    def test_conjugate_norm_trace(self, a, b, d):
        x = QuadraticNumber(a, b, d)
        assert x * x.conjugate() == x.norm()
        assert x + x.conjugate() == x.trace()
        if x:
            assert x * x.inverse() == 1

    def test_sqrt_two_digits(self):
        assert str(QuadraticNumber.sqrt(2).to_decimal(30)) == "1.41421356237309504880168872421"

    def test_decimal_without_cancellation(self):
        # (1 + sqrt 2)^-40 is tiny; naive a + b*sqrt(2) would lose it
        x = (1 + QuadraticNumber.sqrt(2)) ** -40
        assert x.b != 0
        exact = CTX.power(CTX.add(1, CTX.sqrt(2)), -40)
        assert abs(x.to_decimal(30) / exact - 1) < decimal.Decimal("1e-28")

    def test_pow_and_negative_pow(self):
        r5 = QuadraticNumber.sqrt(5)
        assert r5 ** 2 == 5
        assert r5 ** 0 == 1
        assert (r5 ** -2) == Fraction(1, 5)

    def test_rational_interplay(self):
        x = QuadraticNumber(Fraction(3, 2))
        assert x == Fraction(3, 2)
        assert hash(x) == hash(Fraction(3, 2))
        assert x.is_rational() and x.to_fraction() == Fraction(3, 2)
        with pytest.raises(ValueError):
            QuadraticNumber(1, 1, 2).to_fraction()

    def test_radicands_compare_by_value(self):
        # sqrt(8) = 2 sqrt(2)
        assert QuadraticNumber(1, 1, 8) == QuadraticNumber(1, 2, 2)
        assert QuadraticNumber(0, 1, 2) != QuadraticNumber(0, 1, 3)

    def test_ordering(self):
        r2 = QuadraticNumber.sqrt(2)
        assert Fraction(141, 100) < r2 < Fraction(142, 100)
        assert -r2 < 0 < r2
        assert max([r2, QuadraticNumber(1), QuadraticNumber(Fraction(3, 2))]) == Fraction(3, 2)

    def test_str(self):
        assert str(QuadraticNumber(3, 2, 5)) == "3 + 2√5"
        assert str(QuadraticNumber(0, -1, 8)) == "-2√2"
        assert str(QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)) == "1/2 + (1/2)√5"
        assert str(QuadraticNumber(1, 3, 4)) == "7"

    def test_invalid_radicand(self):
        with pytest.raises(ValueError):
            QuadraticNumber(1, 1, 0)

    def test_serialization(self):
        beta, _ = beta_of(ParryParams(2, 1))
        d = number_dict(beta)
        assert d["a"] == {"num": 3, "den": 2} and d["b"] == {"num": 1, "den": 2}
        assert d["D"] == 5
        assert d["decimal"].startswith("2.6180339887498948482")
        assert number_dict(Fraction(177, 32)) == {"num": 177, "den": 32, "decimal": "5.53125"}


class TestBeta:
    @pytest.mark.parametrize("pq", GRID)
    def test_roots(self, pq):
        params = ParryParams(*pq)
        p, q = pq
        beta, beta_c = beta_of(params)
        for x in (beta, beta_c):
            assert x * x - (p + 1) * x + (p - q) == 0
        assert beta + beta_c == p + 1 and beta * beta_c == p - q
        assert p < beta < p + 1
        assert 0 < beta_c < 1

    def test_limit_index(self):
        beta, _ = beta_of(ParryParams(5, 1))
        assert limit_index(ParryParams(5, 1)) == 6 - 2 / (beta - 1)
        assert limit_index(ParryParams(3, 1)) == 4
        beta, _ = beta_of(ParryParams(2, 1))
        assert limit_index(ParryParams(2, 1)) == beta + 1


def direct_denominators(cf: ContinuedFraction, n: int) -> list[int]:
    return [c.denominator for c in cf.convergents(n)]


class TestContinuedFractions:
    def test_slope_expansion(self):
        cf = slope_cf(3)
        assert cf.terms(7) == [0, 1, 2, 1, 2, 1, 2]
        assert str(cf) == "[0; (1, 2)^ω]"
        with pytest.raises(ValueError):
            slope_cf(1)

    @pytest.mark.parametrize("p", range(2, 9))
    def test_slope_value(self, p):
        beta, _ = beta_of(ParryParams(p, p - 1))
        assert slope_cf(p).value() == 1 - 1 / beta

    def test_golden_ratio(self):
        phi = ContinuedFraction(1, (1,)).value()
        assert phi * phi == phi + 1 and phi > 0

    def test_convergents_approach_value(self):
        cf = slope_cf(4)
        value = cf.value()
        errors = [abs(c - value) for c in cf.convergents(12)]
        assert all(b < a for a, b in zip(errors[1:], errors[2:]))

    def test_p3_denominators(self):
        assert convergent_denominators(3, 6) == [1, 3, 4, 11, 15, 41]

    @pytest.mark.parametrize("p", range(2, 9))
    def test_recurrence_matches_direct_convergents(self, p):
        # q_k is the denominator of [a_0; a_1, ..., a_k]
        assert denominators_from_zero(p, 30) == direct_denominators(slope_cf(p), 31)

    @pytest.mark.parametrize("p", [2, 3, 7])
    def test_closed_form(self, p):
        qs = convergent_denominators(p, 20)
        for k, qk in enumerate(qs, start=1):
            assert convergent_denominator_closed_form(p, k) == qk

    def test_denominator_arguments(self):
        with pytest.raises(ValueError):
            convergent_denominators(1, 5)
        with pytest.raises(ValueError):
            convergent_denominators(3, 2)

    def test_invalid_tail(self):
        with pytest.raises(ValueError):
            ContinuedFraction(0, ())
        with pytest.raises(ValueError):
            ContinuedFraction(0, (1, 0))


class TestSturmianTerms:
    def test_even_indices_only(self):
        with pytest.raises(ValueError):
            sturmian_term(3, 3)
        with pytest.raises(ValueError):
            sturmian_term(3, -2)

    def test_values(self):
        # a_{m+2} + 2 + (q_m - 2)/q_{m+1} with q = 1, 1, 3, 4, 11, 15, 41 for p = 3
        assert sturmian_term(3, 0) == 2 + 2 + Fraction(-1, 1)
        assert sturmian_term(3, 2) == 4 + Fraction(1, 4)
        assert sturmian_index_term(3, 2) == sturmian_term(3, 4) == Fraction(23, 5)

    def test_supremum(self):
        beta, _ = beta_of(ParryParams(2, 1))
        assert sturmian_supremum(2) == beta + 1 == QuadraticNumber(Fraction(5, 2), Fraction(1, 2), 5)

    @pytest.mark.parametrize("p", range(2, 9))
    def test_terms_increase_to_supremum(self, p):
        sup = sturmian_supremum(p)
        terms = [sturmian_index_term(p, n) for n in range(25)]
        assert all(a < b for a, b in zip(terms, terms[1:]))
        assert all(t < sup for t in terms)
        assert sup - terms[-1] < Fraction(1, 10 ** 8)
