"""Exact scalar arithmetic: brackets, monomials, rational functions.

Derived identities are cross-checked against an independent complex
floating oracle evaluated at sample points away from the unit circle.
"""

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iqgt.qfield import (ParseError, RatFunc, bracket_half_ratio, ex, parse,
                         qbracket, qpow, render, rf_equal, rf_numeric, sym)

Q_SAMPLES = [1.2, 0.7, 2.0 + 0.3j, 0.4 - 0.9j]


def fbracket(q: complex, b: Fraction) -> complex:
    """Independent float oracle for [b]."""
    t = float(b)
    return (q ** t - q ** (-t)) / (q - 1 / q)


fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


class TestQPow:
    def test_zero_exponent_is_one(self):
        assert rf_equal(qpow(ex(0)), RatFunc.one())

    def test_half_exponent(self):
        assert render(qpow(ex(Fraction(1, 2)))) == "q^(1/2)"

    def test_parameter_exponent(self):
        v = qpow(sym("l0", shift=2))
        for q in Q_SAMPLES:
            got = rf_numeric(v, q, {"l0": Fraction(1, 3)})
            want = q ** (1 / 3 + 2)
            assert abs(got - want) < 1e-9

    def test_additivity(self):
        a, b = ex(Fraction(3, 2)), sym("m0", shift=-1)
        assert rf_equal(qpow(a) * qpow(b), qpow(a + b))


class TestQBracket:
    def test_zero(self):
        assert qbracket(ex(0)).is_zero

    def test_one(self):
        assert rf_equal(qbracket(ex(1)), RatFunc.one())

    def test_two(self):
        assert rf_equal(qbracket(ex(2)), parse("q + q^(-1)"))

    def test_negation_antisymmetry(self):
        e = sym("l", shift=3)
        assert rf_equal(qbracket(-e), -qbracket(e))

    @given(a=fractions, b=fractions)
    @settings(max_examples=60, deadline=None)
    def test_addition_identity(self, a, b):
        # [a+b] = q^a [b] + q^-b [a]
        lhs = qbracket(ex(a + b))
        rhs = qpow(ex(a)) * qbracket(ex(b)) + qpow(ex(-b)) * qbracket(ex(a))
        assert rf_equal(lhs, rhs)

    @given(b=fractions)
    @settings(max_examples=40, deadline=None)
    def test_float_oracle(self, b):
        v = qbracket(ex(b))
        for q in Q_SAMPLES:
            assert abs(rf_numeric(v, q) - fbracket(q, b)) < 1e-8


class TestBracketHalfRatio:
    def test_closed_form_at_zero(self):
        assert rf_equal(bracket_half_ratio(ex(0)), parse("1/2"))

    @given(b=fractions)
    @settings(max_examples=40, deadline=None)
    def test_equals_bracket_ratio(self, b):
        # ratio * [2b] = [b] everywhere, including [2b] = 0
        e = ex(b)
        assert rf_equal(bracket_half_ratio(e) * qbracket(e.scale(2)),
                        qbracket(e))

    def test_symbolic(self):
        e = sym("m0", shift=1)
        assert rf_equal(bracket_half_ratio(e) * qbracket(e.scale(2)),
                        qbracket(e))


def small_values():
    return st.sampled_from([
        qbracket(ex(2)), qbracket(ex(Fraction(1, 2))), qpow(ex(-1)),
        qbracket(sym("l", shift=1)), qpow(sym("m0")),
        RatFunc.one(), RatFunc.from_rational(Fraction(-3, 2)),
        qbracket(sym("l")) * qbracket(sym("m0", shift=-2)),
    ])


class TestFieldAxioms:
    @given(a=small_values(), b=small_values(), c=small_values())
    @settings(max_examples=40, deadline=None)
    def test_ring_laws(self, a, b, c):
        assert rf_equal(a + b, b + a)
        assert rf_equal(a * b, b * a)
        assert rf_equal((a + b) + c, a + (b + c))
        assert rf_equal(a * (b + c), a * b + a * c)

    @given(a=small_values())
    @settings(max_examples=20, deadline=None)
    def test_additive_inverse(self, a):
        assert (a - a).is_zero
        assert rf_equal(a + (-a), RatFunc.zero())

    @given(a=small_values(), b=small_values())
    @settings(max_examples=30, deadline=None)
    def test_division_inverts_multiplication(self, a, b):
        if b.is_zero:
            return
        assert rf_equal((a / b) * b, a)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc.one() / RatFunc.zero()


class TestParseRender:
    @pytest.mark.parametrize("text", [
        "q + q^(-1)", "1/2", "i", "q^(1/2)", "3*q^2 - 2",
        "(q^2 - 1)/(q^2 + 1)",
    ])
    def test_roundtrip(self, text):
        v = parse(text)
        assert rf_equal(parse(render(v)), v)

    def test_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse("q +")

    @given(a=small_values())
    @settings(max_examples=25, deadline=None)
    def test_render_roundtrip_property(self, a):
        assert rf_equal(parse(render(a)), a)


class TestNumericEvaluation:
    @given(a=fractions, b=fractions)
    @settings(max_examples=30, deadline=None)
    def test_product_oracle(self, a, b):
        v = qbracket(ex(a)) * qbracket(ex(b))
        for q in Q_SAMPLES[:2]:
            want = fbracket(q, a) * fbracket(q, b)
            assert abs(rf_numeric(v, q) - want) < 1e-8

    def test_parameters(self):
        v = qbracket(sym("l") + sym("m0", shift=1))
        vals = {"l": Fraction(2, 3), "m0": Fraction(-1, 5)}
        for q in Q_SAMPLES:
            want = fbracket(q, Fraction(2, 3) + Fraction(-1, 5) + 1)
            assert abs(rf_numeric(v, q, vals) - want) < 1e-8
