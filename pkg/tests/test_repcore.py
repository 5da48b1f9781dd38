"""Generator actions and defining-relation verification.

Coefficient values are cross-checked against an independent complex
floating oracle built directly from the bracket products.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iqgt.qfield import RatFunc, parse, rf_equal, rf_numeric
from iqgt.repcore import (Generator, Kind, ModuleSpec, SingularParameterError,
                          a_coeff, act, act_ket, act_word, admissible,
                          b_coeff, c_coeff, i21_eigenvalue, ket_vector,
                          vec_equal, vec_is_zero, vec_sub, verify_relations)

from conftest import pv, spec3, spec4

Q_SAMPLES = [1.2, 0.7, 1.5 + 0.4j]


def fbr(q, b):
    t = float(b)
    return (q ** t - q ** (-t)) / (q - 1 / q)


class TestModuleSpec:
    def test_rejects_bad_rank(self):
        with pytest.raises(ValueError):
            ModuleSpec(5, Kind.GENERIC, {})

    def test_rejects_wrong_params(self):
        with pytest.raises(ValueError):
            ModuleSpec(3, Kind.GENERIC, {"p": pv("p")})

    def test_finite_needs_rational(self):
        with pytest.raises(ValueError):
            spec3(kind=Kind.FINITE)

    def test_finite_admissibility(self):
        with pytest.raises(ValueError):
            spec3(l="-1", m0=0, kind=Kind.FINITE)
        with pytest.raises(ValueError):
            spec3(l="3/2", m0=0, kind=Kind.FINITE)  # m0 not l mod 1
        with pytest.raises(ValueError):
            spec4(p=1, r=2, l0=1, m0=1, kind=Kind.FINITE)  # p < |r|
        spec4(p=2, r=-1, l0=1, m0=0, kind=Kind.FINITE)

    def test_finite_window(self):
        s = spec3(l=1, m0=1, kind=Kind.FINITE)
        assert list(s.window_kets(5)) == [(-2,), (-1,), (0,)]
        assert admissible(s, (0,)) and not admissible(s, (1,))


class TestEigenvalue:
    def test_i21_diagonal(self, sym3):
        v = act(sym3, Generator.I21, ket_vector((2,)))
        lam = i21_eigenvalue(sym3, (2,))
        assert vec_equal(v, {(2,): lam})
        from iqgt.qfield import RF_I, qbracket, sym
        assert rf_equal(lam, RF_I * qbracket(sym("m0", shift=2)))


class TestCoefficients:
    def test_a_at_l1_m0(self):
        # bhr(0) * bhr(1) * [2][1] = (1/2) * (q+1/q)^-1 * (q+1/q) = 1/2
        s = spec3(1, 0)
        assert rf_equal(a_coeff(s, (0,)), parse("1/2"))

    @given(l=st.fractions(min_value=-3, max_value=3, max_denominator=3),
           m=st.fractions(min_value=-3, max_value=3, max_denominator=3))
    @settings(max_examples=30, deadline=None)
    def test_a_float_oracle(self, l, m):
        s = spec3(l, m)
        v = a_coeff(s, (0,))
        for q in Q_SAMPLES:
            den1 = q ** float(m) + q ** float(-m)
            den2 = q ** float(m + 1) + q ** float(-m - 1)
            want = fbr(q, l + m + 1) * fbr(q, l - m) / (den1 * den2)
            assert abs(rf_numeric(v, q) - want) < 1e-7

    def test_b_float_oracle(self):
        s = spec4("1/4", "1/4", "1/4", "1/4")
        v = b_coeff(s, (0, 0))
        p = r = l = m = 0.25
        for q in Q_SAMPLES:
            num = (fbr(q, p + l + 2) * fbr(q, p - l) * fbr(q, l + r + 1)
                   * fbr(q, l - r + 1) * fbr(q, l + m + 1))
            den = fbr(q, l + 1) ** 2 * fbr(q, 2 * l + 1) * fbr(q, 2 * l + 3)
            assert abs(rf_numeric(v, q) - num / den) < 1e-8

    def test_c_float_oracle(self):
        s = spec4("1/3", "1/5", "1/7", "2/7")
        v = c_coeff(s, (1, -1))
        p, r = 1 / 3, 1 / 5
        l, m = 1 / 7 + 1, 2 / 7 - 1
        for q in Q_SAMPLES:
            want = fbr(q, p + 1) * fbr(q, r) * fbr(q, m) / (
                fbr(q, l + 1) * fbr(q, l))
            assert abs(rf_numeric(v, q) - want) < 1e-8

    def test_c_zero_numerator_short_circuit(self):
        # r = 0 kills the numerator even where the denominator [l]
        # vanishes; the finite boundary relies on this
        s = spec4(1, 0, 0, 0, kind=Kind.FINITE)
        assert c_coeff(s, (0, 0)).is_zero

    def test_singular_denominator_raises(self):
        s = spec4("1/5", "1/7", 0, "1/11")
        with pytest.raises(SingularParameterError):
            c_coeff(s, (0, 0))

    def test_finite_half_ell(self):
        # l = 1/2: raising coefficient from the lowest weight is
        # 1/(q^(1/2)+q^(-1/2))^2, worked out by hand from the closed form
        s = spec3("1/2", "1/2", kind=Kind.FINITE)
        want = (parse("q^(1/2)") + parse("q^(-1/2)")) ** (-2)
        assert rf_equal(a_coeff(s, (-1,)), want)


class TestAction:
    def test_i32_shape(self, sym3):
        v = act(sym3, Generator.I32, ket_vector((0,)))
        assert set(v) == {(1,), (-1,)}
        assert rf_equal(v[(-1,)], -RatFunc.one())

    def test_i43_shape(self, sym4):
        v = act(sym4, Generator.I43, ket_vector((0, 0)))
        assert set(v) == {(1, 0), (-1, 0), (0, 0)}

    def test_finite_drops_outside(self):
        s = spec3(1, 1, kind=Kind.FINITE)
        v = act(s, Generator.I32, ket_vector((0,)))  # top ket m = l
        assert set(v) == {(-1,)}

    def test_act_word_composes(self, sym3):
        v = ket_vector((0,))
        w1 = act_word(sym3, [Generator.I21, Generator.I32], v)
        w2 = act(sym3, Generator.I21, act(sym3, Generator.I32, v))
        assert vec_equal(w1, w2)

    def test_i43_requires_rank4(self, sym3):
        with pytest.raises(ValueError):
            act_ket(sym3, Generator.I43, (0,))


class TestRelations:
    def test_symbolic_rank3(self, sym3):
        assert verify_relations(sym3, 2).all_zero

    def test_rational_rank3(self):
        assert verify_relations(spec3("1/3", "1/5"), 3).all_zero

    def test_rational_rank4(self):
        rep = verify_relations(spec4("1/4", "1/4", "1/4", "1/4"), 2)
        assert rep.all_zero
        names = {c.relation for c in rep.checks}
        assert names == {"serre_upper[I21/I32]", "serre_lower[I21/I32]",
                         "serre_upper[I32/I43]", "serre_lower[I32/I43]",
                         "commute[I21/I43]"}

    def test_finite_rank3_boundary(self):
        assert verify_relations(spec3(2, 2, kind=Kind.FINITE), 5).all_zero

    def test_finite_rank4_boundary(self):
        s = spec4("3/2", "1/2", "3/2", "3/2", kind=Kind.FINITE)
        assert verify_relations(s, 4).all_zero

    def test_negative_control(self):
        rep = verify_relations(spec3(negate_a=True), 1)
        assert not rep.all_zero
        assert rep.failures()

    def test_report_json_schema(self, sym3):
        js = verify_relations(sym3, 1).to_json()
        for entry in js:
            assert set(entry) == {"relation", "ket", "residual_zero",
                                  "residual"}
            assert entry["residual_zero"] is True
            assert entry["residual"] is None

    @given(l=st.fractions(min_value=-2, max_value=2, max_denominator=3),
           m=st.fractions(min_value=-2, max_value=2, max_denominator=3),
           k=st.integers(min_value=-3, max_value=3))
    @settings(max_examples=20, deadline=None)
    def test_serre_residual_property(self, l, m, k):
        import iqgt.repcore as rc
        s = spec3(l, m)
        res = rc._serre_residual(s, Generator.I21, Generator.I32, (k,), False)
        assert vec_is_zero(res)
