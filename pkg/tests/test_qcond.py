"""Decision predicates over q-power equations at rational parameters."""

from fractions import Fraction

import pytest

from iqgt.qcond import (ParamValue, affine_base, check_hypotheses,
                        qpow_minus_one_possible, solve_qpow_one)

from conftest import spec3, spec4


class TestParamValue:
    def test_parse_fraction(self):
        assert ParamValue.parse("l", "3/2").value == Fraction(3, 2)

    def test_parse_integer(self):
        assert ParamValue.parse("l", "-2").value == -2

    def test_parse_generic(self):
        assert ParamValue.parse("l", "generic").is_symbolic
        assert ParamValue.parse("l", "symbolic").is_symbolic

    def test_rejects_decimal(self):
        with pytest.raises(ValueError, match="decimal"):
            ParamValue.parse("l", "0.5")


class TestSolve:
    def test_unique_solution(self):
        # q^(3 + 2k) = 1 iff k = -3/2: no integer solution
        assert solve_qpow_one(Fraction(3), 2) is None
        assert solve_qpow_one(Fraction(4), 2) == -2

    def test_symbolic_base(self):
        assert solve_qpow_one(None, 2) is None

    def test_zero_step_rejected(self):
        with pytest.raises(ValueError):
            solve_qpow_one(Fraction(1), 0)

    def test_affine_base(self):
        assert affine_base(ParamValue("l", Fraction(1, 2)), 1) == Fraction(3, 2)
        assert affine_base(ParamValue("l"), 1) is None

    def test_minus_one_never(self):
        # q not a root of unity: q^t = -1 would square to q^(2t) = 1
        assert not qpow_minus_one_possible(Fraction(1, 2), 1)
        assert not qpow_minus_one_possible(None, 2)


class TestHypotheses:
    def test_rank3_always_passes(self):
        assert check_hypotheses(spec3()).passed
        assert check_hypotheses(spec3(1, 0)).passed
        assert check_hypotheses(spec3("1/2", "7/3")).passed

    def test_rank4_symbolic_passes(self):
        assert check_hypotheses(spec4()).passed

    def test_rank4_quarter_passes(self):
        assert check_hypotheses(spec4("1/4", "1/4", "1/4", "1/4")).passed

    def test_rank4_half_integer_l0_fails(self):
        rep = check_hypotheses(spec4(0, 0, "1/2", 0))
        assert not rep.passed
        bad = [h for h in rep.items if not h.satisfied]
        assert [h.description for h in bad] == \
            ["q^(4*l0+2k) != 1 for all k in Z"]
        assert bad[0].witness_k == -1

    def test_rank4_integer_l0_fails_both(self):
        rep = check_hypotheses(spec4(0, 0, 1, 0))
        bad = {h.description: h.witness_k for h in rep.items if not h.satisfied}
        assert bad == {"q^(2*l0+2k) != 1 for all k in Z": -1,
                       "q^(4*l0+2k) != 1 for all k in Z": -2}

    def test_json_shape(self):
        js = check_hypotheses(spec4(0, 0, "1/2", 0)).to_json()
        assert all(set(h) == {"hypothesis", "satisfied", "witness_k"}
                   for h in js)
