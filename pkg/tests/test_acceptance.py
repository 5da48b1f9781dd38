"""Acceptance gate: one test per shipped guarantee, one PASS/FAIL line each.

Run with -s to see the lines as they happen; they also appear in captured
output on failure.
"""

import random
import time
from dataclasses import replace
from fractions import Fraction

from iqgt.casimir import act_casimir, verify_casimir, verify_s_presentation
from iqgt.gtpattern import (a_squared, b_squared, enumerate_patterns,
                            numeric_irrep, pattern_from_tuple, rescaling_match,
                            tuple_length, validate_pattern)
from iqgt.qfield import (bracket_half_ratio, ex, qbracket, qpow, rf_equal,
                         sym)
from iqgt.repcore import (Kind, ket_vector, vec_equal, vec_scale,
                          verify_relations)
from iqgt.structure import Constraint, Region, analyze, verify_series

from conftest import spec3, spec4

F = Fraction


def record(num: int, ok: bool) -> None:
    print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'}")
    assert ok


def test_criterion_1_relation_certification():
    t0 = time.monotonic()
    rep3 = verify_relations(spec3(), 3)
    rep4 = verify_relations(spec4(), 2)
    elapsed = time.monotonic() - t0
    ok = rep3.all_zero and rep4.all_zero and elapsed < 120
    record(1, ok)


def test_criterion_2_casimir():
    rep3 = verify_casimir(spec3(), 3)
    lam = qbracket(sym("l")) ** 2 + qpow(sym("l", shift=1)) * qbracket(sym("l"))
    v = ket_vector((0,))
    scalar_ok = vec_equal(act_casimir(spec3(), v), vec_scale(lam, v))
    eig_ok = len(rep3.eigenvalues) == 1 and rep3.eigenvalues[0][0] == 0
    rep4 = verify_casimir(spec4(), 2)
    # one eigenvalue per l-offset and nothing finer
    offsets_ok = [k for k, _ in rep4.eigenvalues] == [-2, -1, 0, 1, 2]
    record(2, rep3.ok and eig_ok and rep4.ok and offsets_ok and scalar_ok)


def test_criterion_3_s_presentation():
    rep = verify_s_presentation(spec3(), 2)
    record(3, rep.relations_ok and rep.molev_ok)


def test_criterion_4_analysis_examples():
    checks = []
    t0 = time.monotonic()
    r = analyze(spec3("1/2", 0))
    checks.append(r.irreducible and r.length == 1)
    r = analyze(spec3(1, 0))
    checks.append(r.length == 3 and [e["offset"] for e in r.s_set] == [-2, 1])
    r = analyze(spec4(0, 0, "1/4", 0))
    checks.append(r.irreducible)
    r = analyze(spec4("1/4", "1/4", "1/4", "1/4"))
    checks.append(r.length == 6 and r.case == "Case2"
                  and {e["l"] for e in r.r_set} == {"1/4", "-3/4"})
    elapsed = time.monotonic() - t0
    record(4, all(checks) and elapsed < 4)  # well under 1 s each


def test_criterion_5_oracle_consistency():
    s3 = spec3(1, 0)
    rep3 = analyze(s3)
    ok_3 = verify_series(s3, rep3, 6)
    s4 = spec4("1/4", "1/4", "1/4", "1/4")
    rep4 = analyze(s4)
    ok_4 = verify_series(s4, rep4, 4)
    bad_layer = replace(rep3.series[0],
                        region=Region.of(Constraint(0, 1,
                                                    rep3.series[0]
                                                    .region.clauses[0][0].c
                                                    + 1)))
    corrupted = replace(rep3, series=(bad_layer,) + rep3.series[1:])
    caught = not verify_series(s3, corrupted, 6)
    record(5, ok_3 and ok_4 and caught)


def test_criterion_6_dimensions_and_finite_modules():
    ok = True
    for twol in range(0, 9):
        l = F(twol, 2)
        ok &= len(enumerate_patterns(3, [l])) == twol + 1
        if twol:
            s = spec3(l, l, kind=Kind.FINITE)
            ok &= verify_relations(s, twol + 1).all_zero
    for twop in range(0, 7):
        p = F(twop, 2)
        for tworaw in range(-twop, twop + 1, 2):
            r = F(tworaw, 2)
            want = sum(int(2 * l) + 1
                       for l in [abs(r) + k
                                 for k in range(int(p - abs(r)) + 1)])
            ok &= len(enumerate_patterns(4, [p, r])) == want
            s = spec4(p, r, p, p, kind=Kind.FINITE)
            ok &= verify_relations(s, twop + 1).all_zero
    record(6, ok)


def test_criterion_7_coefficient_identities():
    lm, mm = sym("l"), sym("m")
    a_ref = (bracket_half_ratio(mm) * bracket_half_ratio(mm + ex(1))
             * qbracket(lm + mm + ex(1)) * qbracket(lm - mm))
    id_a = rf_equal(a_squared({3: [lm], 2: [mm]}, 1, 1), a_ref)
    pp, rr = sym("p"), sym("r")
    b_ref = (qbracket(pp + lm + ex(2)) * qbracket(pp - lm)
             * qbracket(lm + rr + ex(1)) * qbracket(lm - rr + ex(1))
             * qbracket(lm + mm + ex(1))
             / (qbracket(lm + ex(1)) ** 2 * qbracket(lm.scale(2) + ex(1))
                * qbracket(lm.scale(2) + ex(3))))
    id_b = rf_equal(b_squared({4: [pp, rr], 3: [lm], 2: [mm]}, 1, 1)
                    / qbracket(lm - mm + ex(1)), b_ref)
    rng = random.Random(20260824)
    id_sum = True
    for _ in range(100):
        a = F(rng.randint(-12, 12), rng.randint(1, 4))
        b = F(rng.randint(-12, 12), rng.randint(1, 4))
        lhs = qbracket(ex(a + b))
        rhs = qpow(ex(a)) * qbracket(ex(b)) + qpow(ex(-b)) * qbracket(ex(a))
        id_sum &= rf_equal(lhs, rhs)
    record(7, id_a and id_b and id_sum)


def test_criterion_8_numeric_backend():
    q = 1.2
    ok = True
    for twol in range(0, 5):
        ok &= numeric_irrep(3, [F(twol, 2)], q).max_residual < 1e-10
    for twop in range(0, 5):
        p = F(twop, 2)
        for tworaw in range(-twop, twop + 1, 2):
            ok &= numeric_irrep(4, [p, F(tworaw, 2)], q).max_residual < 1e-10
    ok &= numeric_irrep(5, [1, 0], q).max_residual < 1e-8
    for n, w in [(3, [2]), (3, [F(3, 2)]), (4, [1, 0]), (4, [2, 1]),
                 (4, [F(3, 2), F(1, 2)])]:
        ok &= rescaling_match(n, w, q) < 1e-9
    record(8, ok)


def test_criterion_9_pattern_algorithm():
    pat = pattern_from_tuple(8, list(range(16, 0, -1)))
    layout_ok = pat.rows == ((16, 13, 8, 1), (15, 12, 7), (14, 9, 2),
                             (11, 6), (10, 3), (5,), (4,))
    rng = random.Random(97)
    random_ok = True
    for _ in range(200):
        n = rng.randint(2, 9)
        half = rng.random() < 0.5
        k = tuple_length(n)
        vals = sorted((F(2 * rng.randint(0, 9) + 1, 2) if half
                       else F(rng.randint(0, 9)) for _ in range(k)),
                      reverse=True)
        random_ok &= validate_pattern(n, pattern_from_tuple(n, vals))[0]
    record(9, layout_ok and random_ok)
