"""Kets, module vectors, and the rescaled generator actions.

Only the square-root-free (rescaled) actions are implemented here; they
are exact rational functions of q-powers.  The orthonormal-basis actions
with square roots live in the numeric backend (gtpattern).

A ket is a tuple of integer offsets against the anchor parameters:
(k_m,) for rank 3 and (k_l, k_m) for rank 4.  A module vector is a dict
ket -> RatFunc with no zero coefficients stored.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .qcond import ParamValue
from .qfield import (Exponent, RatFunc, RF_I, bracket_half_ratio, ex, qbracket,
                     qpow, rf_equal, sym)

Ket = tuple[int, ...]
ModVector = dict[Ket, RatFunc]


class Kind(enum.Enum):
    GENERIC = "generic"
    FINITE = "finite"


class Generator(enum.Enum):
    I21 = "I21"
    I32 = "I32"
    I43 = "I43"


class SingularParameterError(ValueError):
    """A bracket in a denominator vanishes at the given rational parameters."""

    def __init__(self, bracket: str):
        super().__init__(f"singular parameters: bracket [{bracket}] vanishes")
        self.bracket = bracket


_PARAM_NAMES = {3: ("l", "m0"), 4: ("p", "r", "l0", "m0")}


@dataclass(frozen=True)
class ModuleSpec:
    """A representation instance: rank, kind, and anchor parameters.

    negate_a is a test-harness hook that flips the sign of the m-raising
    coefficient; it exists only to give relation verification a negative
    control.
    """

    rank_n: int
    kind: Kind
    params: dict[str, ParamValue]
    negate_a: bool = False

    def __post_init__(self):
        if self.rank_n not in (3, 4):
            raise ValueError("rank_n must be 3 or 4")
        expected = _PARAM_NAMES[self.rank_n]
        if set(self.params) != set(expected):
            raise ValueError(
                f"rank {self.rank_n} needs parameters {expected}, "
                f"got {sorted(self.params)}")
        if self.kind is Kind.FINITE:
            self._check_finite_admissible()

    def _check_finite_admissible(self):
        if any(p.is_symbolic for p in self.params.values()):
            raise ValueError("finite highest-weight modules need rational "
                             "parameters")
        if self.rank_n == 3:
            l, m0 = self.params["l"].value, self.params["m0"].value
            if l < 0 or (2 * l).denominator != 1:
                raise ValueError("finite rank-3 module needs l in (1/2)Z>=0")
            if (l - m0).denominator != 1:
                raise ValueError("m0 must differ from l by an integer")
        else:
            p, r = self.params["p"].value, self.params["r"].value
            l0, m0 = self.params["l0"].value, self.params["m0"].value
            if (2 * p).denominator != 1 or (p - r).denominator != 1:
                raise ValueError("finite rank-4 weight needs p,r in (1/2)Z "
                                 "with p - r in Z")
            if p < abs(r):
                raise ValueError("finite rank-4 weight needs p >= |r|")
            if (p - l0).denominator != 1 or (p - m0).denominator != 1:
                raise ValueError("l0 and m0 must differ from p by integers")

    @property
    def cache_key(self):
        return (self.rank_n, self.kind, self.negate_a,
                tuple(sorted(self.params.items())))

    # -- exponent builders ------------------------------------------------

    def pexp(self, name: str, mult=1, shift=0) -> Exponent:
        """Exponent form of mult*param + shift, inlining rational values."""
        pv = self.params[name]
        if pv.is_symbolic:
            return sym(name, mult=mult, shift=shift)
        return ex(Fraction(shift) + Fraction(mult) * pv.value)

    def ell_exp(self, ket: Ket) -> Exponent:
        if self.rank_n == 3:
            return self.pexp("l")
        return self.pexp("l0", shift=ket[0])

    def m_exp(self, ket: Ket) -> Exponent:
        return self.pexp("m0", shift=ket[-1])

    def window_kets(self, K: int) -> Iterator[Ket]:
        rng = range(-K, K + 1)
        if self.rank_n == 3:
            kets: Iterable[Ket] = ((k,) for k in rng)
        else:
            kets = ((kl, km) for kl in rng for km in rng)
        for ket in kets:
            if self.kind is Kind.GENERIC or admissible(self, ket):
                yield ket


def admissible(spec: ModuleSpec, ket: Ket) -> bool:
    """Interlacing bounds for finite modules; generic kets are unrestricted."""
    if spec.kind is Kind.GENERIC:
        return True
    if spec.rank_n == 3:
        l = spec.params["l"].value
        m = spec.params["m0"].value + ket[0]
        return -l <= m <= l
    p, r = spec.params["p"].value, spec.params["r"].value
    l = spec.params["l0"].value + ket[0]
    m = spec.params["m0"].value + ket[1]
    return abs(r) <= l <= p and -l <= m <= l


# ---------------------------------------------------------------------------
# Coefficients


def _nonzero_bracket(e: Exponent, label: str) -> RatFunc:
    """Bracket destined for a denominator: raise if it vanishes."""
    b = qbracket(e)
    if b.is_zero:
        raise SingularParameterError(label)
    return b


def a_coeff(spec: ModuleSpec, ket: Ket) -> RatFunc:
    """m-raising coefficient: [m][m+1]/([2m][2m+2]) * [l+m+1][l-m], with
    the [m]/[2m]-type factors in closed 1/(q^m + q^-m) form so m = 0 and
    m = -1 need no special-casing."""
    l, m = spec.ell_exp(ket), spec.m_exp(ket)
    a = (bracket_half_ratio(m) * bracket_half_ratio(m + ex(1))
         * qbracket(l + m + ex(1)) * qbracket(l - m))
    return -a if spec.negate_a else a


def b_coeff(spec: ModuleSpec, ket: Ket) -> RatFunc:
    """l-raising coefficient for rank 4."""
    l, m = spec.ell_exp(ket), spec.m_exp(ket)
    p, r = spec.pexp("p"), spec.pexp("r")
    num = (qbracket(p + l + ex(2)) * qbracket(p - l)
           * qbracket(l + r + ex(1)) * qbracket(l - r + ex(1))
           * qbracket(l + m + ex(1)))
    if num.is_zero:
        return RatFunc.zero()
    den = (_nonzero_bracket(l + ex(1), "l+1") ** 2
           * _nonzero_bracket(l.scale(2) + ex(1), "2l+1")
           * _nonzero_bracket(l.scale(2) + ex(3), "2l+3"))
    return num / den


def c_coeff(spec: ModuleSpec, ket: Ket) -> RatFunc:
    """Diagonal coefficient of the rank-4 l-generator (without the factor i)."""
    l, m = spec.ell_exp(ket), spec.m_exp(ket)
    num = qbracket(spec.pexp("p", shift=1)) * qbracket(spec.pexp("r")) \
        * qbracket(m)
    if num.is_zero:
        return RatFunc.zero()
    den = _nonzero_bracket(l + ex(1), "l+1") * _nonzero_bracket(l, "l")
    return num / den


# ---------------------------------------------------------------------------
# Actions


def _add_term(vec: ModVector, ket: Ket, coeff: RatFunc) -> None:
    if coeff.is_zero:
        return
    cur = vec.get(ket)
    s = coeff if cur is None else cur + coeff
    if s.is_zero:
        vec.pop(ket, None)
    else:
        vec[ket] = s


def _shift(ket: Ket, dl: int, dm: int) -> Ket:
    if len(ket) == 1:
        return (ket[0] + dm,)
    return (ket[0] + dl, ket[1] + dm)


_ACT_CACHE: dict = {}


def act_ket(spec: ModuleSpec, g: Generator, ket: Ket) -> ModVector:
    """Exact image of a basis ket under one generator.  In finite modules,
    produced kets outside the interlacing bounds are dropped regardless of
    their coefficient.

    Results are cached; callers must treat the returned dict as read-only.
    """
    key = (spec.cache_key, g, ket)
    hit = _ACT_CACHE.get(key)
    if hit is not None:
        return hit
    out = _act_ket_uncached(spec, g, ket)
    if len(_ACT_CACHE) > 200_000:
        _ACT_CACHE.clear()
    _ACT_CACHE[key] = out
    return out


def _act_ket_uncached(spec: ModuleSpec, g: Generator, ket: Ket) -> ModVector:
    if g is Generator.I43 and spec.rank_n != 4:
        raise ValueError("I43 requires a rank-4 module")
    out: ModVector = {}
    if g is Generator.I21:
        _add_term(out, ket, RF_I * qbracket(spec.m_exp(ket)))
    elif g is Generator.I32:
        _add_term(out, _shift(ket, 0, 1), a_coeff(spec, ket))
        _add_term(out, _shift(ket, 0, -1), -RatFunc.one())
    else:
        l, m = spec.ell_exp(ket), spec.m_exp(ket)
        _add_term(out, _shift(ket, 1, 0), b_coeff(spec, ket))
        _add_term(out, _shift(ket, -1, 0), -qbracket(l - m))
        _add_term(out, ket, RF_I * c_coeff(spec, ket))
    if spec.kind is Kind.FINITE:
        out = {k: v for k, v in out.items() if admissible(spec, k)}
    return out


def act(spec: ModuleSpec, g: Generator, v: ModVector) -> ModVector:
    out: ModVector = {}
    for ket, coeff in v.items():
        for tk, tc in act_ket(spec, g, ket).items():
            _add_term(out, tk, coeff * tc)
    return out


def act_word(spec: ModuleSpec, word, v: ModVector) -> ModVector:
    """Apply a word of generators right-to-left (operator composition)."""
    for g in reversed(list(word)):
        v = act(spec, g, v)
    return v


def ket_vector(ket: Ket) -> ModVector:
    return {ket: RatFunc.one()}


def vec_add(a: ModVector, b: ModVector) -> ModVector:
    out = dict(a)
    for k, c in b.items():
        _add_term(out, k, c)
    return out


def vec_scale(s: RatFunc, v: ModVector) -> ModVector:
    out: ModVector = {}
    for k, c in v.items():
        _add_term(out, k, s * c)
    return out


def vec_sub(a: ModVector, b: ModVector) -> ModVector:
    return vec_add(a, vec_scale(-RatFunc.one(), b))


def vec_is_zero(v: ModVector) -> bool:
    return not v


def vec_equal(a: ModVector, b: ModVector) -> bool:
    return vec_is_zero(vec_sub(a, b))


def vec_str(v: ModVector) -> str:
    if not v:
        return "0"
    parts = []
    for ket in sorted(v):
        parts.append(f"({v[ket]})*|{','.join(map(str, ket))}>")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Relation verification


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    ket: Ket
    residual: ModVector

    @property
    def residual_zero(self) -> bool:
        return vec_is_zero(self.residual)

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "ket": list(self.ket),
            "residual_zero": self.residual_zero,
            "residual": None if self.residual_zero else vec_str(self.residual),
        }


@dataclass(frozen=True)
class RelationReport:
    checks: tuple[RelationCheck, ...]

    @property
    def all_zero(self) -> bool:
        return all(c.residual_zero for c in self.checks)

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.residual_zero]

    def to_json(self) -> list:
        return [c.to_json() for c in self.checks]


def _serre_residual(spec: ModuleSpec, lo: Generator, hi: Generator,
                    ket: Ket, flipped: bool) -> ModVector:
    # flipped False: hi^2 lo - [2] hi lo hi + lo hi^2 + lo   (rel with -lo)
    # flipped True:  lo^2 hi - [2] lo hi lo + hi lo^2 + hi
    a, b = (hi, lo) if not flipped else (lo, hi)
    v = ket_vector(ket)
    two = qbracket(ex(2))
    res = act_word(spec, [a, a, b], v)
    res = vec_add(res, vec_scale(-two, act_word(spec, [a, b, a], v)))
    res = vec_add(res, act_word(spec, [b, a, a], v))
    res = vec_add(res, act(spec, b, v))
    return res


def _commute_residual(spec: ModuleSpec, g1: Generator, g2: Generator,
                      ket: Ket) -> ModVector:
    v = ket_vector(ket)
    return vec_sub(act_word(spec, [g1, g2], v), act_word(spec, [g2, g1], v))


def verify_relations(spec: ModuleSpec, window: int) -> RelationReport:
    """Check every defining relation on every ket of the window, exactly."""
    if window < 1:
        raise ValueError("window must be >= 1")
    pairs = [(Generator.I21, Generator.I32, "I21/I32")]
    if spec.rank_n == 4:
        pairs.append((Generator.I32, Generator.I43, "I32/I43"))
    checks = []
    for ket in spec.window_kets(window):
        for lo, hi, tag in pairs:
            checks.append(RelationCheck(
                f"serre_upper[{tag}]", ket,
                _serre_residual(spec, lo, hi, ket, flipped=False)))
            checks.append(RelationCheck(
                f"serre_lower[{tag}]", ket,
                _serre_residual(spec, lo, hi, ket, flipped=True)))
        if spec.rank_n == 4:
            checks.append(RelationCheck(
                "commute[I21/I43]", ket,
                _commute_residual(spec, Generator.I21, Generator.I43, ket)))
    return RelationReport(tuple(checks))


def i21_eigenvalue(spec: ModuleSpec, ket: Ket) -> RatFunc:
    return RF_I * qbracket(spec.m_exp(ket))
