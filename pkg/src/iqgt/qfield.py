"""Exact arithmetic in Q(i)(q^(1/N), x_p^(1/N), ...).

The universal scalar of the package: rational functions in a formal
generator q and finitely many parameter generators, with rational
exponents on every generator and Gaussian-rational coefficients.

A parameter generator named ``l0`` stands for the formal power q^(l0);
exponent forms like l0 + m0 + 1 therefore turn into monomials
q^1 * l0^1 * m0^1.

Rational functions are kept in multiplicative factored form
(scalar * monomial * product of canonical polynomial factors with
integer powers).  Addition extracts the common multiplicative part,
expands only the residues, and refactors; equality is decided by
subtraction.  No polynomial GCD is ever needed because cancellation
happens at the level of shared factor keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

QGEN = "q"

RatLike = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------------------
# Gaussian rationals


class GRat:
    """Gaussian rational a + b*i with exact Fraction parts.

    Immutable by convention; arithmetic fast-paths the common purely-real
    case.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=Fraction(0), im=Fraction(0)):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *a):
        raise AttributeError("GRat is immutable")

    @staticmethod
    def of(re, im=0) -> "GRat":
        return GRat(_frac(re), _frac(im))

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __eq__(self, o) -> bool:
        return isinstance(o, GRat) and self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __lt__(self, o: "GRat") -> bool:
        return (self.re, self.im) < (o.re, o.im)

    def __gt__(self, o: "GRat") -> bool:
        return (self.re, self.im) > (o.re, o.im)

    def __add__(self, o: "GRat") -> "GRat":
        return GRat(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "GRat") -> "GRat":
        return GRat(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "GRat":
        return GRat(-self.re, -self.im)

    def __mul__(self, o: "GRat") -> "GRat":
        if not self.im and not o.im:
            return GRat(self.re * o.re)
        return GRat(self.re * o.re - self.im * o.im,
                    self.re * o.im + self.im * o.re)

    def inv(self) -> "GRat":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return GRat(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return GRat(self.re / n, -self.im / n)

    def __truediv__(self, o: "GRat") -> "GRat":
        return self * o.inv()

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        ima = abs(self.im)
        istr = "i" if ima == 1 else f"{ima}*i"
        return f"({self.re}{sign}{istr})"


GRAT_ZERO = GRat()
GRAT_ONE = GRat(Fraction(1))
GRAT_I = GRat(Fraction(0), Fraction(1))


# ---------------------------------------------------------------------------
# Exponent forms


@dataclass(frozen=True)
class Exponent:
    """An affine exponent c + sum_i r_i * (parameter_i), all exact rationals."""

    const: Fraction = Fraction(0)
    coeffs: tuple[tuple[str, Fraction], ...] = ()

    @staticmethod
    def of(const=0, **params) -> "Exponent":
        cs = tuple(sorted((k, _frac(v)) for k, v in params.items() if _frac(v)))
        return Exponent(_frac(const), cs)

    def coeff_map(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    def __add__(self, o: "Exponent") -> "Exponent":
        cs = dict(self.coeffs)
        for k, v in o.coeffs:
            cs[k] = cs.get(k, Fraction(0)) + v
        return Exponent(self.const + o.const,
                        tuple(sorted((k, v) for k, v in cs.items() if v)))

    def __neg__(self) -> "Exponent":
        return Exponent(-self.const, tuple((k, -v) for k, v in self.coeffs))

    def __sub__(self, o: "Exponent") -> "Exponent":
        return self + (-o)

    def scale(self, r) -> "Exponent":
        r = _frac(r)
        if not r:
            return Exponent()
        return Exponent(self.const * r, tuple((k, v * r) for k, v in self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.const) or bool(self.coeffs)

    def __str__(self) -> str:
        parts = []
        if self.const or not self.coeffs:
            parts.append(str(self.const))
        for k, v in self.coeffs:
            parts.append(f"{v}*{k}" if v != 1 else k)
        return " + ".join(parts)


def ex(const=0, **params) -> Exponent:
    return Exponent.of(const, **params)


def sym(name: str, mult=1, shift=0) -> Exponent:
    return Exponent.of(shift, **{name: mult})


# ---------------------------------------------------------------------------
# Monomials: canonical sorted tuple of (generator, rational exponent)

Monomial = tuple[tuple[str, Fraction], ...]

MONO_ONE: Monomial = ()


def _nexp(v):
    # integral exponents stored as int: cheaper hashing and arithmetic,
    # and hash/eq-compatible with Fraction
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def mono(d: Mapping[str, Fraction]) -> Monomial:
    return tuple(sorted((k, _nexp(v)) for k, v in d.items() if v))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ga, va = a[i]
        gb, vb = b[j]
        if ga == gb:
            v = va + vb
            if v:
                out.append((ga, _nexp(v)))
            i += 1
            j += 1
        elif ga < gb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_inv(a: Monomial) -> Monomial:
    return tuple((k, -v) for k, v in a)


def mono_from_exponent(e: Exponent) -> Monomial:
    d: dict[str, Fraction] = {}
    if e.const:
        d[QGEN] = e.const
    for k, v in e.coeffs:
        d[k] = d.get(k, Fraction(0)) + v
    return mono(d)


def _gen_order(g: str):
    # q sorts before every parameter generator
    return (g != QGEN, g)


def _mono_sort_key(m: Monomial, gens: list[str]):
    # lexicographic by exponent vector, q first then parameters by name;
    # descending exponents print first
    d = dict(m)
    return tuple(-d.get(g, Fraction(0)) for g in gens)


def _poly_gens(terms: Iterable[Monomial]) -> list[str]:
    gens: set[str] = set()
    for m in terms:
        gens.update(g for g, _ in m)
    return sorted(gens, key=_gen_order)


def mono_str(m: Monomial) -> str:
    parts = []
    for g, v in sorted(m, key=lambda t: _gen_order(t[0])):
        if v == 1:
            parts.append(g)
        elif v.denominator == 1 and v > 0:
            parts.append(f"{g}^{v}")
        else:
            parts.append(f"{g}^({v})")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# Sparse Laurent polynomials


class Poly:
    """Sparse Laurent polynomial: monomial -> Gaussian-rational coefficient."""

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms: Mapping[Monomial, GRat]):
        self.terms = {m: c for m, c in terms.items() if not c.is_zero}
        self._key = None
        self._hash = None

    @staticmethod
    def zero() -> "Poly":
        return _POLY_ZERO

    @staticmethod
    def one() -> "Poly":
        return _POLY_ONE

    @staticmethod
    def term(coef: GRat, m: Monomial = MONO_ONE) -> "Poly":
        return Poly({m: coef})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __eq__(self, o) -> bool:
        return isinstance(o, Poly) and self.key == o.key

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __add__(self, o: "Poly") -> "Poly":
        d = dict(self.terms)
        for m, c in o.terms.items():
            s = d.get(m, GRAT_ZERO) + c
            if s.is_zero:
                d.pop(m, None)
            else:
                d[m] = s
        return Poly(d)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, o: "Poly") -> "Poly":
        return self + (-o)

    def __mul__(self, o: "Poly") -> "Poly":
        d: dict[Monomial, GRat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = mono_mul(m1, m2)
                s = d.get(m, GRAT_ZERO) + c1 * c2
                if s.is_zero:
                    d.pop(m, None)
                else:
                    d[m] = s
        return Poly(d)

    def scale(self, coef: GRat, m: Monomial = MONO_ONE) -> "Poly":
        if coef.is_zero:
            return _POLY_ZERO
        return Poly({mono_mul(mm, m): c * coef for mm, c in self.terms.items()})

    def canonical(self) -> tuple[GRat, Monomial, "Poly"]:
        """Write self = scalar * monomial * p with p content-free, leading
        coefficient 1.  The leading term is the lexicographically largest
        monomial after content removal."""
        if self.is_zero:
            return GRAT_ZERO, MONO_ONE, _POLY_ZERO
        gens: set[str] = set()
        for m in self.terms:
            gens.update(g for g, _ in m)
        content: dict[str, Fraction] = {}
        for g in gens:
            content[g] = min(dict(m).get(g, Fraction(0)) for m in self.terms)
        cm = mono(content)
        inv = mono_inv(cm)
        shifted = {mono_mul(m, inv): c for m, c in self.terms.items()}
        lead = max(shifted)
        lc = shifted[lead]
        lci = lc.inv()
        p = Poly({m: c * lci for m, c in shifted.items()})
        return lc, cm, p

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        gens = _poly_gens(self.terms)
        out = []
        for m in sorted(self.terms, key=lambda mm: _mono_sort_key(mm, gens)):
            c = self.terms[m]
            cs = str(c)
            ms = mono_str(m)
            if not ms:
                out.append(cs)
            elif cs == "1":
                out.append(ms)
            elif cs == "-1":
                out.append(f"-{ms}")
            else:
                out.append(f"{cs}*{ms}")
        s = out[0]
        for t in out[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return s

    __repr__ = __str__


_POLY_ZERO = Poly({})
_POLY_ONE = Poly({MONO_ONE: GRAT_ONE})


# ---------------------------------------------------------------------------
# Rational functions in factored form


class RatFunc:
    """Element of the scalar field, kept maximally factored.

    value = coef * mono * prod(f ** e for f, e in factors)

    where every f is a canonical Poly (content-free, monic leading term,
    at least two terms) and e is a nonzero integer.  coef == 0 encodes
    the zero function.
    """

    __slots__ = ("coef", "mono", "factors")

    def __init__(self, coef: GRat, m: Monomial = MONO_ONE,
                 factors: tuple[tuple[Poly, int], ...] = ()):
        if coef.is_zero:
            m, factors = MONO_ONE, ()
        self.coef = coef
        self.mono = m
        self.factors = factors

    # -- constructors

    @staticmethod
    def zero() -> "RatFunc":
        return _RF_ZERO

    @staticmethod
    def one() -> "RatFunc":
        return _RF_ONE

    @staticmethod
    def from_grat(c: GRat) -> "RatFunc":
        return RatFunc(c)

    @staticmethod
    def from_rational(r) -> "RatFunc":
        return RatFunc(GRat.of(_frac(r)))

    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        c, m, pc = p.canonical()
        if c.is_zero:
            return _RF_ZERO
        if pc == _POLY_ONE:
            return RatFunc(c, m)
        return RatFunc(c, m, ((pc, 1),))

    # -- predicates

    @property
    def is_zero(self) -> bool:
        return self.coef.is_zero

    # -- arithmetic

    def __mul__(self, o) -> "RatFunc":
        o = _coerce(o)
        if self.is_zero or o.is_zero:
            return _RF_ZERO
        fs = dict(self.factors)
        for p, e in o.factors:
            ne = fs.get(p, 0) + e
            if ne:
                fs[p] = ne
            else:
                del fs[p]
        return RatFunc(self.coef * o.coef, mono_mul(self.mono, o.mono),
                       tuple(sorted(fs.items(), key=lambda t: t[0].key)))

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.coef.inv(), mono_inv(self.mono),
                       tuple((p, -e) for p, e in self.factors))

    def __truediv__(self, o) -> "RatFunc":
        return self * _coerce(o).inv()

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.coef, self.mono, self.factors)

    def __pow__(self, n: int) -> "RatFunc":
        if n == 0:
            return _RF_ONE
        if self.is_zero:
            if n < 0:
                raise ZeroDivisionError("0 ** negative")
            return _RF_ZERO
        c = self.coef
        acc = GRAT_ONE
        for _ in range(abs(n)):
            acc = acc * c
        if n < 0:
            acc = acc.inv()
        return RatFunc(acc, tuple((g, _nexp(v * n)) for g, v in self.mono),
                       tuple((p, e * n) for p, e in self.factors))

    def _expand(self) -> Poly:
        # requires all factor powers and monomial to be expandable; factor
        # powers must be nonnegative (monomial exponents may be anything)
        p = Poly.term(self.coef, self.mono)
        for f, e in self.factors:
            if e < 0:
                raise ValueError("cannot expand negative factor power")
            for _ in range(e):
                p = p * f
        return p

    def __add__(self, o) -> "RatFunc":
        o = _coerce(o)
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        fa, fb = dict(self.factors), dict(o.factors)
        common_f: dict[Poly, int] = {}
        for p in set(fa) | set(fb):
            e = min(fa.get(p, 0), fb.get(p, 0))
            if e:
                common_f[p] = e
        ma, mb = dict(self.mono), dict(o.mono)
        common_m: dict[str, Fraction] = {}
        for g in set(ma) | set(mb):
            e = min(ma.get(g, Fraction(0)), mb.get(g, Fraction(0)))
            if e:
                common_m[g] = e
        cmono = mono(common_m)
        cinv = mono_inv(cmono)

        def residue(rf: "RatFunc") -> Poly:
            fs = dict(rf.factors)
            for p, e in common_f.items():
                ne = fs.get(p, 0) - e
                if ne:
                    fs[p] = ne
                else:
                    fs.pop(p, None)
            res = RatFunc(rf.coef, mono_mul(rf.mono, cinv),
                          tuple(fs.items()))
            return res._expand()

        s = residue(self) + residue(o)
        if s.is_zero:
            return _RF_ZERO
        c, m, pc = s.canonical()
        fs = dict(common_f)
        if pc != _POLY_ONE:
            fs[pc] = fs.get(pc, 0) + 1
            if not fs[pc]:
                del fs[pc]
        return RatFunc(c, mono_mul(cmono, m),
                       tuple(sorted(fs.items(), key=lambda t: t[0].key)))

    __radd__ = __add__

    def __sub__(self, o) -> "RatFunc":
        return self + (-_coerce(o))

    def __rsub__(self, o) -> "RatFunc":
        return _coerce(o) + (-self)

    def __eq__(self, o) -> bool:
        if not isinstance(o, (RatFunc, int, Fraction)):
            return NotImplemented
        return (self - _coerce(o)).is_zero

    __hash__ = None  # mathematical equality is not hash-compatible

    # -- presentation

    def as_num_den(self) -> tuple[Poly, Poly]:
        """Expanded numerator/denominator pair; denominator collects the
        negative-power factors and is never the zero polynomial."""
        num = Poly.term(self.coef, self.mono)
        den = Poly.one()
        for f, e in self.factors:
            for _ in range(abs(e)):
                if e > 0:
                    num = num * f
                else:
                    den = den * f
        return num, den

    def __str__(self) -> str:
        num, den = self.as_num_den()
        if den == _POLY_ONE:
            return str(num)
        return f"({num})/({den})"

    __repr__ = __str__


_RF_ZERO = RatFunc(GRAT_ZERO)
_RF_ONE = RatFunc(GRAT_ONE)
RF_I = RatFunc(GRAT_I)


def _coerce(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_rational(x)
    raise TypeError(f"cannot coerce {x!r} to RatFunc")


# ---------------------------------------------------------------------------
# The q-number toolkit


@lru_cache(maxsize=None)
def qpow(e: Exponent) -> RatFunc:
    """The monomial q^e, with parameter generators standing for q^parameter."""
    return RatFunc(GRAT_ONE, mono_from_exponent(e))


@lru_cache(maxsize=None)
def qbracket(e: Exponent) -> RatFunc:
    """[e] = (q^e - q^-e) / (q - q^-1)."""
    num = qpow(e) - qpow(-e)
    if num.is_zero:
        return _RF_ZERO
    return num / (qpow(ex(1)) - qpow(ex(-1)))


@lru_cache(maxsize=None)
def bracket_half_ratio(e: Exponent) -> RatFunc:
    """[e]/[2e] in the closed form 1/(q^e + q^-e); equals 1/2 at e = 0."""
    return (qpow(e) + qpow(-e)).inv()


# spec-named operation aliases

def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    return a + b


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def rf_neg(a: RatFunc) -> RatFunc:
    return -a


def rf_div(a: RatFunc, b: RatFunc) -> RatFunc:
    return a / b


def rf_is_zero(a: RatFunc) -> bool:
    return a.is_zero


def rf_equal(a: RatFunc, b: RatFunc) -> bool:
    return (a - b).is_zero


def render(rf: RatFunc) -> str:
    return str(rf)


# ---------------------------------------------------------------------------
# Numeric evaluation (floating backend and cross-check oracles)


def mono_numeric(m: Monomial, q_value: complex,
                 params: Mapping[str, Fraction] = {}) -> complex:
    """q_value raised to the exponent the monomial encodes, with parameter
    generators substituted by their rational values."""
    t = Fraction(0)
    for g, v in m:
        t += _frac(v) if g == QGEN else _frac(v) * _frac(params[g])
    if t.denominator == 1:
        return q_value ** int(t)
    return q_value ** float(t)


def poly_numeric(p: Poly, q_value: complex,
                 params: Mapping[str, Fraction] = {}) -> complex:
    out = 0j
    for m, c in p.terms.items():
        out += complex(c.re, c.im) * mono_numeric(m, q_value, params)
    return out


def rf_numeric(rf: RatFunc, q_value: complex,
               params: Mapping[str, Fraction] = {}) -> complex:
    """Evaluate a RatFunc at a concrete q and concrete rational parameters."""
    out = complex(rf.coef.re, rf.coef.im) * mono_numeric(rf.mono, q_value,
                                                         params)
    for p, e in rf.factors:
        out *= poly_numeric(p, q_value, params) ** e
    return out


# ---------------------------------------------------------------------------
# Parser for the canonical text format (test fixtures)
#
# Grammar (precedence low to high): sum -> product -> power -> atom.
# Atoms: integers, i, generator names, parenthesized sums.  '/' is ordinary
# division, so both 3/2 and (num)/(den) parse naturally; exponents must
# evaluate to constant rationals.


class ParseError(ValueError):
    pass


def _tokenize(s: str):
    toks = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            toks.append(("num", s[i:j]))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            toks.append(("name", s[i:j]))
            i = j
        elif c in "+-*/^()":
            toks.append((c, c))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}")
    toks.append(("end", ""))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse_sum(self) -> RatFunc:
        neg = False
        if self.peek() in "+-":
            neg = self.next()[0] == "-"
        v = self.parse_product()
        if neg:
            v = -v
        while self.peek() in "+-":
            op = self.next()[0]
            rhs = self.parse_product()
            v = v + rhs if op == "+" else v - rhs
        return v

    def parse_product(self) -> RatFunc:
        v = self.parse_power()
        while self.peek() in "*/":
            op = self.next()[0]
            rhs = self.parse_power()
            v = v * rhs if op == "*" else v / rhs
        return v

    def parse_power(self) -> RatFunc:
        base = self.parse_atom()
        if self.peek() != "^":
            return base
        self.next()
        expo = self.parse_atom()
        r = _constant_rational(expo)
        if r.denominator == 1:
            return base ** int(r)
        if base.factors or base.coef != GRAT_ONE:
            raise ParseError("fractional exponent on a non-monomial base")
        return RatFunc(GRAT_ONE, tuple((g, _nexp(v * r)) for g, v in base.mono))

    def parse_atom(self) -> RatFunc:
        kind, text = self.next()
        if kind == "num":
            return RatFunc.from_rational(int(text))
        if kind == "name":
            if text == "i":
                return RF_I
            return RatFunc(GRAT_ONE, mono({text: Fraction(1)}))
        if kind == "(":
            v = self.parse_sum()
            if self.next()[0] != ")":
                raise ParseError("expected ')'")
            return v
        if kind == "-":
            return -self.parse_atom()
        raise ParseError(f"unexpected token {text!r}")


def _constant_rational(rf: RatFunc) -> Fraction:
    if rf.mono or rf.factors or rf.coef.im:
        raise ParseError("exponent is not a constant rational")
    return rf.coef.re


def parse(s: str) -> RatFunc:
    p = _Parser(_tokenize(s))
    v = p.parse_sum()
    if p.peek() != "end":
        raise ParseError("trailing input")
    return v
