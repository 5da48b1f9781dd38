"""Triangular branching patterns for the twisted q-deformed orthogonal
algebras at any rank: validation, the tuple-to-pattern filling algorithm,
basis enumeration, exact squared action coefficients, and a floating-point
backend that assembles and checks finite irreducible representations.

A pattern stores rows top to bottom for algebra indices n down to 2; row i
has floor(i/2) entries, all integers or all half-odd-integers.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .qfield import (Exponent, RatFunc, bracket_half_ratio, ex, qbracket,
                     rf_numeric)
from .qcond import ParamValue
from .repcore import (Generator, Kind, ModuleSpec, SingularParameterError,
                      act_ket)

Entry = Union[Fraction, Exponent]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def row_lengths(n: int) -> list[int]:
    if n < 2:
        raise ValueError("n must be >= 2")
    return [i // 2 for i in range(n, 1, -1)]


@dataclass(frozen=True)
class GTPattern:
    """rows[0] is row n (the highest weight), rows[-1] is row 2."""

    n: int
    rows: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def of(n: int, rows: Sequence[Sequence]) -> "GTPattern":
        rs = tuple(tuple(_frac(x) for x in row) for row in rows)
        if [len(r) for r in rs] != row_lengths(n):
            raise ValueError(
                f"rank {n} needs row lengths {row_lengths(n)}, "
                f"got {[len(r) for r in rs]}")
        return GTPattern(n, rs)

    def row(self, i: int) -> tuple[Fraction, ...]:
        """Entries of algebra row i (2 <= i <= n)."""
        return self.rows[self.n - i]

    def entry(self, i: int, j: int) -> Fraction:
        """m_{i,j}, 1-based j."""
        return self.row(i)[j - 1]

    def replace(self, i: int, j: int, value: Fraction) -> "GTPattern":
        rows = list(self.rows)
        row = list(rows[self.n - i])
        row[j - 1] = value
        rows[self.n - i] = tuple(row)
        return GTPattern(self.n, tuple(rows))

    def bump(self, i: int, j: int, delta: int) -> "GTPattern":
        return self.replace(i, j, self.entry(i, j) + delta)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)

    @staticmethod
    def from_text(n: int, text: str) -> "GTPattern":
        rows = [[Fraction(t) for t in line.split()]
                for line in text.strip().splitlines() if line.strip()]
        return GTPattern.of(n, rows)

    def to_json(self) -> dict:
        return {"n": self.n,
                "rows": [[str(x) for x in row] for row in self.rows]}


def l_label(i: int, j: int, m: Entry) -> Entry:
    """Shifted label for entry m_{i,j}: rows 2s get m+s-j, rows 2s+1 get
    m+s-j+1."""
    s = i // 2
    shift = Fraction(s - j) if i % 2 == 0 else Fraction(s - j + 1)
    if isinstance(m, Exponent):
        return m + ex(shift)
    return m + shift


def l_labels(pattern: GTPattern, i: int) -> list[Fraction]:
    return [l_label(i, j, m) for j, m in enumerate(pattern.row(i), start=1)]


def validate_pattern(n: int, pattern: GTPattern) -> tuple[bool, list[str]]:
    """All interlacing inequalities, with a description of each violation.

    Top row: decreasing, last entry >= 0 for odd n (even n allows a
    negative last entry bounded by its neighbor).  Between rows: the even
    row under an odd row interlaces down to minus the last odd entry; the
    odd row under an even row stays above |last even entry|.
    """
    if pattern.n != n:
        return False, [f"pattern rank {pattern.n} != {n}"]
    bad: list[str] = []
    frac_classes = {(2 * x).numerator % 2 for row in pattern.rows for x in row}
    if len(frac_classes) > 1:
        bad.append("entries mix integers and half-odd-integers")
    top = pattern.row(n)
    for j in range(len(top) - 1):
        bound = top[j + 1] if (n % 2 or j + 2 < len(top)) else abs(top[j + 1])
        if top[j] < bound:
            bad.append(f"top row: m[{n},{j + 1}] < m[{n},{j + 2}]")
    if n % 2 and top and top[-1] < 0:
        bad.append(f"top row: m[{n},{len(top)}] < 0")
    for i in range(n, 2, -1):
        hi, lo = pattern.row(i), pattern.row(i - 1)
        if i % 2:  # odd row i = 2p+1 over even row 2p
            p = i // 2
            for j in range(1, p + 1):
                if lo[j - 1] > hi[j - 1]:
                    bad.append(f"m[{i - 1},{j}] > m[{i},{j}]")
                low = hi[j] if j < p else -hi[p - 1]
                if lo[j - 1] < low:
                    bad.append(f"m[{i - 1},{j}] below lower bound")
        else:  # even row i = 2p over odd row 2p-1
            p = i // 2
            for j in range(1, p):
                if lo[j - 1] > hi[j - 1]:
                    bad.append(f"m[{i - 1},{j}] > m[{i},{j}]")
                low = hi[j] if j < p - 1 else abs(hi[p - 1])
                if lo[j - 1] < low:
                    bad.append(f"m[{i - 1},{j}] below lower bound")
    return not bad, bad


# ---------------------------------------------------------------------------
# Tuple-to-pattern algorithm


def _even_assignments(n: int) -> list[tuple[int, int]]:
    """Assignment order of the even-rank filling algorithm: the sequence of
    (row, column) targets consuming a_1, a_2, ... in order."""
    k = n // 2
    out = [(n, 1)]
    for j in range(1, k):
        for i in range(1, j + 1):
            out.append((n - 1 - 2 * (i - 1), j - (i - 1)))
        for i in range(1, j + 2):
            out.append((n - 2 * j + 2 * (i - 1), 1 + (i - 1)))
    return out


def tuple_length(n: int) -> int:
    k = n // 2
    return k * k + (k if n % 2 else 0)


def pattern_from_tuple(n: int, a: Sequence) -> GTPattern:
    """Fill a valid pattern whose entries are exactly the given weakly
    decreasing nonnegative tuple.

    Even rank follows the assignment schedule directly.  Odd rank builds
    the rank-(n+1) pattern, re-placing each value that lands in the added
    top row (and zeroing its last entry), then strips that row.
    """
    a = [_frac(x) for x in a]
    if len(a) != tuple_length(n):
        raise ValueError(f"rank {n} needs {tuple_length(n)} values, "
                         f"got {len(a)}")
    if any(x < 0 for x in a) or any(a[t] < a[t + 1] for t in range(len(a) - 1)):
        raise ValueError("values must be weakly decreasing and nonnegative")
    if len({(2 * x).numerator % 2 for x in a}) > 1:
        raise ValueError("values must not mix integers and half-odd-integers")
    if n % 2 == 0:
        cells = {target: v for target, v in zip(_even_assignments(n), a)}
        rows = [tuple(cells[(i, j)] for j in range(1, i // 2 + 1))
                for i in range(n, 1, -1)]
        return GTPattern.of(n, rows)
    big, k = n + 1, n // 2
    cells = {}
    idx = 0
    for target in _even_assignments(big):
        row, col = target
        if row == big and col == k + 1:
            cells[target] = Fraction(0)
        elif row == big:
            cells[target] = a[idx]  # consumed again by the next target
        else:
            cells[target] = a[idx]
            idx += 1
    rows = [tuple(cells[(i, j)] for j in range(1, i // 2 + 1))
            for i in range(n, 1, -1)]
    return GTPattern.of(n, rows)


# ---------------------------------------------------------------------------
# Enumeration


def _steps(lo: Fraction, hi: Fraction) -> Iterator[Fraction]:
    x = lo
    while x <= hi:
        yield x
        x += 1


def _row_choices(hi_row: tuple[Fraction, ...], i: int) -> Iterator[tuple]:
    """All rows i-1 interlacing below row i."""
    if i % 2:  # row 2p under row 2p+1
        p = i // 2
        ranges = [( (hi_row[j] if j < p else -hi_row[p - 1]), hi_row[j - 1])
                  for j in range(1, p + 1)]
    else:  # row 2p-1 under row 2p
        p = i // 2
        ranges = [((hi_row[j] if j < p - 1 else abs(hi_row[p - 1])),
                   hi_row[j - 1]) for j in range(1, p)]

    def rec(j: int, prev: Optional[Fraction]):
        if j == len(ranges):
            yield ()
            return
        lo, hi = ranges[j]
        if prev is not None:
            hi = min(hi, prev)
        for x in _steps(lo, hi):
            for rest in rec(j + 1, x):
                yield (x,) + rest

    yield from rec(0, None)


def enumerate_patterns(n: int, highest_weight: Sequence) -> list[GTPattern]:
    """Every valid pattern with the given top row, in lexicographic order."""
    top = tuple(_frac(x) for x in highest_weight)
    if not _top_row_ok(n, top):
        raise ValueError(f"invalid highest weight {highest_weight} for rank {n}")

    def build(i: int, rows: tuple) -> Iterator[tuple]:
        if i == 2:
            yield rows
            return
        for nxt in _row_choices(rows[-1], i):
            yield from build(i - 1, rows + (nxt,))

    return [GTPattern(n, rows) for rows in build(n, (top,))]


def _top_row_ok(n: int, top: tuple[Fraction, ...]) -> bool:
    if len(top) != n // 2:
        return False
    if len({(2 * x).numerator % 2 for x in top}) > 1:
        return False
    for j in range(len(top) - 1):
        bound = top[j + 1] if (n % 2 or j + 2 < len(top)) else abs(top[j + 1])
        if top[j] < bound:
            return False
    return not (n % 2 and top and top[-1] < 0)


# ---------------------------------------------------------------------------
# Exact squared coefficients


def _qbr(x: Entry) -> RatFunc:
    return qbracket(x if isinstance(x, Exponent) else ex(x))


def _qbr_nz(x: Entry) -> RatFunc:
    """Bracket headed for a denominator: name it if it vanishes."""
    b = _qbr(x)
    if b.is_zero:
        raise SingularParameterError(str(x))
    return b


def _abs_entry(x: Entry) -> Entry:
    # Exponent arguments keep their sign: the squared coefficient is
    # insensitive to it in the rank-3/4 identifications where symbolic
    # labels are used.
    return abs(x) if isinstance(x, Fraction) else x


def _labels(pattern_or_rows, i: int) -> list[Entry]:
    if isinstance(pattern_or_rows, GTPattern):
        return l_labels(pattern_or_rows, i)
    row = pattern_or_rows[i]
    return [l_label(i, j, m) for j, m in enumerate(row, start=1)]


def a_squared(pattern, p: int, j: int) -> RatFunc:
    """Squared raising coefficient of the odd generator indexed 2p+1,2p
    on entry m_{2p,j}.

    Accepts a GTPattern or a dict row-index -> entry list; entries may be
    symbolic Exponents for identity checks.
    """
    l = _labels(pattern, 2 * p + 1)
    lp = _labels(pattern, 2 * p)
    lpp = _labels(pattern, 2 * p - 1) if p >= 2 else []
    lj = lp[j - 1]
    out = bracket_half_ratio(lj if isinstance(lj, Exponent) else ex(lj)) \
        * bracket_half_ratio((lj + ex(1)) if isinstance(lj, Exponent)
                             else ex(lj + 1))
    for x in l:
        out = out * _qbr(_add(x, lj)) * _qbr(_abs_entry(_sub(x, lj, 1)))
    for x in lpp:
        out = out * _qbr(_add(x, lj)) * _qbr(_abs_entry(_sub(x, lj, 1)))
    for r, x in enumerate(lp, start=1):
        if r == j:
            continue
        den = (_qbr_nz(_add(x, lj)) * _qbr_nz(_abs_entry(_sub(x, lj, 0)))
               * _qbr_nz(_add(x, lj, 1)) * _qbr_nz(_abs_entry(_sub(x, lj, 1))))
        out = out / den
    return out


def b_squared(pattern, p: int, j: int) -> RatFunc:
    """Squared raising coefficient of the even generator indexed 2p+2,2p+1
    on entry m_{2p+1,j}."""
    l = _labels(pattern, 2 * p + 2)
    lp = _labels(pattern, 2 * p + 1)
    lpp = _labels(pattern, 2 * p) if p >= 1 else []
    lj = lp[j - 1]
    out = RatFunc.one()
    for x in l:
        out = out * _qbr(_add(x, lj)) * _qbr(_abs_entry(_sub(x, lj, 0)))
    for x in lpp:
        out = out * _qbr(_add(x, lj)) * _qbr(_abs_entry(_sub(x, lj, 0)))
    for r, x in enumerate(lp, start=1):
        if r == j:
            continue
        den = (_qbr_nz(_add(x, lj)) * _qbr_nz(_abs_entry(_sub(x, lj, 0)))
               * _qbr_nz(_add(x, lj, -1)) * _qbr_nz(_abs_entry(_sub(x, lj, 1))))
        out = out / den
    ljx = lj if isinstance(lj, Exponent) else ex(lj)
    out = out / (_qbr_nz(ljx) ** 2 * _qbr_nz(ljx + ljx + ex(1))
                 * _qbr_nz(ljx + ljx - ex(1)))
    return out


def _add(x: Entry, y: Entry, c: int = 0) -> Entry:
    if isinstance(x, Exponent) or isinstance(y, Exponent):
        xe = x if isinstance(x, Exponent) else ex(x)
        ye = y if isinstance(y, Exponent) else ex(y)
        return xe + ye + ex(c)
    return x + y + c


def _sub(x: Entry, y: Entry, c: int) -> Entry:
    if isinstance(x, Exponent) or isinstance(y, Exponent):
        xe = x if isinstance(x, Exponent) else ex(x)
        ye = y if isinstance(y, Exponent) else ex(y)
        return xe - ye - ex(c)
    return x - y - c


def coeff_squares(pattern, p: int, j: int) -> tuple[RatFunc, RatFunc]:
    """(squared odd-generator coefficient, squared even-generator
    coefficient) at level p, entry j."""
    return a_squared(pattern, p, j), b_squared(pattern, p, j)


# ---------------------------------------------------------------------------
# Numeric backend


def _nbr(q: complex, x: Fraction) -> complex:
    if x == 0:
        return 0j
    t = float(x)
    return (q ** t - q ** (-t)) / (q - 1 / q)


def _num_a(q: complex, pattern: GTPattern, p: int, j: int) -> complex:
    l = l_labels(pattern, 2 * p + 1)
    lp = l_labels(pattern, 2 * p)
    lpp = l_labels(pattern, 2 * p - 1) if p >= 2 else []
    lj = lp[j - 1]
    num = 1 / ((q ** float(lj) + q ** float(-lj))
               * (q ** float(lj + 1) + q ** float(-lj - 1)))
    for x in l:
        num *= _nbr(q, x + lj) * _nbr(q, abs(x - lj - 1))
    for x in lpp:
        num *= _nbr(q, x + lj) * _nbr(q, abs(x - lj - 1))
    den = 1 + 0j
    for r, x in enumerate(lp, start=1):
        if r == j:
            continue
        den *= (_nbr(q, x + lj) * _nbr(q, abs(x - lj))
                * _nbr(q, x + lj + 1) * _nbr(q, abs(x - lj - 1)))
    return cmath.sqrt(num / den)


def _num_b(q: complex, pattern: GTPattern, p: int, j: int) -> complex:
    l = l_labels(pattern, 2 * p + 2)
    lp = l_labels(pattern, 2 * p + 1)
    lpp = l_labels(pattern, 2 * p) if p >= 1 else []
    lj = lp[j - 1]
    num = 1 + 0j
    for x in l:
        num *= _nbr(q, x + lj) * _nbr(q, abs(x - lj))
    for x in lpp:
        num *= _nbr(q, x + lj) * _nbr(q, abs(x - lj))
    den = _nbr(q, lj) ** 2 * _nbr(q, 2 * lj + 1) * _nbr(q, 2 * lj - 1)
    for r, x in enumerate(lp, start=1):
        if r == j:
            continue
        den *= (_nbr(q, x + lj) * _nbr(q, abs(x - lj))
                * _nbr(q, x + lj - 1) * _nbr(q, abs(x - lj - 1)))
    return cmath.sqrt(num / den)


def _num_diag(q: complex, pattern: GTPattern, p: int) -> complex:
    """Diagonal coefficient (without i) of the even generator 2p+2,2p+1;
    zero whenever a numerator label vanishes, which covers the boundary
    where a denominator label would vanish too."""
    num_args = l_labels(pattern, 2 * p + 2) + \
        (l_labels(pattern, 2 * p) if p >= 1 else [])
    if any(x == 0 for x in num_args):
        return 0j
    out = 1 + 0j
    for x in num_args:
        out *= _nbr(q, x)
    if p >= 1:
        for x in l_labels(pattern, 2 * p + 1):
            out /= _nbr(q, x) * _nbr(q, x - 1)
    return out


@dataclass
class NumericIrrep:
    n: int
    weight: tuple[Fraction, ...]
    q_value: complex
    basis: list[GTPattern]
    matrices: dict[str, np.ndarray]  # key "I32" etc.
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    def matrices_json(self) -> dict:
        return {name: [[[z.real, z.imag] for z in row] for row in mat]
                for name, mat in self.matrices.items()}


def numeric_irrep(n: int, highest_weight: Sequence,
                  q_value: complex) -> NumericIrrep:
    """Assemble all generator matrices on the enumerated pattern basis and
    measure the max-norm residual of every defining relation."""
    q = complex(q_value)
    if abs(abs(q) - 1) < 1e-3:
        warnings.warn("q on or near the unit circle: root-of-unity "
                      "conditioning, residuals may be meaningless")
    basis = enumerate_patterns(n, highest_weight)
    index = {pat.rows: t for t, pat in enumerate(basis)}
    dim = len(basis)
    mats: dict[str, np.ndarray] = {}
    for i in range(2, n + 1):
        M = np.zeros((dim, dim), dtype=complex)
        if i % 2:  # odd generator: raises/lowers entries of row i-1 = 2p
            p = i // 2
            for t, pat in enumerate(basis):
                for j in range(1, p + 1):
                    up = pat.bump(2 * p, j, +1)
                    if up.rows in index:
                        M[index[up.rows], t] += _num_a(q, pat, p, j)
                    dn = pat.bump(2 * p, j, -1)
                    if dn.rows in index:
                        M[index[dn.rows], t] -= _num_a(q, dn, p, j)
        else:  # even generator: acts on row i-1 = 2p+1, plus diagonal
            p = i // 2 - 1
            for t, pat in enumerate(basis):
                for j in range(1, p + 1):
                    up = pat.bump(2 * p + 1, j, +1)
                    if up.rows in index:
                        M[index[up.rows], t] += _num_b(q, pat, p, j)
                    dn = pat.bump(2 * p + 1, j, -1)
                    if dn.rows in index:
                        M[index[dn.rows], t] -= _num_b(q, dn, p, j)
                M[t, t] += 1j * _num_diag(q, pat, p)
        mats[f"I{i}{i - 1}"] = M

    two = _nbr(q, Fraction(2))
    residuals: dict[str, float] = {}
    names = [f"I{i}{i - 1}" for i in range(2, n + 1)]
    for s in range(len(names)):
        for t in range(s + 1, len(names)):
            A, B = mats[names[t]], mats[names[s]]
            pair = f"{names[s]}/{names[t]}"
            if t - s > 1:
                residuals[f"commute[{pair}]"] = float(
                    np.abs(A @ B - B @ A).max())
                continue
            residuals[f"serre_upper[{pair}]"] = float(np.abs(
                A @ A @ B - two * (A @ B @ A) + B @ A @ A + B).max())
            residuals[f"serre_lower[{pair}]"] = float(np.abs(
                B @ B @ A - two * (B @ A @ B) + A @ B @ B + A).max())
    return NumericIrrep(n, tuple(_frac(x) for x in highest_weight), q,
                        basis, mats, residuals)


# ---------------------------------------------------------------------------
# Cross-check against the exact rescaled engine (ranks 3 and 4)


def rescaling_match(n: int, highest_weight: Sequence, q_value: complex) -> float:
    """Max entrywise deviation between the exact finite-module matrices
    evaluated at q_value and the diagonal conjugation of the numeric
    orthonormal matrices.

    The conjugating diagonal is built from the square-root coefficients:
    each raising step contributes one factor, so the two bases differ by
    exactly this rescaling.
    """
    if n not in (3, 4):
        raise ValueError("exact engine covers ranks 3 and 4 only")
    q = complex(q_value)
    w = [_frac(x) for x in highest_weight]
    rep = numeric_irrep(n, w, q)
    if n == 3:
        ell = w[0]
        spec = ModuleSpec(3, Kind.FINITE,
                          {"l": ParamValue("l", ell),
                           "m0": ParamValue("m0", ell)})
        kets = [(int(pat.entry(2, 1) - ell),) for pat in rep.basis]
        mu = {}
        for pat in sorted(rep.basis, key=lambda t: -t.entry(2, 1)):
            m = pat.entry(2, 1)
            mu[pat.rows] = 1.0 + 0j if m == ell else \
                _num_a(q, pat, 1, 1) * mu[pat.bump(2, 1, +1).rows]
        gens = [Generator.I21, Generator.I32]
    else:
        p0 = w[0]
        spec = ModuleSpec(4, Kind.FINITE,
                          {"p": ParamValue("p", w[0]),
                           "r": ParamValue("r", w[1]),
                           "l0": ParamValue("l0", p0),
                           "m0": ParamValue("m0", p0)})
        kets = [(int(pat.entry(3, 1) - p0), int(pat.entry(2, 1) - p0))
                for pat in rep.basis]
        mu = {}
        order = sorted(rep.basis,
                       key=lambda t: (-t.entry(3, 1), -t.entry(2, 1)))
        for pat in order:
            ell, m = pat.entry(3, 1), pat.entry(2, 1)
            if ell == p0 and m == ell:
                mu[pat.rows] = 1.0 + 0j
            elif m == ell:  # step down one l level along the diagonal
                mu[pat.rows] = _num_b(q, pat, 1, 1) * \
                    mu[pat.bump(3, 1, +1).rows]
            else:
                mu[pat.rows] = _num_a(q, pat, 1, 1) * \
                    mu[pat.bump(2, 1, +1).rows]
        gens = [Generator.I21, Generator.I32, Generator.I43]

    index = {k: t for t, k in enumerate(kets)}
    dim = len(kets)
    d = np.array([mu[pat.rows] for pat in rep.basis])
    worst = 0.0
    for g in gens:
        exact = np.zeros((dim, dim), dtype=complex)
        for t, ket in enumerate(kets):
            for tk, tc in act_ket(spec, g, ket).items():
                exact[index[tk], t] = rf_numeric(tc, q)
        conj = (rep.matrices[g.value] * d[None, :]) / d[:, None]
        dev = float(np.abs(conj - exact).max())
        worst = max(worst, dev)
    return worst
