"""Decision predicates for rational-valued parameters.

Standing assumption everywhere: q is not a root of unity.  For a rational
exponent t this gives q^t = 1 iff t = 0, and q^t = -1 never (q^t = -1
would force q^(2t) = 1 with t != 0).  A parameter left symbolic never
satisfies any of the singular equations (algebraic independence).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class ParamValue:
    """A representation parameter: either symbolic or an exact rational."""

    name: str
    value: Optional[Fraction] = None  # None means symbolic

    @property
    def is_symbolic(self) -> bool:
        return self.value is None

    @staticmethod
    def parse(name: str, text: str) -> "ParamValue":
        text = text.strip()
        if text in ("generic", "symbolic"):
            return ParamValue(name)
        if "." in text:
            raise ValueError(
                f"parameter {name}: decimal input {text!r} rejected, "
                "use an exact fraction a/b")
        return ParamValue(name, Fraction(text))

    def __str__(self) -> str:
        return "generic" if self.is_symbolic else str(self.value)


def affine_base(*parts) -> Optional[Fraction]:
    """Sum ParamValues and rationals into a single base; None if any part
    is symbolic (a symbolic base never solves the singular equations)."""
    total = Fraction(0)
    for p in parts:
        if isinstance(p, ParamValue):
            if p.is_symbolic:
                return None
            total += p.value
        else:
            total += Fraction(p)
    return total


def solve_qpow_one(base: Optional[Fraction], step) -> Optional[int]:
    """The unique integer k with q^(base + step*k) = 1, i.e.
    base + step*k = 0, if it exists."""
    step = Fraction(step)
    if not step:
        raise ValueError("step must be nonzero")
    if base is None:
        return None
    k = -base / step
    return int(k) if k.denominator == 1 else None


def qpow_minus_one_possible(base: Optional[Fraction], step) -> bool:
    """Whether q^(base + step*k) = -1 is solvable over k in Z.  Constantly
    false: a rational or symbolic exponent t with q^t = -1 would give
    q^(2t) = 1 with 2t != 0, contradicting q not a root of unity."""
    del base, step
    return False


@dataclass(frozen=True)
class Hypothesis:
    description: str
    satisfied: bool
    witness_k: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "hypothesis": self.description,
            "satisfied": self.satisfied,
            "witness_k": self.witness_k,
        }


@dataclass(frozen=True)
class HypothesisReport:
    items: tuple[Hypothesis, ...]

    @property
    def passed(self) -> bool:
        return all(h.satisfied for h in self.items)

    def to_json(self) -> list:
        return [h.to_json() for h in self.items]


def check_hypotheses(spec) -> HypothesisReport:
    """Separation hypotheses for structure analysis.

    n=3 needs q^(2*m0+k) != -1 for all k (automatic here); n=4 additionally
    needs q^(2*l0+2k) != 1 and q^(4*l0+2k) != 1 for all k, which for a
    rational l0 means l0 is not a half-integer.
    """
    m0 = spec.params["m0"]
    items = [
        Hypothesis("q^(2*m0+k) != -1 for all k in Z",
                   not qpow_minus_one_possible(_scaled(m0, 2), 1)),
    ]
    if spec.rank_n == 4:
        l0 = spec.params["l0"]
        k1 = solve_qpow_one(_scaled(l0, 2), 2)
        items.append(Hypothesis("q^(2*l0+2k) != 1 for all k in Z",
                                k1 is None, k1))
        k2 = solve_qpow_one(_scaled(l0, 4), 2)
        items.append(Hypothesis("q^(4*l0+2k) != 1 for all k in Z",
                                k2 is None, k2))
    return HypothesisReport(tuple(items))


def _scaled(p: ParamValue, factor: int) -> Optional[Fraction]:
    return None if p.is_symbolic else p.value * factor
