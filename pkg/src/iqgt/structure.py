"""Irreducibility, length, and composition series as lattice regions.

Submodules of the generic modules are spanned by kets and cut out by
linear inequalities on the ket offsets: half-planes bounded where a
raising coefficient vanishes, diagonals where [l-m] or [l+m+1] vanishes.
A brute-force reachability oracle cross-checks every predicted region.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .casimir import casimir_eigenvalue
from .qcond import HypothesisReport, ParamValue, check_hypotheses
from .repcore import (Generator, Ket, Kind, ModuleSpec, ModVector, act_ket,
                      i21_eigenvalue)


@dataclass(frozen=True)
class Constraint:
    """a*k_l + b*k_m <= c on ket offsets (rank 3 has k_l = 0)."""

    a: int
    b: int
    c: int

    def holds(self, ket: Ket) -> bool:
        k_l, k_m = (0, ket[0]) if len(ket) == 1 else ket
        return self.a * k_l + self.b * k_m <= self.c

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}


Clause = tuple[Constraint, ...]


@dataclass(frozen=True)
class Region:
    """Union of clauses; each clause is an intersection of constraints.

    The empty clause () is the whole lattice; no clauses at all is the
    empty region.
    """

    clauses: tuple[Clause, ...]

    @staticmethod
    def of(*constraints: Constraint) -> "Region":
        return Region((tuple(constraints),))

    @staticmethod
    def full() -> "Region":
        return Region(((),))

    def contains(self, ket: Ket) -> bool:
        return any(all(c.holds(ket) for c in cl) for cl in self.clauses)

    def union(self, other: "Region") -> "Region":
        return Region(self.clauses + other.clauses)

    def intersect(self, other: "Region") -> "Region":
        return Region(tuple(a + b for a in self.clauses for b in other.clauses))

    def to_json(self):
        if len(self.clauses) == 1:
            return {"constraints": [c.to_json() for c in self.clauses[0]]}
        # Unions carry one constraint list per clause.
        return {"clauses": [[c.to_json() for c in cl] for cl in self.clauses]}


@dataclass(frozen=True)
class Layer:
    """One nonzero proper submodule of the chain, with seed kets whose
    reachability closure should regenerate the whole region."""

    name: str
    region: Region
    seeds: tuple[Ket, ...]

    def to_json(self) -> dict:
        out = {"name": self.name}
        out.update(self.region.to_json())
        return out


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    params: dict[str, ParamValue]
    hypotheses: HypothesisReport
    irreducible: Optional[bool]
    length: Optional[int]
    case: str
    s_set: tuple[dict, ...]
    r_set: tuple[dict, ...]
    series: tuple[Layer, ...]
    paper_explicit: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "hypotheses": self.hypotheses.to_json(),
            "irreducible": self.irreducible,
            "length": self.length,
            "case": self.case,
            "singular_sets": {"S": list(self.s_set), "R": list(self.r_set)},
            "series": [layer.to_json() for layer in self.series],
            "paper_explicit": self.paper_explicit,
        }

    @property
    def analyzed(self) -> bool:
        return self.irreducible is not None


def _int_offset(value: Optional[Fraction]) -> Optional[int]:
    if value is None or value.denominator != 1:
        return None
    return int(value)


def weight_decompose(spec: ModuleSpec, v: ModVector) -> dict:
    """Split a vector into weight components keyed by exact eigenvalue.

    Rank 3 keys by the I21 eigenvalue; rank 4 by the (I21, Casimir)
    eigenvalue pair, which separates both offsets under the hypotheses.
    """
    out: dict = {}
    for ket, coeff in v.items():
        key = str(i21_eigenvalue(spec, ket))
        if spec.rank_n == 4:
            key = (key, str(casimir_eigenvalue(spec.ell_exp(ket))))
        out.setdefault(key, {})[ket] = coeff
    return out


# ---------------------------------------------------------------------------
# Rank 3


def analyze3(ell: ParamValue, m0: ParamValue) -> AnalysisReport:
    """Irreducibility and series for a rank-3 generic module.

    S holds the offsets k with [l+(m0+k)+1] = 0 or [l-(m0+k)] = 0; the
    submodule generated from such a ket is the downward half-line, and
    the chain is ordered by offset.
    """
    spec = ModuleSpec(3, Kind.GENERIC, {"l": ell, "m0": m0})
    hyps = check_hypotheses(spec)
    s_entries = []
    if not ell.is_symbolic and not m0.is_symbolic:
        k = _int_offset(ell.value - m0.value)
        if k is not None:
            s_entries.append({"m": str(m0.value + k), "offset": k,
                              "condition": "l-m=0"})
        k = _int_offset(-ell.value - 1 - m0.value)
        if k is not None:
            s_entries.append({"m": str(m0.value + k), "offset": k,
                              "condition": "l+m+1=0"})
    # Coinciding offsets (2l = -1) collapse to one generator.
    by_offset = {e["offset"]: e for e in s_entries}
    offsets = sorted(by_offset)  # ascending: innermost submodule first
    series = tuple(
        Layer(f"<|m0{k:+d}>>", Region.of(Constraint(0, 1, k)), ((k,),))
        for k in offsets)
    length = len(series) + 1
    assert length <= 3
    return AnalysisReport(
        n=3, params={"l": ell, "m0": m0}, hypotheses=hyps,
        irreducible=not series, length=length,
        case="Irreducible" if not series else f"Length{length}",
        s_set=tuple(by_offset[k] for k in offsets), r_set=(),
        series=series, paper_explicit=True)


# ---------------------------------------------------------------------------
# Rank 4


def _r_set(p: ParamValue, r: ParamValue, l0: ParamValue) -> list[dict]:
    """Offsets k with l0+k hitting -p-2, p, -r-1, or r-1."""
    if l0.is_symbolic:
        return []
    targets = []
    if not p.is_symbolic:
        targets += [(-p.value - 2, "p+l+2=0"), (p.value, "p-l=0")]
    if not r.is_symbolic:
        targets += [(-r.value - 1, "l+r+1=0"), (r.value - 1, "l-r+1=0")]
    found: dict[int, dict] = {}
    for val, cond in targets:
        k = _int_offset(val - l0.value)
        if k is None:
            continue
        if k in found:
            found[k]["condition"] += "," + cond
        else:
            found[k] = {"l": str(l0.value + k), "offset": k, "condition": cond}
    out = [found[k] for k in sorted(found)]
    # Each bracket pair vanishing twice in one offset class would force
    # 2*l0 in Z, excluded by the hypotheses.
    assert len(out) <= 2
    return out


def _m_region(k: int) -> Region:
    return Region.of(Constraint(1, 0, k))


def analyze4(p: ParamValue, r: ParamValue, l0: ParamValue,
             m0: ParamValue) -> AnalysisReport:
    """Irreducibility, case, and series for a rank-4 generic module.

    Case 1: no diagonal condition; the chain runs in the l direction
    through the M half-planes from R.  Case 2 (l0-m0 integer): the
    diagonal region U = {k_m <= k_l + d} combines with the M half-planes
    into the six-layer chain 0 < U2' < U1' < U < U2 < U1 < V.  Case 3
    (l0+m0 integer) is the mirror image across the antidiagonal.
    """
    params = {"p": p, "r": r, "l0": l0, "m0": m0}
    spec = ModuleSpec(4, Kind.GENERIC, params)
    hyps = check_hypotheses(spec)
    if not hyps.passed:
        return AnalysisReport(
            n=4, params=params, hypotheses=hyps, irreducible=None,
            length=None, case="HypothesisFailure", s_set=(), r_set=(),
            series=(), paper_explicit=False)

    r_entries = _r_set(p, r, l0)
    r_offsets = sorted((e["offset"] for e in r_entries), reverse=True)

    d_diag = None if l0.is_symbolic or m0.is_symbolic else \
        _int_offset(l0.value - m0.value)
    d_anti = None if l0.is_symbolic or m0.is_symbolic else \
        _int_offset(-(l0.value + m0.value + 1))
    assert d_diag is None or d_anti is None  # both would force 2*l0 in Z

    s_entries: tuple[dict, ...] = ()
    series: list[Layer] = []
    if d_diag is None and d_anti is None:
        case = "Case1"
        # Mirror of the rank-3 chain in the l direction, innermost first.
        for k in sorted(r_offsets):
            series.append(Layer(f"M(l0{k:+d})", _m_region(k), ((k, 0),)))
    else:
        if d_diag is not None:
            case = "Case2"
            d = d_diag
            diag = Region.of(Constraint(-1, 1, d))  # k_m - k_l <= d
            diag_name = "U"
            s_entries = ({"condition": "l-m=0", "offset": d,
                          "line": f"k_m = k_l {d:+d}"},)
            corner = lambda k: (k, k + d)

            def edge_seed(K: int) -> Ket:
                t = min(K, K - d)
                return (t, t + d)
        else:
            case = "Case3"
            d = d_anti
            diag = Region.of(Constraint(1, 1, d))  # k_l + k_m <= d
            diag_name = "W"
            s_entries = ({"condition": "l+m+1=0", "offset": d,
                          "line": f"k_l + k_m = {d}"},)
            corner = lambda k: (k, d - k)

            def edge_seed(K: int) -> Ket:
                t = min(K, d + K)
                return (t, d - t)

        # Seeds are picked against a nominal window; verify_series
        # re-derives them at its own window size via the seed hook.
        K0 = 4
        names = {r_offsets[i]: i + 1 for i in range(len(r_offsets))}
        for k in sorted(r_offsets):  # inner intersections first
            series.append(Layer(f"{diag_name}{names[k]}'",
                                diag.intersect(_m_region(k)), (corner(k),)))
        series.append(Layer(diag_name, diag, (edge_seed(K0),)))
        for k in sorted(r_offsets):  # then the unions, inner first
            series.append(Layer(f"{diag_name}{names[k]}",
                                diag.union(_m_region(k)),
                                (edge_seed(K0), (k, K0))))

    length = len(series) + 1
    assert length <= 6
    explicit = (case == "Case1" and len(r_offsets) <= 1) or \
        (case in ("Case2", "Case3") and len(r_offsets) == 2)
    return AnalysisReport(
        n=4, params=params, hypotheses=hyps, irreducible=not series,
        length=length, case="Irreducible" if not series else case,
        s_set=s_entries, r_set=tuple(r_entries),
        series=tuple(series), paper_explicit=explicit)


def analyze(spec: ModuleSpec) -> AnalysisReport:
    if spec.rank_n == 3:
        return analyze3(spec.params["l"], spec.params["m0"])
    return analyze4(spec.params["p"], spec.params["r"],
                    spec.params["l0"], spec.params["m0"])


# ---------------------------------------------------------------------------
# Oracle


def closure_oracle(spec: ModuleSpec, seeds: Iterable[Ket], window: int,
                   margin: int = 2) -> set[Ket]:
    """Forward reachability closure of the seeds under all generators,
    computed on a window enlarged by the margin and reported on the
    inner window only, so truncation cannot hide an edge."""
    if window < 1 or margin < 1:
        raise ValueError("window and margin must be >= 1")
    lim = window + margin
    gens = [Generator.I21, Generator.I32]
    if spec.rank_n == 4:
        gens.append(Generator.I43)
    inside = lambda k: all(abs(x) <= lim for x in k)
    frontier = [k for k in seeds if inside(k)]
    seen = set(frontier)
    while frontier:
        u = frontier.pop()
        for g in gens:
            for w in act_ket(spec, g, u):
                if w not in seen and inside(w):
                    seen.add(w)
                    frontier.append(w)
    return {k for k in seen if all(abs(x) <= window for x in k)}


def _window_kets(spec: ModuleSpec, K: int) -> list[Ket]:
    return list(spec.window_kets(K))


def _reseed(layer: Layer, K: int, report: AnalysisReport) -> tuple[Ket, ...]:
    """Layer seeds scaled to the oracle window: seeds built against the
    nominal window are projected back inside [-K, K] along their region."""
    out = []
    for s in layer.seeds:
        ket = s
        if any(abs(x) > K for x in ket) and len(ket) == 2:
            # Slide along the unbounded direction of the region.
            for t in range(K, -K - 1, -1):
                for cand in ((ket[0], t), (t, ket[1]),
                             (t, t + (ket[1] - ket[0])),
                             (t, (ket[0] + ket[1]) - t)):
                    if all(abs(x) <= K for x in cand) and \
                            layer.region.contains(cand):
                        ket = cand
                        break
                else:
                    continue
                break
        out.append(ket)
    return tuple(out)


def verify_series(spec: ModuleSpec, report: AnalysisReport, window: int,
                  margin: int = 2) -> bool:
    """Action-closure plus oracle agreement for every predicted layer.

    (a) no generator edge leaves a region from an interior window ket;
    (b) the reachability closure of the layer's seeds reproduces the
    region inside the window.  Irreducible verdicts instead require the
    closure of a single ket to cover the window.
    """
    if not report.analyzed:
        return False
    kets = _window_kets(spec, window)
    gens = [Generator.I21, Generator.I32]
    if spec.rank_n == 4:
        gens.append(Generator.I43)
    if report.irreducible:
        origin = (0,) if spec.rank_n == 3 else (0, 0)
        return closure_oracle(spec, [origin], window, margin) == set(kets)
    interior = [k for k in kets if all(abs(x) <= window - 1 for x in k)]
    for layer in report.series:
        region = layer.region
        for u in interior:
            if not region.contains(u):
                continue
            for g in gens:
                for w in act_ket(spec, g, u):
                    if all(abs(x) <= window for x in w) and \
                            not region.contains(w):
                        return False
        expected = {k for k in kets if region.contains(k)}
        got = closure_oracle(spec, _reseed(layer, window, report),
                             window, margin)
        if got != expected:
            return False
    return True
