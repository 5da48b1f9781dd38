"""Command-line front end.

Commands: verify (defining relations, Casimir, alternative presentation),
analyze (irreducibility and composition series), pattern (triangular
pattern tools and the numeric backend), oracle (reachability closure),
diagram (region rendering).  Exit codes: 0 success, 1 nonzero residual or
oracle mismatch, 2 invalid input or failed hypotheses.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import casimir, diagram, gtpattern, structure
from .qcond import ParamValue, check_hypotheses
from .qfield import ParseError
from .repcore import (Kind, ModuleSpec, SingularParameterError,
                      verify_relations)

DEFAULT_WINDOW_CAP = 8

_PARAM_NAMES = {3: ("l", "m0"), 4: ("p", "r", "l0", "m0")}


class CliError(Exception):
    """Invalid input; maps to exit code 2."""


def _window_cap(args) -> int:
    if getattr(args, "window_cap", None):
        return args.window_cap
    env = os.environ.get("IQGT_WINDOW_CAP")
    return int(env) if env else DEFAULT_WINDOW_CAP


def _parse_params(n: int, text: str) -> dict[str, ParamValue]:
    out = {}
    for piece in text.split(","):
        if "=" not in piece:
            raise CliError(f"malformed parameter {piece!r}, expected name=value")
        name, _, val = piece.partition("=")
        name = name.strip()
        if name not in _PARAM_NAMES[n]:
            raise CliError(f"unknown parameter {name!r} for n={n}, "
                           f"expected {_PARAM_NAMES[n]}")
        try:
            out[name] = ParamValue.parse(name, val)
        except ValueError as e:
            raise CliError(str(e))
    missing = set(_PARAM_NAMES[n]) - set(out)
    if missing:
        raise CliError(f"missing parameters: {sorted(missing)}")
    return out


def _spec(args) -> ModuleSpec:
    if args.n not in (3, 4):
        raise CliError("--n must be 3 or 4")
    params = _parse_params(args.n, args.params)
    kind = Kind.FINITE if getattr(args, "kind", "generic") == "finite" \
        else Kind.GENERIC
    try:
        return ModuleSpec(args.n, kind, params)
    except ValueError as e:
        raise CliError(str(e))


def _check_window(args, window: int) -> int:
    cap = _window_cap(args)
    if window < 1:
        raise CliError("--window must be >= 1")
    if window > cap:
        raise CliError(f"--window {window} exceeds cap {cap} "
                       "(raise with --window-cap or IQGT_WINDOW_CAP)")
    return window


def _emit(args, payload: dict, summary: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in summary:
            print(line)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    spec = _spec(args)
    window = _check_window(args, args.window)
    if spec.rank_n == 4 and spec.kind is Kind.GENERIC:
        hyps = check_hypotheses(spec)
        if not hyps.passed:
            bad = [h for h in hyps.items if not h.satisfied]
            for h in bad:
                print(f"hypothesis failed: {h.description} "
                      f"(witness k = {h.witness_k})", file=sys.stderr)
            return 2
    try:
        rel = verify_relations(spec, window)
        cas = casimir.verify_casimir(spec, window)
        spres = casimir.verify_s_presentation(spec, window)
    except SingularParameterError as e:
        print(f"singular parameters: {e}", file=sys.stderr)
        return 2
    ok = rel.all_zero and cas.ok and spres.ok
    payload = {
        "relations": rel.to_json(),
        "casimir": cas.to_json(),
        "s_presentation": spres.to_json(),
        "verified": ok,
    }
    summary = [
        f"relations: {len(rel.checks)} checks, "
        f"{len(rel.failures())} nonzero residuals",
        f"casimir: central={cas.central_ok} diagonal={cas.diagonal_ok}",
        f"s-presentation: relations={spres.relations_ok} "
        f"central element={spres.molev_ok}",
        "VERIFIED" if ok else "FAILED",
    ]
    _emit(args, payload, summary)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# analyze


def cmd_analyze(args) -> int:
    spec = _spec(args)
    report = structure.analyze(spec)
    if not report.analyzed:
        _emit(args, report.to_json(), _analyze_summary(report))
        bad = [h for h in report.hypotheses.items if not h.satisfied]
        for h in bad:
            print(f"hypothesis failed: {h.description} "
                  f"(witness k = {h.witness_k})", file=sys.stderr)
        return 2
    oracle_ok = True
    if args.check_oracle:
        window = _check_window(args, args.window)
        oracle_ok = structure.verify_series(spec, report, window)
    payload = report.to_json()
    if args.check_oracle:
        payload["oracle_ok"] = oracle_ok
    summary = _analyze_summary(report)
    if args.check_oracle:
        summary.append(f"oracle check: {'ok' if oracle_ok else 'MISMATCH'}")
    _emit(args, payload, summary)
    return 0 if oracle_ok else 1


def _analyze_summary(report) -> list[str]:
    out = [f"n={report.n} case={report.case} "
           f"irreducible={report.irreducible} length={report.length}"]
    if report.s_set:
        out.append("S: " + "; ".join(
            f"{e['condition']} at offset {e['offset']}" for e in report.s_set))
    if report.r_set:
        out.append("R: " + "; ".join(
            f"l={e['l']} (offset {e['offset']}, {e['condition']})"
            for e in report.r_set))
    for layer in report.series:
        out.append(f"  layer {layer.name}")
    return out


# ---------------------------------------------------------------------------
# pattern


def _parse_tuple(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.replace(",", " ").split()]
    except ValueError as e:
        raise CliError(str(e))


def cmd_pattern(args) -> int:
    n = args.n
    if n < 2:
        raise CliError("--n must be >= 2")
    actions = [bool(args.from_tuple), bool(args.enumerate),
               bool(args.validate), bool(args.numeric)]
    if sum(actions) != 1:
        raise CliError("choose exactly one of --from-tuple, --enumerate, "
                       "--validate, --numeric")
    if args.from_tuple:
        try:
            pat = gtpattern.pattern_from_tuple(n, _parse_tuple(args.from_tuple))
        except ValueError as e:
            raise CliError(str(e))
        _emit(args, pat.to_json(), [pat.to_text()])
        return 0
    if args.validate:
        try:
            pat = gtpattern.GTPattern.from_text(n, args.validate)
        except ValueError as e:
            raise CliError(str(e))
        ok, bad = gtpattern.validate_pattern(n, pat)
        _emit(args, {"valid": ok, "violations": bad},
              ["valid" if ok else "invalid"] + [f"  {b}" for b in bad])
        return 0 if ok else 1
    if not args.weight:
        raise CliError("--weight is required for this action")
    weight = _parse_tuple(args.weight)
    if args.enumerate:
        try:
            pats = gtpattern.enumerate_patterns(n, weight)
        except ValueError as e:
            raise CliError(str(e))
        payload = {"count": len(pats), "patterns": [p.to_json() for p in pats]}
        summary = [f"{len(pats)} patterns"] + \
            [p.to_text().replace("\n", " / ") for p in pats]
        _emit(args, payload, summary)
        return 0
    # numeric backend
    try:
        q = float(Fraction(args.q))
    except ValueError:
        raise CliError(f"--q must be an exact rational, got {args.q!r}")
    try:
        rep = gtpattern.numeric_irrep(n, weight, q)
    except ValueError as e:
        raise CliError(str(e))
    ok = rep.max_residual < args.tolerance
    payload = {
        "n": n, "weight": [str(x) for x in rep.weight], "q": args.q,
        "dimension": len(rep.basis),
        "residuals": {k: v for k, v in sorted(rep.residuals.items())},
        "max_residual": rep.max_residual,
        "within_tolerance": ok,
    }
    if args.matrices:
        payload["matrices"] = rep.matrices_json()
    summary = [f"dimension {len(rep.basis)}",
               f"max residual {rep.max_residual:.3e} "
               f"({'ok' if ok else 'EXCEEDS TOLERANCE'})"]
    _emit(args, payload, summary)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# oracle


def cmd_oracle(args) -> int:
    spec = _spec(args)
    window = _check_window(args, args.window)
    try:
        seed = tuple(int(t) for t in args.seed.replace(",", " ").split())
    except ValueError as e:
        raise CliError(str(e))
    if len(seed) != (1 if spec.rank_n == 3 else 2):
        raise CliError(f"seed for n={spec.rank_n} needs "
                       f"{1 if spec.rank_n == 3 else 2} offsets")
    closure = structure.closure_oracle(spec, [seed], window, args.margin)
    kets = sorted(closure)
    payload = {"seed": list(seed), "window": window,
               "count": len(kets), "kets": [list(k) for k in kets]}
    summary = [f"{len(kets)} kets reachable from {list(seed)} "
               f"in window {window}"]
    _emit(args, payload, summary)
    return 0


# ---------------------------------------------------------------------------
# diagram


def cmd_diagram(args) -> int:
    spec = _spec(args)
    report = structure.analyze(spec)
    if not report.analyzed:
        print("hypotheses failed; nothing to draw", file=sys.stderr)
        return 2
    fmt = "svg" if args.format == "svg" else "text"
    out = diagram.render_diagram(report, fmt, args.window)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
        print(f"wrote {args.out}")
    else:
        print(out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="iqgt",
        description="Exact verification and structure analysis of generic "
                    "Gelfand-Tsetlin modules, with pattern tools for any rank")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, window_default=2):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--params", required=True,
                       help="comma list name=value; value is a/b or generic")
        p.add_argument("--window", type=int, default=window_default)
        p.add_argument("--window-cap", type=int, default=None)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="check defining relations and central "
                                      "elements exactly on a ket window")
    common(p)
    p.add_argument("--kind", choices=("generic", "finite"), default="generic")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="irreducibility, length, and "
                                       "composition series")
    common(p, window_default=4)
    p.add_argument("--check-oracle", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pattern", help="pattern validation, construction, "
                                       "enumeration, numeric backend")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from-tuple", help="weakly decreasing values a1,a2,...")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--validate", help="pattern text, rows separated by newlines")
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--weight", help="top row entries w1,w2,...")
    p.add_argument("--q", default="6/5", help="rational q for the numeric "
                                              "backend")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--matrices", action="store_true",
                   help="include matrices as [re, im] arrays in JSON")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("oracle", help="reachability closure of a seed ket")
    common(p, window_default=4)
    p.add_argument("--seed", required=True, help="ket offsets, e.g. 0,0")
    p.add_argument("--margin", type=int, default=2)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("diagram", help="render the composition-series "
                                       "regions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--format", choices=("text", "svg"), default="text")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_diagram)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
