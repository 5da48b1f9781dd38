"""The element I31, the Casimir element of the rank-3 subalgebra, and the
s-presentation with its central element.

Everything is evaluated as words with scalars over the action engine;
the modules are infinite, so no matrices are ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qfield import Exponent, RatFunc, ex, qbracket, qpow
from .repcore import (Generator, Ket, ModVector, ModuleSpec, act, ket_vector,
                      vec_add, vec_is_zero, vec_scale, vec_str, vec_sub)


def _q() -> RatFunc:
    return qpow(ex(1))


def act_I31(spec: ModuleSpec, v: ModVector) -> ModVector:
    """I31 = [I21, I32]_q = I21 I32 - q I32 I21."""
    a = act(spec, Generator.I21, act(spec, Generator.I32, v))
    b = act(spec, Generator.I32, act(spec, Generator.I21, v))
    return vec_add(a, vec_scale(-_q(), b))


def act_casimir(spec: ModuleSpec, v: ModVector) -> ModVector:
    """C_q = -I21^2 - q^-1 I31^2 - q^2 I32^2 - (q - q^-1) I21 I32 I31."""
    q = _q()
    i21 = lambda w: act(spec, Generator.I21, w)
    i32 = lambda w: act(spec, Generator.I32, w)
    out = vec_scale(-RatFunc.one(), i21(i21(v)))
    out = vec_add(out, vec_scale(-q.inv(), act_I31(spec, act_I31(spec, v))))
    out = vec_add(out, vec_scale(-(q * q), i32(i32(v))))
    out = vec_add(out, vec_scale(-(q - q.inv()), i21(i32(act_I31(spec, v)))))
    return out


def casimir_eigenvalue(ell: Exponent) -> RatFunc:
    """[l]^2 + q^(l+1)[l]."""
    b = qbracket(ell)
    return b * b + qpow(ell + ex(1)) * b


@dataclass(frozen=True)
class CasimirReport:
    central_ok: bool
    diagonal_ok: bool
    eigenvalues: tuple[tuple[int, str], ...]  # (l-offset, canonical text)
    failures: tuple[tuple[Ket, str], ...]

    @property
    def ok(self) -> bool:
        return self.central_ok and self.diagonal_ok

    def to_json(self) -> dict:
        return {
            "central_ok": self.central_ok,
            "diagonal_ok": self.diagonal_ok,
            "eigenvalues": [{"l_offset": k, "value": v}
                            for k, v in self.eigenvalues],
            "failures": [{"ket": list(k), "witness": w}
                         for k, w in self.failures],
        }


def verify_casimir(spec: ModuleSpec, window: int) -> CasimirReport:
    """Exact centrality and diagonality of C_q on all window kets.

    The rank-4 diagonal property (eigenvalue depending only on the
    l-offset) is checked, not assumed; a spec where it fails is reported
    loudly rather than silently accepted.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    central_ok = diagonal_ok = True
    failures: list[tuple[Ket, str]] = []
    eigenvalues: dict[int, str] = {}
    for ket in spec.window_kets(window):
        v = ket_vector(ket)
        cv = act_casimir(spec, v)
        for g in (Generator.I21, Generator.I32):
            res = vec_sub(act(spec, g, cv), act_casimir(spec, act(spec, g, v)))
            if not vec_is_zero(res):
                central_ok = False
                failures.append((ket, f"[C_q,{g.value}] residual {vec_str(res)}"))
        lam = casimir_eigenvalue(spec.ell_exp(ket))
        res = vec_sub(cv, vec_scale(lam, v))
        if not vec_is_zero(res):
            diagonal_ok = False
            failures.append((ket, f"C_q not diagonal: {vec_str(res)}"))
        else:
            k_l = ket[0] if spec.rank_n == 4 else 0
            eigenvalues.setdefault(k_l, str(lam))
    return CasimirReport(central_ok, diagonal_ok,
                         tuple(sorted(eigenvalues.items())), tuple(failures))


# ---------------------------------------------------------------------------
# s-presentation


def _s_ops(spec: ModuleSpec):
    q = _q()
    scale21 = qpow(ex("-1/2")) * (q - q.inv())
    scale31 = -q.inv() * (q - q.inv())
    s21 = lambda v: vec_scale(scale21, act(spec, Generator.I21, v))
    s32 = lambda v: vec_scale(scale21, act(spec, Generator.I32, v))
    s31 = lambda v: vec_scale(scale31, act_I31(spec, v))
    return s21, s32, s31


@dataclass(frozen=True)
class SPresentationReport:
    relations_ok: bool
    molev_ok: bool
    failures: tuple[tuple[Ket, str], ...]

    @property
    def ok(self) -> bool:
        return self.relations_ok and self.molev_ok

    def to_json(self) -> dict:
        return {
            "relations_ok": self.relations_ok,
            "molev_ok": self.molev_ok,
            "failures": [{"ket": list(k), "witness": w}
                         for k, w in self.failures],
        }


def verify_s_presentation(spec: ModuleSpec, window: int) -> SPresentationReport:
    """The three q-commutator relations of the alternative presentation,
    and the central element built from it acting with the expected scalar."""
    if window < 1:
        raise ValueError("window must be >= 1")
    q = _q()
    qinv = q.inv()
    s21, s32, s31 = _s_ops(spec)
    triples = [("s-rel[21,32]", s21, s32, s31),
               ("s-rel[32,31]", s32, s31, s21),
               ("s-rel[31,21]", s31, s21, s32)]
    relations_ok = molev_ok = True
    failures: list[tuple[Ket, str]] = []
    for ket in spec.window_kets(window):
        v = ket_vector(ket)
        for name, sa, sb, sc in triples:
            # [sa, sb]_q + (q - q^-1) sc = 0
            res = vec_add(vec_sub(sa(sb(v)), vec_scale(q, sb(sa(v)))),
                          vec_scale(q - qinv, sc(v)))
            if not vec_is_zero(res):
                relations_ok = False
                failures.append((ket, f"{name} residual {vec_str(res)}"))
        # -q^2 s21^2 - q^2 s31^2 - q^4 s32^2 + q^3 s21 s32 s31 + q^3 + 2q
        const = q ** 3 + 2 * q
        mol = vec_scale(-(q ** 2), s21(s21(v)))
        mol = vec_add(mol, vec_scale(-(q ** 2), s31(s31(v))))
        mol = vec_add(mol, vec_scale(-(q ** 4), s32(s32(v))))
        mol = vec_add(mol, vec_scale(q ** 3, s21(s32(s31(v)))))
        mol = vec_add(mol, vec_scale(const, v))
        lam = casimir_eigenvalue(spec.ell_exp(ket))
        expect = q * (q - qinv) ** 2 * lam + const
        res = vec_sub(mol, vec_scale(expect, v))
        if not vec_is_zero(res):
            molev_ok = False
            failures.append((ket, f"molev residual {vec_str(res)}"))
    return SPresentationReport(relations_ok, molev_ok, tuple(failures))
