"""Factorization of arbitrary invertible matrices over the overlap field.

A = t^s M with M integral and not divisible by t.  If det M has
t-valuation r, the matrix C = t^(-r) C_0 with C_0 = t^r M^(-1) mod t^(r+1)
has exact (or x-shifted integral, in local mode) entries, and C M is
congruent to the identity modulo t.  Factoring C M = B C' gives
A = (t^s C^(-1) B) * C'.
"""

from __future__ import annotations

from ..errors import CertificationFailed, InputError, PrecisionError, ReconstructionFailed, SingularAtPrecision
from ..exactalg import Poly, RatFunc, TruncLaurent
from ..splitting import default_bounds, reconstruct_field_elem
from ..trings import (
    ExactXT,
    Factor,
    FMatrix,
    LMatrix,
    PatchSet,
    RingId,
    TMatrix,
    XMatrix,
    coeff_zero,
    invert_unit,
    t_shift,
    t_valuation,
    tmatrix_t_valuation,
)
from ..trings import linalg as la
from .context import FactorContext, FactorResult
from .near_identity import factor_near_identity


def as_lmatrix(A, ctx: FactorContext) -> LMatrix:
    """Bring any supported matrix form into the DVR model of ``ctx``."""
    model = ctx.model
    if isinstance(A, LMatrix):
        if A.ring != model:
            return LMatrix(A.shift, A.M.embed(model, ctx.window))
        return A
    if isinstance(A, TMatrix):
        M = A if A.ring == model else A.embed(model, ctx.window)
        return LMatrix(0, M)
    if isinstance(A, XMatrix):
        return LMatrix.from_xmatrix(A, model, ctx.N, ctx.window)
    if isinstance(A, FMatrix):
        return A.evaluate(model, ctx.N, ctx.window)
    raise InputError(f"cannot factor an object of type {type(A).__name__}")


def _normalize(L: LMatrix) -> LMatrix:
    v = tmatrix_t_valuation(L.M)
    if v is None:
        raise SingularAtPrecision(f"matrix vanishes modulo t^{L.abs_prec}")
    if v:
        L = LMatrix(L.shift + v, L.M.t_shift(-v, allow_windowed=True))
    return L


def _approximant(M: TMatrix, r: int, window) -> list:
    """Coefficient matrices of t^r M^(-1) through order t^r."""
    Mt = M.truncate(2 * r + 1)
    d = Mt.det()
    u = t_shift(d, -r, allow_windowed=True)
    uinv = invert_unit(u, window)
    adj = Mt.adjugate().truncate(r + 1)
    return (adj * uinv.truncate(r + 1)).data


def factor_general(A, ctx: FactorContext) -> FactorResult:
    L = _normalize(as_lmatrix(A, ctx))
    s, M = L.shift, L.M
    n, m = M.shape
    if n != m:
        raise InputError("factorization needs a square matrix")
    p = M.prec
    det = M.det()
    rv = t_valuation(det)
    if not rv.exact:
        raise SingularAtPrecision(f"determinant vanishes modulo t^{p}")
    r = rv.value
    if 2 * r + 1 > p:
        raise PrecisionError(f"determinant valuation {r} needs precision >= {2 * r + 1}, have {p}")
    model = ctx.model
    C0 = _approximant(M, r, ctx.window)
    C0 = C0 + [la.mat_zero(n, n, coeff_zero(model)) for _ in range(p - r - 1)]
    F = ctx.field_
    if ctx.is_local:
        lows = [c.val for Mk in C0 for row in Mk for c in row if not c.is_zero()]
        shift_x = max(0, -min(lows)) if lows else 0
        xm = TruncLaurent.monomial(F, shift_x)
        C1 = TMatrix(RingId.local(F, "R1"), [la.mat_map(Mk, lambda c: c * xm) for Mk in C0])
        CM = (C1.embed(model) * M).t_shift(-r, allow_windowed=True)
        xinv = TruncLaurent.monomial(F, -shift_x)
        near = TMatrix(model, [la.mat_map(Mk, lambda c: c * xinv) for Mk in CM.data])
        head = [
            Factor(XMatrix.scalar(F, n, ExactXT.t(F, s + r) * _x_power(F, shift_x)), 1),
            Factor(C1, -1),
        ]
    else:
        Cx = XMatrix(F, [[_t_poly(F, [C0[k][i][j] for k in range(r + 1)], -r) for j in range(n)] for i in range(n)])
        C0m = TMatrix(model, C0)
        near = (C0m * M).t_shift(-r)
        Cinv = Cx.inverse()
        head = [Factor(XMatrix.scalar(F, n, ExactXT.t(F, s)) * Cinv, 1)]
    res = factor_near_identity(near, ctx)
    B = res.A1.factors[0].payload
    Cp = res.A2.factors[0].payload
    A1 = FMatrix(head + [Factor(B, 1)], n)
    A2 = FMatrix([Factor(Cp, 1)], n)
    N_eff = s + p - r
    out = FactorResult(A1, A2, N_eff, model, res.trace, res.near_identity_input)
    _verify(out, L, ctx)
    return out


def _x_power(F, k: int) -> ExactXT:
    return ExactXT.from_coeff(RatFunc(Poly.monomial(F, k)))


def _t_poly(F, coeffs, shift: int) -> ExactXT:
    e = ExactXT.from_t_coeffs(list(coeffs), None, F)
    return e * ExactXT.t(F, shift) if shift else e


def _verify(res: FactorResult, L: LMatrix, ctx: FactorContext) -> None:
    prod = res.product(ctx.window)
    ok = prod.agrees_to(L, res.N_eff)
    res.checks.append({"name": "A = A1*A2", "modulus": res.N_eff, "residual_is_zero": ok})
    m1 = res.A1.in_field_of(ctx.field1)
    m2 = res.A2.in_field_of(ctx.ring2)
    res.checks.append({"name": f"A1 in GL_n(Frac {ctx.field1})", "modulus": res.N_eff, "residual_is_zero": m1})
    res.checks.append({"name": f"A2 in GL_n({ctx.ring2})", "modulus": res.N_eff, "residual_is_zero": m2})
    if not (ok and m1 and m2):
        raise AssertionError(f"factorization failed its own verification: {res.checks}")


def factor_overlapping(A, U1: PatchSet, U2: PatchSet, N: int = 8, bounds: tuple[int, int] | None = None) -> FactorResult:
    """Factor over (U1, U2 minus U1) and certify the second factor over U2."""
    F = U1.field
    U0 = U1.intersection(U2)
    U2p = U2.difference(U0)
    ctx = FactorContext.global_(U1, U2p, N)
    res = factor_general(A, ctx)
    if U0.is_empty():
        return res
    target = RingId.global_(U2)
    Cp = res.A2.factors[0].payload
    if Cp.membership_ok() and all(target.coeff_ok(c) for Mk in Cp.data for r in Mk for c in r):
        res.A2 = FMatrix.of(Cp.retag(target))
        res.certification = "proved-at-precision"
    else:
        dn, dd = bounds if bounds is not None else default_bounds(Cp.prec)
        try:
            X = XMatrix(F, [[reconstruct_field_elem(e, dn, dd) for e in row] for row in Cp.entries()])
            res.A2 = FMatrix.of(X)
            res.certification = "reconstructed-exact"
        except ReconstructionFailed as exc:
            res.certification = "uncertified"
            res.checks.append({"name": f"A2 in GL_n(Frac {target})", "modulus": res.N_eff,
                               "residual_is_zero": False, "error": CertificationFailed.__name__,
                               "detail": str(exc)})
            return res
    res.checks.append({"name": f"A2 in GL_n(Frac {target})", "modulus": res.N_eff, "residual_is_zero": True})
    return res
