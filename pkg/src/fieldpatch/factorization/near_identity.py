"""Factorization of matrices congruent to the identity modulo t.

Given A = I + A_1 t + ... , the loop builds B = I + B_1 t + ... and
C = I + C_1 t + ... one t-order at a time: the order-i residual
D_i = A_i - sum_{0<j<i} B_j C_{i-j} is split entrywise into a B-side
part (B_i) and a C-side part (C_i), so that A = BC modulo t^(i+1).
"""

from __future__ import annotations

from ..errors import InputError, NotNearIdentity, ShapeMismatch
from ..exactalg import TruncLaurent
from ..splitting import split_mod_t_global, split_mod_t_local
from ..trings import FMatrix, TMatrix, coeff_one, coeff_zero
from ..trings import linalg as la
from .context import FactorContext, FactorResult, TraceStep


def _hard_zero(c) -> bool:
    return c.is_zero() and getattr(c, "prec", None) is None


def _mat_hard_zero(M) -> bool:
    return all(_hard_zero(c) for r in M for c in r)


def _prepare(A: TMatrix, ctx: FactorContext) -> TMatrix:
    """A over the working model, checked to be the identity modulo t."""
    model = ctx.model
    if A.rows != A.cols:
        raise ShapeMismatch("factorization needs a square matrix")
    if A.field is not ctx.field_:
        raise InputError("matrix and context over different fields")
    if A.ring != model:
        A = A.embed(model, ctx.window)
    n = A.rows
    one, zero = coeff_one(model), coeff_zero(model)
    M0 = A.data[0]
    for r in range(n):
        for c in range(n):
            d = M0[r][c] - (one if r == c else zero)
            if not d.is_zero():
                raise NotNearIdentity(f"entry ({r}, {c}) is not congruent to the identity modulo t")
    if ctx.is_local:
        # pin the constant term to the exact identity
        A = TMatrix._raw(model, [la.mat_identity(n, zero, one)] + A.data[1:])
    return A


def _split_entry(d, ctx: FactorContext):
    if ctx.is_local:
        b, c = split_mod_t_local(d)
        return b, c
    return split_mod_t_global(d, ctx.split)


def factor_near_identity(A: TMatrix, ctx: FactorContext, N: int | None = None) -> FactorResult:
    """A = A1 * A2 modulo t^N with A1 = B over the first ring and A2 = C over the second."""
    A = _prepare(A, ctx)
    N = min(A.prec, N if N is not None else A.prec)
    n = A.rows
    model = ctx.model
    zero, one = coeff_zero(model), coeff_one(model)
    Bs = [la.mat_identity(n, zero, one)]
    Cs = [la.mat_identity(n, zero, one)]
    trace = []
    for i in range(1, N):
        D = [list(r) for r in A.data[i]]
        for j in range(1, i):
            if _mat_hard_zero(Bs[j]) or _mat_hard_zero(Cs[i - j]):
                continue
            D = la.mat_sub(D, la.mat_mul(Bs[j], Cs[i - j], zero))
        Bi = la.mat_zero(n, n, zero)
        Ci = la.mat_zero(n, n, zero)
        residual_zero = True
        for r in range(n):
            for c in range(n):
                d = D[r][c]
                if _hard_zero(d):
                    continue
                residual_zero = False
                Bi[r][c], Ci[r][c] = _split_entry(d, ctx)
        Bs.append(Bi)
        Cs.append(Ci)
        trace.append(TraceStep(i, _tag(Bs, ctx.ring1, ctx), _tag(Cs, ctx.ring2, ctx), residual_zero))
    B = _tag(Bs, ctx.ring1, ctx)
    C = _tag(Cs, ctx.ring2, ctx)
    return FactorResult(FMatrix.of(B), FMatrix.of(C), N, model, trace, A)


def _tag(mats, ring, ctx: FactorContext) -> TMatrix:
    """Coefficient matrices as a TMatrix over ``ring`` (membership checked)."""
    if ring.which == "R2":
        mats = [la.mat_map(M, _laurent_to_ratfunc) for M in mats]
    return TMatrix(ring, [[list(r) for r in M] for M in mats])


def _laurent_to_ratfunc(c):
    if isinstance(c, TruncLaurent):
        return c.to_ratfunc()
    return c


def audit_trace(A: TMatrix, result: FactorResult) -> list[tuple[int, bool, bool, bool]]:
    """Re-verify the loop congruences independently of the loop.

    Returns (i, B_i = B_{i-1} mod t^i, C_i = C_{i-1} mod t^i, A = B_i C_i mod t^(i+1))
    for every logged step."""
    ctx_model = result.model
    A = result.near_identity_input if result.near_identity_input is not None else A
    out = []
    prevB = prevC = None
    for step in result.trace:
        i = step.i
        B = step.B.embed(ctx_model, None) if step.B.ring != ctx_model else step.B
        C = step.C.embed(ctx_model, None) if step.C.ring != ctx_model else step.C
        Bt, Ct = B.truncate(i + 1), C.truncate(i + 1)
        okB = prevB is None or Bt.truncate(i).agrees(prevB)
        okC = prevC is None or Ct.truncate(i).agrees(prevC)
        okA = (Bt * Ct).agrees(A.truncate(i + 1))
        out.append((i, okB, okC, okA))
        prevB, prevC = Bt, Ct
    return out
