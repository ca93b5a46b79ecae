"""Solvers for the three problem shapes, and solution verification."""

from __future__ import annotations

from ..errors import InputError, VerificationFailed
from ..exactalg import Poly
from ..factorization import FactorContext, factor_general
from ..trings import FMatrix, LMatrix, PatchSet, RingId, t_valuation
from .problem import Certificate, PatchingProblem, Solution


def _factor_inverse(A: LMatrix, ctx: FactorContext):
    """Factor A^(-1) = A1 * A2."""
    return factor_general(A.inverse(ctx.window), ctx)


def solve_two_patch(p: PatchingProblem) -> Solution:
    if p.shape != "two-patch":
        raise InputError(f"solve_two_patch cannot handle a {p.shape} problem")
    U1, U2 = p.sets
    ctx = FactorContext.global_(U1, U2, p.N)
    res = _factor_inverse(p.transitions[0], ctx)
    S = (res.A1, res.A2.inverse())
    sol = Solution(S, res.N_eff, [f"factor A^-1 over ({U1}, {U2}) at t^{res.N_eff}"])
    return _finish(p, sol)


def solve_multi_patch(p: PatchingProblem) -> Solution:
    """Peel patches r-1, ..., 1 against their complements; patch r is the reference."""
    if p.shape != "multi":
        raise InputError(f"solve_multi_patch cannot handle a {p.shape} problem")
    n, r = p.n, p.r
    S: list = [None] * r
    total = FMatrix.identity(n)
    N_eff = p.N
    log = []
    for i in range(r - 2, -1, -1):
        Ui = p.sets[i]
        Wi = Ui.complement()
        A = p.transitions[i]
        if total.factors:
            A = total.inverse().evaluate(p.model, p.N) * A
        ctx = FactorContext.global_(Ui, Wi, p.N)
        res = _factor_inverse(A, ctx)
        Ti = res.A2.inverse()
        S[i] = res.A1
        for j in range(i + 1, r - 1):
            S[j] = S[j] * Ti
        total = total * Ti
        N_eff = min(N_eff, res.N_eff)
        log.append(f"patch {i + 1} against {Wi} at t^{res.N_eff}")
    S[r - 1] = total
    return _finish(p, Solution(tuple(S), N_eff, log))


def solve_local_global(p: PatchingProblem) -> Solution:
    """Stage 1: A^(-1) = L1 L2 with L1 over Frac k[[x,t]] and L2 over k(x)[[t]].
    Stage 2: L2 = G1 G2 with G1 over the point x = 0 and G2 over P^1 minus {0}."""
    if p.shape != "local-global":
        raise InputError(f"solve_local_global cannot handle a {p.shape} problem")
    F = p.field
    ctxL = FactorContext.local(F, p.N, p.M)
    r1 = _factor_inverse(p.transitions[0], ctxL)
    L2 = r1.A2.factors[0].payload.embed(RingId.generic(F))
    x = Poly.x(F)
    ctxG = FactorContext.global_(PatchSet.points(F, [x]), PatchSet.excluding(F, [x]), p.N)
    r2 = factor_general(L2, ctxG)
    S = (r1.A1 * r2.A1, r2.A2.inverse())
    log = [f"local stage at t^{r1.N_eff}", f"global stage at t^{r2.N_eff}"]
    return _finish(p, Solution(S, min(r1.N_eff, r2.N_eff), log))


def solve(p: PatchingProblem) -> Solution:
    if p.shape == "two-patch":
        return solve_two_patch(p)
    if p.shape == "multi":
        return solve_multi_patch(p)
    return solve_local_global(p)


def _values(p: PatchingProblem, s: Solution, N: int) -> list[LMatrix]:
    return [S.evaluate(p.model, N, p.window) for S in s.S]


def _finish(p: PatchingProblem, sol: Solution) -> Solution:
    """Lower N_eff to what the compatibility products actually determine, then verify."""
    vals = _values(p, sol, sol.N_eff)
    ref = vals[-1]
    achieved = min([(A * V).abs_prec for A, V in zip(p.transitions, vals)] + [ref.abs_prec])
    sol.N_eff = min(sol.N_eff, achieved)
    verify_solution(p, sol)
    return sol


def verify_solution(p: PatchingProblem, s: Solution) -> Certificate:
    """Check dimensions, patch-field membership, invertibility and every
    compatibility identity A_i S_i = S_r modulo t^N_eff."""
    checks = []

    def record(name: str, ok: bool, modulus: int) -> None:
        checks.append({"name": name, "modulus": modulus, "residual_is_zero": bool(ok)})
        if not ok:
            raise VerificationFailed(f"violated: {name} (mod t^{modulus})")

    N = s.N_eff
    if len(s.S) != p.r:
        record(f"number of certificates = {p.r}", False, N)
    for i, S in enumerate(s.S):
        record(f"dim S_{i + 1} = {p.n}", S.n == p.n, N)
        record(f"S_{i + 1} in GL_n(Frac {p.patches[i]})", S.in_field_of(p.patches[i]), N)
    vals = _values(p, s, N)
    for i, V in enumerate(vals):
        d = V.M.det()
        record(f"det S_{i + 1} nonzero", t_valuation(d).exact, N)
    ref = vals[-1]
    for i, (A, V) in enumerate(zip(p.transitions, vals)):
        record(f"A_{i + 1} * S_{i + 1} = S_{p.r}", (A * V).agrees_to(ref, N), N)
    return Certificate(checks, N, p.n)
