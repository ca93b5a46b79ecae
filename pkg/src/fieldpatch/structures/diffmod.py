"""Differential modules over the patch fields with the derivation d/dx.

A module with basis e_1..e_n is determined by its connection matrix D,
d(e_j) = sum_i D[i][j] e_i.  Under a change of basis S (new basis = columns
of S) the matrix becomes S^(-1) D S + S^(-1) S'.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..errors import InputError, NotCompatible
from ..exactalg import QQ, Field, Poly, RatFunc
from ..patching import PatchingProblem, Solution, make_problem, solve
from ..trings import ExactXT, LMatrix, XMatrix
from . import series as sr
from .algebra import _reconstruct


@dataclass
class DiffModule:
    field: object
    n: int
    D: LMatrix  # connection matrix in the overlap model
    exact: list | None = None  # entries as ExactXT (None where unreconstructed)
    N_eff: int | None = None
    checks: list = field(default_factory=list)

    @property
    def flag(self) -> str:
        if self.exact is not None and all(e is not None for r in self.exact for e in r):
            return "exact"
        return "Unreconstructed"

    def apply(self, m: LMatrix) -> LMatrix:
        """d(m) = m' + D m for a coordinate column m."""
        return sr.derive(m) + self.D * m


def gauge(V: LMatrix, D: LMatrix, window: int | None = None) -> LMatrix:
    """Connection matrix in the basis given by the columns of V."""
    Vinv = V.inverse(window)
    return Vinv * D * V + Vinv * sr.derive(V)


def check_compatible(p: PatchingProblem, Ds: list[LMatrix], checks: list) -> None:
    """A_i' = A_i D_i - D_r A_i for every transition."""
    for i, A in enumerate(p.transitions):
        lhs = sr.derive(A)
        rhs = A * Ds[i] - Ds[-1] * A
        ok, m = sr.agree(lhs, rhs, p.N)
        sr.check(checks, f"A_{i + 1}' = A_{i + 1} D_{i + 1} - D_{p.r} A_{i + 1}", ok, m)
        if not ok:
            raise NotCompatible(f"transition {i + 1} is not compatible with the connections (mod t^{m})")


def patch_diffmod(p: PatchingProblem, Ds: list, bounds=None, rng: random.Random | None = None,
                  solution: Solution | None = None) -> DiffModule:
    """Patch connection matrices D_1..D_r (exact ``XMatrix`` or model values).

    D is computed from every patch side and the results are compared; the
    Leibniz rule and the gauge identities d_i(S_i m) = S_i d(m) are spot-checked
    on random coordinate vectors."""
    if p.model.laurent:
        raise InputError("differential modules are patched over the global shapes")
    if len(Ds) != p.r:
        raise InputError(f"expected {p.r} connection matrices, got {len(Ds)}")
    model, N = p.model, p.N
    Dl = [sr.to_lm(D, model, N) for D in Ds]
    if any(D.shape != (p.n, p.n) for D in Dl):
        raise InputError("connection matrices have the wrong size")
    checks: list = []
    check_compatible(p, Dl, checks)
    s = solution if solution is not None else solve(p)
    Vs = [S.evaluate(model, s.N_eff) for S in s.S]
    sides = [gauge(V, D) for V, D in zip(Vs, Dl)]
    D = sides[0]
    mod = s.N_eff
    for i, other in enumerate(sides[1:], start=2):
        ok, m = sr.agree(D, other, s.N_eff)
        sr.check(checks, f"D from patch 1 = D from patch {i}", ok, m)
        mod = min(mod, m)
    mod = min(mod, D.abs_prec)
    exact = [[_reconstruct(sr.entry(D, i, j), bounds) for j in range(p.n)] for i in range(p.n)]
    out = DiffModule(p.field, p.n, D, exact, mod, checks)
    rng = rng or random.Random(0)
    F = p.field
    for trial in range(3):
        f = RatFunc(Poly(F, [F.random(rng, 5) for _ in range(3)]), Poly(F, [F.random_nonzero(rng, 3), 1]))
        fl = sr.to_lm(XMatrix(F, [[f]]), model, mod)
        mvec = sr.to_lm(XMatrix(F, [[Poly(F, [F.random(rng, 5) for _ in range(3)])] for _ in range(p.n)]), model, mod)
        lhs = out.apply(sr.scalar(fl, p.n) * mvec)
        rhs = sr.scalar(sr.derive(fl), p.n) * mvec + sr.scalar(fl, p.n) * out.apply(mvec)
        ok, m = sr.agree(lhs, rhs, mod)
        sr.check(checks, f"Leibniz d(f m) = f' m + f d(m), sample {trial + 1}", ok, m)
        for i, (V, Di) in enumerate(zip(Vs, Dl)):
            Vm = V * mvec
            ok, m = sr.agree(sr.derive(Vm) + Di * Vm, V * out.apply(mvec), mod)
            sr.check(checks, f"d_{i + 1}(S_{i + 1} m) = S_{i + 1} d(m), sample {trial + 1}", ok, m)
    return out


# --- seeded compatible instances ---------------------------------------------------------------
def _rand_poly(F: Field, rng: random.Random, deg: int, bound: int = 3) -> Poly:
    return Poly(F, [F.random(rng, bound) for _ in range(deg + 1)])


def random_compatible_problem(rng: random.Random, n: int = 2, N: int = 8, field_: Field = QQ,
                              upper: bool = True):
    """(problem, [D_1, D_2], D): a two-patch problem built from an exact module.

    D is a random exact connection matrix; S_1 has entries in k[x][t] and S_2
    entries in k[1/x][t], each triangular with constant nonzero diagonal modulo t
    (so invertible over its patch); D_i = S_i D S_i^(-1) - S_i' S_i^(-1) and the
    transition is A = S_2 S_1^(-1)."""
    F = field_
    x = RatFunc.x(F)
    one = RatFunc.const(F, 1)

    def rc(var: RatFunc) -> RatFunc:
        return one * F.random(rng, 3) + var * F.random(rng, 3)

    def tri(var: RatFunc, lower: bool) -> XMatrix:
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == j:
                    c0 = one if lower else one * F.random_nonzero(rng, 3)
                    row.append(ExactXT.from_t_coeffs([c0, rc(var) if not lower else one * 0]))
                elif (j > i) != lower:
                    row.append(ExactXT.from_t_coeffs([rc(var), rc(var)]))
                else:
                    row.append(ExactXT.const(F, 0))
            rows.append(row)
        return XMatrix(F, rows)

    def patch_matrix(var: RatFunc) -> XMatrix:
        S = tri(var, False)
        return S if upper else S * tri(var, True)

    S1 = patch_matrix(x)
    S2 = patch_matrix(one / x)
    D = XMatrix(F, [[RatFunc(_rand_poly(F, rng, 2)) if (j >= i or not upper) else 0
                     for j in range(n)] for i in range(n)])
    Ds = [S * D * S.inverse() - S.derive_x() * S.inverse() for S in (S1, S2)]
    A = S2 * S1.inverse()
    p = make_problem("two-patch", [A], N, field_=F)
    return p, Ds, D


@dataclass
class DiffmodDemoReport:
    instances: list
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["residual_is_zero"] for c in self.checks)


def diffmod_demo(count: int = 10, N: int = 8, seed: int = 0, field_: Field = QQ) -> DiffmodDemoReport:
    """Seeded compatible 2x2 problems: patch, compare both sides, check Leibniz."""
    rng = random.Random(seed)
    checks, inst = [], []
    for k in range(count):
        p, Ds, D = random_compatible_problem(rng, 2, N, field_)
        M = patch_diffmod(p, Ds, rng=rng)
        for c in M.checks:
            checks.append(dict(c, name=f"instance {k + 1}: {c['name']}"))
        inst.append(M)
    return DiffmodDemoReport(inst, checks)
