"""Finite-dimensional algebras given by structure constants, and their patching.

The product of basis vectors is e_i e_j = sum_k c[i][j][k] e_k.  Internally an
algebra is handled through its left-multiplication matrices L_i, with
(L_i)[k][j] = c[i][j][k], so that transports and identities become matrix
algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError, NotMultiplicative, ReconstructionFailed
from ..exactalg import Field
from ..patching import PatchingProblem, Solution, solve
from ..splitting import default_bounds, reconstruct_field_elem
from ..trings import ExactXT, LMatrix, RingId, XMatrix
from . import series as sr


@dataclass
class AlgebraPresentation:
    field: Field
    n: int
    consts: list  # consts[i][j][k]: ExactXT, or None when unreconstructed
    unit: list | None = None  # coordinates of 1 (ExactXT or None)
    series: tuple | None = None  # left-multiplication LMatrix per basis vector
    unit_series: LMatrix | None = None
    N_eff: int | None = None
    checks: list = field(default_factory=list)

    # --- construction ------------------------------------------------------------
    @classmethod
    def from_left_mult(cls, field_: Field, mats: list, unit=None) -> "AlgebraPresentation":
        n = len(mats)
        Xs = [m if isinstance(m, XMatrix) else XMatrix(field_, m) for m in mats]
        consts = [[[Xs[i].rows[k][j] for k in range(n)] for j in range(n)] for i in range(n)]
        u = None if unit is None else [ExactXT.const(field_, 0)._co(c) for c in unit]
        return cls(field_, n, consts, u)

    @classmethod
    def from_products(cls, field_: Field, table, unit=None) -> "AlgebraPresentation":
        """``table[i][j]`` is the coordinate vector of e_i e_j."""
        n = len(table)
        z = ExactXT.const(field_, 0)
        consts = [[[z._co(table[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
        u = None if unit is None else [z._co(c) for c in unit]
        return cls(field_, n, consts, u)

    # --- access ------------------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return all(c is not None for a in self.consts for b in a for c in b) and (
            self.unit is None or all(c is not None for c in self.unit)
        )

    def unreconstructed(self) -> list[tuple[int, int, int]]:
        n = self.n
        return [(i, j, k) for i in range(n) for j in range(n) for k in range(n) if self.consts[i][j][k] is None]

    @property
    def flag(self) -> str:
        return "exact" if self.exact else "Unreconstructed"

    def has_unit(self) -> bool:
        return self.unit is not None or self.unit_series is not None

    def exact_left_mult(self) -> list[XMatrix]:
        if not self.exact:
            raise ReconstructionFailed("structure constants are not all exact")
        n = self.n
        return [XMatrix(self.field, [[self.consts[i][j][k] for j in range(n)] for k in range(n)]) for i in range(n)]

    def left_mult(self, model: RingId, N: int, window: int | None = None) -> list[LMatrix]:
        if self.series is not None and self.series[0].ring == model:
            return list(self.series)
        return [sr.to_lm(X, model, N, window) for X in self.exact_left_mult()]

    def unit_vector(self, model: RingId, N: int, window: int | None = None) -> LMatrix | None:
        if self.unit_series is not None and self.unit_series.ring == model:
            return self.unit_series
        if self.unit is None or any(c is None for c in self.unit):
            return None
        return sr.to_lm(XMatrix(self.field, [[c] for c in self.unit]), model, N, window)

    def multiply(self, u: LMatrix, v: LMatrix, model: RingId, N: int, window: int | None = None) -> LMatrix:
        """Product of two coordinate column vectors."""
        Ls = self.left_mult(model, N, window)
        return sr.lincomb([sr.entry(u, a, 0) for a in range(self.n)], Ls) * v


def product_algebra(algs: list[AlgebraPresentation]) -> AlgebraPresentation:
    """Direct product; the basis is the concatenation of the factors' bases."""
    F = algs[0].field
    n = sum(A.n for A in algs)
    z = ExactXT.const(F, 0)
    consts = [[[z] * n for _ in range(n)] for _ in range(n)]
    unit = [] if all(A.unit is not None for A in algs) else None
    off = 0
    for A in algs:
        for i in range(A.n):
            for j in range(A.n):
                for k in range(A.n):
                    consts[off + i][off + j][off + k] = A.consts[i][j][k]
        if unit is not None:
            unit.extend(A.unit)
        off += A.n
    return AlgebraPresentation(F, n, consts, unit)


def trivial_algebra(field_: Field) -> AlgebraPresentation:
    return AlgebraPresentation.from_products(field_, [[[1]]], [1])


def matrix_algebra(field_: Field, m: int = 2) -> AlgebraPresentation:
    """Mat_m with the basis of matrix units E_ab in row-major order."""
    n = m * m

    def idx(a, b):
        return a * m + b

    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a in range(m):
        for b in range(m):
            for c in range(m):
                table[idx(a, b)][idx(b, c)][idx(a, c)] = 1
    unit = [1 if i % (m + 1) == 0 else 0 for i in range(n)]
    return AlgebraPresentation.from_products(field_, table, unit)


def inner_automorphism(g: XMatrix) -> XMatrix:
    """Matrix of E -> g E g^(-1) on Mat_m in the basis of matrix units."""
    m = g.shape[0]
    F = g.field
    ginv = g.inverse()
    z = ExactXT.const(F, 0)
    cols = []
    for a in range(m):
        for b in range(m):
            E = XMatrix(F, [[1 if (r, c) == (a, b) else 0 for c in range(m)] for r in range(m)])
            img = g * E * ginv
            cols.append([img.rows[r][c] for r in range(m) for c in range(m)])
    n = m * m
    return XMatrix(F, [[cols[j][i] if cols[j][i] is not None else z for j in range(n)] for i in range(n)])


def quaternion_algebra(field_: Field, a, b) -> AlgebraPresentation:
    """(a, b) with basis 1, i, j, ij where i^2 = a, j^2 = b, ji = -ij."""
    z = ExactXT.const(field_, 0)
    a, b = z._co(a), z._co(b)
    one = ExactXT.const(field_, 1)
    O = z

    def vec(c0=O, c1=O, c2=O, c3=O):
        return [c0, c1, c2, c3]

    table = [
        [vec(c0=one), vec(c1=one), vec(c2=one), vec(c3=one)],
        [vec(c1=one), vec(c0=a), vec(c3=one), vec(c2=a)],
        [vec(c2=one), vec(c3=-one), vec(c0=b), vec(c1=-b)],
        [vec(c3=one), vec(c2=-a), vec(c1=b), vec(c0=-a * b)],
    ]
    return AlgebraPresentation.from_products(field_, table, [one, O, O, O])


# --- identities -----------------------------------------------------------------------------
def check_algebra(A: AlgebraPresentation, model: RingId, N: int, window: int | None = None,
                  checks: list | None = None) -> list:
    """Associativity on all basis triples and the unit laws, modulo t^N."""
    checks = [] if checks is None else checks
    Ls = A.left_mult(model, N, window)
    n = A.n
    ok, mod = True, N
    for a in range(n):
        for b in range(n):
            lhs = Ls[a] * Ls[b]
            rhs = sr.lincomb([sr.entry(Ls[a], k, b) for k in range(n)], Ls)
            good, m = sr.agree(lhs, rhs, N)
            ok &= good
            mod = min(mod, m)
    sr.check(checks, "associativity (e_a e_b) e_c = e_a (e_b e_c)", ok, mod)
    u = A.unit_vector(model, N, window)
    if u is not None:
        lhs = sr.lincomb([sr.entry(u, a, 0) for a in range(n)], Ls)
        good, m = sr.agree(lhs, sr.identity_lm(model, n, N), N)
        sr.check(checks, "unit law 1 * e = e", good, m)
        ok2, mod2 = True, N
        for a in range(n):
            e_a = sr.column(sr.identity_lm(model, n, N), a)
            good, m = sr.agree(Ls[a] * u, e_a, N)
            ok2 &= good
            mod2 = min(mod2, m)
        sr.check(checks, "unit law e * 1 = e", ok2, mod2)
    return checks


def check_algebra_exact(A: AlgebraPresentation, checks: list | None = None) -> list:
    """Associativity and unit laws as exact identities over k(x, t)."""
    checks = [] if checks is None else checks
    Xs = A.exact_left_mult()
    n = A.n
    F = A.field
    ok = True
    for a in range(n):
        for b in range(n):
            rhs = XMatrix(F, [[ExactXT.const(F, 0)] * n for _ in range(n)])
            for k in range(n):
                rhs = rhs + XMatrix.scalar(F, n, Xs[a].rows[k][b]) * Xs[k]
            ok &= (Xs[a] * Xs[b]) == rhs
    sr.check(checks, "associativity (exact)", ok, None)
    if A.unit is not None:
        U = XMatrix(F, [[ExactXT.const(F, 0)] * n for _ in range(n)])
        for a in range(n):
            U = U + XMatrix.scalar(F, n, A.unit[a]) * Xs[a]
        sr.check(checks, "unit law (exact)", U.is_identity(), None)
    return checks


def check_multiplicative(T: LMatrix, src: list[LMatrix], dst: list[LMatrix], N: int) -> tuple[bool, int]:
    """T maps basis vector a of the source to column a of T; multiplicativity
    is T L_a = L'(T e_a) T for every a."""
    n = len(src)
    ok, mod = True, N
    for a in range(n):
        image = sr.lincomb([sr.entry(T, b, a) for b in range(n)], dst)
        good, m = sr.agree(T * src[a], image * T, N)
        ok &= good
        mod = min(mod, m)
    return ok, mod


def transport(V: LMatrix, Ls: list[LMatrix], window: int | None = None) -> list[LMatrix]:
    """Left-multiplication matrices in the basis given by the columns of V."""
    Vinv = V.inverse(window)
    n = len(Ls)
    return [Vinv * sr.lincomb([sr.entry(V, b, a) for b in range(n)], Ls) * V for a in range(n)]


def reconstruct_constants(Ls: list[LMatrix], bounds=None) -> list:
    n = len(Ls)
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[i][j][k] = _reconstruct(sr.entry(Ls[i], k, j), bounds)
    return out


def _reconstruct(c: LMatrix, bounds) -> ExactXT | None:
    if c.M.is_zero():
        return ExactXT.const(c.ring.field, 0)
    rel = c.M.prec
    dn, dd = bounds if bounds is not None else default_bounds(rel)
    if dn + dd >= rel:
        return None
    try:
        return reconstruct_field_elem(c, dn, dd)
    except ReconstructionFailed:
        return None


def evaluate_solution(p: PatchingProblem, s: Solution) -> list[LMatrix]:
    return [S.evaluate(p.model, s.N_eff, p.window) for S in s.S]


def patch_algebra(p: PatchingProblem, algebras: list[AlgebraPresentation], bounds=None,
                  solution: Solution | None = None) -> AlgebraPresentation:
    """Patch algebras A_1..A_r whose transitions are the problem's matrices.

    Each transition must be multiplicative; the result carries the transported
    constants (from the reference side), their exact reconstructions where
    found, and the agreement checks between the patch-side computations."""
    if len(algebras) != p.r:
        raise InputError(f"expected {p.r} algebras, got {len(algebras)}")
    if any(A.n != p.n for A in algebras):
        raise InputError("algebra dimensions do not match the problem")
    model, window, N = p.model, p.window, p.N
    checks: list = []
    local = [A.left_mult(model, N, window) for A in algebras]
    for i, T in enumerate(p.transitions):
        ok, m = check_multiplicative(T, local[i], local[-1], N)
        sr.check(checks, f"transition {i + 1} is multiplicative", ok, m)
        if not ok:
            raise NotMultiplicative(f"transition {i + 1} does not respect the products (mod t^{m})")
    s = solution if solution is not None else solve(p)
    Vs = evaluate_solution(p, s)
    sides = [transport(V, Ls, window) for V, Ls in zip(Vs, local)]
    ref = sides[-1]
    mod = s.N_eff
    for i, side in enumerate(sides[:-1]):
        ok, m = True, s.N_eff
        for a in range(p.n):
            good, mm = sr.agree(side[a], ref[a], s.N_eff)
            ok &= good
            m = min(m, mm)
        sr.check(checks, f"patch {i + 1} and patch {p.r} constants agree", ok, m)
        mod = min(mod, m)
    mod = min([mod] + [L.abs_prec for L in ref])
    consts = reconstruct_constants(ref, bounds)
    unit = None
    unit_series = None
    if all(A.has_unit() for A in algebras):
        us = [V.inverse(window) * A.unit_vector(model, N, window) for V, A in zip(Vs, algebras)]
        unit_series = us[-1]
        for i, u in enumerate(us[:-1]):
            ok, m = sr.agree(u, unit_series, s.N_eff)
            sr.check(checks, f"patch {i + 1} and patch {p.r} units agree", ok, m)
        unit = [_reconstruct(sr.entry(unit_series, a, 0), bounds) for a in range(p.n)]
    out = AlgebraPresentation(p.field, p.n, consts, unit, tuple(ref), unit_series, mod, checks)
    check_algebra(out, model, mod, window, checks)
    if out.exact:
        check_algebra_exact(out, checks)
    return out
