"""G-Galois algebras: induction along coset tables, quadratic building blocks,
patching of algebras with a group action, and the Klein-four realization."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..errors import InconsistentTable, InputError, NotMultiplicative, ReconstructionFailed, ZeroInput
from ..exactalg import QQ, Field, RatFunc
from ..patching import PatchingProblem, make_problem, solve
from ..splitting import reconstruct_field_elem
from ..trings import ExactXT, LMatrix, RingId, TElem, TMatrix, XMatrix, invert_unit
from . import series as sr
from .algebra import (
    AlgebraPresentation,
    check_multiplicative,
    evaluate_solution,
    patch_algebra,
    product_algebra,
    trivial_algebra,
)


# --- groups -----------------------------------------------------------------------------------
@dataclass(frozen=True)
class FiniteGroup:
    """Elements 0..n-1 with 0 the identity; ``table[g][h]`` is the index of gh."""

    table: tuple
    names: tuple = ()

    def __post_init__(self):
        n = len(self.table)
        if any(len(r) != n for r in self.table) or any(self.table[0][g] != g or self.table[g][0] != g for g in range(n)):
            raise InconsistentTable("group table must be square with identity 0")
        for g, h, k in product(range(n), repeat=3):
            if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]]:
                raise InconsistentTable("group table is not associative")
        for g in range(n):
            if 0 not in self.table[g]:
                raise InconsistentTable(f"element {g} has no inverse")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.table[g].index(0)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(((0,),), ("1",))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(tuple(tuple((g + h) % n for h in range(n)) for g in range(n)), tuple(str(g) for g in range(n)))

    @classmethod
    def direct_product(cls, G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        m = H.order
        elems = [(g, h) for g in range(G.order) for h in range(H.order)]
        table = tuple(
            tuple(G.mul(a[0], b[0]) * m + H.mul(a[1], b[1]) for b in elems) for a in elems
        )
        return cls(table, tuple(f"({G.names[g] if G.names else g},{H.names[h] if H.names else h})" for g, h in elems))

    @classmethod
    def klein4(cls) -> "FiniteGroup":
        return cls.direct_product(cls.cyclic(2), cls.cyclic(2))


@dataclass
class CosetTable:
    """Left cosets c_i H of H in G, c_1 = 1.  sigma[g][i] is the index j with
    h[i][g] = c_i^(-1) g c_j in H."""

    G: FiniteGroup
    H: tuple  # elements of G, identity first; position = index in the subgroup's own table
    reps: tuple
    sigma: tuple
    h: tuple

    @classmethod
    def make(cls, G: FiniteGroup, H, reps=None) -> "CosetTable":
        H = tuple(H)
        Hs = set(H)
        if not H or H[0] != 0:
            raise InconsistentTable("subgroup must list the identity first")
        if any(G.mul(a, b) not in Hs for a in H for b in H):
            raise InconsistentTable("H is not closed under multiplication")
        cosets = []
        seen = set()
        for g in range(G.order):
            if g not in seen:
                c = frozenset(G.mul(g, k) for k in H)
                cosets.append(c)
                seen |= c
        if reps is None:
            reps = tuple(min(c) for c in cosets)
        reps = tuple(reps)
        if len(reps) != len(cosets) or reps[0] != 0:
            raise InconsistentTable("need one representative per coset, identity first")
        if len({frozenset(G.mul(c, k) for k in H) for c in reps}) != len(reps):
            raise InconsistentTable("two representatives lie in the same coset")
        m = len(reps)
        sigma, hs = [], []
        for g in range(G.order):
            srow, hrow = [], []
            for i in range(m):
                ci_inv = G.inv(reps[i])
                found = [j for j in range(m) if G.mul(G.mul(ci_inv, g), reps[j]) in Hs]
                if len(found) != 1:
                    raise InconsistentTable("coset table is inconsistent")
                j = found[0]
                srow.append(j)
                hrow.append(G.mul(G.mul(ci_inv, g), reps[j]))
            sigma.append(tuple(srow))
            hs.append(tuple(hrow))
        ct = cls(G, H, reps, tuple(sigma), tuple(hs))
        ct.validate()
        return ct

    @property
    def m(self) -> int:
        return len(self.reps)

    def validate(self) -> None:
        G, Hs = self.G, set(self.H)
        for g in range(G.order):
            for i in range(self.m):
                if self.h[g][i] not in Hs:
                    raise InconsistentTable(f"h[{i}][{g}] is not in H")
        # sigma^(gg') = sigma^(g') o sigma^(g): the coset action composes left to right
        for g in range(G.order):
            for g2 in range(G.order):
                gg = G.mul(g, g2)
                if any(self.sigma[gg][i] != self.sigma[g2][self.sigma[g][i]] for i in range(self.m)):
                    raise InconsistentTable("sigma is not a homomorphism")

    def stabilizer(self, i: int) -> list[int]:
        return sorted(g for g in range(self.G.order) if self.sigma[g][i] == i)

    def subgroup_index(self, g: int) -> int:
        return self.H.index(g)


# --- Galois algebras --------------------------------------------------------------------------
@dataclass
class GaloisAlgebra:
    algebra: AlgebraPresentation
    group: FiniteGroup
    action: list  # per group element: XMatrix (exact) or LMatrix (model value)
    checks: list = field(default_factory=list)

    def action_lm(self, model: RingId, N: int, window: int | None = None) -> list[LMatrix]:
        return [sr.to_lm(A, model, N, window) for A in self.action]


def check_galois(E: GaloisAlgebra, model: RingId, N: int, window: int | None = None,
                 checks: list | None = None) -> list:
    """Homomorphism, automorphisms of the algebra, fixed unit, and the invariant
    subspace measured as the trace of the averaging idempotent."""
    checks = [] if checks is None else checks
    G = E.group
    n = E.algebra.n
    rho = E.action_lm(model, N, window)
    Ls = E.algebra.left_mult(model, N, window)
    ok, mod = True, N
    for g in range(G.order):
        for h in range(G.order):
            good, m = sr.agree(rho[g] * rho[h], rho[G.mul(g, h)], N)
            ok &= good
            mod = min(mod, m)
    good, m = sr.agree(rho[0], sr.identity_lm(model, n, N), N)
    sr.check(checks, "action is a group homomorphism", ok and good, min(mod, m))
    ok, mod = True, N
    for g in range(G.order):
        for a in range(n):
            image = sr.lincomb([sr.entry(rho[g], b, a) for b in range(n)], Ls)
            good, m = sr.agree(rho[g] * Ls[a], image * rho[g], N)
            ok &= good
            mod = min(mod, m)
    sr.check(checks, "each g acts by an algebra automorphism", ok, mod)
    u = E.algebra.unit_vector(model, N, window)
    if u is not None:
        ok, mod = True, N
        for g in range(G.order):
            good, m = sr.agree(rho[g] * u, u, N)
            ok &= good
            mod = min(mod, m)
        sr.check(checks, "g fixes the unit", ok, mod)
    dim, good, m = invariant_dimension(rho, model, N, E.algebra.field)
    sr.check(checks, f"invariants have dimension {dim}", good, m)
    return checks


def invariant_dimension(rho: list[LMatrix], model: RingId, N: int, field_: Field) -> tuple[int, bool, int]:
    """(d, ok, m): P = (1/|G|) sum rho(g) is idempotent mod t^m and its trace is
    the constant d mod t^m; d is then the dimension of the invariants."""
    order = len(rho)
    field_.require_invertible(order, "averaging over the group")
    n = rho[0].shape[0]
    inv = ExactXT.const(field_, field_.one / field_(order))
    P = sr.scalar(sr.exact_scalar(inv, model, N), n) * sr.lincomb(
        [sr.exact_scalar(ExactXT.const(field_, 1), model, N)] * order, rho
    )
    idem, m1 = sr.agree(P * P, P, N)
    tr = sr.trace(P)
    c0 = tr.coeff(0, 0, 0) if tr.shift <= 0 < tr.abs_prec else None
    d = None
    if c0 is not None and c0.is_constant():
        val = c0.constant_value()
        if field_.char == 0 and val.q == 1:
            d = int(val.p)
        elif field_.char:
            d = int(val)
    ok = idem and d is not None
    if ok:
        good, m2 = sr.agree(tr, sr.exact_scalar(ExactXT.const(field_, d), model, N), N)
        ok = good
        m1 = min(m1, m2)
    return (d if d is not None else -1), ok, m1


def trivial_galois(field_: Field) -> GaloisAlgebra:
    """F with the trivial group."""
    return GaloisAlgebra(trivial_algebra(field_), FiniteGroup.trivial(), [XMatrix.identity(field_, 1)])


def induce_galois(ct: CosetTable, E: GaloisAlgebra) -> GaloisAlgebra:
    """Ind_H^G E: m copies of E with (g e)_i = h[i][g] e_sigma(i)."""
    G, H = ct.G, ct.H
    if E.group.order != len(H):
        raise InconsistentTable("E's group does not have the order of H")
    for a in range(len(H)):
        for b in range(len(H)):
            if H[E.group.mul(a, b)] != G.mul(H[a], H[b]):
                raise InconsistentTable("E's group table does not match H")
    F = E.algebra.field
    k = E.algebra.n
    m = ct.m
    n = m * k
    alg = product_algebra([E.algebra] * m)
    z = ExactXT.const(F, 0)
    rhoE = [A if isinstance(A, XMatrix) else None for A in E.action]
    if any(A is None for A in rhoE):
        raise InputError("induction needs an exact action on E")
    action = []
    for g in range(G.order):
        rows = [[z] * n for _ in range(n)]
        for i in range(m):
            j = ct.sigma[g][i]
            blk = rhoE[ct.subgroup_index(ct.h[g][i])]
            for a in range(k):
                for b in range(k):
                    rows[i * k + a][j * k + b] = blk.rows[a][b]
        action.append(XMatrix(F, rows))
    return GaloisAlgebra(alg, G, action)


def coset_change_iso(ct1: CosetTable, ct2: CosetTable, E: GaloisAlgebra) -> XMatrix:
    """Isomorphism Ind (reps of ct1) -> Ind (reps of ct2), a permutation matrix
    with diagonal blocks rho_E(eta^-1), where c2_j = c1_i eta."""
    G = ct1.G
    F = E.algebra.field
    k = E.algebra.n
    m = ct1.m
    n = m * k
    Hs = set(ct1.H)
    z = ExactXT.const(F, 0)
    rows = [[z] * n for _ in range(n)]
    for i in range(m):
        js = [j for j in range(m) if G.mul(G.inv(ct1.reps[i]), ct2.reps[j]) in Hs]
        if len(js) != 1:
            raise InconsistentTable("coset tables do not have the same cosets")
        j = js[0]
        eta = G.mul(G.inv(ct1.reps[i]), ct2.reps[j])
        blk = E.action[ct1.subgroup_index(G.inv(eta))]
        for a in range(k):
            for b in range(k):
                rows[j * k + a][i * k + b] = blk.rows[a][b]
    return XMatrix(F, rows)


def check_equivariant_iso(Phi, E1: GaloisAlgebra, E2: GaloisAlgebra, model: RingId, N: int,
                          window: int | None = None) -> tuple[bool, int]:
    """Phi rho1(g) = rho2(g) Phi for all g, and Phi is multiplicative."""
    P = sr.to_lm(Phi, model, N, window)
    r1, r2 = E1.action_lm(model, N, window), E2.action_lm(model, N, window)
    ok, mod = True, N
    for g in range(E1.group.order):
        good, m = sr.agree(P * r1[g], r2[g] * P, N)
        ok &= good
        mod = min(mod, m)
    good, m = check_multiplicative(P, E1.algebra.left_mult(model, N, window), E2.algebra.left_mult(model, N, window), N)
    return ok and good, min(mod, m)


# --- building blocks --------------------------------------------------------------------------
def binom_half(j: int) -> Fraction:
    """binom(1/2, j)."""
    out = Fraction(1)
    for i in range(j):
        out = out * (Fraction(1, 2) - i) / (i + 1)
    return out


@dataclass
class BuildingBlock:
    galois: GaloisAlgebra  # basis 1, y with y^2 = f(f - t); group Z/2 acting by y -> -y
    f: RatFunc
    relation: ExactXT  # f(f - t)
    root: LMatrix  # 1x1: square root of f(f - t) in the generic model
    idempotents: tuple  # coordinate columns of (1 +- y/root)/2
    relation_reconstructed: ExactXT | None
    N: int
    checks: list = field(default_factory=list)


def building_block_quadratic(f: RatFunc, N: int = 8) -> BuildingBlock:
    """Z/2-Galois algebra F[y]/(y^2 - f(f - t)) with its splitting over k(x)((t))."""
    F = f.field
    F.require_odd("a quadratic building block")
    if f.is_zero():
        raise ZeroInput("f must be nonzero")
    if N < 1:
        raise InputError("precision must be >= 1")
    fe = ExactXT.from_coeff(f)
    g = fe * (fe - ExactXT.t(F))
    z, one = ExactXT.const(F, 0), ExactXT.const(F, 1)
    alg = AlgebraPresentation.from_products(F, [[[one, z], [z, one]], [[z, one], [g, z]]], [one, z])
    action = [XMatrix.identity(F, 2), XMatrix(F, [[1, 0], [0, -1]])]
    E = GaloisAlgebra(alg, FiniteGroup.cyclic(2), action)
    model = RingId.generic(F)
    # root = f * sum_j binom(1/2, j) (-t/f)^j
    coeffs = [RatFunc.const(F, F(binom_half(j) * (-1) ** j)) * f ** (1 - j) for j in range(N)]
    root = LMatrix(0, TMatrix.from_entries(model, [[coeffs]], N))
    checks: list = []
    gl = sr.exact_scalar(g, model, N)
    good, m = sr.agree(root * root, gl, N)
    sr.check(checks, "root^2 = f(f - t)", good, m)
    rinv = LMatrix(0, TMatrix.from_entries(model, [[invert_unit(TElem(model, coeffs))]], N))
    half = sr.exact_scalar(ExactXT.const(F, F.one / F(2)), model, N)
    e_plus = sr.hstack([half, half * rinv]).M.transpose()
    e_plus = LMatrix(0, e_plus)
    e_minus = LMatrix(0, sr.hstack([half, -(half * rinv)]).M.transpose())
    one_v = sr.to_lm(XMatrix(F, [[1], [0]]), model, N)
    zero_v = sr.zero_lm(model, 2, 1, N)
    mul = lambda u, v: alg.multiply(u, v, model, N)  # noqa: E731
    res = [
        ("e+^2 = e+", sr.agree(mul(e_plus, e_plus), e_plus, N)),
        ("e-^2 = e-", sr.agree(mul(e_minus, e_minus), e_minus, N)),
        ("e+ e- = 0", sr.agree(mul(e_plus, e_minus), zero_v, N)),
        ("e+ + e- = 1", sr.agree(e_plus + e_minus, one_v, N)),
        ("y -> -y swaps e+ and e-", sr.agree(sr.to_lm(action[1], model, N) * e_plus, e_minus, N)),
    ]
    for name, (good, m) in res:
        sr.check(checks, name, good, m)
    check_galois(E, model, N, None, checks)
    rec = None
    if N >= 3:
        try:
            rec = reconstruct_field_elem(root * root)
        except ReconstructionFailed:
            rec = None
        sr.check(checks, "y^2 = f(f - t) reconstructed exactly", rec == g, N)
    return BuildingBlock(E, f, g, root, (e_plus, e_minus), rec, N, checks)


# --- patching -----------------------------------------------------------------------------------
@dataclass
class PatchedGalois:
    galois: GaloisAlgebra
    N_eff: int
    checks: list = field(default_factory=list)


def patch_galois(p: PatchingProblem, algebras: list[GaloisAlgebra], bounds=None) -> PatchedGalois:
    """Patch G-Galois algebras whose transitions are equivariant algebra isomorphisms."""
    G = algebras[0].group
    if any(E.group != G for E in algebras):
        raise InputError("all patches need the same group")
    model, window, N = p.model, p.window, p.N
    checks: list = []
    acts = [E.action_lm(model, N, window) for E in algebras]
    for i, T in enumerate(p.transitions):
        ok, mod = True, N
        for g in range(G.order):
            good, m = sr.agree(T * acts[i][g], acts[-1][g] * T, N)
            ok &= good
            mod = min(mod, m)
        sr.check(checks, f"transition {i + 1} is G-equivariant", ok, mod)
        if not ok:
            raise NotMultiplicative(f"transition {i + 1} is not G-equivariant (mod t^{mod})")
    s = solve(p)
    alg = patch_algebra(p, [E.algebra for E in algebras], bounds, solution=s)
    checks.extend(alg.checks)
    Vs = evaluate_solution(p, s)
    sides = []
    for V, rho in zip(Vs, acts):
        Vinv = V.inverse(window)
        sides.append([Vinv * r * V for r in rho])
    ref = sides[-1]
    for i, side in enumerate(sides[:-1]):
        ok, mod = True, s.N_eff
        for g in range(G.order):
            good, m = sr.agree(side[g], ref[g], s.N_eff)
            ok &= good
            mod = min(mod, m)
        sr.check(checks, f"patch {i + 1} and patch {p.r} actions agree", ok, mod)
    N_eff = min([alg.N_eff] + [L.abs_prec for L in ref])
    out = GaloisAlgebra(alg, G, ref)
    check_galois(out, model, N_eff, window, checks)
    return PatchedGalois(out, N_eff, checks)


# --- the Klein-four realization ---------------------------------------------------------------
def _split_transition(ct: CosetTable, block: BuildingBlock, ref_index: dict, N: int) -> TMatrix:
    """Equivariant isomorphism Ind_H^G E -> Ind_1^G F over the generic model:
    phi -> (x -> chi(phi(x))) with chi(1) = 1, chi(y) = root."""
    model = block.root.ring
    k = 2
    n = ct.m * k
    r = block.root.M.entry(0, 0)
    zero = TElem.zero(model, N)
    one = TElem.one(model, N)
    gen = ct.H[1]
    entries = [[zero] * n for _ in range(n)]
    for i in range(ct.m):
        c = ct.reps[i]
        ch = ct.G.mul(c, gen)
        # basis vector 1 of copy i: chi(1) = 1 at c and at c*gen
        entries[ref_index[c]][i * k] = one
        entries[ref_index[ch]][i * k] = one
        # basis vector y: chi(y) = root at c, chi(gen^-1 y) = -root at c*gen
        entries[ref_index[c]][i * k + 1] = r
        entries[ref_index[ch]][i * k + 1] = -r
    return TMatrix.from_entries(model, entries, N)


@dataclass
class KleinReport:
    patched: PatchedGalois
    blocks: tuple
    dimension: int
    invariant_dimension: int
    N: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["residual_is_zero"] for c in self.checks)


def klein4_demo(N: int = 8, field_: Field = QQ) -> KleinReport:
    """Z/2 x Z/2 from quadratic blocks y^2 = x(x - t) at x = 0 and
    y^2 = (x - 1)(x - 1 - t) at x = 1, patched over three patches."""
    field_.require_odd("the Klein-four demo")
    G = FiniteGroup.klein4()  # elements (a, b) -> 2a + b
    x = RatFunc.x(field_)
    blocks = (building_block_quadratic(x, N), building_block_quadratic(x - 1, N))
    subgroups = ((0, 2), (0, 1))
    ct_ref = CosetTable.make(G, (0,), reps=tuple(range(G.order)))
    ref = induce_galois(ct_ref, trivial_galois(field_))
    ref_index = {c: i for i, c in enumerate(ct_ref.reps)}
    algs, trans = [], []
    for blk, H in zip(blocks, subgroups):
        ct = CosetTable.make(G, H)
        algs.append(induce_galois(ct, blk.galois))
        trans.append(_split_transition(ct, blk, ref_index, N))
    algs.append(ref)
    p = make_problem("multi", trans, N, field_=field_, r=3)
    patched = patch_galois(p, algs)
    checks = list(patched.checks)
    for i, blk in enumerate(blocks):
        sr.check(checks, f"block {i + 1}: y^2 = f(f - t) reconstructed exactly",
                 blk.relation_reconstructed == blk.relation, N)
    model = p.model
    rho = patched.galois.action_lm(model, patched.N_eff)
    d, ok, m = invariant_dimension(rho, model, patched.N_eff, field_)
    sr.check(checks, "invariants have dimension 1", ok and d == 1, m)
    sr.check(checks, "patched algebra has dimension 4", patched.galois.algebra.n == 4, None)
    return KleinReport(patched, blocks, patched.galois.algebra.n, d, patched.N_eff, checks)
