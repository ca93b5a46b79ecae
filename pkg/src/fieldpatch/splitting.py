"""Additive decompositions modulo t, constant lifts, intersections and
rational reconstruction.

Global split: a rational function a = b + c where c collects the
principal parts of a at the places of U1 (so c is regular away from U1,
in particular on U2) and b is what is left (regular on U1, except for an
allowed pole of order <= N_P at an auxiliary place P of U1).

Local split: a Laurent series is cut into its nonnegative part (in k[[x]])
and its negative part (a polynomial in 1/x, hence in k(x)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextInvalid, InputError, MembershipFailure, NotEqual, ReconstructionFailed
from .exactalg import (
    INF,
    Poly,
    RatFunc,
    RatFuncField,
    TruncLaurent,
    pade_reconstruct,
    partial_fractions,
    support_split,
)
from .trings import ExactXT, LMatrix, PatchSet, RingId, TElem, embed


@dataclass(frozen=True)
class GlobalSplitContext:
    """Data for the global split.

    ``constants_to`` decides where the constant term goes ("b" or "c").
    Places in neither U1 nor U2 always go to the b side.
    """

    U1: PatchSet
    U2: PatchSet
    P: object = None  # a place of U1 (Poly or INF) carrying the pole budget
    N_P: int = 0
    constants_to: str = "b"

    def validate(self) -> None:
        if self.U1.field is not self.U2.field:
            raise ContextInvalid("patches over different fields")
        if not self.U1.is_proper() or not self.U2.is_proper():
            raise ContextInvalid("both patches must be proper subsets of P1")
        if not self.U1.isdisjoint(self.U2):
            raise ContextInvalid(f"patches {self.U1} and {self.U2} intersect")
        if self.N_P < 0:
            raise ContextInvalid("pole budget must be nonnegative")
        if self.constants_to not in ("b", "c"):
            raise ContextInvalid("constants_to must be 'b' or 'c'")
        if self.N_P > 0:
            if self.P is None:
                raise ContextInvalid("a positive pole budget needs a place P")
            if self.P is not INF:
                if not isinstance(self.P, Poly) or self.P.degree() < 1 or not self.P.is_monic():
                    raise ContextInvalid("P must be a monic place polynomial or INF")
            if not self.U1.contains_place(self.P):
                raise ContextInvalid(f"P = {self.P} is not contained in U1")

    @property
    def field(self):
        return self.U1.field


def _finite_poles_in(den: Poly, U: PatchSet) -> tuple[Poly, Poly]:
    """Split den = inside * outside by whether roots lie in U."""
    if U.cofinite:
        outside, inside = support_split(den, U.support)
    else:
        inside, outside = support_split(den, U.support)
    return inside, outside


def _p_adic_tail(num: Poly, P: Poly, k: int, keep: int) -> RatFunc:
    """For num/P^k (deg num < k deg P), the terms with pole order <= keep."""
    F = num.field
    digits = []
    rest = num
    for _ in range(k):
        rest, d = divmod(rest, P)
        digits.append(d)
    out = RatFunc(Poly(F))
    for j, d in enumerate(digits):
        order = k - j
        if 0 < order <= keep and not d.is_zero():
            out = out + RatFunc(d, P**order)
    return out


def split_mod_t_global(a: RatFunc, ctx: GlobalSplitContext) -> tuple[RatFunc, RatFunc]:
    """Return (b, c) with a = b + c exactly; c regular on U2, b regular on U1
    apart from a pole of order <= N_P at P."""
    ctx.validate()
    F = ctx.field
    if a.field is not F:
        raise InputError("rational function over the wrong field")
    zero = RatFunc(Poly(F))
    if a.is_zero():
        return zero, zero
    inside, outside = _finite_poles_in(a.den, ctx.U1)
    moduli = [m for m in (inside, outside) if m.degree() > 0]
    pf = partial_fractions(a, moduli)
    c = pf.part(inside) if inside.degree() > 0 else zero
    poly = pf.polypart
    const = poly[0]
    if ctx.U1.contains_inf():
        c = c + RatFunc(poly - const)
    if ctx.constants_to == "c":
        c = c + RatFunc(Poly(F, [const]))
    if ctx.N_P > 0:
        if ctx.P is INF:
            kept = Poly(F, [0] + [poly[j] for j in range(1, ctx.N_P + 1)])
            c = c - RatFunc(kept)
        else:
            cp = pf.part(inside) if inside.degree() > 0 else zero
            if not cp.is_zero():
                dP, drest = support_split(cp.den, ctx.P)
                if dP.degree() > 0:
                    sub = partial_fractions(cp, [m for m in (dP, drest) if m.degree() > 0])
                    at_p = sub.part(dP)
                    k = at_p.pole_order(ctx.P)
                    num = at_p.num * (ctx.P**k // at_p.den)
                    c = c - _p_adic_tail(num, ctx.P, k, ctx.N_P)
    b = a - c
    _check_global_split(a, b, c, ctx)
    return b, c


def _check_global_split(a: RatFunc, b: RatFunc, c: RatFunc, ctx: GlobalSplitContext) -> None:
    if b + c != a:
        raise AssertionError("split does not re-sum")
    if not ctx.U2.regular(c):
        raise AssertionError(f"c = {c} is not regular on U2")
    inside, outside = _finite_poles_in(c.den, ctx.U1)
    if outside.degree() > 0:
        raise AssertionError(f"c = {c} has poles outside U1")
    U1 = ctx.U1
    if ctx.N_P > 0:
        P = ctx.P
        U1 = U1.difference(PatchSet.points(ctx.field, [P]))
        if not b.is_zero():
            if P is INF:
                if b.num.degree() - b.den.degree() > ctx.N_P:
                    raise AssertionError("pole budget at infinity exceeded")
            elif b.pole_order(P) > ctx.N_P:
                raise AssertionError("pole budget at P exceeded")
    if not U1.regular(b):
        raise AssertionError(f"b = {b} has a pole on U1")


def split_mod_t_local(a: TruncLaurent) -> tuple[TruncLaurent, TruncLaurent]:
    """(nonnegative part, negative part); the negative part is exact."""
    return a.nonneg_part(), a.neg_part()


def lift_constant(b, target: RingId, N: int) -> TElem:
    """The t-constant element with reduction b."""
    if N < 1:
        raise InputError("precision must be >= 1")
    c = target.coerce(b)
    if not target.coeff_ok(c):
        raise MembershipFailure(f"{b} is not in the coefficient ring of {target}")
    return TElem.const(target, c, N)


def intersect_elem(e1: TElem, e2: TElem, window: int | None = None) -> TElem:
    """Given the same element over two rings, return it over their intersection
    ring (global: union of the patches; local: R1 and R2 give R)."""
    for e in (e1, e2):
        bad = [c for c in e.coeffs if not e.ring.coeff_ok(c)]
        if bad:
            raise MembershipFailure(f"coefficient {bad[0]} is not in the coefficient ring of {e.ring}")
    if e1.prec != e2.prec:
        raise InputError("intersect_elem needs equal precisions")
    r1, r2 = e1.ring, e2.ring
    if r1.model == "global" and r2.model == "global":
        if e1.coeffs != e2.coeffs:
            raise NotEqual("the two elements differ in the ambient ring")
        union = RingId.global_(r1.patch.union(r2.patch))
        return TElem(union, e1.coeffs)
    if {r1.which, r2.which} == {"R1", "R2"}:
        a, b = (e1, e2) if r1.which == "R1" else (e2, e1)
        R0 = RingId.local(a.field, "R0")
        ea = embed(a, R0)
        eb = embed(b, R0, window if window is not None else _min_window(a))
        if not ea.agrees(eb):
            raise NotEqual("the two elements differ in k((x))[[t]]")
        return TElem(RingId.local(a.field, "R"), b.coeffs)
    raise InputError(f"no intersection rule for {r1} and {r2}")


def _min_window(e: TElem) -> int | None:
    ps = [c.prec for c in e.coeffs if getattr(c, "prec", None) is not None]
    return min(ps) if ps else None


def default_bounds(N: int) -> tuple[int, int]:
    d = max((N - 1) // 2, 0)
    return d, d


def reconstruct_field_elem(e, dnum: int | None = None, dden: int | None = None) -> ExactXT:
    """Exact P(x,t)/Q(x,t) matching e modulo its precision.

    ``e`` is a TElem with rational coefficients, an ``LMatrix`` of shape
    1x1 over the generic model, or a pair (shift, coefficient list)."""
    if isinstance(e, TElem):
        if e.ring.laurent:
            cs = []
            for c in e.coeffs:
                if c.prec is not None:
                    raise ReconstructionFailed("x-windowed coefficients cannot be reconstructed exactly")
                cs.append(c.to_ratfunc())
        else:
            cs = list(e.coeffs)
        shift = 0
        field = e.field
    elif isinstance(e, LMatrix):
        if e.shape != (1, 1) or e.ring.laurent:
            raise InputError("reconstruction needs a 1x1 matrix over the generic model")
        shift = e.shift
        cs = [M[0][0] for M in e.M.data]
        field = e.ring.field
    else:
        shift, cs = e
        cs = list(cs)
        field = cs[0].field
    N = len(cs)
    if dnum is None or dden is None:
        dnum, dden = default_bounds(N)
    if dnum + dden >= N:
        raise InputError(f"bounds ({dnum}, {dden}) need more than {N} known coefficients")
    K = RatFuncField(field)
    res = pade_reconstruct(cs, dnum, dden, K)
    out = ExactXT(res.num, res.den)
    if shift:
        out = out * ExactXT.t(field, shift)
    # independent cross-multiplication check in k(x)[t]
    v, exp = (out * ExactXT.t(field, -shift)).expand(N) if not out.is_zero() else (0, [K.zero] * N)
    lhs = [K.zero] * v + exp if v >= 0 else None
    if lhs is None or [lhs[i] for i in range(N)] != [K(c) for c in cs]:
        raise ReconstructionFailed("reconstructed element does not reproduce the series")
    return out


__all__ = [
    "GlobalSplitContext",
    "default_bounds",
    "intersect_elem",
    "lift_constant",
    "reconstruct_field_elem",
    "split_mod_t_global",
    "split_mod_t_local",
]
