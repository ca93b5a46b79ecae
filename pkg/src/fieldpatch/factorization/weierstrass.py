"""Weierstrass preparation: f = b * u with b in the function field and u a unit.

Global case (f over a patch U): strip t^v; if the reduction f0 of f is
constant, take b = t^v.  Otherwise f0 itself is the constant lift, f / f0 is
congruent to 1 modulo t and factors as f1 * f2 with f1 regular off U and f2
a unit over U; then b = t^v f0 f1 and u = f2.  The exact form of b is
recovered by rational reconstruction in t.

Local case (f over k[[x,t]]): f = t^v f' and f' = b1 * c with b1 a unit
of k[[x,t]] and c in k(x)[[t]]; c lies in both rings, hence in
k[x]_(x)[[t]], and b = t^v c.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError, ReconstructionFailed, ZeroAtPrecision
from ..splitting import default_bounds, intersect_elem, reconstruct_field_elem
from ..trings import ExactXT, RingId, TElem, TMatrix, embed, invert_unit, t_shift, t_valuation
from .context import FactorContext
from .local import unit_factor_local
from .near_identity import factor_near_identity


@dataclass
class WeierstrassResult:
    b: ExactXT | None  # exact element of F, or None when unreconstructed
    b_series: TElem  # t^(-v) b as a truncated series over the ambient model
    v: int
    u: TElem
    N_eff: int
    checks: list = field(default_factory=list)

    @property
    def reconstructed(self) -> bool:
        return self.b is not None

    @property
    def flag(self) -> str:
        return "exact" if self.reconstructed else "Unreconstructed"


def weierstrass_prep(
    f: TElem,
    bounds: tuple[int, int] | None = None,
    P=None,
    N_P: int = 0,
    constants_to: str = "c",
    M: int = 16,
) -> WeierstrassResult:
    """Default convention: no auxiliary pole and constants on the unit side,
    which makes the non-unit factor the normalized one (and rational whenever
    the input factors rationally).  ``P``, ``N_P`` and ``constants_to`` select
    other splitting conventions."""
    if f.ring.model == "local":
        return _weierstrass_local(f, bounds, M)
    F = f.field
    U = f.ring.patch
    val = t_valuation(f)
    if not val.exact:
        raise ZeroAtPrecision(f"element vanishes modulo t^{f.prec}")
    v = val.value
    fp = t_shift(f, -v)
    N = fp.prec
    G = RingId.generic(F)
    f0 = fp.coeffs[0]
    if f0.is_constant() or U.is_empty() or U.is_full():
        b = ExactXT.t(F, v)
        res = WeierstrassResult(b, TElem.one(G, N), v, fp, f.prec)
        _check(res, f)
        return res
    inv0 = f0.inv()
    ftilde = TElem(G, [c * inv0 for c in fp.coeffs])
    ctx = FactorContext.global_(U.complement(), U, N, P, N_P, constants_to)
    fr = factor_near_identity(TMatrix.from_entries(G, [[ftilde]], N), ctx)
    f1 = fr.A1.factors[0].payload.entry(0, 0)
    u = fr.A2.factors[0].payload.entry(0, 0)
    series = TElem(G, [f0 * c for c in f1.coeffs])
    dn, dd = bounds if bounds is not None else default_bounds(N)
    try:
        b = reconstruct_field_elem((v, series.coeffs), dn, dd)
    except ReconstructionFailed:
        b = None
    res = WeierstrassResult(b, series, v, u, f.prec)
    _check(res, f)
    return res


def _weierstrass_local(f: TElem, bounds, M: int) -> WeierstrassResult:
    F = f.field
    R1 = RingId.local(F, "R1")
    if f.ring != R1:
        if not f.ring.includes_into(R1):
            raise InputError(f"local preparation needs an element of {R1}")
        f = embed(f, R1, M)
    val = t_valuation(f)
    if not val.exact:
        raise ZeroAtPrecision(f"element vanishes modulo t^{f.prec}")
    v = val.value
    fp = t_shift(f, -v, allow_windowed=True)
    uf = unit_factor_local(fp, M)
    b1 = uf.b
    c = intersect_elem(fp * invert_unit(b1, M), uf.c)
    dn, dd = bounds if bounds is not None else default_bounds(c.prec)
    try:
        b = reconstruct_field_elem((v, c.coeffs), dn, dd)
    except ReconstructionFailed:
        b = None
    res = WeierstrassResult(b, c, v, b1, f.prec)
    _check(res, f, M)
    return res


def _check(res: WeierstrassResult, f: TElem, M: int | None = None) -> None:
    """f = b u modulo t^N_eff; for exact b the identity is cross-multiplied."""
    model = f.ring.ambient()
    fm = embed(f, model, M)
    um = embed(res.u, model, M)
    n = f.prec
    unit_ok = res.u.membership_ok() and res.u.ring.unit_coeff(res.u.coeffs[0])
    res.checks.append({"name": f"u unit of {res.u.ring}", "modulus": n, "residual_is_zero": unit_ok})
    if res.b is not None:
        w, P, Q = res.b.normalized()
        K = res.b.K
        Pc = [P[i] if i <= P.degree() else K.zero for i in range(n)]
        Qc = [Q[i] if i <= Q.degree() else K.zero for i in range(n)]
        Pt = embed(TElem(RingId.generic(f.field), Pc), model, M) if model.laurent else TElem(model, Pc)
        Qt = embed(TElem(RingId.generic(f.field), Qc), model, M) if model.laurent else TElem(model, Qc)
        lhs = t_shift(Pt * um, w, allow_windowed=True).truncate(n)
        rhs = (Qt * fm).truncate(n)
        ok = lhs.agrees(rhs)
        name = "Q*f = t^v*P*u"
    else:
        bs = embed(res.b_series, model, M) if res.b_series.ring != model else res.b_series
        lhs = t_shift(bs * um, res.v, allow_windowed=True).truncate(n)
        ok = lhs.agrees(fm)
        name = "f = b*u (truncated b)"
    res.checks.append({"name": name, "modulus": n, "residual_is_zero": ok})
    if not (ok and unit_ok):
        raise AssertionError(f"preparation failed its own verification: {res.checks}")
