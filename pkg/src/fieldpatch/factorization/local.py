"""Unit factorization in k((x))[[t]] = k[[x,t]]-units times k(x)[[t]]-units."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotUnit
from ..exactalg import TruncLaurent
from ..trings import RingId, TElem, TMatrix, embed, invert_unit
from .context import FactorContext
from .near_identity import factor_near_identity


@dataclass
class UnitFactorResult:
    b: TElem  # unit over R1
    c: TElem  # unit over R2 (exact rational coefficients)
    s: int  # x-order of the reduction of a
    trace: list = field(default_factory=list)
    checks: list = field(default_factory=list)


def unit_factor_local(a: TElem, M: int = 16, N: int | None = None) -> UnitFactorResult:
    """a = b * c with b a unit of k[[x,t]] and c a unit of k(x)[[t]]."""
    F = a.field
    R0 = RingId.local(F, "R0")
    R1 = RingId.local(F, "R1")
    R2 = RingId.local(F, "R2")
    if a.ring != R0:
        a = embed(a, R0, M)
    if N is not None:
        a = a.truncate(min(N, a.prec))
    N = a.prec
    a0 = a.coeffs[0]
    if a0.is_zero():
        raise NotUnit("reduction modulo t vanishes on the x-window")
    s = a0.valuation()
    ubar = a0.shift(-s)  # unit of k[[x]]
    u = TElem(R1, [ubar] + [TruncLaurent.zero(F, None)] * (N - 1))
    uinv = invert_unit(u, M)
    xs_inv = TruncLaurent.monomial(F, -s)
    a_norm = TElem(R0, [c * xs_inv for c in (embed(uinv, R0) * a).coeffs])
    ctx = FactorContext.local(F, N, M)
    res = factor_near_identity(TMatrix.from_entries(R0, [[a_norm]], N), ctx)
    bp = res.A1.factors[0].payload.entry(0, 0)
    cp = res.A2.factors[0].payload.entry(0, 0)
    b = u * bp
    xs = TruncLaurent.monomial(F, s).to_ratfunc()
    c = TElem(R2, [co * xs for co in cp.coeffs])
    out = UnitFactorResult(b, c, s, res.trace)
    prod = embed(b, R0) * embed(c, R0)
    ok = prod.agrees(a)
    out.checks.append({"name": "a = b*c", "modulus": N, "residual_is_zero": ok})
    okb = b.membership_ok() and R1.unit_coeff(b.coeffs[0])
    okc = c.membership_ok() and R2.unit_coeff(c.coeffs[0])
    out.checks.append({"name": "b unit of R1", "modulus": N, "residual_is_zero": okb})
    out.checks.append({"name": "c unit of R2", "modulus": N, "residual_is_zero": okc})
    if not (ok and okb and okc):
        raise AssertionError(f"unit factorization failed its own verification: {out.checks}")
    return out


