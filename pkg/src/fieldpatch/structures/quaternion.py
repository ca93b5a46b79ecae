"""Splitting of the quaternion algebra (1 - xt, 1 - xt) over k[x][[t]]."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError
from ..exactalg import QQ, Field, Poly, RatFunc
from ..trings import ExactXT, LMatrix, RingId, TElem, TMatrix, invert_unit
from . import series as sr
from .algebra import AlgebraPresentation, check_algebra_exact, quaternion_algebra
from .galois import binom_half


def sqrt_one_minus_xt(field_: Field, N: int) -> list[Poly]:
    """Coefficients f_j = binom(1/2, j) (-x)^j of f = sqrt(1 - xt)."""
    field_.require_odd("the square root of 1 - xt")
    x = Poly.x(field_)
    return [Poly.const(field_, field_(binom_half(j) * (-1) ** j)) * x**j for j in range(N)]


@dataclass
class QuaternionReport:
    N: int
    f: list  # Poly coefficients of f in t
    algebra: AlgebraPresentation
    idempotent: LMatrix  # coordinate column of (1 + a/f)/2
    idempotent_rank: int  # rank of left multiplication by the idempotent at t = 0
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["residual_is_zero"] for c in self.checks)


def quaternion_split_demo(N: int = 16, field_: Field = QQ) -> QuaternionReport:
    """D = (1 - xt, 1 - xt) with basis 1, a, b, ab becomes split over k[x][[t]]:
    f = sqrt(1 - xt) gives zero divisors a - f, a + f and the idempotent (1 + a/f)/2."""
    field_.require_odd("the quaternion demo")
    if N < 1:
        raise InputError("precision must be >= 1")
    F = field_
    fs = sqrt_one_minus_xt(F, N)
    checks: list = []
    # f^2 = 1 - xt modulo t^N, over k[x]
    sq = [Poly(F, []) for _ in range(N)]
    for i in range(N):
        for j in range(N - i):
            sq[i + j] = sq[i + j] + fs[i] * fs[j]
    target = [Poly.const(F, 1), -Poly.x(F)] + [Poly(F, [])] * max(N - 2, 0)
    sr.check(checks, "f^2 = 1 - xt", sq == target[:N], N)
    q = ExactXT.from_t_coeffs([RatFunc.const(F, 1), -RatFunc.x(F)])
    D = quaternion_algebra(F, q, q)
    c = D.consts
    one = ExactXT.const(F, 1)
    rel_a = c[1][1][0] == q and all(c[1][1][k].is_zero() for k in (1, 2, 3))
    rel_b = c[2][2][0] == q and all(c[2][2][k].is_zero() for k in (1, 2, 3))
    rel_ab = all(c[1][2][k] == -c[2][1][k] for k in range(4)) and c[1][2][3] == one
    sr.check(checks, "a^2 = 1 - xt", rel_a, None)
    sr.check(checks, "b^2 = 1 - xt", rel_b, None)
    sr.check(checks, "ab = -ba", rel_ab, None)
    check_algebra_exact(D, checks)
    model = RingId.generic(F)
    fser = TElem(model, [RatFunc(p) for p in fs])
    fl = LMatrix(0, TMatrix.from_entries(model, [[fser]], N))
    zero1 = sr.zero_lm(model, 1, 1, N)
    one1 = sr.exact_scalar(one, model, N)

    def vec(*cs):
        return LMatrix(0, sr.hstack(list(cs)).M.transpose())

    a_minus = vec(-fl, one1, zero1, zero1)
    a_plus = vec(fl, one1, zero1, zero1)
    prod = D.multiply(a_minus, a_plus, model, N)
    good, m = sr.agree(prod, sr.zero_lm(model, 4, 1, N), N)
    sr.check(checks, "(a - f)(a + f) = 0", good, m)
    good, m = sr.agree(D.multiply(a_plus, a_minus, model, N), sr.zero_lm(model, 4, 1, N), N)
    sr.check(checks, "(a + f)(a - f) = 0", good, m)
    half = sr.exact_scalar(ExactXT.const(F, F.one / F(2)), model, N)
    finv = LMatrix(0, TMatrix.from_entries(model, [[invert_unit(fser)]], N))
    e = vec(half, half * finv, zero1, zero1)
    good, m = sr.agree(D.multiply(e, e, model, N), e, N)
    sr.check(checks, "e^2 = e for e = (1 + a/f)/2", good, m)
    Le = sr.lincomb([sr.entry(e, k, 0) for k in range(4)], D.left_mult(model, N))
    at0 = [[Le.coeff(i, j, 0) for j in range(4)] for i in range(4)]
    rk = sr.rank(at0)
    sr.check(checks, "e is a rank-one idempotent (left multiplication has rank 2 of 4)", rk == 2, 1)
    return QuaternionReport(N, fs, D, e, rk, checks)
