"""Rational reconstruction of truncated power series (Pade approximants)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import flint

from ..errors import InputError, ReconstructionFailed
from .field import Field
from .ratfunc import RatFunc, RatFuncField
from .upoly import UPoly, series_mul


def coefficient_field(values: Sequence):
    """The field (k or k(x)) that a list of coefficients lives in."""
    for v in values:
        if isinstance(v, RatFunc):
            return RatFuncField(v.field)
    for v in values:
        if isinstance(v, flint.fmpq):
            return Field(0)
        if isinstance(v, flint.nmod):
            return Field(v.modulus())
    raise InputError("cannot infer a coefficient field from an empty or untyped series")


@dataclass(frozen=True)
class PadeResult:
    num: UPoly
    den: UPoly  # den(0) == 1


def pade_reconstruct(series: Sequence, dnum: int, dden: int, K=None) -> PadeResult:
    """Find P/Q with deg P <= dnum, deg Q <= dden, Q(0) = 1 and
    Q * series = P mod t^N, where N = len(series)."""
    N = len(series)
    if dnum < 0 or dden < 0:
        raise InputError("degree bounds must be nonnegative")
    if dnum + dden >= N:
        raise InputError(f"bounds ({dnum}, {dden}) need more than {N} coefficients")
    if K is None:
        K = coefficient_field(series)
    S = UPoly(K, series)
    r0, r1 = UPoly.monomial(K, N), S
    v0, v1 = UPoly(K, []), UPoly(K, [K.one])
    while r1.degree() > dnum:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        v0, v1 = v1, v0 - q * v1
    P, Q = r1, v1
    if Q.degree() > dden or Q[0] == 0:
        raise ReconstructionFailed(f"no rational function of type ({dnum}, {dden}) matches the series")
    inv = K.one / Q[0]
    P, Q = P * inv, Q * inv
    check = series_mul(Q.c, S.c, N, K.zero)
    if UPoly(K, check) != P.truncate(N):
        raise ReconstructionFailed("cross-multiplication check failed")
    return PadeResult(P, Q)
