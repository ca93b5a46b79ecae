"""Exact arithmetic over k, k[x], k(x) and k((x))."""

from .divisors import (
    INF,
    Divisor,
    PartialFractions,
    check_coprime,
    coprime_base,
    in_riemann_roch_space,
    partial_fractions,
    rr_basis,
    rr_certificate,
    support_split,
)
from .field import QQ, Field
from .laurent import TruncLaurent, from_ratfunc, series_expand
from .pade import PadeResult, coefficient_field, pade_reconstruct
from .poly import Poly, poly_gcd
from .ratfunc import RatFunc, RatFuncField, derive_x
from .upoly import UPoly, series_inv, series_mul, upoly_gcd, upoly_xgcd

__all__ = [
    "INF",
    "QQ",
    "Divisor",
    "Field",
    "PadeResult",
    "PartialFractions",
    "Poly",
    "RatFunc",
    "RatFuncField",
    "TruncLaurent",
    "UPoly",
    "check_coprime",
    "coefficient_field",
    "coprime_base",
    "derive_x",
    "from_ratfunc",
    "in_riemann_roch_space",
    "pade_reconstruct",
    "partial_fractions",
    "poly_gcd",
    "rr_basis",
    "rr_certificate",
    "series_expand",
    "series_inv",
    "series_mul",
    "support_split",
    "upoly_gcd",
    "upoly_xgcd",
]
