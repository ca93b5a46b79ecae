"""Truncated t-adic rings over patches of P^1 and at the point x = 0."""

from .dvr import LMatrix, identity_lmatrix, lmatrix_from_rows
from .exact import ExactXT, XMatrix
from .fmatrix import Factor, FMatrix
from .patchset import PatchSet, parse_patchset, parse_place
from .rings import LOCAL_NAMES, RingId, ring_make
from .telem import (
    TElem,
    TValuation,
    coeff_one,
    coeff_zero,
    elem_arith,
    embed,
    invert_unit,
    reduce_mod_t,
    t_shift,
    t_valuation,
)
from .tmatrix import TMatrix, tmatrix_t_valuation

__all__ = [
    "LOCAL_NAMES",
    "ExactXT",
    "FMatrix",
    "Factor",
    "LMatrix",
    "PatchSet",
    "RingId",
    "TElem",
    "TMatrix",
    "TValuation",
    "XMatrix",
    "coeff_one",
    "coeff_zero",
    "elem_arith",
    "embed",
    "identity_lmatrix",
    "invert_unit",
    "lmatrix_from_rows",
    "parse_patchset",
    "parse_place",
    "reduce_mod_t",
    "ring_make",
    "t_shift",
    "t_valuation",
    "tmatrix_t_valuation",
]
