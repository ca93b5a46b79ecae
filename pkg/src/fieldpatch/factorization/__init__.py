"""Matrix factorization over patch fields and Weierstrass preparation."""

from .context import FactorContext, FactorResult, TraceStep
from .general import as_lmatrix, factor_general, factor_overlapping
from .local import UnitFactorResult, unit_factor_local
from .near_identity import audit_trace, factor_near_identity
from .weierstrass import WeierstrassResult, weierstrass_prep

__all__ = [
    "FactorContext",
    "FactorResult",
    "TraceStep",
    "UnitFactorResult",
    "WeierstrassResult",
    "as_lmatrix",
    "audit_trace",
    "factor_general",
    "factor_near_identity",
    "factor_overlapping",
    "unit_factor_local",
    "weierstrass_prep",
]
