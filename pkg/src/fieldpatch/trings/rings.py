"""Ring descriptors for truncated t-adic coefficients.

Global rings are R^_U = O(U)[[t]] for a finite or cofinite U in P^1,
with exact rational-function coefficients.  Local rings live at the
point x = 0:

* ``R``  = k[x]_(x)[[t]]   (rational coefficients regular at 0)
* ``R1`` = k[[x, t]]       (x-series coefficients, no negative orders)
* ``R2`` = k(x)[[t]]       (rational coefficients, no condition)
* ``R0`` = k((x))[[t]]     (x-series coefficients, any orders)
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError, MembershipFailure, NegativeXValuation
from ..exactalg import INF, Field, Poly, RatFunc, TruncLaurent, from_ratfunc
from .patchset import PatchSet

LOCAL_NAMES = ("R", "R1", "R2", "R0")
_REGISTRY: dict = {}


@dataclass(frozen=True, eq=False)
class RingId:
    field: Field
    model: str  # "global" or "local"
    patch: PatchSet | None = None
    which: str | None = None

    def _key(self) -> tuple:
        return (self.field.char, self.model, self.patch, self.which)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingId) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # --- construction -----------------------------------------------------------
    @staticmethod
    def global_(patch: PatchSet) -> "RingId":
        return _intern(RingId(patch.field, "global", patch, None))

    @staticmethod
    def local(field: Field, which: str) -> "RingId":
        if which not in LOCAL_NAMES:
            raise InputError(f"unknown local ring {which!r}")
        return _intern(RingId(field, "local", None, which))

    @staticmethod
    def generic(field: Field) -> "RingId":
        return RingId.global_(PatchSet.generic(field))

    # --- classification ---------------------------------------------------------
    @property
    def laurent(self) -> bool:
        """Coefficients are windowed x-series (R1, R0) rather than RatFuncs."""
        return self.model == "local" and self.which in ("R1", "R0")

    def is_dvr(self) -> bool:
        """k(x)[[t]] and k((x))[[t]] are discrete valuation rings in t."""
        if self.model == "global":
            return self.patch.is_empty()
        return self.which in ("R2", "R0")

    def ambient(self) -> "RingId":
        """The DVR model this ring embeds in."""
        if self.model == "global":
            return RingId.generic(self.field)
        return RingId.local(self.field, "R0")

    def __str__(self) -> str:
        if self.model == "global":
            return f"global[{self.patch}]"
        return f"local[{self.which}]"

    __repr__ = __str__

    # --- coefficient predicates -------------------------------------------------
    def coerce(self, c):
        """Bring a scalar/Poly/RatFunc/TruncLaurent into this ring's coefficient type."""
        F = self.field
        if self.laurent:
            if isinstance(c, TruncLaurent):
                return c
            if isinstance(c, RatFunc):
                return from_ratfunc(c, None) if c.den.degree() == c.den.valuation() else _needs_window(c)
            if isinstance(c, Poly):
                return TruncLaurent.make(F, 0, c, None)
            return TruncLaurent.const(F, F(c))
        if isinstance(c, RatFunc):
            return c
        if isinstance(c, Poly):
            return RatFunc(c)
        if isinstance(c, TruncLaurent):
            raise InputError("x-series coefficient given to a rational-coefficient ring")
        return RatFunc(Poly(F, [F(c)]))

    def coeff_ok(self, c) -> bool:
        if self.model == "global":
            return self.patch.regular(c)
        if self.which == "R":
            return c.is_zero() or c.den.valuation() == 0
        if self.which == "R2":
            return True
        if self.which == "R1":
            return c.is_zero() or c.val >= 0
        return True

    def require_coeff(self, c) -> None:
        if self.laurent and self.which == "R1" and not c.is_zero() and c.val < 0:
            raise NegativeXValuation(f"coefficient {c} has a pole at x = 0, so it is not in {self}")
        if not self.coeff_ok(c):
            raise MembershipFailure(f"coefficient {c} is not in the coefficient ring of {self}")

    def unit_coeff(self, c) -> bool:
        """c is invertible in the coefficient ring."""
        if self.model == "global":
            return self.patch.unit(c)
        if self.which == "R":
            return not c.is_zero() and c.den.valuation() == 0 and c.num.valuation() == 0
        if self.which == "R2":
            return not c.is_zero()
        if self.which == "R1":
            return not c.is_zero() and c.val == 0
        return not c.is_zero()

    # --- inclusions ---------------------------------------------------------------
    def includes_into(self, other: "RingId") -> bool:
        if self == other:
            return True
        if self.field is not other.field:
            return False
        if self.model == "global":
            U = self.patch
            if other.model == "global":
                return other.patch.issubset(U)
            if other.which in ("R", "R1"):
                return U.contains_point(0)
            return True
        # local source
        if other.model == "global":
            V = other.patch
            if self.which == "R":
                return V.issubset(PatchSet.points(self.field, [Poly.x(self.field)]))
            if self.which == "R2":
                return V.is_empty()
            return False
        table = {
            "R": ("R1", "R2", "R0"),
            "R1": ("R0",),
            "R2": ("R0",),
            "R0": (),
        }
        return other.which in table[self.which]

    def convert_coeff(self, c, target: "RingId", window: int | None):
        """Image of a coefficient under the inclusion self -> target."""
        if not target.laurent:
            return c
        if self.laurent:
            return c
        if target.which == "R1" and not c.is_zero() and c.ord_x() < 0:
            raise NegativeXValuation(f"{c} has a pole at x = 0")
        if c.is_zero():
            return TruncLaurent.zero(self.field, None)
        if c.den.degree() == c.den.valuation():
            return from_ratfunc(c, None)
        if window is None:
            raise InputError("embedding rational coefficients into x-series needs a window M")
        return from_ratfunc(c, window)

    # --- serialization --------------------------------------------------------------
    def descriptor(self) -> dict:
        F = self.field
        if self.model == "local":
            return {"model": "local", "ring": self.which}

        def enc(p):
            return "inf" if p is INF else [F.to_str(c) for c in p.coeffs()]

        key = "excluded" if self.patch.cofinite else "included"
        return {"model": "global", key: [enc(p) for p in self.patch.listed()]}


def _needs_window(c):
    raise InputError(f"coefficient {c} is not a Laurent polynomial; expand it with an explicit window")


def _intern(r: RingId) -> RingId:
    return _REGISTRY.setdefault(r, r)


def ring_make(descriptor, field: Field | None = None) -> RingId:
    """Build a RingId from a descriptor dict (the JSON encoding) or a PatchSet."""
    if isinstance(descriptor, RingId):
        return descriptor
    if isinstance(descriptor, PatchSet):
        return RingId.global_(descriptor)
    if field is None:
        field = Field(0)
    if not isinstance(descriptor, dict):
        raise InputError(f"bad ring descriptor {descriptor!r}")
    model = descriptor.get("model")
    if model == "local":
        return RingId.local(field, descriptor.get("ring"))
    if model != "global":
        raise InputError(f"unknown ring model {model!r}")

    def dec(p):
        if p == "inf":
            return INF
        if not isinstance(p, list):
            raise InputError(f"bad place {p!r}")
        return Poly(field, [field(c) for c in p])

    if "excluded" in descriptor:
        return RingId.global_(PatchSet.excluding(field, [dec(p) for p in descriptor["excluded"]]))
    if "included" in descriptor:
        return RingId.global_(PatchSet.points(field, [dec(p) for p in descriptor["included"]]))
    raise InputError("global ring descriptor needs 'excluded' or 'included'")
