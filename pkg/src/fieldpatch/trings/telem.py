"""Truncated t-adic elements sum_{j<N} c_j t^j tagged with a coefficient ring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import InexactDivision, InputError, NonUnit, NoInclusion, RingMismatch, WindowExceeded
from ..exactalg import RatFunc, TruncLaurent
from .rings import RingId


def coeff_zero(ring: RingId):
    if ring.laurent:
        return TruncLaurent.zero(ring.field, None)
    return RatFunc.const(ring.field, 0)


def coeff_one(ring: RingId):
    if ring.laurent:
        return TruncLaurent.const(ring.field, 1, None)
    return RatFunc.const(ring.field, 1)


def coeff_is_zero(c) -> bool:
    return c.is_zero()


def coeff_inverse(ring: RingId, c, window: int | None = None):
    if ring.laurent:
        return c.inverse(window if window is not None else c.prec)
    return c.inv()


def conv(a: Sequence, b: Sequence, n: int, zero) -> list:
    """First n coefficients of the product of two t-series."""
    out = []
    la, lb = len(a), len(b)
    for k in range(n):
        acc = zero
        for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
            x = a[i]
            if x.is_zero() and (not hasattr(x, "prec") or x.prec is None):
                continue
            y = b[k - i]
            if y.is_zero() and (not hasattr(y, "prec") or y.prec is None):
                continue
            acc = acc + x * y
        out.append(acc)
    return out


@dataclass(frozen=True)
class TValuation:
    value: int
    exact: bool

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">= {self.value}"


class TElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingId, coeffs: Sequence, check: bool = True):
        cs = tuple(ring.coerce(c) for c in coeffs)
        if not cs:
            raise InputError("a truncated element needs precision >= 1")
        if check:
            for c in cs:
                ring.require_coeff(c)
        self.ring = ring
        self.coeffs = cs

    @classmethod
    def _raw(cls, ring: RingId, coeffs) -> "TElem":
        obj = object.__new__(cls)
        obj.ring = ring
        obj.coeffs = tuple(coeffs)
        if __debug__:
            for c in obj.coeffs:
                ring.require_coeff(c)
        return obj

    @classmethod
    def unchecked(cls, ring: RingId, coeffs: Sequence) -> "TElem":
        """A claimed element whose membership has not been verified."""
        return cls(ring, coeffs, check=False)

    @classmethod
    def zero(cls, ring: RingId, N: int) -> "TElem":
        return cls._raw(ring, [coeff_zero(ring)] * N)

    @classmethod
    def one(cls, ring: RingId, N: int) -> "TElem":
        return cls.const(ring, coeff_one(ring), N)

    @classmethod
    def const(cls, ring: RingId, c, N: int) -> "TElem":
        c = ring.coerce(c)
        return cls(ring, [c] + [coeff_zero(ring)] * (N - 1))

    @classmethod
    def t_power(cls, ring: RingId, k: int, N: int) -> "TElem":
        cs = [coeff_zero(ring)] * N
        if k < N:
            cs[k] = coeff_one(ring)
        return cls._raw(ring, cs)

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    @property
    def field(self):
        return self.ring.field

    def membership_ok(self) -> bool:
        return all(self.ring.coeff_ok(c) for c in self.coeffs)

    # --- arithmetic ---------------------------------------------------------------
    def _same(self, other: "TElem") -> None:
        if not isinstance(other, TElem):
            raise InputError("expected a truncated element")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> "TElem":
        if isinstance(other, TElem):
            self._same(other)
            return other
        return TElem.const(self.ring, other, self.prec)

    def __add__(self, other):
        o = self._lift(other)
        n = min(self.prec, o.prec)
        return TElem._raw(self.ring, [a + b for a, b in zip(self.coeffs[:n], o.coeffs[:n])])

    __radd__ = __add__

    def __neg__(self):
        return TElem._raw(self.ring, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        n = min(self.prec, o.prec)
        return TElem._raw(self.ring, [a - b for a, b in zip(self.coeffs[:n], o.coeffs[:n])])

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TElem):
            c = self.ring.coerce(other)
            self.ring.require_coeff(c)
            return TElem._raw(self.ring, [a * c for a in self.coeffs])
        self._same(other)
        n = min(self.prec, other.prec)
        return TElem._raw(self.ring, conv(self.coeffs, other.coeffs, n, coeff_zero(self.ring)))

    __rmul__ = __mul__

    def scale_coeffs(self, c) -> "TElem":
        """Multiply every coefficient by c without a membership check of c."""
        return TElem._raw(self.ring, [a * c for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TElem):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def agrees(self, other: "TElem") -> bool:
        """Equal modulo t^min(prec) (and modulo x-precision for series)."""
        self._same(other)
        n = min(self.prec, other.prec)
        return all((a - b).is_zero() for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def truncate(self, N: int) -> "TElem":
        if N < 1:
            raise InputError("precision must be >= 1")
        if N > self.prec:
            raise InputError(f"cannot raise precision from {self.prec} to {N}")
        return TElem._raw(self.ring, self.coeffs[:N])

    def coeff(self, j: int):
        if j >= self.prec:
            raise InputError(f"coefficient t^{j} beyond precision {self.prec}")
        return self.coeffs[j]

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero() and (not self.ring.laurent or c.prec is None):
                continue
            mon = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            s = str(c)
            if not mon:
                parts.append(s)
            else:
                parts.append(f"({s})*{mon}" if s != "1" else mon)
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.prec})"

    def __repr__(self) -> str:
        return f"TElem[{self.ring}]({self})"


def elem_arith(a: TElem, b: TElem, op: str) -> TElem:
    if not isinstance(a, TElem) or not isinstance(b, TElem):
        raise InputError("elem_arith takes two truncated elements")
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x"):
        return a * b
    raise InputError(f"unknown operation {op!r}")


def invert_unit(a: TElem, window: int | None = None) -> TElem:
    """Inverse of a unit by the recursion b_k = -c0^{-1} sum_{j>=1} a_j b_{k-j}."""
    ring = a.ring
    c0 = a.coeffs[0]
    if not ring.unit_coeff(c0):
        raise NonUnit(f"constant coefficient {c0} is not a unit of {ring}")
    inv0 = coeff_inverse(ring, c0, window)
    out = [inv0]
    zero = coeff_zero(ring)
    for k in range(1, a.prec):
        acc = zero
        for j in range(1, k + 1):
            aj = a.coeffs[j]
            if aj.is_zero() and (not ring.laurent or aj.prec is None):
                continue
            acc = acc + aj * out[k - j]
        out.append(-(acc * inv0))
    return TElem._raw(ring, out)


def t_valuation(a: TElem) -> TValuation:
    for j, c in enumerate(a.coeffs):
        if not c.is_zero():
            return TValuation(j, True)
    return TValuation(a.prec, False)


def t_shift(a: TElem, s: int, allow_windowed: bool = False) -> TElem:
    """Multiply by t^s.  Positive s keeps the coefficient list length plus s;
    negative s requires the low |s| coefficients to vanish exactly (or, with
    ``allow_windowed``, to vanish modulo the x-window)."""
    if s >= 0:
        return TElem._raw(a.ring, [coeff_zero(a.ring)] * s + list(a.coeffs))
    k = -s
    if k >= a.prec:
        raise InexactDivision(f"shift by t^{s} leaves no known coefficients")
    for c in a.coeffs[:k]:
        if not c.is_zero():
            raise InexactDivision(f"element is not divisible by t^{k}")
        if a.ring.laurent and c.prec is not None and not allow_windowed:
            raise InexactDivision("divisibility by t is not certified beyond the x-window")
    return TElem._raw(a.ring, a.coeffs[k:])


def embed(a: TElem, target: RingId, window: int | None = None) -> TElem:
    """Image of a under the canonical inclusion into ``target``."""
    if not a.ring.includes_into(target):
        raise NoInclusion(f"no inclusion {a.ring} -> {target}")
    cs = [a.ring.convert_coeff(c, target, window) for c in a.coeffs]
    return TElem(target, cs)


def reduce_mod_t(a: TElem):
    return a.coeffs[0]


def window_of(a: TElem) -> int | None:
    """Smallest x-precision among the coefficients (None if all exact)."""
    if not a.ring.laurent:
        return None
    ps = [c.prec for c in a.coeffs if c.prec is not None]
    return min(ps) if ps else None


def require_window(a: TElem, need: int) -> None:
    w = window_of(a)
    if w is not None and w < need:
        raise WindowExceeded(f"x-precision {w} is below the required {need}")
