"""Truncated Laurent series in x with absolute precision tracking.

A value is x^val * body + O(x^prec), where body is a polynomial with
nonzero constant term (or zero).  ``prec is None`` marks an exact
Laurent polynomial.  Precision propagates like p-adic arithmetic:

* sum:      prec = min(prec_a, prec_b)
* product:  prec = min(val_a + prec_b, val_b + prec_a)
* inverse:  prec = prec - 2*val
"""

from __future__ import annotations

from ..errors import InputError, WindowExceeded
from .field import Field
from .poly import Poly
from .ratfunc import RatFunc


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def poly_series_inverse(b: Poly, n: int) -> Poly:
    """1/b mod x^n by Newton iteration; b(0) must be nonzero."""
    F = b.field
    if n <= 0:
        return Poly(F)
    g = Poly(F, [F.one / b[0]])
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = b.mul_low(g, k)
        g = (g * 2 - g.mul_low(e, k)).truncate(k)
    return g


class TruncLaurent:
    __slots__ = ("field", "val", "body", "prec")

    def __init__(self, field: Field, low: int, coeffs=(), prec: int | None = None):
        self._set(field, low, Poly(field, coeffs), prec)

    def _set(self, field: Field, val: int, body: Poly, prec: int | None) -> None:
        if prec is not None:
            body = body.truncate(prec - val)
        if body.is_zero():
            val = 0 if prec is None else prec
        else:
            v = body.valuation()
            if v:
                body = body.shift_down(v)
                val += v
        self.field = field
        self.val = val
        self.body = body
        self.prec = prec

    @classmethod
    def make(cls, field: Field, val: int, body: Poly, prec: int | None) -> "TruncLaurent":
        obj = object.__new__(cls)
        obj._set(field, val, body, prec)
        return obj

    @classmethod
    def zero(cls, field: Field, prec: int | None = None) -> "TruncLaurent":
        return cls.make(field, 0, Poly(field), prec)

    @classmethod
    def const(cls, field: Field, c, prec: int | None = None) -> "TruncLaurent":
        return cls.make(field, 0, Poly(field, [c]), prec)

    @classmethod
    def monomial(cls, field: Field, e: int, c=1) -> "TruncLaurent":
        return cls.make(field, e, Poly(field, [c]), None)

    # --- accessors -----------------------------------------------------------
    @property
    def low(self) -> int:
        return self.val

    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """Zero at the known precision."""
        return self.body.is_zero()

    def valuation(self) -> int:
        if self.body.is_zero():
            raise WindowExceeded("valuation of a series that vanishes to its precision")
        return self.val

    def coeff(self, e: int):
        """Coefficient of x^e; raises beyond the known precision."""
        if self.prec is not None and e >= self.prec:
            raise WindowExceeded(f"coefficient x^{e} is beyond precision {self.prec}")
        return self.body[e - self.val] if e >= self.val else self.field.zero

    def terms(self) -> list[tuple[int, object]]:
        """Nonzero (exponent, coefficient) pairs in ascending order."""
        return [(self.val + i, c) for i, c in enumerate(self.body.coeffs()) if c != 0]

    def top(self) -> int:
        """Largest exponent stored (val - 1 for zero)."""
        return self.val + self.body.degree()

    # --- arithmetic ------------------------------------------------------------
    def _co(self, other) -> "TruncLaurent | None":
        if isinstance(other, TruncLaurent):
            return other
        if isinstance(other, RatFunc):
            return from_ratfunc(other, self.prec if self.prec is not None else None)
        try:
            return TruncLaurent.const(self.field, self.field(other))
        except InputError:
            return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        prec = _min_prec(self.prec, o.prec)
        if o.body.is_zero() and o.prec is None:
            return self
        if self.body.is_zero() and self.prec is None:
            return o
        val = min(self.val, o.val)
        body = self.body.shift_up(self.val - val) + o.body.shift_up(o.val - val)
        return TruncLaurent.make(self.field, val, body, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncLaurent.make(self.field, self.val, -self.body, self.prec)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if self.field.is_scalar(other):
            if other == 0:
                return TruncLaurent.zero(self.field, None)
            return TruncLaurent.make(self.field, self.val, self.body * other, self.prec)
        o = self._co(other)
        if o is None:
            return NotImplemented
        a, b = self, o
        if a.prec is None and b.prec is None:
            return TruncLaurent.make(a.field, a.val + b.val, a.body * b.body, None)
        cands = []
        if b.prec is not None:
            if a.body.is_zero() and a.prec is None:
                return TruncLaurent.zero(a.field, None)
            cands.append(a.val + b.prec)
        if a.prec is not None:
            if b.body.is_zero() and b.prec is None:
                return TruncLaurent.zero(a.field, None)
            cands.append(b.val + a.prec)
        prec = min(cands)
        val = a.val + b.val
        n = prec - val
        body = a.body.mul_low(b.body, n) if n > 0 else Poly(a.field)
        return TruncLaurent.make(a.field, val, body, prec)

    __rmul__ = __mul__

    def inverse(self, window: int | None = None) -> "TruncLaurent":
        """Multiplicative inverse.

        Exact non-monomial values need ``window`` (the absolute precision of
        the result).  Windowed values lose 2*val orders of precision.
        """
        if self.body.is_zero():
            if self.prec is None:
                raise ZeroDivisionError("inverse of zero")
            raise WindowExceeded("inverse of a series that vanishes to its precision")
        if self.prec is None:
            if self.body.degree() == 0:
                return TruncLaurent.make(self.field, -self.val, Poly(self.field, [self.field.one / self.body[0]]), None)
            if window is None:
                raise WindowExceeded("inverse of an exact non-monomial needs a window")
            prec = window
        else:
            prec = self.prec - 2 * self.val
            if window is not None:
                prec = min(prec, window)
        n = prec + self.val
        body = poly_series_inverse(self.body, n)
        return TruncLaurent.make(self.field, -self.val, body, prec)

    def __truediv__(self, other):
        if self.field.is_scalar(other) or isinstance(other, int):
            return self * (self.field.one / self.field(other))
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse(self.prec)

    def shift(self, k: int) -> "TruncLaurent":
        """Multiply by x^k."""
        prec = None if self.prec is None else self.prec + k
        return TruncLaurent.make(self.field, self.val + k, self.body, prec)

    def with_prec(self, prec: int | None) -> "TruncLaurent":
        """Forget information at orders >= prec."""
        p = _min_prec(self.prec, prec)
        return TruncLaurent.make(self.field, self.val, self.body, p)

    # --- splitting ---------------------------------------------------------------
    def neg_part(self) -> "TruncLaurent":
        """Exact sum of the negative-order terms."""
        if self.prec is not None and self.prec < 0:
            raise WindowExceeded("negative part not fully known at this precision")
        if self.val >= 0:
            return TruncLaurent.zero(self.field, None)
        return TruncLaurent.make(self.field, self.val, self.body.truncate(-self.val), None)

    def nonneg_part(self) -> "TruncLaurent":
        if self.prec is not None and self.prec < 0:
            raise WindowExceeded("negative part not fully known at this precision")
        if self.val >= 0:
            return self
        cut = -self.val
        rest = Poly(self.field, self.body.coeffs()[cut:])
        return TruncLaurent.make(self.field, 0, rest, self.prec)

    def to_ratfunc(self) -> RatFunc:
        if self.prec is not None:
            raise WindowExceeded("only exact Laurent polynomials convert to rational functions")
        if self.val >= 0:
            return RatFunc(self.body.shift_up(self.val))
        return RatFunc(self.body, Poly.monomial(self.field, -self.val))

    # --- comparison -----------------------------------------------------------
    def agrees(self, other: "TruncLaurent") -> bool:
        """Equal at the common known precision."""
        return (self - other).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncLaurent):
            o = self._co(other)
            if o is None:
                return False
            other = o
        return self.val == other.val and self.prec == other.prec and self.body == other.body

    def __hash__(self) -> int:
        return hash((self.val, self.prec, self.body))

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms():
            s = self.field.to_str(c)
            mon = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if not mon:
                parts.append(s)
            elif s == "1":
                parts.append(mon)
            elif s == "-1":
                parts.append("-" + mon)
            else:
                parts.append(f"{s}*{mon}")
        out = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.prec is not None:
            out += f" + O(x^{self.prec})"
        return out

    def __repr__(self) -> str:
        return f"TruncLaurent({self})"


def from_ratfunc(r: RatFunc, window: int | None) -> TruncLaurent:
    """Expand r at x = 0.  Laurent polynomials stay exact; other values are
    expanded to absolute precision ``window``."""
    F = r.field
    if r.is_zero():
        return TruncLaurent.zero(F, None)
    a = r.num.valuation()
    b = r.den.valuation()
    num = r.num.shift_down(a)
    den = r.den.shift_down(b)
    v = a - b
    if den.is_one():
        return TruncLaurent.make(F, v, num, None)
    if window is None:
        raise WindowExceeded("expansion of a non-Laurent rational function needs a window")
    n = window - v
    body = num.mul_low(poly_series_inverse(den, n), n) if n > 0 else Poly(F)
    return TruncLaurent.make(F, v, body, window)


def series_expand(r: RatFunc, M: int) -> TruncLaurent:
    """Expansion of r in k((x)), known modulo x^M."""
    return from_ratfunc(r, M).with_prec(M)
