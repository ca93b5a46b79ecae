"""Rational functions in x over k in canonical form.

A ``RatFunc`` is num/den with den monic and gcd(num, den) = 1, so
equality is structural.  ``RatFuncField(k)`` is the field k(x) seen as a
coefficient field for polynomials in t.
"""

from __future__ import annotations

from ..errors import InputError
from .field import Field
from .poly import Poly, format_poly


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        if not isinstance(num, Poly):
            raise InputError("RatFunc numerator must be a Poly")
        F = num.field
        if den is None:
            den = Poly(F, [1])
            reduced = True
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if num.is_zero():
                den = Poly(F, [1])
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num // g
                    den = den // g
            lc = den.lc()
            if lc != 1:
                inv = F.one / lc
                num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def field(self) -> Field:
        return self.num.field

    @classmethod
    def const(cls, field: Field, c) -> "RatFunc":
        return cls(Poly(field, [c]))

    @classmethod
    def x(cls, field: Field) -> "RatFunc":
        return cls(Poly.x(field))

    @classmethod
    def parse(cls, field: Field, num, den=(1,)) -> "RatFunc":
        """Build from ascending coefficient lists."""
        return cls(Poly(field, num), Poly(field, den))

    # --- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.degree() <= 0

    def constant_value(self):
        if not self.is_constant():
            raise InputError("not a constant")
        return self.num[0]

    # --- arithmetic ----------------------------------------------------------
    def _co(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        try:
            return RatFunc(Poly(self.field, [other]))
        except InputError:
            return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            if self.den.is_one():
                return RatFunc(self.num + o.num, self.den, reduced=True)
            return RatFunc(self.num + o.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * o.den + o.num, o.den, reduced=True)
        if o.den.is_one():
            return RatFunc(self.num + o.num * self.den, self.den, reduced=True)
        g = self.den.gcd(o.den)
        if g.is_one():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, reduced=True)
        d1 = self.den // g
        d2 = o.den // g
        return RatFunc(self.num * d2 + o.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

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
        F = self.field
        if F.is_scalar(other):
            if other == 0:
                return RatFunc(Poly(F))
            return RatFunc(self.num * other, self.den, reduced=True)
        o = self._co(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc(Poly(F))
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.num * o.num, self.den, reduced=True)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n1, d2 = (self.num // g1, o.den // g1) if not g1.is_one() else (self.num, o.den)
        n2, d1 = (o.num // g2, self.den // g2) if not g2.is_one() else (o.num, self.den)
        num = n1 * n2
        den = d1 * d2
        lc = den.lc()
        if lc != 1:
            inv = F.one / lc
            num, den = num * inv, den * inv
        return RatFunc(num, den, reduced=True)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inv() ** (-e)
        return RatFunc(self.num**e, self.den**e, reduced=True)

    # --- valuations ----------------------------------------------------------
    def ord_inf(self) -> int:
        """Order of vanishing at infinity (negative = pole order)."""
        if self.num.is_zero():
            raise InputError("order of zero")
        return self.den.degree() - self.num.degree()

    def ord_x(self) -> int:
        """x-adic valuation (order at x = 0)."""
        if self.num.is_zero():
            raise InputError("order of zero")
        return self.num.valuation() - self.den.valuation()

    def pole_order(self, place: Poly) -> int:
        """Largest e such that place^e is needed to clear the pole along place."""
        e = 0
        d = self.den
        while True:
            g = d.gcd(place)
            if g.is_one():
                return e
            d = d // g
            e += 1

    def __call__(self, value):
        v = self.field(value)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(v) / d

    # --- comparison ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._co(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return False
        return self.num == o.num and self.den == o.den

    def __ne__(self, other) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        F = self.field
        n = format_poly(self.num.coeffs(), F, "x")
        if self.den.is_one():
            return n
        d = format_poly(self.den.coeffs(), F, "x")
        if self.num.degree() > 0 and len([c for c in self.num.coeffs() if c != 0]) > 1:
            n = f"({n})"
        if len([c for c in self.den.coeffs() if c != 0]) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def derive_x(r: RatFunc) -> RatFunc:
    """d/dx by the quotient rule, reduced."""
    if r.den.is_one():
        return RatFunc(r.num.derivative())
    return RatFunc(r.num.derivative() * r.den - r.num * r.den.derivative(), r.den * r.den)


class RatFuncField:
    """k(x) as a coefficient field (interned per k)."""

    _cache: dict = {}

    def __new__(cls, base: Field):
        obj = cls._cache.get(base.char)
        if obj is None:
            obj = object.__new__(cls)
            obj.base = base
            obj.zero = RatFunc(Poly(base))
            obj.one = RatFunc(Poly(base, [1]))
            cls._cache[base.char] = obj
        return obj

    def __call__(self, v) -> RatFunc:
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, Poly):
            return RatFunc(v)
        return RatFunc(Poly(self.base, [v]))

    def __repr__(self) -> str:
        return f"RatFuncField({self.base!r})"
