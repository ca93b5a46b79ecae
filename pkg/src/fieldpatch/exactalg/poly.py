"""Univariate polynomials in x over k, backed by python-flint.

``Poly`` is an immutable, hashable wrapper around ``fmpq_poly`` (char 0)
or ``nmod_poly`` (char p).  The zero polynomial has degree -1.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import flint

from ..errors import BothZero, InputError
from .field import Field


def _raw_ctor(field: Field):
    if field.char == 0:
        return lambda cs: flint.fmpq_poly(list(cs))
    p = field.char
    return lambda cs: flint.nmod_poly([int(c) for c in cs], p)


class Poly:
    __slots__ = ("field", "_p", "_hash")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        self.field = field
        self._p = _raw_ctor(field)(cs)
        self._hash = None

    @classmethod
    def _wrap(cls, field: Field, raw) -> "Poly":
        obj = object.__new__(cls)
        obj.field = field
        obj._p = raw
        obj._hash = None
        return obj

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    @classmethod
    def monomial(cls, field: Field, deg: int, c=1) -> "Poly":
        return cls(field, [0] * deg + [c])

    # --- basic accessors -------------------------------------------------
    def degree(self) -> int:
        return int(self._p.degree())

    def coeffs(self) -> list:
        """Ascending coefficient list with no trailing zeros."""
        if self.field.char == 0:
            return list(self._p.coeffs())
        p = self.field.char
        return [flint.nmod(int(c), p) for c in self._p.coeffs()]

    def __getitem__(self, i: int):
        if i < 0 or i > self.degree():
            return self.field.zero
        c = self._p[i]
        if self.field.char == 0:
            return c
        return flint.nmod(int(c), self.field.char)

    def lc(self):
        if self.is_zero():
            return self.field.zero
        return self[self.degree()]

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_one(self) -> bool:
        return self._p.is_one()

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lc() == 1

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return self * (self.field.one / lc)

    # --- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise InputError("polynomials over different fields")
            return other
        try:
            return Poly(self.field, [other])
        except InputError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.field, self._p + o._p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.field, self._p - o._p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.field, o._p - self._p)

    def __neg__(self):
        return Poly._wrap(self.field, -self._p)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise InputError("polynomials over different fields")
            return Poly._wrap(self.field, self._p * other._p)
        if self.field.is_scalar(other):
            return Poly._wrap(self.field, self._p * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.field, self._p * o._p)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise InputError("negative polynomial power")
        return Poly._wrap(self.field, self._p**e)

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = divmod(self._p, o._p)
        return Poly._wrap(self.field, q), Poly._wrap(self.field, r)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InputError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        """True when self | other."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __call__(self, value):
        """Evaluate at a scalar (Horner)."""
        v = self.field(value)
        acc = self.field.zero
        for c in reversed(self.coeffs()):
            acc = acc * v + c
        return acc

    def derivative(self) -> "Poly":
        return Poly._wrap(self.field, self._p.derivative())

    def shift_up(self, k: int) -> "Poly":
        """Multiply by x^k (k >= 0)."""
        return Poly._wrap(self.field, self._p.left_shift(k)) if k else self

    def truncate(self, n: int) -> "Poly":
        """Reduce modulo x^n."""
        if n <= 0:
            return Poly(self.field)
        return Poly._wrap(self.field, self._p.truncate(n))

    def mul_low(self, other: "Poly", n: int) -> "Poly":
        """(self * other) mod x^n."""
        if n <= 0:
            return Poly(self.field)
        return Poly._wrap(self.field, self._p.mul_low(other._p, n))

    def valuation(self) -> int:
        """x-adic valuation; -1 is never returned (zero raises)."""
        if self.is_zero():
            raise InputError("valuation of the zero polynomial")
        i = 0
        while self[i] == 0:
            i += 1
        return i

    def shift_down(self, k: int) -> "Poly":
        """Exact division by x^k."""
        if k == 0:
            return self
        if self.degree() >= 0 and any(self[i] != 0 for i in range(min(k, self.degree() + 1))):
            raise InputError("inexact division by a power of x")
        return Poly._wrap(self.field, self._p.right_shift(k))

    # --- gcd ---------------------------------------------------------------
    def gcd(self, other: "Poly") -> "Poly":
        if self.is_zero() and other.is_zero():
            raise BothZero("gcd(0, 0)")
        g = Poly._wrap(self.field, self._p.gcd(other._p))
        return g.monic()

    # --- comparison --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field is other.field and self._p == other._p
        o = self._coerce(other)
        return o is not None and self._p == o._p

    def __ne__(self, other) -> bool:
        return not self == other

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.char, tuple(str(c) for c in self.coeffs())))
        return self._hash

    def sort_key(self) -> tuple:
        return (self.degree(), tuple(self.field.to_str(c) for c in self.coeffs()))

    def __str__(self) -> str:
        return format_poly(self.coeffs(), self.field, "x")

    def __repr__(self) -> str:
        return f"Poly({self})"


def format_poly(coeffs: Sequence, field: Field, var: str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        s = field.to_str(c)
        if i == 0:
            terms.append(s)
            continue
        mon = var if i == 1 else f"{var}^{i}"
        if s == "1":
            terms.append(mon)
        elif s == "-1":
            terms.append("-" + mon)
        else:
            terms.append(f"{s}*{mon}")
    if not terms:
        return "0"
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def poly_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended gcd: returns (g, s, u) with g monic and s*a + u*b = g."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0)")
    g, s, u = a._p.xgcd(b._p)
    F = a.field
    g, s, u = Poly._wrap(F, g), Poly._wrap(F, s), Poly._wrap(F, u)
    lc = g.lc()
    if lc != 1:
        inv = F.one / lc
        g, s, u = g * inv, s * inv, u * inv
    return g, s, u
