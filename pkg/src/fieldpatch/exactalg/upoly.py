"""Dense univariate polynomials over an arbitrary exact field.

Used for polynomials in t whose coefficients live in k or in k(x)
(rational reconstruction, exact elements of k(x)(t)).  A *coefficient
field* is any object with ``zero``, ``one`` and ``__call__`` (coercion);
its elements must support ``+ - * /`` and ``== 0``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import BothZero, InputError


class UPoly:
    __slots__ = ("K", "c")

    def __init__(self, K, coeffs: Iterable = ()):
        cs = [K(v) for v in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.K = K
        self.c = tuple(cs)

    @classmethod
    def _raw(cls, K, cs: list) -> "UPoly":
        while cs and cs[-1] == 0:
            cs.pop()
        obj = object.__new__(cls)
        obj.K = K
        obj.c = tuple(cs)
        return obj

    @classmethod
    def monomial(cls, K, deg: int, coeff=None) -> "UPoly":
        return cls._raw(K, [K.zero] * deg + [K.one if coeff is None else K(coeff)])

    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __getitem__(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else self.K.zero

    def lc(self):
        return self.c[-1] if self.c else self.K.zero

    def _co(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        return UPoly(self.K, [other])

    def __add__(self, other):
        o = self._co(other)
        n = max(len(self.c), len(o.c))
        return UPoly._raw(self.K, [self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw(self.K, [-v for v in self.c])

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            s = self.K(other)
            return UPoly._raw(self.K, [v * s for v in self.c])
        if not self.c or not other.c:
            return UPoly._raw(self.K, [])
        out = [self.K.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return UPoly._raw(self.K, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UPoly":
        out = UPoly(self.K, [self.K.one])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.c)
        dq = len(r) - len(other.c)
        if dq < 0:
            return UPoly._raw(self.K, []), self
        q = [self.K.zero] * (dq + 1)
        inv = self.K.one / other.lc()
        m = len(other.c) - 1
        for k in range(dq, -1, -1):
            coef = r[k + m] * inv
            q[k] = coef
            if coef != 0:
                for j, b in enumerate(other.c):
                    r[k + j] = r[k + j] - coef * b
        return UPoly._raw(self.K, q), UPoly._raw(self.K, r[:m])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UPoly":
        if not self.c or self.c[-1] == 1:
            return self
        return self * (self.K.one / self.c[-1])

    def truncate(self, n: int) -> "UPoly":
        return UPoly._raw(self.K, list(self.c[: max(n, 0)]))

    def valuation(self) -> int:
        """t-adic valuation of a nonzero polynomial."""
        if not self.c:
            raise InputError("valuation of zero")
        i = 0
        while self.c[i] == 0:
            i += 1
        return i

    def shift(self, k: int) -> "UPoly":
        """Multiply by t^k (k may be negative when exactly divisible)."""
        if k >= 0:
            return UPoly._raw(self.K, [self.K.zero] * k + list(self.c))
        if any(v != 0 for v in self.c[:-k]):
            raise InputError("inexact division by a power of t")
        return UPoly._raw(self.K, list(self.c[-k:]))

    def map(self, fn) -> "UPoly":
        return UPoly(self.K, [fn(v) for v in self.c])

    def __call__(self, value):
        acc = self.K.zero
        for v in reversed(self.c):
            acc = acc * value + v
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            other = self._co(other)
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"UPoly({list(self.c)!r})"


def upoly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Monic g with s*a + u*b = g."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0)")
    K = a.K
    r0, r1 = a, b
    s0, s1 = UPoly(K, [K.one]), UPoly(K, [])
    u0, u1 = UPoly(K, []), UPoly(K, [K.one])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    inv = K.one / r0.lc()
    return r0 * inv, s0 * inv, u0 * inv


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0)")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def series_mul(a: Sequence, b: Sequence, n: int, zero) -> list:
    """First n coefficients of the product of two coefficient sequences."""
    out = [zero] * n
    for i in range(min(n, len(a))):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(n - i, len(b))):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def series_inv(a: Sequence, n: int, one) -> list:
    """First n coefficients of 1/a; a[0] must be invertible."""
    inv0 = one / a[0]
    out = [inv0]
    for k in range(1, n):
        acc = None
        for j in range(1, min(k, len(a) - 1) + 1):
            term = a[j] * out[k - j]
            acc = term if acc is None else acc + term
        out.append(-(acc * inv0) if acc is not None else one - one)
    return out[:n]
