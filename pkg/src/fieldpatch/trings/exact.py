"""Exact elements of the function field k(x, t), written over k(x)(t).

``ExactXT`` is P/Q with P, Q polynomials in t over k(x), gcd(P, Q) = 1
and Q monic in t.  These elements sit inside every field F_U and are used
for the exact parts of factorizations and for reconstructed results.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import InputError
from ..exactalg import (
    Field,
    Poly,
    RatFunc,
    RatFuncField,
    UPoly,
    derive_x,
    series_inv,
    series_mul,
    upoly_gcd,
)
from . import linalg as la
from .patchset import PatchSet


class ExactXT:
    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly | None = None, *, reduced: bool = False):
        K = num.K
        if den is None:
            den = UPoly(K, [K.one])
            reduced = True
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if num.is_zero():
                den = UPoly(K, [K.one])
            elif den.degree() > 0:
                g = upoly_gcd(num, den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
            lc = den.lc()
            if lc != 1:
                inv = K.one / lc
                num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def K(self) -> RatFuncField:
        return self.num.K

    @property
    def field(self) -> Field:
        return self.num.K.base

    # --- construction ---------------------------------------------------------------
    @classmethod
    def from_coeff(cls, c) -> "ExactXT":
        if not isinstance(c, RatFunc):
            raise InputError("expected a rational function")
        K = RatFuncField(c.field)
        return cls(UPoly(K, [c]), reduced=True)

    @classmethod
    def const(cls, field: Field, c) -> "ExactXT":
        return cls.from_coeff(RatFunc.const(field, c))

    @classmethod
    def t(cls, field: Field, power: int = 1) -> "ExactXT":
        K = RatFuncField(field)
        if power >= 0:
            return cls(UPoly.monomial(K, power), reduced=True)
        return cls(UPoly(K, [K.one]), UPoly.monomial(K, -power), reduced=True)

    @classmethod
    def from_t_coeffs(cls, num: Sequence, den: Sequence = None, field: Field | None = None) -> "ExactXT":
        """Build from ascending lists of t-coefficients (RatFuncs or scalars)."""
        if field is None:
            field = next(c.field for c in list(num) + list(den or []) if isinstance(c, RatFunc))
        K = RatFuncField(field)
        n = UPoly(K, num)
        d = UPoly(K, den) if den is not None else None
        return cls(n, d)

    # --- predicates ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.degree() == 0 and self.num.degree() == 0 and self.num[0] == 1

    def t_valuation(self) -> int:
        if self.is_zero():
            raise InputError("valuation of zero")
        return self.num.valuation() - self.den.valuation()

    def t_polynomial(self) -> bool:
        return self.den.degree() == 0

    # --- arithmetic ----------------------------------------------------------------------
    def _co(self, other) -> "ExactXT | None":
        if isinstance(other, ExactXT):
            return other
        if isinstance(other, RatFunc):
            return ExactXT.from_coeff(other)
        try:
            return ExactXT.const(self.field, other)
        except Exception:
            return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return ExactXT(self.num + o.num, self.den, reduced=self.den.degree() == 0)
        return ExactXT(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ExactXT(-self.num, self.den, reduced=True)

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
        o = self._co(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ExactXT(UPoly(self.K, []), reduced=True)
        if self.den.degree() == 0 and o.den.degree() == 0:
            return ExactXT(self.num * o.num, reduced=True)
        return ExactXT(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "ExactXT":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ExactXT(self.den, self.num)

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

    def __pow__(self, e: int) -> "ExactXT":
        if e < 0:
            return self.inv() ** (-e)
        return ExactXT(self.num**e, self.den**e, reduced=True)

    def derive_x(self) -> "ExactXT":
        """d/dx with t constant."""
        dn = self.num.map(derive_x)
        dd = self.den.map(derive_x)
        return ExactXT(dn * self.den - self.num * dd, self.den * self.den)

    # --- expansion -------------------------------------------------------------------------
    def expand(self, n: int) -> tuple[int, list]:
        """(v, c) with self = t^v * (c_0 + c_1 t + ... + c_{n-1} t^{n-1} + O(t^n)), c_0 != 0.

        For zero, v = 0 and the coefficients are all zero."""
        K = self.K
        if self.is_zero():
            return 0, [K.zero] * n
        a = self.num.valuation()
        b = self.den.valuation()
        num = self.num.shift(-a)
        den = self.den.shift(-b)
        if den.degree() == 0:
            inv0 = K.one / den[0]
            cs = [num[i] * inv0 for i in range(n)]
        else:
            cs = series_mul(num.c, series_inv(den.c, n, K.one), n, K.zero)
        return a - b, cs

    def normalized(self) -> tuple[int, UPoly, UPoly]:
        """(v, P, Q) with self = t^v P/Q, Q(0) = 1 and P(0) != 0."""
        a = self.num.valuation()
        b = self.den.valuation()
        P = self.num.shift(-a)
        Q = self.den.shift(-b)
        inv = self.K.one / Q[0]
        return a - b, P * inv, Q * inv

    def certified_regular(self, U: PatchSet) -> bool:
        """Sufficient test for membership in O(U)[[t]]: nonnegative t-valuation and a
        representation t^v P/Q with Q(0) = 1 whose coefficients are regular on U
        (Q(0) = 1 is then a unit)."""
        if self.is_zero():
            return True
        v, P, Q = self.normalized()
        if v < 0:
            return False
        return all(U.regular(c) for c in P.c) and all(U.regular(c) for c in Q.c)

    def as_bivariate(self) -> tuple[list[Poly], list[Poly]]:
        """Numerator and denominator as t-ascending lists of polynomials in x,
        after clearing x-denominators (denominator normalized monic in t, then
        scaled by the lcm of all x-denominators)."""
        F = self.field
        lcm = Poly(F, [1])
        for c in list(self.num.c) + list(self.den.c):
            lcm = lcm * c.den // lcm.gcd(c.den)
        num = [(c * RatFunc(lcm)).num for c in self.num.c]
        den = [(c * RatFunc(lcm)).num for c in self.den.c]
        return num, den

    # --- comparison ---------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        o = other if isinstance(other, ExactXT) else self._co(other)
        if o is None:
            return False
        return self.num == o.num and self.den == o.den

    def __ne__(self, other) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        def fmt(p: UPoly) -> str:
            parts = []
            for j, c in enumerate(p.c):
                if c.is_zero():
                    continue
                s = str(c)
                if j == 0:
                    parts.append(s)
                else:
                    mon = "t" if j == 1 else f"t^{j}"
                    parts.append(mon if s == "1" else f"({s})*{mon}")
            return " + ".join(parts) if parts else "0"

        num, den = self.num, self.den
        if not num.is_zero() and den[0] != den.K.zero:
            inv = den.K.one / den[0]  # display with denominator constant term 1
            num, den = num * inv, den * inv
        n = fmt(num)
        if den.degree() == 0:
            return n
        return f"({n})/({fmt(den)})"

    def __repr__(self) -> str:
        return f"ExactXT({self})"


class XMatrix:
    """Square or rectangular matrix with ExactXT entries."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence]):
        self.field = field
        self.rows = [[_as_exact(field, v) for v in r] for r in rows]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @classmethod
    def identity(cls, field: Field, n: int) -> "XMatrix":
        return cls(field, la.mat_identity(n, ExactXT.const(field, 0), ExactXT.const(field, 1)))

    @classmethod
    def scalar(cls, field: Field, n: int, e: "ExactXT") -> "XMatrix":
        z = ExactXT.const(field, 0)
        return cls(field, [[e if i == j else z for j in range(n)] for i in range(n)])

    def zero_elem(self) -> ExactXT:
        return ExactXT.const(self.field, 0)

    def one_elem(self) -> ExactXT:
        return ExactXT.const(self.field, 1)

    def __mul__(self, other: "XMatrix") -> "XMatrix":
        return XMatrix(self.field, la.mat_mul(self.rows, other.rows, self.zero_elem()))

    def __add__(self, other: "XMatrix") -> "XMatrix":
        return XMatrix(self.field, la.mat_add(self.rows, other.rows))

    def __sub__(self, other: "XMatrix") -> "XMatrix":
        return XMatrix(self.field, la.mat_sub(self.rows, other.rows))

    def inverse(self) -> "XMatrix":
        return XMatrix(self.field, la.mat_inverse_field(self.rows, self.zero_elem(), self.one_elem()))

    def det(self) -> ExactXT:
        return la.mat_det(self.rows, self.zero_elem(), self.one_elem())

    def derive_x(self) -> "XMatrix":
        return XMatrix(self.field, la.mat_map(self.rows, lambda e: e.derive_x()))

    def is_identity(self) -> bool:
        n, m = self.shape
        return n == m and all(
            (self.rows[i][j].is_one() if i == j else self.rows[i][j].is_zero()) for i in range(n) for j in range(m)
        )

    def min_t_valuation(self) -> int | None:
        vals = [e.t_valuation() for r in self.rows for e in r if not e.is_zero()]
        return min(vals) if vals else None

    def __eq__(self, other) -> bool:
        return isinstance(other, XMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(tuple(tuple(r) for r in self.rows))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in r) for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"XMatrix({self})"


def _as_exact(field: Field, v) -> ExactXT:
    if isinstance(v, ExactXT):
        return v
    if isinstance(v, RatFunc):
        return ExactXT.from_coeff(v)
    if isinstance(v, Poly):
        return ExactXT.from_coeff(RatFunc(v))
    return ExactXT.const(field, v)
