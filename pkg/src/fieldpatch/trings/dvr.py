"""Matrices over the discrete valuation fields Frac k(x)[[t]] and Frac k((x))[[t]].

An ``LMatrix`` is t^shift * M with M a TMatrix over the DVR ring (the
global generic ring or local R0).  Its absolute precision is
shift + M.prec: the value is known modulo t^(shift + prec) times integral
matrices.
"""

from __future__ import annotations

from ..errors import InputError, RingMismatch, ShapeMismatch, SingularAtPrecision
from .exact import ExactXT, XMatrix
from .rings import RingId
from .telem import TElem, coeff_zero, invert_unit, t_shift, t_valuation
from .tmatrix import TMatrix


class LMatrix:
    __slots__ = ("shift", "M")

    def __init__(self, shift: int, M: TMatrix):
        if not M.ring.is_dvr():
            raise InputError(f"{M.ring} is not a discrete valuation model")
        self.shift = shift
        self.M = M

    @property
    def ring(self) -> RingId:
        return self.M.ring

    @property
    def abs_prec(self) -> int:
        return self.shift + self.M.prec

    @property
    def shape(self) -> tuple[int, int]:
        return self.M.shape

    # --- construction -----------------------------------------------------------------
    @classmethod
    def from_tmatrix(cls, A: TMatrix, window: int | None = None) -> "LMatrix":
        target = A.ring.ambient()
        M = A if A.ring == target else A.embed(target, window)
        return cls(0, M)

    @classmethod
    def from_xmatrix(cls, X: XMatrix, model: RingId, abs_prec: int, window: int | None = None) -> "LMatrix":
        """Expand an exact matrix so that the result is known modulo t^abs_prec."""
        expansions = []
        shift = None
        for row in X.rows:
            erow = []
            for e in row:
                if e.is_zero():
                    erow.append(None)
                    continue
                v = e.t_valuation()
                erow.append((v, e))
                shift = v if shift is None else min(shift, v)
            expansions.append(erow)
        if shift is None:
            shift = abs_prec - 1
        rel = abs_prec - shift
        if rel < 1:
            rel = 1
        z = coeff_zero(model)
        entries = []
        for erow in expansions:
            trow = []
            for item in erow:
                if item is None:
                    trow.append([z] * rel)
                    continue
                v, e = item
                offset = v - shift
                n = max(rel - offset, 0)
                _, cs = e.expand(n)
                cs = [_to_model(model, c, window) for c in cs]
                trow.append([z] * offset + cs)
            entries.append(trow)
        return cls(shift, TMatrix.from_entries(model, entries, rel))

    @classmethod
    def scalar_elem(cls, e: ExactXT, model: RingId, abs_prec: int, window: int | None = None) -> "LMatrix":
        return cls.from_xmatrix(XMatrix(e.field, [[e]]), model, abs_prec, window)

    # --- arithmetic ------------------------------------------------------------------------
    def _same(self, other: "LMatrix") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __mul__(self, other: "LMatrix") -> "LMatrix":
        self._same(other)
        return LMatrix(self.shift + other.shift, self.M * other.M)

    def _aligned(self, other: "LMatrix") -> tuple[int, TMatrix, TMatrix]:
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch("shapes differ")
        s = min(self.shift, other.shift)
        a = self.M.t_shift(self.shift - s)
        b = other.M.t_shift(other.shift - s)
        return s, a, b

    def __add__(self, other: "LMatrix") -> "LMatrix":
        s, a, b = self._aligned(other)
        return LMatrix(s, a + b)

    def __sub__(self, other: "LMatrix") -> "LMatrix":
        s, a, b = self._aligned(other)
        return LMatrix(s, a - b)

    def __neg__(self) -> "LMatrix":
        return LMatrix(self.shift, -self.M)

    def scaled(self, k: int) -> "LMatrix":
        """Multiply by t^k."""
        return LMatrix(self.shift + k, self.M)

    def truncated(self, abs_prec: int) -> "LMatrix":
        rel = abs_prec - self.shift
        if rel >= self.M.prec:
            return self
        if rel < 1:
            raise InputError("truncation below the leading order")
        return LMatrix(self.shift, self.M.truncate(rel))

    def det(self) -> tuple[int, TElem]:
        """det = t^e * d with d a TElem over the DVR ring."""
        n = self.shape[0]
        return self.shift * n, self.M.det()

    def inverse(self, window: int | None = None) -> "LMatrix":
        """Inverse via adjugate; loses v_t(det) orders of relative precision."""
        d = self.M.det()
        v = t_valuation(d)
        if not v.exact:
            raise SingularAtPrecision(f"determinant vanishes modulo t^{d.prec}")
        u = t_shift(d, -v.value, allow_windowed=True)
        uinv = invert_unit(u, window)
        adj = self.M.adjugate().truncate(u.prec)
        return LMatrix(-self.shift - v.value, adj * uinv)

    def coeff(self, i: int, j: int, k: int):
        """Coefficient of t^k (absolute exponent) of entry (i, j)."""
        if k >= self.abs_prec:
            raise InputError("coefficient beyond the known precision")
        if k < self.shift:
            return coeff_zero(self.ring)
        return self.M.data[k - self.shift][i][j]

    def residual_zero(self, other: "LMatrix") -> tuple[bool, int]:
        """Whether self - other vanishes at the common precision; also the modulus."""
        diff = self - other
        mod = min(self.abs_prec, other.abs_prec)
        return diff.M.is_zero(), mod

    def agrees_to(self, other: "LMatrix", modulus: int) -> bool:
        diff = self - other
        if diff.abs_prec < modulus:
            return False
        return all(
            c.is_zero()
            for k, Mk in enumerate(diff.M.data)
            if k + diff.shift < modulus
            for r in Mk
            for c in r
        )

    def to_exact_coeffs(self) -> list:
        """Entry-wise absolute coefficient lists (shift, lists)."""
        return [[self.M.entry(i, j).coeffs for j in range(self.shape[1])] for i in range(self.shape[0])]

    def __str__(self) -> str:
        return f"t^{self.shift} * {self.M}"

    def __repr__(self) -> str:
        return f"LMatrix({self})"


def _to_model(model: RingId, c, window):
    if model.laurent:
        return RingId.generic(model.field).convert_coeff(c, model, window) if not hasattr(c, "prec") else c
    return c


def identity_lmatrix(model: RingId, n: int, abs_prec: int) -> LMatrix:
    return LMatrix(0, TMatrix.identity(model, n, abs_prec))


def lmatrix_from_rows(model: RingId, rows, abs_prec: int) -> LMatrix:
    return LMatrix(0, TMatrix.constant(model, rows, abs_prec))
