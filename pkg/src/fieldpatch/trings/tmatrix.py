"""Matrices of truncated t-adic elements with a uniform ring and precision.

Stored as the list of coefficient matrices: ``data[j][r][c]`` is the
coefficient of t^j in entry (r, c).
"""

from __future__ import annotations

from typing import Sequence

from ..errors import InexactDivision, InputError, NonUnit, NoInclusion, RingMismatch, ShapeMismatch
from . import linalg as la
from .rings import RingId
from .telem import TElem, coeff_one, coeff_zero, invert_unit


def _is_hard_zero(c) -> bool:
    return c.is_zero() and getattr(c, "prec", None) is None


def _mat_hard_zero(M) -> bool:
    return all(_is_hard_zero(c) for row in M for c in row)


class TMatrix:
    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: RingId, data: Sequence, check: bool = True):
        if not data:
            raise InputError("a truncated matrix needs precision >= 1")
        rows = len(data[0])
        cols = len(data[0][0]) if rows else 0
        mats = []
        for M in data:
            if len(M) != rows or any(len(r) != cols for r in M):
                raise ShapeMismatch("ragged coefficient matrices")
            mats.append([[ring.coerce(c) for c in r] for r in M])
        if check:
            for M in mats:
                for r in M:
                    for c in r:
                        ring.require_coeff(c)
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.data = mats

    @classmethod
    def _raw(cls, ring: RingId, data: list) -> "TMatrix":
        obj = object.__new__(cls)
        obj.ring = ring
        obj.rows = len(data[0])
        obj.cols = len(data[0][0]) if obj.rows else 0
        obj.data = data
        if __debug__:
            for M in data:
                for r in M:
                    for c in r:
                        ring.require_coeff(c)
        return obj

    @classmethod
    def from_entries(cls, ring: RingId, entries: Sequence[Sequence], N: int | None = None, check: bool = True) -> "TMatrix":
        """Entries may be TElems or coefficient lists (ascending in t)."""
        lists = [[e.coeffs if isinstance(e, TElem) else list(e) for e in row] for row in entries]
        if N is None:
            N = min(len(e) for row in lists for e in row)
        z = coeff_zero(ring)
        data = []
        for j in range(N):
            data.append([[ring.coerce(e[j]) if j < len(e) else z for e in row] for row in lists])
        return cls(ring, data, check=check)

    @classmethod
    def identity(cls, ring: RingId, n: int, N: int) -> "TMatrix":
        z, o = coeff_zero(ring), coeff_one(ring)
        data = [la.mat_identity(n, z, o)] + [la.mat_zero(n, n, z) for _ in range(N - 1)]
        return cls._raw(ring, data)

    @classmethod
    def zero(cls, ring: RingId, rows: int, cols: int, N: int) -> "TMatrix":
        z = coeff_zero(ring)
        return cls._raw(ring, [la.mat_zero(rows, cols, z) for _ in range(N)])

    @classmethod
    def constant(cls, ring: RingId, M: Sequence[Sequence], N: int) -> "TMatrix":
        z = coeff_zero(ring)
        M = [[ring.coerce(c) for c in r] for r in M]
        return cls(ring, [M] + [la.mat_zero(len(M), len(M[0]), z) for _ in range(N - 1)])

    # --- accessors ----------------------------------------------------------------
    @property
    def prec(self) -> int:
        return len(self.data)

    @property
    def field(self):
        return self.ring.field

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> TElem:
        return TElem._raw(self.ring, [M[i][j] for M in self.data])

    def entries(self) -> list[list[TElem]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def coeff(self, k: int) -> list:
        return self.data[k]

    def reduce_mod_t(self) -> list:
        return [list(r) for r in self.data[0]]

    def membership_ok(self) -> bool:
        return all(self.ring.coeff_ok(c) for M in self.data for r in M for c in r)

    # --- arithmetic -------------------------------------------------------------------
    def _same(self, other: "TMatrix") -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "TMatrix") -> "TMatrix":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch("matrix shapes differ")
        n = min(self.prec, other.prec)
        return TMatrix._raw(self.ring, [la.mat_add(self.data[j], other.data[j]) for j in range(n)])

    def __sub__(self, other: "TMatrix") -> "TMatrix":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch("matrix shapes differ")
        n = min(self.prec, other.prec)
        return TMatrix._raw(self.ring, [la.mat_sub(self.data[j], other.data[j]) for j in range(n)])

    def __neg__(self) -> "TMatrix":
        return TMatrix._raw(self.ring, [la.mat_neg(M) for M in self.data])

    def __mul__(self, other) -> "TMatrix":
        if isinstance(other, TElem):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            n = min(self.prec, other.prec)
            z = coeff_zero(self.ring)
            out = []
            for k in range(n):
                acc = la.mat_zero(self.rows, self.cols, z)
                for i in range(k + 1):
                    c = other.coeffs[k - i]
                    if _is_hard_zero(c):
                        continue
                    acc = la.mat_add(acc, la.mat_scale(self.data[i], c))
                out.append(acc)
            return TMatrix._raw(self.ring, out)
        if not isinstance(other, TMatrix):
            c = self.ring.coerce(other)
            return TMatrix._raw(self.ring, [la.mat_scale(M, c) for M in self.data])
        self._same(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n = min(self.prec, other.prec)
        z = coeff_zero(self.ring)
        hz_a = [_mat_hard_zero(M) for M in self.data[:n]]
        hz_b = [_mat_hard_zero(M) for M in other.data[:n]]
        out = []
        for k in range(n):
            acc = None
            for i in range(k + 1):
                if hz_a[i] or hz_b[k - i]:
                    continue
                p = la.mat_mul(self.data[i], other.data[k - i], z)
                acc = p if acc is None else la.mat_add(acc, p)
            out.append(acc if acc is not None else la.mat_zero(self.rows, other.cols, z))
        return TMatrix._raw(self.ring, out)

    __rmul__ = __mul__

    def transpose(self) -> "TMatrix":
        return TMatrix._raw(self.ring, [la.mat_transpose(M) for M in self.data])

    def truncate(self, N: int) -> "TMatrix":
        if N < 1 or N > self.prec:
            raise InputError(f"cannot truncate precision {self.prec} to {N}")
        return TMatrix._raw(self.ring, self.data[:N])

    def t_shift(self, s: int, allow_windowed: bool = False) -> "TMatrix":
        z = coeff_zero(self.ring)
        if s >= 0:
            return TMatrix._raw(self.ring, [la.mat_zero(self.rows, self.cols, z) for _ in range(s)] + self.data)
        k = -s
        if k >= self.prec:
            raise InexactDivision("shift leaves no known coefficients")
        for M in self.data[:k]:
            for r in M:
                for c in r:
                    if not (c.is_zero() if allow_windowed else _is_hard_zero(c)):
                        raise InexactDivision(f"matrix is not divisible by t^{k}")
        return TMatrix._raw(self.ring, self.data[k:])

    def map_coeffs(self, fn, ring: RingId | None = None) -> "TMatrix":
        ring = ring or self.ring
        return TMatrix(ring, [la.mat_map(M, fn) for M in self.data])

    def embed(self, target: RingId, window: int | None = None) -> "TMatrix":
        if not self.ring.includes_into(target):
            raise NoInclusion(f"no inclusion {self.ring} -> {target}")
        conv = lambda c: self.ring.convert_coeff(c, target, window)  # noqa: E731
        return TMatrix(target, [la.mat_map(M, conv) for M in self.data])

    def retag(self, target: RingId) -> "TMatrix":
        """Same coefficients under another ring tag (membership re-checked)."""
        return TMatrix(target, self.data, check=True)

    # --- determinants and inverses -----------------------------------------------------
    def det(self) -> TElem:
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        N = self.prec
        return la.mat_det(self.entries(), TElem.zero(self.ring, N), TElem.one(self.ring, N))

    def adjugate(self) -> "TMatrix":
        N = self.prec
        adj = la.mat_adjugate(self.entries(), TElem.zero(self.ring, N), TElem.one(self.ring, N))
        return TMatrix.from_entries(self.ring, adj, N)

    def inverse(self, window: int | None = None) -> "TMatrix":
        """Inverse of a matrix whose determinant is a unit of the ring."""
        d = self.det()
        if not self.ring.unit_coeff(d.coeffs[0]):
            raise NonUnit("determinant is not a unit")
        dinv = invert_unit(d, window)
        return self.adjugate() * dinv

    # --- comparison ------------------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(c.is_zero() for M in self.data for r in M for c in r)

    def is_identity(self) -> bool:
        n = self.rows
        if n != self.cols:
            return False
        I = TMatrix.identity(self.ring, n, self.prec)
        return (self - I).is_zero()

    def agrees(self, other: "TMatrix") -> bool:
        return (self - other).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TMatrix):
            return NotImplemented
        return self.ring == other.ring and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.ring, tuple(tuple(tuple(r) for r in M) for M in self.data)))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.entries()) + "]"

    def __repr__(self) -> str:
        return f"TMatrix[{self.ring}]({self})"


def tmatrix_t_valuation(A: TMatrix) -> int | None:
    for j, M in enumerate(A.data):
        if any(not c.is_zero() for r in M for c in r):
            return j
    return None
