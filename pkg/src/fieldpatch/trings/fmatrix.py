"""Matrices over fraction fields F_U kept as products of certified factors.

An ``FMatrix`` is a product of factors, each an exact matrix over
k(x)(t) (``XMatrix``) or a truncated matrix over a tagged ring
(``TMatrix``), raised to the power +1 or -1.  Membership in F_U is then
a structural statement about the factors' tags; numerical identities are
checked after evaluating into a discrete valuation model.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError
from .dvr import LMatrix
from .exact import XMatrix
from .rings import RingId
from .tmatrix import TMatrix


@dataclass(frozen=True)
class Factor:
    payload: object  # XMatrix or TMatrix
    exp: int = 1

    @property
    def exact(self) -> bool:
        return isinstance(self.payload, XMatrix)


class FMatrix:
    __slots__ = ("factors", "n")

    def __init__(self, factors, n: int | None = None):
        fs = []
        for f in factors:
            if not isinstance(f, Factor):
                f = Factor(f, 1)
            if f.exp not in (1, -1):
                raise InputError("factor exponents must be +1 or -1")
            fs.append(f)
        self.factors = tuple(fs)
        if n is None:
            if not fs:
                raise InputError("empty FMatrix needs an explicit size")
            n = fs[0].payload.shape[0]
        self.n = n

    @classmethod
    def of(cls, *payloads) -> "FMatrix":
        return cls([Factor(p, 1) for p in payloads])

    @classmethod
    def identity(cls, n: int) -> "FMatrix":
        return cls([], n)

    def __mul__(self, other: "FMatrix") -> "FMatrix":
        return FMatrix(self.factors + other.factors, self.n)

    def inverse(self) -> "FMatrix":
        return FMatrix([Factor(f.payload, -f.exp) for f in reversed(self.factors)], self.n)

    def ring_tags(self) -> list[RingId]:
        return [f.payload.ring for f in self.factors if not f.exact]

    def in_field_of(self, ring: RingId) -> bool:
        """Structural witness that every factor lies in (GL_n of) Frac(ring)."""
        for f in self.factors:
            if f.exact:
                continue
            A = f.payload
            if not A.ring.includes_into(ring):
                return False
            if not A.membership_ok():
                return False
        return True

    def series_factors(self) -> list[TMatrix]:
        return [f.payload for f in self.factors if not f.exact]

    def evaluate(self, model: RingId, abs_prec: int, window: int | None = None) -> LMatrix:
        """Value in the DVR ``model`` (global generic or local R0)."""
        n = self.n
        if not self.factors:
            return LMatrix(0, TMatrix.identity(model, n, max(abs_prec, 1)))
        series: dict[int, LMatrix] = {}
        exact_mats: dict[int, XMatrix] = {}
        shifts = 0
        for i, f in enumerate(self.factors):
            if f.exact:
                X = f.payload if f.exp == 1 else f.payload.inverse()
                exact_mats[i] = X
                v = X.min_t_valuation()
                shifts += v if v is not None else 0
            else:
                A = f.payload
                if A.ring != model:
                    if not A.ring.includes_into(model):
                        raise InputError(f"factor over {A.ring} does not evaluate in {model}")
                    A = A.embed(model, window)
                L = LMatrix(0, A)
                if f.exp == -1:
                    L = L.inverse(window)
                series[i] = L
                shifts += L.shift
        rel = max(abs_prec - shifts, 1) + 1
        out = None
        for i in range(len(self.factors)):
            if i in series:
                L = series[i]
            else:
                X = exact_mats[i]
                v = X.min_t_valuation()
                L = LMatrix.from_xmatrix(X, model, (v if v is not None else 0) + rel, window)
            out = L if out is None else out * L
        return out

    def __str__(self) -> str:
        parts = []
        for f in self.factors:
            s = str(f.payload)
            parts.append(f"({s})^-1" if f.exp == -1 else s)
        return " * ".join(parts) if parts else "I"

    def __repr__(self) -> str:
        return f"FMatrix({self})"
