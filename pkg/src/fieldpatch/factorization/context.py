"""Factorization contexts, results and the per-step trace."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ContextInvalid, InputError
from ..exactalg import Field
from ..splitting import GlobalSplitContext
from ..trings import FMatrix, LMatrix, PatchSet, RingId, TMatrix


@dataclass(frozen=True)
class FactorContext:
    """``mode`` is "global" (two disjoint patches) or "local" (rings at x = 0).

    N is the working t-precision and M the x-window (local mode)."""

    mode: str
    field_: Field
    split: GlobalSplitContext | None = None
    N: int = 8
    M: int = 16

    @classmethod
    def global_(cls, U1: PatchSet, U2: PatchSet, N: int = 8, P=None, N_P: int = 0,
                constants_to: str = "b") -> "FactorContext":
        ctx = GlobalSplitContext(U1, U2, P, N_P, constants_to)
        ctx.validate()
        if N < 1:
            raise ContextInvalid("precision must be >= 1")
        return cls("global", U1.field, ctx, N)

    @classmethod
    def local(cls, field_: Field, N: int = 8, M: int = 16) -> "FactorContext":
        if N < 1 or M < 1:
            raise ContextInvalid("precisions must be >= 1")
        return cls("local", field_, None, N, M)

    @property
    def is_local(self) -> bool:
        return self.mode == "local"

    @property
    def window(self) -> int | None:
        return self.M if self.is_local else None

    @property
    def model(self) -> RingId:
        """The ambient discrete valuation ring (k(x)[[t]] or k((x))[[t]])."""
        if self.is_local:
            return RingId.local(self.field_, "R0")
        return RingId.generic(self.field_)

    @property
    def ring1(self) -> RingId:
        """Tag of the near-identity B factor."""
        if self.is_local:
            return RingId.local(self.field_, "R1")
        U1 = self.split.U1
        if self.split.N_P > 0:
            U1 = U1.difference(PatchSet.points(self.field_, [self.split.P]))
        return RingId.global_(U1)

    @property
    def ring2(self) -> RingId:
        if self.is_local:
            return RingId.local(self.field_, "R2")
        return RingId.global_(self.split.U2)

    @property
    def field1(self) -> RingId:
        """Ring whose fraction field receives A1."""
        if self.is_local:
            return RingId.local(self.field_, "R1")
        return RingId.global_(self.split.U1)

    def with_split(self, **changes) -> "FactorContext":
        if self.is_local:
            raise InputError("local contexts have no global split data")
        s = self.split
        data = dict(U1=s.U1, U2=s.U2, P=s.P, N_P=s.N_P, constants_to=s.constants_to)
        data.update(changes)
        return FactorContext.global_(N=self.N, **data)


@dataclass(frozen=True)
class TraceStep:
    """One pass of the correction loop.

    B and C are the partial factors after this step, known modulo t^(i+1)."""

    i: int
    B: TMatrix
    C: TMatrix
    residual_zero: bool


@dataclass
class FactorResult:
    A1: FMatrix
    A2: FMatrix
    N_eff: int
    model: RingId
    trace: list = field(default_factory=list)
    near_identity_input: TMatrix | None = None
    certification: str = "proved-at-precision"
    checks: list = field(default_factory=list)

    def product(self, window: int | None = None) -> LMatrix:
        return (self.A1 * self.A2).evaluate(self.model, self.N_eff, window)
