"""Patching problems, solutions and certificates.

Shapes:
  two-patch     U1 = A^1, U2 = {inf}, overlap k(x)[[t]]
  multi         U_i = {x = i-1} for i < r, U_r = the rest of P^1, overlap k(x)[[t]]
  local-global  F_Q = Frac k[[x,t]], F_U' with U' = P^1 minus {0}, overlap k((x))[[t]]

A transition A_i maps V_i to the reference space V_r after base change:
the columns of A_i express the basis of V_i in the basis of V_r.  A
solution is a family of basis changes S_i over the patch fields with
A_i S_i = S_r over the overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError, ShapeMismatch, SingularAtPrecision
from ..exactalg import INF, QQ, Field, Poly
from ..trings import FMatrix, LMatrix, PatchSet, RingId, TMatrix, XMatrix, t_valuation

SHAPES = ("two-patch", "multi", "local-global")


def shape_patches(shape: str, field_: Field, r: int = 3) -> tuple[tuple, tuple]:
    """(patch sets or None, patch ring tags) for a problem shape."""
    x = Poly.x(field_)
    if shape == "two-patch":
        sets = (PatchSet.affine_line(field_), PatchSet.points(field_, [INF]))
    elif shape == "multi":
        if r < 2:
            raise InputError("a multi-patch problem needs at least two patches")
        pts = [PatchSet.points(field_, [x - i]) for i in range(r - 1)]
        rest = PatchSet.excluding(field_, [x - i for i in range(r - 1)])
        sets = tuple(pts) + (rest,)
    elif shape == "local-global":
        return (None, PatchSet.excluding(field_, [x])), (
            RingId.local(field_, "R1"),
            RingId.global_(PatchSet.excluding(field_, [x])),
        )
    else:
        raise InputError(f"unknown problem shape {shape!r}")
    return sets, tuple(RingId.global_(U) for U in sets)


def shape_model(shape: str, field_: Field) -> RingId:
    if shape == "local-global":
        return RingId.local(field_, "R0")
    return RingId.generic(field_)


@dataclass(frozen=True)
class PatchingProblem:
    shape: str
    n: int
    field: Field
    sets: tuple
    patches: tuple  # RingId per patch index, reference last
    model: RingId
    transitions: tuple  # LMatrix A_i for i < r
    N: int = 8
    M: int = 16

    @property
    def r(self) -> int:
        return len(self.patches)

    @property
    def window(self) -> int | None:
        return self.M if self.model.laurent else None


def _to_lmatrix(A, model: RingId, N: int, window) -> LMatrix:
    if isinstance(A, LMatrix):
        return A if A.ring == model else LMatrix(A.shift, A.M.embed(model, window))
    if isinstance(A, TMatrix):
        return LMatrix(0, A if A.ring == model else A.embed(model, window))
    if isinstance(A, XMatrix):
        return LMatrix.from_xmatrix(A, model, N, window)
    if isinstance(A, FMatrix):
        return A.evaluate(model, N, window)
    raise InputError(f"unsupported transition type {type(A).__name__}")


def _field_of(A) -> Field:
    if isinstance(A, LMatrix):
        return A.ring.field
    if isinstance(A, FMatrix):
        return A.factors[0].payload.field if A.factors else QQ
    return A.field


def make_problem(shape: str, transitions, N: int = 8, M: int = 16, field_: Field | None = None,
                 r: int | None = None) -> PatchingProblem:
    transitions = list(transitions)
    if not transitions:
        raise InputError("a patching problem needs at least one transition")
    if field_ is None:
        field_ = _field_of(transitions[0])
    if r is None:
        r = len(transitions) + 1
    if shape in ("two-patch", "local-global") and r != 2:
        raise InputError(f"{shape} problems have exactly one transition")
    if len(transitions) != r - 1:
        raise ShapeMismatch(f"expected {r - 1} transitions, got {len(transitions)}")
    sets, patches = shape_patches(shape, field_, r)
    model = shape_model(shape, field_)
    window = M if model.laurent else None
    Ls = [_to_lmatrix(A, model, N, window) for A in transitions]
    n = Ls[0].shape[0]
    for L in Ls:
        if L.shape != (n, n):
            raise ShapeMismatch(f"transition of shape {L.shape}, expected {(n, n)}")
        if not t_valuation(L.M.det()).exact:
            raise SingularAtPrecision("transition is not invertible at the working precision")
    return PatchingProblem(shape, n, field_, sets, patches, model, tuple(Ls), N, M)


def beta_induce(n: int, shape: str = "two-patch", N: int = 8, field_: Field = QQ, r: int = 3,
                M: int = 16) -> PatchingProblem:
    """The problem induced by F^n: all transitions are the identity."""
    if n < 1:
        raise InputError("dimension must be >= 1")
    if shape != "multi":
        r = 2
    model = shape_model(shape, field_)
    I = TMatrix.identity(model, n, N)
    return make_problem(shape, [I] * (r - 1), N, M, field_, r)


@dataclass
class Solution:
    S: tuple  # FMatrix per patch index
    N_eff: int
    log: list = field(default_factory=list)


@dataclass
class Certificate:
    checks: list
    N_eff: int
    dimension: int

    @property
    def passed(self) -> bool:
        return all(c["residual_is_zero"] for c in self.checks)
