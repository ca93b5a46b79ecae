"""Small helpers for matrices over the overlap model used by the structure code.

Scalars of the model field are 1x1 ``LMatrix`` values; exact data is an
``XMatrix`` and is expanded on demand.
"""

from __future__ import annotations

from ..errors import InputError
from ..exactalg import derive_x
from ..trings import ExactXT, LMatrix, RingId, TMatrix, XMatrix, coeff_zero


def to_lm(A, model: RingId, N: int, window: int | None = None) -> LMatrix:
    """Value of an exact or truncated matrix in the model, known modulo t^N."""
    if isinstance(A, LMatrix):
        return A
    if isinstance(A, XMatrix):
        return LMatrix.from_xmatrix(A, model, N, window)
    if isinstance(A, TMatrix):
        return LMatrix.from_tmatrix(A, window)
    raise InputError(f"cannot evaluate {type(A).__name__} in {model}")


def zero_lm(model: RingId, rows: int, cols: int, N: int) -> LMatrix:
    return LMatrix(0, TMatrix.zero(model, rows, cols, max(N, 1)))


def identity_lm(model: RingId, n: int, N: int) -> LMatrix:
    return LMatrix(0, TMatrix.identity(model, n, max(N, 1)))


def entry(L: LMatrix, i: int, j: int) -> LMatrix:
    """Entry (i, j) as a 1x1 matrix."""
    return LMatrix(L.shift, TMatrix._raw(L.ring, [[[M[i][j]]] for M in L.M.data]))


def column(L: LMatrix, j: int) -> LMatrix:
    return LMatrix(L.shift, TMatrix._raw(L.ring, [[[r[j]] for r in M] for M in L.M.data]))


def scalar(c: LMatrix, n: int) -> LMatrix:
    """c * I_n for a 1x1 matrix c."""
    z = coeff_zero(c.ring)
    data = [[[M[0][0] if i == j else z for j in range(n)] for i in range(n)] for M in c.M.data]
    return LMatrix(c.shift, TMatrix._raw(c.ring, data))


def hstack(cols: list[LMatrix]) -> LMatrix:
    """Matrix with the given n x 1 columns (shifts aligned)."""
    s = min(c.shift for c in cols)
    shifted = [c.M.t_shift(c.shift - s) for c in cols]
    N = min(m.prec for m in shifted)
    n = cols[0].shape[0]
    data = [[[m.data[k][i][0] for m in shifted] for i in range(n)] for k in range(N)]
    return LMatrix(s, TMatrix._raw(cols[0].ring, data))


def lincomb(coeffs: list[LMatrix], mats: list[LMatrix]) -> LMatrix:
    """Sum of c_b * M_b for 1x1 coefficients c_b."""
    n = mats[0].shape[0]
    out = None
    for c, M in zip(coeffs, mats):
        term = scalar(c, n) * M
        out = term if out is None else out + term
    return out


def trace(L: LMatrix) -> LMatrix:
    out = entry(L, 0, 0)
    for i in range(1, L.shape[0]):
        out = out + entry(L, i, i)
    return out


def derive(L: LMatrix) -> LMatrix:
    """Coefficientwise d/dx (t is a constant for the derivation)."""
    if L.ring.laurent:
        raise InputError("derivations are supported over the generic model only")
    return LMatrix(L.shift, L.M.map_coeffs(derive_x))


def modulus_of(*Ls: LMatrix) -> int:
    return min(L.abs_prec for L in Ls)


def agree(L1: LMatrix, L2: LMatrix, N: int | None = None) -> tuple[bool, int]:
    """Whether L1 = L2 modulo t^m, m the common known precision (capped at N)."""
    m = modulus_of(L1, L2)
    if N is not None:
        m = min(m, N)
    return L1.agrees_to(L2, m), m


def exact_scalar(e, model: RingId, N: int, window: int | None = None) -> LMatrix:
    if not isinstance(e, ExactXT):
        raise InputError("expected an exact element")
    return LMatrix.scalar_elem(e, model, N, window)


def check(checks: list, name: str, ok: bool, modulus: int | None) -> bool:
    checks.append({"name": name, "modulus": modulus, "residual_is_zero": bool(ok)})
    return bool(ok)


def rank(rows: list[list]) -> int:
    """Rank over a field whose elements support -, *, / and is_zero()."""
    rows = [list(r) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r
