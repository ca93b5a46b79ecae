"""Small dense matrices over any commutative ring of Python objects.

Matrices are lists of row lists.  Only ``+ - *`` are needed, except for
``mat_inverse_field`` which also divides.
"""

from __future__ import annotations

from typing import Callable, Sequence

Matrix = list


def mat_identity(n: int, zero, one) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_zero(r: int, c: int, zero) -> Matrix:
    return [[zero] * c for _ in range(r)]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(A: Matrix) -> Matrix:
    return [[-a for a in row] for row in A]


def mat_map(A: Matrix, fn: Callable) -> Matrix:
    return [[fn(a) for a in row] for row in A]


def mat_mul(A: Matrix, B: Matrix, zero) -> Matrix:
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        orow = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                a = row[k]
                if a == 0:
                    continue
                b = B[k][j]
                if b == 0:
                    continue
                acc = acc + a * b
            orow.append(acc)
        out.append(orow)
    return out


def mat_scale(A: Matrix, s) -> Matrix:
    return [[s * a for a in row] for row in A]


def mat_transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def mat_is_zero(A: Matrix) -> bool:
    return all(a == 0 for row in A for a in row)


def _det_rows(A: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int], zero, memo: dict):
    """Laplace expansion along the first listed row, memoized on column sets."""
    key = tuple(cols)
    if key in memo:
        return memo[key]
    if not rows:
        return None  # empty determinant: caller substitutes one
    r = rows[0]
    acc = zero
    sign = 1
    for idx, c in enumerate(cols):
        a = A[r][c]
        if a != 0:
            sub_cols = cols[:idx] + cols[idx + 1:]
            minor = _det_rows(A, rows[1:], sub_cols, zero, memo)
            term = a if minor is None else a * minor
            acc = acc + term if sign > 0 else acc - term
        sign = -sign
    memo[key] = acc
    return acc


def mat_det(A: Matrix, zero, one):
    n = len(A)
    if n == 0:
        return one
    d = _det_rows(A, list(range(n)), list(range(n)), zero, {})
    return one if d is None else d


def mat_adjugate(A: Matrix, zero, one) -> Matrix:
    """Transpose of the cofactor matrix, so A * adj(A) = det(A) * I."""
    n = len(A)
    if n == 1:
        return [[one]]
    adj = [[zero] * n for _ in range(n)]
    for i in range(n):
        rows = [r for r in range(n) if r != i]
        memo: dict = {}
        for j in range(n):
            cols = [c for c in range(n) if c != j]
            m = _det_rows(A, rows, cols, zero, memo)
            m = one if m is None else m
            adj[j][i] = m if (i + j) % 2 == 0 else -m
    return adj


def mat_inverse_field(A: Matrix, zero, one) -> Matrix:
    """Gauss-Jordan inverse over a field; raises ZeroDivisionError if singular."""
    n = len(A)
    M = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = one / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def mat_rank_field(A: Matrix, zero, one) -> int:
    M = [list(row) for row in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = one / M[rank][col]
        M[rank] = [v * inv for v in M[rank]]
        for r in range(rows):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank
