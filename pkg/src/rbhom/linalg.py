"""Exact dense linear algebra over Q(l).

Matrices are tuples of row tuples; ``M[i][j]`` is the coefficient of ``x_i`` in
the image of ``x_j`` (columns are images).  Vectors are tuples.  Row reduction
picks, column by column from the left, the first row with a nonzero entry, so
echelon forms and kernel bases are reproducible.
"""

from __future__ import annotations

from typing import Sequence

from .errors import RankDeficiencyError, ShapeError
from .scalars import ONE, ZERO, Scalar

Matrix = tuple
Vector = tuple


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def scalar_matrix(n: int, c: Scalar) -> Matrix:
    return tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M)) if M else ()


def column(M: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in M)


def from_columns(cols: Sequence[Vector], rows: int | None = None) -> Matrix:
    if not cols:
        return tuple(() for _ in range(rows or 0))
    return tuple(zip(*cols))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    if not c:
        return tuple(c * x for x in v) if not isinstance(c, Scalar) else (ZERO,) * len(v)
    return tuple(c * x for x in v)


def is_zero_vec(v: Vector) -> bool:
    return not any(v)


def mat_vec(M: Matrix, v: Vector) -> Vector:
    nz = [(j, x) for j, x in enumerate(v) if x]
    out = []
    for row in M:
        acc = ZERO
        for j, x in nz:
            a = row[j]
            if a:
                acc = acc + a * x
        out.append(acc)
    return tuple(out)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise ShapeError(f"cannot multiply {shape(A)} by {shape(B)}")
    cols = [mat_vec(A, column(B, j)) for j in range(len(B[0]) if B else 0)]
    return from_columns(cols, len(A))


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(vadd(r, s) for r, s in zip(A, B))


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(vsub(r, s) for r, s in zip(A, B))


def rref(M: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.

    Works for any entries supporting ``+ - * /`` and truthiness.
    """
    R = [list(r) for r in M]
    rows = len(R)
    cols = len(R[0]) if R else 0
    pivots: list[int] = []
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        sel = next((i for i in range(pr, rows) if R[i][c]), None)
        if sel is None:
            continue
        R[pr], R[sel] = R[sel], R[pr]
        inv = ONE / R[pr][c]
        R[pr] = [x * inv if x else x for x in R[pr]]
        for i in range(rows):
            if i != pr and R[i][c]:
                k = R[i][c]
                R[i] = [a - k * b if b else a for a, b in zip(R[i], R[pr])]
        pivots.append(c)
        pr += 1
    return R, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel(M: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{v : M v = 0}``; one vector per free column, free entry 1."""
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    if not M:
        return [unit(n, j) for j in range(n)]
    R, piv = rref(M)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for fj in free:
        v = [ZERO] * n
        v[fj] = ONE
        for r, pc in enumerate(piv):
            if R[r][fj]:
                v[pc] = -R[r][fj]
        basis.append(tuple(v))
    return basis


def solve(A: Matrix, b: Vector) -> Vector | None:
    """A particular solution of ``A x = b`` (free variables 0), or None."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [ZERO] * n
    for r, pc in enumerate(piv):
        x[pc] = R[r][n]
    return tuple(x)


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(r) + list(e) for r, e in zip(M, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise RankDeficiencyError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R[:n])


def is_invertible(M: Matrix) -> bool:
    return rank(M) == len(M)


def coordinates(basis: Sequence[Vector], v: Vector) -> Vector | None:
    """Coefficients of ``v`` in the (independent) ``basis``, or None if outside the span."""
    return solve(from_columns(basis, len(v)), v)


def same_rowspace(U: Sequence[Vector], W: Sequence[Vector]) -> bool:
    ru, _ = rref(list(U))
    rw, _ = rref(list(W))
    nz = lambda R: [tuple(r) for r in R if any(r)]
    return nz(ru) == nz(rw)


def vec_str(v: Vector) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"
