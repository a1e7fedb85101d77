"""Gaussian elimination over F_q on matrices of field codes (lists of rows)."""

from __future__ import annotations

from typing import Sequence

from .gf import FieldSpec

__all__ = ["rref", "rank", "nullspace", "solve", "matmul", "matvec", "identity"]

Matrix = list[list[int]]


def rref(F: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    mul, sub, inv = F.mul, F.sub, F.inv
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = inv(A[r][col])
        if s != 1:
            A[r] = [mul(s, x) for x in A[r]]
        pr = A[r]
        for i in range(len(A)):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [sub(x, mul(f, y)) for x, y in zip(A[i], pr)]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(F: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(R[i][fc])
        basis.append(x)
    return basis


def solve(F: FieldSpec, rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    """One solution of A x = rhs, or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(F, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x


def matmul(F: FieldSpec, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    mul, add = F.mul, F.add
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(F: FieldSpec, A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    mul, add = F.mul, F.add
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, x):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return out


def identity(d: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]
