"""Dense linear algebra over F_q on integer-coded numpy matrices."""

from __future__ import annotations

import numpy as np

from .algebra import FieldSpec


def as_matrix(rows, n: int | None = None) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(0 if m.size == 0 else 1, -1 if m.size else (n or 0))
    if m.size == 0 and n is not None:
        m = m.reshape(0, n)
    return m


def rref(field: FieldSpec, mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form with leftmost pivots; zero rows dropped."""
    rows = [list(map(int, r)) for r in np.asarray(mat, dtype=np.int64)]
    ncols = np.asarray(mat).shape[1] if np.asarray(mat).ndim == 2 else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return np.array(rows[:r], dtype=np.int64).reshape(r, ncols), pivots


def rank(field: FieldSpec, mat) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return len(rref(field, mat)[1])


def nullspace(field: FieldSpec, mat, n: int) -> np.ndarray:
    """Basis (as rows) of {x in F_q^n : mat . x^T = 0}, one row per free column
    in increasing column order."""
    mat = np.asarray(mat, dtype=np.int64).reshape(-1, n)
    if mat.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    red, pivots = rref(field, mat)
    free = [j for j in range(n) if j not in pivots]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, j in enumerate(free):
        out[t, j] = 1
        for i, pc in enumerate(pivots):
            out[t, pc] = field.neg(int(red[i, j]))
    return out


def matmul(field: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if field.e == 1:
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out = field.vadd(out, field.vmul(a[:, t:t + 1], b[t:t + 1, :]))
    return out


def same_rowspace(field: FieldSpec, a, b) -> bool:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    ra, rb = rank(field, a), rank(field, b)
    if ra != rb:
        return False
    if a.shape[0] == 0:
        return True
    return rank(field, np.vstack([a, b])) == ra
