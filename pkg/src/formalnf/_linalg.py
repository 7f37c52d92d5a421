"""Gaussian elimination over Q(i).  Matrices are lists of row lists."""

from __future__ import annotations

from .exactnum import ONE, ZERO


def rref(rows, ncols: int):
    """Reduced row echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(A)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        if piv != 1:
            inv = ONE / piv
            A[r] = [x * inv if x else x for x in A[r]]
        row = A[r]
        for i in range(nrows):
            if i != r:
                f = A[i][c]
                if f:
                    A[i] = [x - f * y if y else x for x, y in zip(A[i], row)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int) -> list:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(x)
    return basis


def solve(rows, rhs, ncols: int):
    """One solution of ``A x = b`` (free variables zero), or ``None``."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    return x


def transpose(rows, ncols: int) -> list:
    return [[r[c] for r in rows] for c in range(ncols)]


def matvec(rows, x) -> list:
    out = []
    for r in rows:
        acc = ZERO
        for a, b in zip(r, x):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out
