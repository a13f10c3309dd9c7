"""Exact rational linear algebra on small dense matrices.

Everything here works over plain Python integers and ``fractions.Fraction``;
no floating point is used anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ValueError):
    """Raised when a linear solve meets a singular coefficient matrix."""


def det_bareiss(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by the Bareiss identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_principal_minors(rows: list[list[int]]) -> list[int]:
    """Minors det(M[:k, :k]) for k = 1..n."""
    return [det_bareiss([r[:k] for r in rows[:k]]) for k in range(1, len(rows) + 1)]


def solve_exact(rows: list[list[int]], rhs: list[int | Fraction]) -> list[Fraction]:
    """Solve M x = b exactly.

    Pivoting is deterministic: for each column the first row (in input order)
    with a nonzero entry is used, so reports built from the solution are
    reproducible across runs.
    """
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise ValueError("solve_exact expects a square system")
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    perm = list(range(n))
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            perm[col], perm[pivot] = perm[pivot], perm[col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = a[r][n] - sum(a[r][c] * x[c] for c in range(r + 1, n))
        x[r] = s / a[r][r]
    return x


def fmt(value: Fraction | int) -> str:
    """Render a rational reduced, as ``p/q`` or plain ``p`` when integral."""
    return str(Fraction(value))
