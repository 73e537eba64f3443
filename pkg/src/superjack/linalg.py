"""Dense exact linear algebra over Q(a).

Matrices are lists of row lists of AlphaRational.  Elimination pivots on
the first nonzero entry in column order, which keeps every run of the
package deterministic.
"""

from __future__ import annotations

from .errors import LinearAlgebraError
from .ratfunc import ONE, ZERO


def solve(matrix, rhs):
    """Solve A x = b exactly; raises on a singular square system."""
    n = len(matrix)
    if n == 0:
        return []
    width = len(matrix[0])
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    pivot_rows = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, n) if rows[i][col]), None)
        if pivot is None:
            raise LinearAlgebraError("singular system (no pivot in column %d)" % col)
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivot_rows.append(col)
        r += 1
        if r == width:
            break
    for i in range(r, n):
        if rows[i][width]:
            raise LinearAlgebraError("inconsistent system")
    out = [ZERO] * width
    for row_index, col in enumerate(pivot_rows):
        out[col] = rows[row_index][width]
    return out


def invert(matrix):
    """Exact inverse of a square matrix."""
    n = len(matrix)
    rows = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col]), None)
        if pivot is None:
            raise LinearAlgebraError("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = ONE / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for i in range(n):
            if i != col and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[col])]
    return [row[n:] for row in rows]


def matvec(matrix, vec):
    out = []
    for row in matrix:
        acc = ZERO
        for a, b in zip(row, vec):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def nullspace(matrix, width):
    """Basis of the kernel of a (possibly tall) matrix, exactly."""
    rows = [list(row) for row in matrix if any(row)]
    pivots = {}
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots[col] = r
        r += 1
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * width
        vec[f] = ONE
        for col, row_index in pivots.items():
            vec[col] = -rows[row_index][f]
        basis.append(vec)
    return basis
