"""Small exact linear algebra over a FieldSpec (Gaussian elimination).

Vectors are lists of Coefficient; everything stays in the field.
"""

from __future__ import annotations

from typing import List, Optional

from .fields import Coefficient, FieldSpec

Vector = List[Coefficient]
Matrix = List[Vector]


def rref(rows: Matrix) -> tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def solve_columns(columns: Matrix, target: Vector, field: FieldSpec) -> Optional[Vector]:
    """Solve sum_j x_j * columns[j] = target; None if inconsistent.

    Free variables are set to zero.
    """
    n = len(target)
    k = len(columns)
    rows = [[col[i] for col in columns] + [target[i]] for i in range(n)]
    reduced, pivots = rref(rows)
    if k in pivots:
        return None  # pivot in the augmented column
    solution = [field.zero] * k
    for row, col in zip(reduced, pivots):
        solution[col] = row[-1]
    return solution


def nullspace(rows: Matrix, ncols: int, field: FieldSpec) -> Matrix:
    """Basis of the right nullspace of the given row matrix."""
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis: Matrix = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for row, pc in zip(reduced, pivots):
            vec[pc] = -row[fc]
        basis.append(vec)
    return basis


def intersect_spans(span1: Matrix, span2: Matrix, field: FieldSpec) -> Matrix:
    """Basis of the intersection of two column spans (vectors as columns).

    The result is in reduced echelon form, so equal subspaces yield
    identical bases.
    """
    if not span1 or not span2:
        return []
    n = len(span1[0])
    rows = [
        [v[i] for v in span1] + [-v[i] for v in span2]
        for i in range(n)
    ]
    combined: Matrix = []
    for vec in nullspace(rows, len(span1) + len(span2), field):
        out = [field.zero] * n
        for coeff, col in zip(vec[: len(span1)], span1):
            if coeff:
                for i in range(n):
                    out[i] = out[i] + coeff * col[i]
        combined.append(out)
    reduced, _ = rref(combined)
    return [row for row in reduced if any(row)]
