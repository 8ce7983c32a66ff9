"""Exact linear algebra over a Field on numpy object arrays, row reduction by sympy DomainMatrix"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from gradedlpa.services.coeff import Field

logger = logging.getLogger(__name__)


def as_matrix(field: Field, rows: Sequence[Sequence[object]]) -> np.ndarray:
    """Build an object array of field elements"""
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    out = np.empty((n_rows, n_cols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise ValueError("ragged matrix")
        for j, value in enumerate(row):
            out[i, j] = field(value)
    return out


def zeros(field: Field, n_rows: int, n_cols: int) -> np.ndarray:
    out = np.empty((n_rows, n_cols), dtype=object)
    out.fill(field.zero)
    return out


def identity(field: Field, n: int) -> np.ndarray:
    out = zeros(field, n, n)
    for i in range(n):
        out[i, i] = field.one
    return out


def matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = zeros(field, a.shape[0], b.shape[1])
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = field.zero
            for k in range(a.shape[1]):
                acc = acc + a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def rref(field: Field, matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and pivot columns, computed by sympy over field.domain"""
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return matrix.copy(), []
    entries = [[field(v) for v in row] for row in matrix]
    reduced, pivots = DomainMatrix(entries, (rows, cols), field.domain).rref()
    out = np.empty((rows, cols), dtype=object)
    for i, row in enumerate(reduced.rep.to_ddm()):
        for j, value in enumerate(row):
            out[i, j] = value
    return out, list(pivots)


def rank(field: Field, matrix: np.ndarray) -> int:
    return len(rref(field, matrix)[1])


def solve(field: Field, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """A particular X with a @ X = b (free variables set to 0), or None if inconsistent"""
    vector = b.ndim == 1
    rhs = b.reshape(-1, 1) if vector else b
    n_cols = a.shape[1]
    augmented = np.concatenate([a, rhs], axis=1)
    reduced, pivots = rref(field, augmented)
    if any(p >= n_cols for p in pivots):
        return None
    X = zeros(field, n_cols, rhs.shape[1])
    for row, col in enumerate(pivots):
        X[col, :] = reduced[row, n_cols:]
    return X.reshape(-1) if vector else X


def inverse(field: Field, a: np.ndarray) -> Optional[np.ndarray]:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("only square matrices have inverses")
    return solve(field, a, identity(field, n)) if rank(field, a) == n else None


def column_basis(field: Field, a: np.ndarray) -> List[int]:
    """Indices of columns forming a basis of the column space"""
    return rref(field, a)[1]


def is_zero(field: Field, a: np.ndarray) -> bool:
    return all(field.is_zero(v) for v in a.flat)
