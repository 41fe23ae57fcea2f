"""Dense linear algebra over F_p on numpy int64 arrays.

All routines return canonical residues in [0, p). Pivots are always the
leftmost nonzero column, so reduced bases are deterministic.
"""

from __future__ import annotations

import numpy as np


def as_mod_array(rows, p: int, ncols: int | None = None) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    return np.mod(arr, p)


def rref(matrix: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p with zero rows dropped."""
    A = np.mod(np.array(matrix, dtype=np.int64), p)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(matrix: np.ndarray, p: int) -> int:
    if np.asarray(matrix).size == 0:
        return 0
    return len(rref(matrix, p)[1])


def left_nullspace(matrix: np.ndarray, p: int) -> np.ndarray:
    """Row-reduced basis of {c : c @ matrix = 0 mod p}."""
    M = np.asarray(matrix, dtype=np.int64)
    n = M.shape[0]
    if M.shape[1] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(M.T, p)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = -R[r, f] % p
    if not len(free):
        return basis
    return rref(basis, p)[0]


def reduce_against(rows: np.ndarray, basis: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Subtract the RREF ``basis`` components from each row (vectorized)."""
    if rows.size == 0 or not pivots:
        return np.mod(rows, p)
    coeffs = rows[:, pivots]
    return np.mod(rows - (coeffs @ basis) % p, p)


def det_mod(matrix, p: int) -> int:
    """Determinant mod p of a small square matrix given as nested lists."""
    A = [[int(x) % p for x in row] for row in matrix]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv % p
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[c])]
    return det % p


def matmul_mod(A, B, p: int) -> list[list[int]]:
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) % p for j in range(m)] for i in range(n)]
