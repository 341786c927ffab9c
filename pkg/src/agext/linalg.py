"""Dense exact linear algebra over GF(q).

Matrices are 2-D ``int64`` numpy arrays of element indices; the field is
passed alongside.  Sizes in this package stay around 30x30, so everything
is plain Gaussian elimination with first-nonzero pivoting.
"""

from __future__ import annotations

import numpy as np

from .gf import Field


class DimensionError(ValueError):
    pass


def as_matrix(F: Field, rows, cols: int | None = None) -> np.ndarray:
    M = np.asarray(rows, dtype=np.int64)
    if M.size == 0:
        return np.zeros((0, cols if cols is not None else (M.shape[-1] if M.ndim == 2 else 0)),
                        dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    F.check(M)
    return M


def rref(F: Field, M: np.ndarray) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.mul(F.inv(int(R[r, c])), R[r])
        for i in range(nrows):
            if i != r and R[i, c]:
                R[i] = F.sub(R[i], F.mul(int(R[i, c]), R[r]))
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(F: Field, M: np.ndarray) -> int:
    return rref(F, M)[1]


def row_basis(F: Field, M: np.ndarray) -> np.ndarray:
    R, r, _ = rref(F, M)
    return R[:r]


def nullspace(F: Field, M: np.ndarray) -> np.ndarray:
    """Rows form a basis of {v : M v^T = 0}."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    R, r, pivots = rref(F, M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(R[row, fc]))
    return basis


def mat_mul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        out = F.add(out, F.mul(A[:, t][:, None], B[t][None, :]))
    return np.asarray(out, dtype=np.int64).reshape(A.shape[0], B.shape[1])


def vec_mat(F: Field, v, M: np.ndarray) -> np.ndarray:
    return mat_mul(F, np.asarray(v, dtype=np.int64).reshape(1, -1), M)[0]


def same_row_space(F: Field, A: np.ndarray, B: np.ndarray) -> bool:
    RA = row_basis(F, A)
    RB = row_basis(F, B)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))


def solve_row(F: Field, M: np.ndarray, target) -> np.ndarray | None:
    """Some x with x M = target, or None."""
    M = np.asarray(M, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    k = M.shape[0]
    aug = np.concatenate([M.T, target.reshape(-1, 1)], axis=1)
    R, r, pivots = rref(F, aug)
    if k in pivots:
        return None
    x = np.zeros(k, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = R[row, k]
    return x


def solve_syndrome(F: Field, H: np.ndarray, s) -> np.ndarray | None:
    """Some v with H v^T = s."""
    return solve_row(F, np.asarray(H, dtype=np.int64).T, s)
