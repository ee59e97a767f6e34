"""Dense exact linear algebra over the coefficient fields.

Matrices are lists of rows of raw field values.  Prime fields small enough
for int64 arithmetic go through a vectorized numpy path; everything else
(QQ, oversized primes) uses generic field-op elimination.
"""

from __future__ import annotations

import numpy as np

from .field import Field, PrimeField

_NP_LIMIT = 2 ** 31  # p*p must fit comfortably in int64 alongside row sums


def _use_numpy(K: Field) -> bool:
    return isinstance(K, PrimeField) and K.p < _NP_LIMIT


def _rref_modp(A: np.ndarray, p: int):
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        if np.any(col):
            A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def _rref_generic(rows_in, K: Field):
    A = [list(row) for row in rows_in]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if not K.is_zero(A[i][c])), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = K.inv(A[r][c])
        A[r] = [K.mul(x, inv) for x in A[r]]
        for i in range(nrows):
            if i != r and not K.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rref(K: Field, rows):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    if not rows or not len(rows[0]):
        return [list(r) for r in rows], []
    if _use_numpy(K):
        R, piv = _rref_modp(np.asarray(rows, dtype=np.int64), K.p)
        return [[int(x) for x in row] for row in R], piv
    return _rref_generic(rows, K)


def rank(K: Field, rows) -> int:
    return len(rref(K, rows)[1])


def kernel(K: Field, rows, ncols: int | None = None):
    """Basis of the right kernel {v : A v = 0}, as a list of vectors."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [[K.one() if i == j else K.zero() for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(K, rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [K.zero()] * ncols
        v[fc] = K.one()
        for i, pc in enumerate(pivots):
            v[pc] = K.neg(R[i][fc])
        basis.append(v)
    return basis


def solve(K: Field, rows, b):
    """One solution x of A x = b, or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [bv] for r, bv in zip(rows, b)]
    if not aug:
        return [K.zero()] * ncols
    R, pivots = rref(K, aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [K.zero()] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x


def row_space_basis(K: Field, rows):
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    R, pivots = rref(K, rows)
    return [R[i] for i in range(len(pivots))]


def in_row_space(K: Field, rows, v) -> bool:
    return rank(K, list(rows) + [list(v)]) == rank(K, rows)


class SpanBuilder:
    """Incremental row-space membership: add() reports whether a vector
    enlarged the span.  Rows are kept in echelon form (pivot-normalized)."""

    def __init__(self, K: Field, ncols: int):
        self.K = K
        self.ncols = ncols
        self._np = _use_numpy(K)
        self.rows: list = []
        self.pivots: list[int] = []

    def _reduce_np(self, v):
        p = self.K.p
        v = np.asarray(v, dtype=np.int64) % p
        for i, c in enumerate(self.pivots):
            f = int(v[c])
            if f:
                v = (v - f * self.rows[i]) % p
        return v

    def add(self, vec) -> bool:
        K = self.K
        if self._np:
            v = self._reduce_np(vec)
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return False
            c = int(nz[0])
            v = v * pow(int(v[c]), K.p - 2, K.p) % K.p
            self.rows.append(v)
            self.pivots.append(c)
            return True
        v = [K.coerce(x) for x in vec]
        for i, c in enumerate(self.pivots):
            f = v[c]
            if not K.is_zero(f):
                row = self.rows[i]
                v = [K.sub(x, K.mul(f, y)) for x, y in zip(v, row)]
        c = next((j for j, x in enumerate(v) if not K.is_zero(x)), None)
        if c is None:
            return False
        inv = K.inv(v[c])
        v = [K.mul(x, inv) for x in v]
        self.rows.append(v)
        self.pivots.append(c)
        return True

    def reduce(self, vec) -> list:
        """The vector reduced modulo the span, as a plain raw-value list."""
        if self._np:
            return [int(x) for x in self._reduce_np(vec)]
        K = self.K
        v = [K.coerce(x) for x in vec]
        for i, c in enumerate(self.pivots):
            f = v[c]
            if not K.is_zero(f):
                row = self.rows[i]
                v = [K.sub(x, K.mul(f, y)) for x, y in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        K = self.K
        return all(K.is_zero(x) for x in self.reduce(vec))

    def basis(self) -> list[list]:
        """Echelon rows as plain raw-value lists."""
        if self._np:
            return [[int(x) for x in row] for row in self.rows]
        return [list(row) for row in self.rows]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def complement_indices(K: Field, spanning, candidates):
    """Indices of candidate vectors extending span(spanning) to span(both).

    Greedy scan in the given candidate order, so selections are reproducible.
    """
    if not candidates:
        return []
    ncols = len(candidates[0])
    sb = SpanBuilder(K, ncols)
    for v in spanning:
        sb.add(v)
    chosen = []
    for idx, v in enumerate(candidates):
        if sb.add(v):
            chosen.append(idx)
    return chosen
