"""Exact integer linear algebra: Smith normal form and linear solves mod m.

Used by the coboundary decision procedure.  Correct for composite moduli,
where Gaussian elimination mod m would fail.
"""

from __future__ import annotations

from math import gcd

import numpy as np

_OVERFLOW_GUARD = 1 << 50


def _echelon_carry(A: np.ndarray, b: np.ndarray, m: int):
    """Row echelon reduction of A x = b (mod m), carrying b through the row ops.

    Row operations are unimodular over Z, hence invertible mod m, and every
    entry only matters mod m, so the working matrix is reduced to [0, m)
    throughout; entries stay below m and intermediates below m^2.  Returns
    (R, c, extra) where R is the reduced row block, c the carried right
    side, and extra the carried entries of rows whose A-part vanished
    (consistency constraints 0 = extra_i mod m).
    """
    if m * m > _OVERFLOW_GUARD:
        raise OverflowError("modulus too large for int64 arithmetic")
    W = np.concatenate([np.asarray(A, dtype=np.int64),
                        np.asarray(b, dtype=np.int64)[:, None]], axis=1) % m
    rows, cols = W.shape[0], W.shape[1] - 1
    r = 0
    for j in range(cols):
        if r >= rows:
            break
        while True:
            col = W[r:, j]
            nz = np.flatnonzero(col)
            if nz.size == 0:
                break
            p = r + nz[np.argmin(col[nz])]
            if p != r:
                W[[r, p]] = W[[p, r]]
            quo = W[r + 1:, j] // W[r, j]
            W[r + 1:] = (W[r + 1:] - quo[:, None] * W[r][None, :]) % m
            if not W[r + 1:, j].any():
                r += 1
                break
    live = W[:r]
    rest = W[r:]
    # rows below the pivot block have zero A-part by construction
    extra = rest[:, -1][np.abs(rest[:, :-1]).sum(axis=1) == 0]
    return live[:, :-1], live[:, -1], extra


def smith_normal_form(A):
    """Return (S, U, V) with U A V = S diagonal, U and V unimodular.

    Exact over Z via Python integers; intended for small matrices.
    """
    A = [[int(x) for x in row] for row in np.asarray(A)]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def addmul_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    k = 0
    while k < min(rows, cols):
        # locate a nonzero pivot of minimal magnitude
        pivot = None
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        while True:
            done = True
            for i in range(k + 1, rows):
                if A[i][k]:
                    addmul_row(i, k, -(A[i][k] // A[k][k]))
                    if A[i][k]:
                        swap_rows(k, i)
                        done = False
            for j in range(k + 1, cols):
                if A[k][j]:
                    addmul_col(j, k, -(A[k][j] // A[k][k]))
                    if A[k][j]:
                        swap_cols(k, j)
                        done = False
            if done:
                break
        # divisibility: d_k must divide everything below and to the right
        fixed = False
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if A[i][j] % A[k][k]:
                    addmul_row(k, i, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]
        k += 1

    S = np.zeros((rows, cols), dtype=object)
    for i in range(min(rows, cols)):
        S[i, i] = A[i][i]
    return S, np.array(U, dtype=object), np.array(V, dtype=object)


def solve_mod(A, b, m: int):
    """One solution x of A x = b (mod m), or None when none exists.

    The decision is exact: row reduction over Z followed by a Smith normal
    form of the surviving block, then a diagonal solve mod m.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    m = int(m)
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return np.zeros(A.shape[1], dtype=np.int64)

    R, c, extra = _echelon_carry(A, b, m)
    if any(int(e) % m for e in extra):
        return None
    if R.shape[0] == 0:
        return np.zeros(A.shape[1], dtype=np.int64)

    S, U, V = smith_normal_form(R)
    cprime = U @ c.astype(object)
    ncols = R.shape[1]
    z = [0] * ncols
    for i in range(R.shape[0]):
        d = int(S[i, i]) if i < ncols else 0
        rhs = int(cprime[i]) % m
        if d == 0:
            if rhs % m:
                return None
            continue
        g = gcd(d % m if d % m else m, m)
        if rhs % g:
            return None
        mm = m // g
        if mm > 1:
            z[i] = (rhs // g) * pow((d // g) % mm, -1, mm) % mm
    x = V @ np.array(z, dtype=object)
    x = np.array([int(v) % m for v in x], dtype=np.int64)
    if ((A.astype(np.int64) @ x - b) % m).any():
        return None
    return x
