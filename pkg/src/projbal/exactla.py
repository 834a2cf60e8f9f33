"""Small dense linear algebra over exact scalars or numpy floats.

Exact matrices are tuples of tuples holding int/Fraction/QC (pairing
matrices may hold PiScalar); float matrices are numpy arrays.  The same
call sites serve both, so the lemma-level code paths are identical in
exact and double precision runs.  Everything here is O(n^3) textbook
material; the matrices involved stay small (n <= ~60).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import numpy as np

from .errors import DomainError
from .scalars import QC, PiScalar, conj_scalar


def is_float_matrix(m) -> bool:
    return isinstance(m, np.ndarray)


def as_rows(m):
    """Mutable list-of-lists copy of an exact matrix."""
    return [list(row) for row in m]


def freeze(rows):
    return tuple(tuple(row) for row in rows)


def to_float(m) -> np.ndarray:
    if is_float_matrix(m):
        return np.asarray(m, dtype=complex)
    out = np.empty((len(m), len(m[0])), dtype=complex)
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if isinstance(x, (QC, PiScalar)):
                out[i, j] = x.to_float() if isinstance(x, PiScalar) else x.to_complex()
            else:
                out[i, j] = complex(x)
    return out


def eye(n: int, exact: bool = True):
    if not exact:
        return np.eye(n, dtype=complex)
    return freeze([[QC(1) if i == j else QC(0) for j in range(n)]
                   for i in range(n)])


def dagger(m):
    if is_float_matrix(m):
        return m.conj().T
    n, k = len(m), len(m[0])
    return freeze([[conj_scalar(m[i][j]) for i in range(n)] for j in range(k)])


def conj_matrix(m):
    if is_float_matrix(m):
        return m.conj()
    return freeze([[conj_scalar(x) for x in row] for row in m])


def transpose(m):
    if is_float_matrix(m):
        return m.T
    return freeze([[m[i][j] for i in range(len(m))] for j in range(len(m[0]))])


def matmul(a, b):
    if is_float_matrix(a) and is_float_matrix(b):
        return a @ b
    n, k, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = 0
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return freeze(out)


def matvec(a, v):
    if is_float_matrix(a):
        return a @ np.asarray(v)
    return tuple(sum((a[i][t] * v[t] for t in range(len(v))), start=0)
                 for i in range(len(a)))


def scale(m, c):
    if is_float_matrix(m):
        return m * c
    return freeze([[c * x for x in row] for row in m])


def add(a, b):
    if is_float_matrix(a):
        return a + b
    return freeze([[a[i][j] + b[i][j] for j in range(len(a[0]))]
                   for i in range(len(a))])


def _pivot_size(x):
    if isinstance(x, QC):
        return x.abs2()
    if isinstance(x, PiScalar):
        return x.coef.abs2()
    if isinstance(x, complex):
        return abs(x) ** 2
    return x * x


def inverse(m):
    """Gauss-Jordan with partial pivoting; exact over a field."""
    if is_float_matrix(m):
        return np.linalg.inv(m)
    n = len(m)
    a = as_rows(m)
    inv = as_rows(eye(n))
    for col in range(n):
        piv = max(range(col, n), key=lambda r: _pivot_size(a[r][col]))
        if _pivot_size(a[piv][col]) == 0:
            raise DomainError("singular matrix in exact inverse")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        inv[col] = [x / d for x in inv[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if _pivot_size(f) == 0:
                continue
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return freeze(inv)


def det(m):
    if is_float_matrix(m):
        return np.linalg.det(m)
    n = len(m)
    a = as_rows(m)
    out = QC(1)
    for col in range(n):
        piv = max(range(col, n), key=lambda r: _pivot_size(a[r][col]))
        if _pivot_size(a[piv][col]) == 0:
            return QC(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        d = a[col][col]
        out = out * d
        for r in range(col + 1, n):
            f = a[r][col] / d
            if _pivot_size(f) == 0:
                continue
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return out


def permanent(m):
    """Permanent by direct expansion; rows stay tiny (d <= 4)."""
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for sigma in permutations(range(n)):
        p = 1
        for i in range(n):
            p = p * m[i][sigma[i]]
        total = total + p
    return total


def ldl_hermitian(h):
    """H = L diag(d) L^dagger with unit lower-triangular L, real d.

    Fails with DomainError when H is not positive definite, which is
    exactly the situation the callers must reject.  Exact input gives
    exact output (no square roots taken).
    """
    if is_float_matrix(h):
        n = h.shape[0]
        L = np.eye(n, dtype=complex)
        d = np.zeros(n)
        for j in range(n):
            s = h[j, j] - sum(L[j, t] * np.conj(L[j, t]) * d[t] for t in range(j))
            ds = s.real
            if ds <= 0:
                raise DomainError("matrix not positive definite in LDL")
            d[j] = ds
            for i in range(j + 1, n):
                v = h[i, j] - sum(L[i, t] * np.conj(L[j, t]) * d[t] for t in range(j))
                L[i, j] = v / ds
        return L, d
    n = len(h)
    L = as_rows(eye(n))
    d = [Fraction(0)] * n
    for j in range(n):
        s = QC.coerce(h[j][j])
        for t in range(j):
            s = s - L[j][t] * conj_scalar(L[j][t]) * d[t]
        if not s.is_real():
            raise DomainError("matrix not hermitian in LDL")
        if s.re <= 0:
            raise DomainError("matrix not positive definite in LDL")
        d[j] = s.re
        for i in range(j + 1, n):
            v = QC.coerce(h[i][j])
            for t in range(j):
                v = v - L[i][t] * conj_scalar(L[j][t]) * d[t]
            L[i][j] = v / d[j]
    return freeze(L), d


def is_positive_definite(h) -> bool:
    try:
        ldl_hermitian(h)
    except DomainError:
        return False
    return True


def is_hermitian(m, tol: float = 1e-12) -> bool:
    if is_float_matrix(m):
        return bool(np.max(np.abs(m - m.conj().T)) <= tol * max(1.0, np.max(np.abs(m))))
    n = len(m)
    for i in range(n):
        for j in range(n):
            a, b = m[i][j], conj_scalar(m[j][i])
            if isinstance(a, PiScalar) or isinstance(b, PiScalar):
                if PiScalar.coerce(a) != PiScalar.coerce(b):
                    return False
            elif QC.coerce(a) != QC.coerce(b):
                return False
    return True
