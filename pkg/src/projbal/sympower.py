"""Symmetric-power algebra on a finite-dimensional hermitian space.

Monomial bases of Sym^d V, the induced metric via permanents, the
multiplicative representation Sym^d A and its derivation S^d A, and the
rank-one projector onto a d-th power line.  The monomial basis is
ordered lexicographically DESCENDING on exponent vectors, e.g. for
(r, d) = (2, 2): e1^2, e1 e2, e2^2.  Every matrix in the package uses
this ordering.

Inner products are conjugate-linear in the FIRST slot: <v, w>_H = v* H w.
An endomorphism A is hermitian w.r.t. H iff H A equals (H A)*.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exactla as la
from .errors import DomainError
from .scalars import QC, conj_scalar, scalar_is_exact, to_complex as _to_c


class MultiIndex(tuple):
    """Exponent vector with nonnegative integer entries."""

    def __new__(cls, it):
        t = tuple(int(x) for x in it)
        if any(x < 0 for x in t):
            raise DomainError(f"negative exponent in multi-index {t}")
        return super().__new__(cls, t)

    @property
    def degree(self) -> int:
        return sum(self)

    def factorial(self) -> int:
        out = 1
        for x in self:
            out *= math.factorial(x)
        return out


@lru_cache(maxsize=None)
def multi_indices(r: int, d: int) -> tuple:
    """All length-r multi-indices of degree d, lex descending."""
    if r < 1:
        raise DomainError("need r >= 1")
    if d < 0:
        raise DomainError("need d >= 0")

    def gen(rr, dd):
        if rr == 1:
            yield (dd,)
            return
        for first in range(dd, -1, -1):
            for rest in gen(rr - 1, dd - first):
                yield (first,) + rest

    return tuple(MultiIndex(t) for t in gen(r, d))


@lru_cache(maxsize=None)
def index_of(r: int, d: int) -> dict:
    return {I: a for a, I in enumerate(multi_indices(r, d))}


def sym_dim(r: int, d: int) -> int:
    if r < 1:
        raise DomainError("need r >= 1")
    if d < 0:
        raise DomainError("need d >= 0")
    return math.comb(r + d - 1, d)


def _detect_exact(entries) -> bool:
    if isinstance(entries, np.ndarray):
        return False
    return all(scalar_is_exact(x) for row in entries for x in row)


class HermitianForm:
    """Square conjugate-symmetric matrix, exact or double precision."""

    def __init__(self, entries, check: bool = True):
        self.exact = _detect_exact(entries)
        if self.exact:
            self.mat = la.freeze([[QC.coerce(x) for x in row] for row in entries])
            self.n = len(self.mat)
        else:
            self.mat = np.asarray(entries, dtype=complex)
            self.n = self.mat.shape[0]
        if check and not la.is_hermitian(self.mat):
            raise DomainError("matrix is not conjugate-symmetric")

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "HermitianForm":
        return cls(la.eye(n, exact=exact), check=False)

    @classmethod
    def diagonal(cls, vals) -> "HermitianForm":
        vals = list(vals)
        n = len(vals)
        if all(scalar_is_exact(v) for v in vals):
            rows = [[QC.coerce(vals[i]) if i == j else QC(0) for j in range(n)]
                    for i in range(n)]
            return cls(rows, check=False)
        return cls(np.diag(np.asarray(vals, dtype=complex)), check=False)

    def to_float(self) -> np.ndarray:
        return la.to_float(self.mat)

    def is_positive_definite(self) -> bool:
        return la.is_positive_definite(self.mat)

    def require_positive(self):
        if not self.is_positive_definite():
            raise DomainError("metric is not positive definite")

    def inverse(self):
        return la.inverse(self.mat)

    def ldl(self):
        return la.ldl_hermitian(self.mat)

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"HermitianForm(n={self.n}, {kind})"


class SymEndomorphism:
    """Matrix on Sym^d V in the monomial basis, tagged with (r, d)."""

    def __init__(self, mat, r: int, d: int):
        self.mat = mat if la.is_float_matrix(mat) else la.freeze(mat)
        self.r = int(r)
        self.d = int(d)
        self.R = sym_dim(self.r, self.d)
        size = self.mat.shape[0] if la.is_float_matrix(self.mat) else len(self.mat)
        if size != self.R:
            raise DomainError(
                f"matrix size {size} does not match sym_dim({r},{d})={self.R}")

    def to_float(self) -> np.ndarray:
        return la.to_float(self.mat)

    def is_hermitian_wrt(self, H, tol: float = 1e-10) -> bool:
        hm = H.mat if isinstance(H, HermitianForm) else H
        prod = la.matmul(hm, self.mat)
        return la.is_hermitian(prod, tol=tol)


def entries_of(x):
    """Raw matrix of a HermitianForm / SymEndomorphism / bare matrix."""
    if isinstance(x, (HermitianForm, SymEndomorphism)):
        return x.mat
    return x


def sym_metric(h, d: int) -> HermitianForm:
    """Gram matrix of the monomial basis of Sym^d V under Sym^d h.

    Entry (I, J) is perm(h[I-rows, J-cols]) / d! where rows and columns
    repeat basis vectors with the multiplicities of I and J.  With the
    identity metric this is diag(I!/d!).
    """
    hm = entries_of(h)
    if isinstance(h, HermitianForm):
        h.require_positive()
    elif not la.is_positive_definite(hm):
        raise DomainError("metric is not positive definite")
    r = hm.shape[0] if la.is_float_matrix(hm) else len(hm)
    mis = multi_indices(r, d)
    fact = math.factorial(d)
    exact = not la.is_float_matrix(hm)
    rows_of = {I: [i for i, m in enumerate(I) for _ in range(m)] for I in mis}
    out = []
    for I in mis:
        ri = rows_of[I]
        row = []
        for J in mis:
            cj = rows_of[J]
            sub = [[hm[a][b] if exact else hm[a, b] for b in cj] for a in ri]
            p = la.permanent(sub)
            if exact:
                row.append(QC.coerce(p) / fact)
            else:
                row.append(p / fact)
        out.append(row)
    if exact:
        return HermitianForm(out, check=False)
    return HermitianForm(np.array(out, dtype=complex), check=False)


def _multinomial(d: int, K) -> int:
    out = math.factorial(d)
    for x in K:
        out //= math.factorial(x)
    return out


def monomial_matrix(C, deg: int):
    """X[I, J] = coefficient of y^J in prod_i (sum_j C[i,j] y_j)^{I_i}.

    The workhorse for frame changes of monomials and for Sym^d A.
    """
    Cm = entries_of(C)
    exact = not la.is_float_matrix(Cm)
    r = len(Cm) if exact else Cm.shape[0]
    mis = multi_indices(r, deg)
    idx = index_of(r, deg)
    zero = QC(0) if exact else 0j

    @lru_cache(maxsize=None)
    def linear_power(i: int, p: int):
        # (sum_j C[i,j] y_j)^p as {K: coeff}
        coeffs = {}
        for K in multi_indices(r, p):
            c = _multinomial(p, K)
            val = c if exact else complex(c)
            ok = True
            for j, kj in enumerate(K):
                if kj == 0:
                    continue
                cij = Cm[i][j] if exact else Cm[i, j]
                if exact and QC.coerce(cij).is_zero():
                    ok = False
                    break
                if not exact and cij == 0:
                    ok = False
                    break
                val = val * (cij ** kj if not exact else QC.coerce(cij) ** kj)
            if ok:
                coeffs[K] = val
        return coeffs

    def poly_mul(p1, p2):
        out = {}
        for k1, v1 in p1.items():
            for k2, v2 in p2.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, zero) + v1 * v2
        return out

    rows = []
    for I in mis:
        poly = {(0,) * r: QC(1) if exact else 1.0 + 0j}
        for i, mult in enumerate(I):
            if mult:
                poly = poly_mul(poly, linear_power(i, mult))
        row = [zero] * len(mis)
        for K, v in poly.items():
            row[idx[MultiIndex(K)]] = v
        rows.append(row)
    if exact:
        return la.freeze(rows)
    return np.array(rows, dtype=complex)


def sym_rep(A, d: int) -> SymEndomorphism:
    """Multiplicative representation on Sym^d V in the monomial basis."""
    Am = entries_of(A)
    exact = not la.is_float_matrix(Am)
    r = len(Am) if exact else Am.shape[0]
    At = la.dagger(la.conj_matrix(Am)) if exact else Am.T  # plain transpose
    X = monomial_matrix(At, d)
    Xt = la.dagger(la.conj_matrix(X)) if exact else X.T
    return SymEndomorphism(Xt, r, d)


def sym_lie(A, d: int) -> SymEndomorphism:
    """Derivation S^d A: acts as A on one factor at a time."""
    Am = entries_of(A)
    exact = not la.is_float_matrix(Am)
    r = len(Am) if exact else Am.shape[0]
    mis = multi_indices(r, d)
    idx = index_of(r, d)
    R = len(mis)
    if exact:
        out = [[QC(0) for _ in range(R)] for _ in range(R)]
    else:
        out = np.zeros((R, R), dtype=complex)
    for b, J in enumerate(mis):
        for j, Jj in enumerate(J):
            if Jj == 0:
                continue
            for i in range(r):
                Iv = list(J)
                Iv[j] -= 1
                Iv[i] += 1
                a = idx[MultiIndex(Iv)]
                contrib = Jj * (Am[i][j] if exact else Am[i, j])
                if exact:
                    out[a][b] = out[a][b] + contrib
                else:
                    out[a, b] += contrib
    return SymEndomorphism(la.freeze(out) if exact else out, r, d)


def power_coords(v, d: int):
    """Coordinates of v^d in the monomial basis: (d!/I!) v^I."""
    r = len(v)
    coords = []
    for I in multi_indices(r, d):
        c = Fraction(math.factorial(d), I.factorial())
        val = c if scalar_is_exact(v[0]) else float(c)
        for i, p in enumerate(I):
            for _ in range(p):
                val = val * v[i]
        coords.append(val)
    return coords


def dual_power_coords(v, d: int):
    """Coefficient vector c with c_I = v^I (power of a covector)."""
    r = len(v)
    coords = []
    for I in multi_indices(r, d):
        val = 1
        for i, p in enumerate(I):
            for _ in range(p):
                val = val * v[i]
        coords.append(val)
    return coords


def lambda_d(v, H: HermitianForm, dual: bool = False) -> SymEndomorphism:
    """Rank-one H-orthogonal projector onto the d-th power line of v.

    With dual=True, v is a covector and the projector targets the
    H-representative w of the functional u -> (v^{tensor d})(u), found
    by solving the linear system rather than extracting any root.
    """
    r = len(v)
    H.require_positive()
    d = None
    for dd in range(0, 200):
        if sym_dim(r, dd) == H.n:
            d = dd
            break
    if d is None:
        raise DomainError(f"no degree d with sym_dim({r}, d) = {H.n}")
    exact = H.exact and all(scalar_is_exact(x) for x in v)
    if all((QC.coerce(x).is_zero() if scalar_is_exact(x) else x == 0) for x in v):
        raise DomainError("lambda_d needs a nonzero vector")

    if dual:
        c = dual_power_coords(v, d)
        cbar = [conj_scalar(t) for t in c]
        if exact:
            x = la.matvec(H.inverse(), cbar)
        else:
            x = la.inverse(H.to_float()) @ np.asarray([_to_c(t) for t in cbar])
    else:
        x = power_coords(v, d)
        if not exact:
            x = np.asarray([_to_c(t) for t in x])
    hm = H.mat if exact else H.to_float()
    Hx = la.matvec(hm, x)
    norm2 = sum((conj_scalar(xi) * Hxi for xi, Hxi in zip(x, Hx)), start=0)
    if exact:
        rows = [[x[i] * conj_scalar(x[j]) for j in range(H.n)] for i in range(H.n)]
        P = la.matmul(rows, hm)
        P = la.scale(P, 1 / QC.coerce(norm2))
        return SymEndomorphism(P, r, d)
    xv = np.asarray(x).reshape(-1, 1)
    P = (xv @ xv.conj().T @ hm) / norm2
    return SymEndomorphism(P, r, d)
