"""Exact calculus of homogeneous functions on the fiber CP^{r-1}.

A fiber function is stored as a numerator polynomial sum f_{IJ} lam^I
conj(lam)^J over the denominator Q(lam)^N, where Q(lam) = sum_{ij}
(h^{-1})_{ij} lam_i conj(lam_j) is the squared norm of the covector lam
under the reference metric h.  All integrals reduce, after an LDL frame
change, to one closed-form table:

    int lam^A conj(lam)^B / Q^{|A|} * w^{r-1}/(r-1)!
        = delta_{AB} (2pi)^{r-1} A! / (|A| + r - 1)!

over the fiber with w the unit Fubini-Study form of Q.  The affine-chart
measure convention is i dlam ^ dconj(lam) per variable (twice Lebesgue),
which is what makes the base CP^1 have area 2pi downstream.  Values are
kept as exact rational multiples of pi^{r-1} when inputs are rational;
pi cancels in every normalized quantity (Psi, T), so those come out
exactly rational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import exactla as la
from .errors import AmbiguityError, DomainError
from .scalars import QC, PiScalar, conj_scalar, rational_part, scalar_is_exact
from .scalars import to_complex as _to_c
from .sympower import (
    HermitianForm,
    MultiIndex,
    SymEndomorphism,
    monomial_matrix,
    multi_indices,
    sym_dim,
    sym_metric,
)

# ---------------------------------------------------------------------------
# closed-form monomial integrals


def homogeneous_integral(A, B, r: int):
    """Fiber integral of lam^A conj(lam)^B / Q^|A| in homogeneous form.

    A, B are length-r multi-indices of equal degree; the result is
    symmetric in the slots of A, so it agrees across affine charts.
    """
    A, B = MultiIndex(A), MultiIndex(B)
    if len(A) != r or len(B) != r:
        raise DomainError("multi-index length must equal r")
    if A.degree != B.degree:
        raise DomainError("holomorphic and antiholomorphic degrees differ")
    if A != B:
        return PiScalar(0, r - 1)
    coef = Fraction(2 ** (r - 1) * A.factorial(),
                    math.factorial(A.degree + r - 1))
    return PiScalar(coef, r - 1)


def monomial_fiber_integral(I, J, s: int, r: int):
    """Affine-chart integral of lam^I conj(lam)^J / (1+|lam|^2)^s on C^{r-1}.

    I, J have length r-1.  Divergent ranges (s <= |I| + r - 1) are
    rejected.  Equal to homogeneous_integral with the chart variable
    restored to exponent s - r - |I|.
    """
    I, J = MultiIndex(I), MultiIndex(J)
    if len(I) != r - 1 or len(J) != r - 1:
        raise DomainError("chart multi-index length must equal r-1")
    if 2 * s <= I.degree + J.degree + 2 * (r - 1):
        raise DomainError(
            f"integral diverges: need s > (|I|+|J|)/2 + r - 1 "
            f"= {(I.degree + J.degree) / 2 + r - 1}")
    if I.degree != J.degree:
        return PiScalar(0, r - 1)
    extra = s - r - I.degree
    return homogeneous_integral(tuple(I) + (extra,), tuple(J) + (extra,), r)


def c_constant(r: int, d: int):
    """C_{r,d} = fiber volume of the weight (2pi)^{r-1} d!/(r+d-1)!."""
    if r < 1 or d < 0:
        raise DomainError("need r >= 1 and d >= 0")
    return monomial_fiber_integral((0,) * (r - 1), (0,) * (r - 1), r + d, r)


def c_effective(r: int, d: int):
    """d^{r-1} C_{r,d}: the constant seen with the fiber form scaled by d."""
    return PiScalar(d ** (r - 1), 0) * c_constant(r, d)


# ---------------------------------------------------------------------------
# homogeneous fiber functions


def _q_inverse_matrix(reference: HermitianForm):
    # matrix of Q(lam) = lam^T (h^{-1}) conj(lam)
    return reference.inverse()


class HomogeneousFiberFunction:
    """Degree-0 function f = sum f_{IJ} lam^I conj(lam)^J / Q^N on CP^{r-1}."""

    def __init__(self, order: int, reference: HermitianForm, coefficients,
                 check_real: bool = False):
        if order < 0:
            raise DomainError("order must be >= 0")
        self.order = int(order)
        self.reference = reference
        clean = {}
        for (I, J), c in coefficients.items():
            I, J = MultiIndex(I), MultiIndex(J)
            if len(I) != reference.n or len(J) != reference.n:
                raise DomainError("coefficient index length must equal dim V")
            if I.degree != self.order or J.degree != self.order:
                raise DomainError("coefficient index degree must equal order")
            if (I, J) in clean:
                clean[(I, J)] = clean[(I, J)] + c
            else:
                clean[(I, J)] = c
        self.coefficients = clean
        self.exact = reference.exact and all(
            scalar_is_exact(c) or isinstance(c, QC) for c in clean.values())
        if check_real and not self.is_real():
            raise DomainError("fiber function is not real-valued")

    @classmethod
    def constant(cls, value, reference: HermitianForm):
        r = reference.n
        zero = MultiIndex((0,) * r)
        return cls(0, reference, {(zero, zero): value})

    @property
    def r(self) -> int:
        return self.reference.n

    def is_real(self, tol: float = 1e-10) -> bool:
        keys = set(self.coefficients)
        keys |= {(J, I) for (I, J) in keys}
        scale = 1.0
        if not self.exact:
            mags = [abs(_to_c(c)) for c in self.coefficients.values()]
            scale = max([1.0] + mags)
        for I, J in keys:
            a = self.coefficients.get((I, J), 0)
            b = self.coefficients.get((J, I), 0)
            if self.exact:
                if QC.coerce(a) != QC.coerce(conj_scalar(b)):
                    return False
            elif abs(_to_c(a) - np.conj(_to_c(b))) > tol * scale:
                return False
        return True

    def scale(self, c) -> "HomogeneousFiberFunction":
        return HomogeneousFiberFunction(
            self.order, self.reference,
            {k: c * v for k, v in self.coefficients.items()})

    def promote(self, by: int = 1) -> "HomogeneousFiberFunction":
        """Multiply numerator and denominator by Q^by (same function)."""
        if by < 0:
            raise DomainError("cannot demote")
        out = self
        for _ in range(by):
            minv = _q_inverse_matrix(out.reference)
            exact = out.exact
            coeffs = {}
            for (I, J), c in out.coefficients.items():
                for i in range(out.r):
                    for j in range(out.r):
                        m = minv[i][j] if not la.is_float_matrix(minv) else minv[i, j]
                        if (scalar_is_exact(m) or isinstance(m, QC)) and QC.coerce(m).is_zero():
                            continue
                        I2 = list(I)
                        I2[i] += 1
                        J2 = list(J)
                        J2[j] += 1
                        key = (MultiIndex(I2), MultiIndex(J2))
                        term = c * m
                        coeffs[key] = coeffs.get(key, QC(0) if exact else 0j) + term
            out = HomogeneousFiberFunction(out.order + 1, out.reference, coeffs)
        return out

    def add(self, other: "HomogeneousFiberFunction") -> "HomogeneousFiberFunction":
        if other.reference is not self.reference and not _same_metric(
                self.reference, other.reference):
            raise DomainError("cannot add fiber functions over different metrics")
        a, b = self, other
        if a.order < b.order:
            a = a.promote(b.order - a.order)
        elif b.order < a.order:
            b = b.promote(a.order - b.order)
        coeffs = dict(a.coefficients)
        zero = QC(0) if (a.exact and b.exact) else 0j
        for k, v in b.coefficients.items():
            coeffs[k] = coeffs.get(k, zero) + v
        return HomogeneousFiberFunction(a.order, a.reference, coeffs)

    def value_at(self, lam) -> complex:
        lam = np.asarray([complex(x) for x in lam])
        minv = la.to_float(_q_inverse_matrix(self.reference))
        q = complex(lam @ minv @ lam.conj())
        num = 0j
        for (I, J), c in self.coefficients.items():
            t = _to_c(c)
            for i, p in enumerate(I):
                t *= lam[i] ** p
            for j, p in enumerate(J):
                t *= np.conj(lam[j]) ** p
            num += t
        if self.order == 0:
            return num
        return num / q ** self.order

    def __repr__(self):
        return (f"HomogeneousFiberFunction(order={self.order}, r={self.r}, "
                f"terms={len(self.coefficients)})")


def _same_metric(a: HermitianForm, b: HermitianForm, tol: float = 1e-12) -> bool:
    if a.n != b.n:
        return False
    if a.exact and b.exact:
        return all(QC.coerce(a.mat[i][j]) == QC.coerce(b.mat[i][j])
                   for i in range(a.n) for j in range(a.n))
    am, bm = a.to_float(), b.to_float()
    return bool(np.max(np.abs(am - bm)) <= tol * max(1.0, np.max(np.abs(am))))


# ---------------------------------------------------------------------------
# frame reduction and the pairing matrix


def _diag_table(A, dvec, r: int, exact: bool):
    # integral of mu^A conj(mu)^A / Q_D^{|A|} with Q_D = sum |mu_j|^2/d_j
    base = Fraction(2 ** (r - 1) * A.factorial(),
                    math.factorial(A.degree + r - 1))
    if exact:
        val = QC(base)
        for j, p in enumerate(A):
            val = val * QC.coerce(dvec[j]) ** p
        return PiScalar(val, r - 1)
    out = float(base) * math.pi ** (r - 1)
    for j, p in enumerate(A):
        out *= float(dvec[j]) ** p
    return out


def pairing_matrix(h: HermitianForm, d: int, f: HomogeneousFiberFunction = None):
    """Matrix P(f)_{IJ} = int f(lam) conj(lam^I) lam^J / Q^d  w^{r-1}/(r-1)!.

    With f = None this is the plain section pairing, equal to
    c_constant(r,d) * sym_metric(h, d) exactly.  Exact inputs give
    PiScalar entries carrying pi^{r-1}.
    """
    h.require_positive()
    r = h.n
    if d < 0:
        raise DomainError("need d >= 0")
    exact = h.exact and (f is None or f.exact)
    hm = h.mat if exact else h.to_float()
    L, dvec = la.ldl_hermitian(hm)
    Lbar = la.conj_matrix(L)
    Xd = monomial_matrix(Lbar, d)
    mis_d = multi_indices(r, d)
    R = len(mis_d)

    if f is None:
        n_ord = 0
        fD = {(MultiIndex((0,) * r), MultiIndex((0,) * r)): QC(1) if exact else 1.0 + 0j}
    else:
        if not _same_metric(h, f.reference):
            raise DomainError("fiber function reference metric differs from h")
        n_ord = f.order
        XN = monomial_matrix(Lbar, n_ord)
        misN = multi_indices(r, n_ord)
        idxN = {K: a for a, K in enumerate(misN)}
        # numerator transforms as F_D = X^T F conj(X)
        if exact:
            F = [[QC(0)] * len(misN) for _ in range(len(misN))]
            for (K, Lk), c in f.coefficients.items():
                F[idxN[K]][idxN[Lk]] = F[idxN[K]][idxN[Lk]] + c
            FD = la.matmul(la.matmul(la.transpose(XN), la.freeze(F)),
                           la.conj_matrix(XN))
        else:
            F = np.zeros((len(misN), len(misN)), dtype=complex)
            for (K, Lk), c in f.coefficients.items():
                F[idxN[K], idxN[Lk]] += _to_c(c)
            XNf = la.to_float(XN)
            FD = XNf.T @ F @ XNf.conj()
        fD = {}
        for a, K in enumerate(misN):
            for b, Lk in enumerate(misN):
                v = FD[a][b] if exact else FD[a, b]
                if exact and QC.coerce(v).is_zero():
                    continue
                if not exact and v == 0:
                    continue
                fD[(K, Lk)] = v

    zero = PiScalar(0, r - 1) if exact else 0j
    PD = [[zero] * R for _ in range(R)]
    for a, K in enumerate(mis_d):
        for b, Lm in enumerate(mis_d):
            s = zero
            for (Kp, Lp), c in fD.items():
                A = MultiIndex(tuple(x + y for x, y in zip(Lm, Kp)))
                B = tuple(x + y for x, y in zip(K, Lp))
                if tuple(A) != B:
                    continue
                s = s + c * _diag_table(A, dvec, r, exact)
            PD[a][b] = s
    if exact:
        PD = la.freeze(PD)
        return la.matmul(la.matmul(la.conj_matrix(Xd), PD), la.transpose(Xd))
    PD = np.array(PD, dtype=complex)
    Xdf = la.to_float(Xd)
    return Xdf.conj() @ PD @ Xdf.T


def fiber_integral(f: HomogeneousFiberFunction):
    """int f  w^{r-1}/(r-1)! over the fiber, exact when f is."""
    P = pairing_matrix(f.reference, 0, f)
    return P[0][0] if not la.is_float_matrix(P) else complex(P[0, 0])


def hat_inner_integral(v, w, h: HermitianForm, d: int = None):
    """Fiber integral of <v-hat, w-hat> against the unit fiber form.

    Equals c_constant(r,d) <v, w>_{Sym^d h}; the degree is inferred
    from len(v) except at r = 1 where it must be passed.
    """
    r = h.n
    if d is None:
        if r == 1:
            raise DomainError("r = 1 leaves d ambiguous; pass d explicitly")
        d = 0
        while sym_dim(r, d) < len(v):
            d += 1
        if sym_dim(r, d) != len(v):
            raise DomainError(f"len(v) = {len(v)} is not sym_dim({r}, d) for any d")
    if len(v) != sym_dim(r, d) or len(w) != sym_dim(r, d):
        raise DomainError("inputs do not live in Sym^d V")
    P = pairing_matrix(h, d)
    exact = not la.is_float_matrix(P) and all(
        scalar_is_exact(x) or isinstance(x, QC) for x in list(v) + list(w))
    if exact:
        out = PiScalar(0, r - 1)
        for i in range(len(v)):
            for j in range(len(w)):
                out = out + conj_scalar(QC.coerce(v[i])) * P[i][j] * w[j]
        return out
    Pf = la.to_float(P)
    vv = np.asarray([_to_c(x) for x in v])
    ww = np.asarray([_to_c(x) for x in w])
    return complex(vv.conj() @ Pf @ ww)


# ---------------------------------------------------------------------------
# push-forward, F(Phi), the vertical operator, and T


def pushforward_endo(f: HomogeneousFiberFunction, h: HermitianForm, d: int,
                     hermitian: bool = True) -> SymEndomorphism:
    """Psi(f): the endomorphism with <s, Psi(f) t> = C^{-1} int f <s-hat, t-hat>."""
    if hermitian and not f.is_real():
        raise DomainError("fiber function must be real for a hermitian Psi(f)")
    P = pairing_matrix(h, d, f)
    HS = sym_metric(h, d)
    C = c_constant(h.n, d)
    if not la.is_float_matrix(P):
        raw = la.matmul(la.inverse(HS.mat), P)
        rows = [[rational_part(PiScalar.coerce(x) / C) for x in row] for row in raw]
        return SymEndomorphism(la.freeze(rows), h.n, d)
    out = np.linalg.inv(HS.to_float()) @ P / complex(C.to_float())
    return SymEndomorphism(out, h.n, d)


def f_of_phi(Phi: SymEndomorphism, h: HermitianForm) -> HomogeneousFiberFunction:
    """F(Phi)([lam]) = trace(lambda_d(lam, Sym^d h) Phi) as a fiber function.

    The coefficient matrix is Phi (Sym^d h)^{-1}; the denominator
    Q(lam)^d is supplied by the dual-power norm identity.
    """
    if Phi.r != h.n:
        raise DomainError("Phi does not act on Sym^d of this V")
    HS = sym_metric(h, Phi.d)
    exact = h.exact and not la.is_float_matrix(Phi.mat)
    if exact:
        C = la.matmul(Phi.mat, la.inverse(HS.mat))
    else:
        C = la.to_float(Phi.mat) @ np.linalg.inv(HS.to_float())
    mis = multi_indices(h.n, Phi.d)
    coeffs = {}
    for a, I in enumerate(mis):
        for b, J in enumerate(mis):
            v = C[a][b] if not la.is_float_matrix(C) else C[a, b]
            if la.is_float_matrix(C):
                if v != 0:
                    coeffs[(I, J)] = v
            elif not QC.coerce(v).is_zero():
                coeffs[(I, J)] = v
    return HomogeneousFiberFunction(Phi.d, h, coeffs)


def delta_tilde(f: HomogeneousFiberFunction, d: int,
                scale=1) -> HomogeneousFiberFunction:
    """Vertical second-order operator for the fiber form scaled by d.

    Implemented through the homogeneous-coordinate identity for the unit
    Fubini-Study Laplacian, box(P/Q^N) = (Q Delta_W P - N(N+r-1) P)/Q^N
    with Delta_W = sum conj(h)_{ab} d/dlam_a d/dconj(lam_b), then
    multiplied by -scale/d.  ``scale`` exists so a deliberate corruption
    of the operator can be injected for negative-control runs.
    """
    if d < 1:
        raise DomainError("vertical operator needs d >= 1")
    r = f.r
    N = f.order
    exact = f.exact and scalar_is_exact(scale)
    W = la.conj_matrix(f.reference.mat if exact else f.reference.to_float())
    minv = f.reference.inverse() if exact else la.inverse(f.reference.to_float())
    zero = QC(0) if exact else 0j

    # Delta_W applied to the numerator polynomial
    lap = {}
    for (I, J), c in f.coefficients.items():
        for a in range(r):
            if I[a] == 0:
                continue
            for b in range(r):
                if J[b] == 0:
                    continue
                w = W[a][b] if not la.is_float_matrix(W) else W[a, b]
                I2, J2 = list(I), list(J)
                I2[a] -= 1
                J2[b] -= 1
                key = (MultiIndex(I2), MultiIndex(J2))
                lap[key] = lap.get(key, zero) + c * I[a] * J[b] * w

    out = {}
    # Q * Delta_W P
    for (I, J), c in lap.items():
        for i in range(r):
            for j in range(r):
                m = minv[i][j] if not la.is_float_matrix(minv) else minv[i, j]
                if exact and QC.coerce(m).is_zero():
                    continue
                if not exact and m == 0:
                    continue
                I2, J2 = list(I), list(J)
                I2[i] += 1
                J2[j] += 1
                key = (MultiIndex(I2), MultiIndex(J2))
                out[key] = out.get(key, zero) + c * m
    # - N(N+r-1) P
    drop = N * (N + r - 1)
    for (I, J), c in f.coefficients.items():
        out[(I, J)] = out.get((I, J), zero) - drop * c

    factor = (Fraction(-1, d) * scale) if exact else (-float(scale) / d)
    out = {k: factor * v for k, v in out.items()}
    return HomogeneousFiberFunction(N, f.reference, out)


class FiberOperatorMatrix:
    """Linear map on endomorphisms of Sym^d V, in the matrix-unit basis.

    vec convention: vec(Phi)[a*R + b] = Phi[a, b] (row-major).
    """

    def __init__(self, mat, r: int, d: int, h: HermitianForm):
        self.mat = mat if la.is_float_matrix(mat) else la.freeze(mat)
        self.r, self.d = int(r), int(d)
        self.R = sym_dim(r, d)
        self.h = h
        size = self.mat.shape[0] if la.is_float_matrix(self.mat) else len(self.mat)
        if size != self.R ** 2:
            raise DomainError("operator matrix must be R^2 x R^2")

    def to_float(self) -> np.ndarray:
        return la.to_float(self.mat)

    def apply(self, Phi: SymEndomorphism) -> SymEndomorphism:
        if Phi.R != self.R:
            raise DomainError("endomorphism size mismatch")
        exact = not la.is_float_matrix(self.mat) and not la.is_float_matrix(Phi.mat)
        if exact:
            vec = [Phi.mat[a][b] for a in range(self.R) for b in range(self.R)]
            img = la.matvec(self.mat, vec)
            rows = [[img[a * self.R + b] for b in range(self.R)]
                    for a in range(self.R)]
            return SymEndomorphism(la.freeze(rows), self.r, self.d)
        vec = la.to_float(Phi.mat).reshape(-1)
        img = self.to_float() @ vec
        return SymEndomorphism(img.reshape(self.R, self.R), self.r, self.d)

    def spectrum(self) -> np.ndarray:
        return np.sort_complex(np.linalg.eigvals(self.to_float()))


def t_operator(h: HermitianForm, d: int, delta_scale=1) -> FiberOperatorMatrix:
    """Matrix of Phi -> Psi(F(Phi) + Delta~ F(Phi)) over matrix units.

    Exact (rational entries) for rational h.  ``delta_scale`` rescales
    the vertical term; anything other than 1 breaks the fixed-space
    structure on purpose (negative controls).
    """
    r = h.n
    R = sym_dim(r, d)
    exact = h.exact and scalar_is_exact(delta_scale)
    cols = []
    for a in range(R):
        for b in range(R):
            if exact:
                unit = [[QC(1) if (i, j) == (a, b) else QC(0) for j in range(R)]
                        for i in range(R)]
                Phi = SymEndomorphism(la.freeze(unit), r, d)
            else:
                unit = np.zeros((R, R), dtype=complex)
                unit[a, b] = 1
                Phi = SymEndomorphism(unit, r, d)
            F = f_of_phi(Phi, h)
            total = F.add(delta_tilde(F, d, scale=delta_scale))
            img = pushforward_endo(total, h, d, hermitian=False)
            if exact:
                cols.append([img.mat[i][j] for i in range(R) for j in range(R)])
            else:
                cols.append(la.to_float(img.mat).reshape(-1))
    if exact:
        mat = la.freeze([[cols[c][k] for c in range(R * R)] for k in range(R * R)])
    else:
        mat = np.column_stack(cols)
    return FiberOperatorMatrix(mat, r, d, h)


class FixedSpaceDecomposition(NamedTuple):
    ker_basis: np.ndarray   # columns span ker(I - T), dimension r^2
    im_basis: np.ndarray    # columns span Im(I - T)
    p_ker: np.ndarray
    p_im: np.ndarray


def fixed_space_projector(T: FiberOperatorMatrix,
                          tol: float = 1e-8) -> FixedSpaceDecomposition:
    """Spectral splitting ker(I-T) + Im(I-T) of the endomorphism space.

    The eigenvalue-1 cluster must have dimension exactly r^2 (the image
    of the derivation representation); anything else at the requested
    tolerance is reported as an ambiguity rather than guessed at.
    """
    A = T.to_float()
    w, S = np.linalg.eig(A)
    mask = np.abs(w - 1) <= tol
    k = int(np.count_nonzero(mask))
    if k != T.r ** 2:
        raise AmbiguityError(
            f"eigenvalue-1 cluster has dimension {k}, expected r^2 = {T.r ** 2} "
            f"at tol {tol}")
    Sinv = np.linalg.inv(S)
    p_ker = S @ np.diag(mask.astype(complex)) @ Sinv
    p_im = np.eye(A.shape[0], dtype=complex) - p_ker
    return FixedSpaceDecomposition(S[:, mask], S[:, ~mask], p_ker, p_im)
