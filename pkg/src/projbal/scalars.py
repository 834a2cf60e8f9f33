"""Exact scalar types: Gaussian rationals and rational multiples of pi powers.

The fiber calculus produces values of the form (a+bi) * pi^n with a, b
rational.  Keeping those exact lets lemma-level tests assert equality
instead of closeness.  ``QC`` is the coefficient field; ``PiScalar``
tracks the pi power.  Both interoperate with int and Fraction; mixing
with floats is intentionally left to ``to_complex``/``to_float`` so an
exact pipeline cannot silently degrade.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not a rational value: {x!r}")


class QC:
    """Gaussian rational a + b*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QC):
            assert im == 0
            self.re, self.im = re.re, re.im
            return
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    @staticmethod
    def coerce(x) -> "QC":
        if isinstance(x, QC):
            return x
        if isinstance(x, complex):
            raise TypeError("refusing to coerce float complex into exact QC")
        return QC(_as_fraction(x))

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __add__(self, other):
        try:
            o = QC.coerce(other)
        except TypeError:
            return NotImplemented
        return QC(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = QC.coerce(other)
        except TypeError:
            return NotImplemented
        return QC(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = QC.coerce(other)
        except TypeError:
            return NotImplemented
        return QC(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        try:
            o = QC.coerce(other)
        except TypeError:
            return NotImplemented
        return QC(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = QC.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero QC")
        return QC((self.re * o.re + self.im * o.im) / n,
                  (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        try:
            o = QC.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QC(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = QC.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"QC({self.re})"
        return f"QC({self.re}, {self.im})"


def conj_scalar(x):
    """Conjugate for any scalar this package passes around."""
    if isinstance(x, QC):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x  # int, Fraction, float are real


def scalar_is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QC)) or isinstance(x, Rational)


def to_complex(x) -> complex:
    if isinstance(x, QC):
        return x.to_complex()
    if isinstance(x, PiScalar):
        return complex(x.to_float())
    return complex(x)


class PiScalar:
    """Exact value coef * pi**pi_pow with coef a Gaussian rational.

    Addition requires matching powers (or a zero side); multiplication
    and division combine powers.  Ratios of equal powers collapse back
    to plain QC, which is how the downstream pi cancellation happens.
    """

    __slots__ = ("coef", "pi_pow")

    def __init__(self, coef, pi_pow: int = 0):
        self.coef = QC.coerce(coef)
        self.pi_pow = int(pi_pow)
        if self.coef.is_zero():
            self.pi_pow = 0

    @staticmethod
    def coerce(x) -> "PiScalar":
        if isinstance(x, PiScalar):
            return x
        return PiScalar(QC.coerce(x), 0)

    def is_zero(self) -> bool:
        return self.coef.is_zero()

    def to_float(self) -> complex:
        v = self.coef.to_complex() * math.pi ** self.pi_pow
        return v

    def conjugate(self) -> "PiScalar":
        return PiScalar(self.coef.conjugate(), self.pi_pow)

    def __add__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.pi_pow != o.pi_pow:
            raise ValueError(
                f"cannot add pi^{self.pi_pow} and pi^{o.pi_pow} terms exactly")
        return PiScalar(self.coef + o.coef, self.pi_pow)

    __radd__ = __add__

    def __neg__(self):
        return PiScalar(-self.coef, self.pi_pow)

    def __sub__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PiScalar(self.coef * o.coef, self.pi_pow + o.pi_pow)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PiScalar(self.coef / o.coef, self.pi_pow - o.pi_pow)

    def __rtruediv__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() and o.is_zero():
            return True
        return self.coef == o.coef and self.pi_pow == o.pi_pow

    def __hash__(self):
        if self.is_zero():
            return hash(0)
        return hash((self.coef, self.pi_pow))

    def __repr__(self):
        if self.pi_pow == 0:
            return f"PiScalar({self.coef!r})"
        return f"PiScalar({self.coef!r}, pi_pow={self.pi_pow})"


def rational_part(x) -> QC:
    """QC coefficient of a PiScalar known to carry pi^0."""
    p = PiScalar.coerce(x)
    if p.pi_pow != 0 and not p.is_zero():
        raise ValueError(f"value carries pi^{p.pi_pow}, not rational")
    return p.coef
