"""Truncated Taylor series (jets) of one real variable at 0.

A :class:`Jet` of order ``N`` stores the coefficients ``a_0 .. a_N`` of
``a_0 + a_1 t + ... + a_N t^N``; everything beyond ``t^N`` is unknown.
Every operation returns a jet whose order is the order up to which the
result is trustworthy, so callers never read coefficients that were not
actually determined by the inputs.

Two scalar backends are supported and never mixed inside one jet:

* ``"rational"``: :class:`fractions.Fraction`, exact.
* ``"float"``: IEEE doubles; "zero" means below a relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real
from typing import Sequence, Union

RATIONAL = "rational"
FLOAT = "float"
BACKENDS = (RATIONAL, FLOAT)

#: default zero tolerance of the float backend, relative to the largest
#: coefficient magnitude of the jet being inspected
DEFAULT_FLOAT_TOL = 1e-9

Scalar = Union[Fraction, float]


class BackendMismatchError(TypeError):
    """Rational and float data were combined in one computation."""


class NotInvertibleError(ZeroDivisionError):
    """Division by a jet whose constant term vanishes."""


class InexactError(ValueError):
    """The rational backend cannot represent the requested result."""


class OrderExhaustedError(ValueError):
    """A coefficient beyond the trustworthy truncation order was requested."""


def _coerce(value, backend: str) -> Scalar:
    if backend == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, Rational)):
            return Fraction(value)
        raise BackendMismatchError(f"cannot use {value!r} in the rational backend")
    if isinstance(value, Real):
        return float(value)
    raise TypeError(f"not a real scalar: {value!r}")


def coerce_scalar(value, backend: str) -> Scalar:
    """Convert ``value`` to the scalar type of ``backend``."""
    return _coerce(value, backend)


def exact_sqrt(q: Fraction) -> Fraction:
    """Square root of a non-negative rational that is a rational square."""
    if q < 0:
        raise ValueError(f"negative radicand {q}")
    p, r = q.numerator, q.denominator
    sp, sr = math.isqrt(p), math.isqrt(r)
    if sp * sp != p or sr * sr != r:
        raise InexactError(f"{q} is not the square of a rational")
    return Fraction(sp, sr)


@dataclass(frozen=True)
class Jet:
    coeffs: tuple
    backend: str = RATIONAL

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")
        coeffs = tuple(_coerce(c, self.backend) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a jet needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order: int, backend: str = RATIONAL) -> "Jet":
        return cls((0,) * (order + 1), backend)

    @classmethod
    def constant(cls, c, order: int, backend: str = RATIONAL) -> "Jet":
        return cls((c,) + (0,) * order, backend)

    @classmethod
    def monomial(cls, k: int, c, order: int, backend: str = RATIONAL) -> "Jet":
        coeffs = [0] * (order + 1)
        if k <= order:
            coeffs[k] = c
        return cls(coeffs, backend)

    @classmethod
    def variable(cls, order: int, backend: str = RATIONAL) -> "Jet":
        """The identity germ ``t``."""
        return cls.monomial(1, 1, order, backend)

    @classmethod
    def from_poly(cls, coeffs: Sequence, order: int, backend: str = RATIONAL) -> "Jet":
        """Jet of a polynomial given by its (possibly shorter or longer) coefficient list."""
        padded = list(coeffs[: order + 1]) + [0] * (order + 1 - len(coeffs))
        return cls(padded, backend)

    # -- basic accessors ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return self.backend == RATIONAL

    def __getitem__(self, k: int) -> Scalar:
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            raise OrderExhaustedError(f"coefficient t^{k} requested from a jet of order {self.order}")
        return self.coeffs[k]

    def deriv_at_zero(self, k: int) -> Scalar:
        """The k-th derivative at 0, ``k! * a_k``."""
        return math.factorial(k) * self[k]

    def scalar(self, value) -> Scalar:
        return _coerce(value, self.backend)

    def is_zero_coeff(self, k: int, tol: float | None = None) -> bool:
        c = self[k]
        if self.exact:
            return c == 0
        return abs(c) <= self._abs_tol(tol)

    def _abs_tol(self, tol: float | None) -> float:
        if tol is None:
            tol = DEFAULT_FLOAT_TOL
        scale = max((abs(c) for c in self.coeffs), default=0.0)
        return tol * scale

    # -- structural operations ----------------------------------------------

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise OrderExhaustedError(f"cannot raise order {self.order} to {order}")
        return Jet(self.coeffs[: order + 1], self.backend)

    def shift(self, k: int) -> "Jet":
        """Multiply by ``t^k``; the order grows by ``k``."""
        return Jet((0,) * k + self.coeffs, self.backend)

    def unshift(self, k: int) -> "Jet":
        """Divide by ``t^k``; the order drops by ``k``.

        In the rational backend the dropped coefficients must be zero.
        """
        if k > self.order:
            raise OrderExhaustedError(f"cannot divide a jet of order {self.order} by t^{k}")
        if self.exact and any(self.coeffs[:k]):
            raise ValueError(f"jet is not divisible by t^{k}")
        return Jet(self.coeffs[k:], self.backend)

    def as_float(self) -> "Jet":
        return Jet(tuple(float(c) for c in self.coeffs), FLOAT)

    def evaluate(self, t: float) -> float:
        """Evaluate the truncated polynomial at ``t`` in floating point."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def leading_zeros(self) -> int:
        """Number of exactly-zero leading coefficients (``order + 1`` for the zero jet)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return len(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Jet"):
        if self.backend != other.backend:
            raise BackendMismatchError(f"{self.backend} jet combined with {other.backend} jet")

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            n = min(self.order, other.order)
            return Jet(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), self.backend)
        c = list(self.coeffs)
        c[0] += self.scalar(other)
        return Jet(c, self.backend)

    __radd__ = __add__

    def __neg__(self):
        return Jet(tuple(-c for c in self.coeffs), self.backend)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            return mul(self, other)
        s = self.scalar(other)
        return Jet(tuple(s * c for c in self.coeffs), self.backend)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return div(self, other)
        s = self.scalar(other)
        if s == 0:
            raise ZeroDivisionError("jet divided by zero scalar")
        return Jet(tuple(c / s for c in self.coeffs), self.backend)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Jet.constant(1, self.order, self.backend)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self) -> "Jet":
        return derivative(self)

    def sqrt(self) -> "Jet":
        return sqrt(self)

    def compose(self, inner: "Jet") -> "Jet":
        return compose(self, inner)

    def valuation(self, tol: float | None = None):
        return valuation(self, tol)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c != 0:
                terms.append(f"{c}*t^{k}" if k else f"{c}")
        body = " + ".join(terms) if terms else "0"
        return f"Jet({body} + O(t^{self.order + 1}), {self.backend})"


def mul(a: Jet, b: Jet, *, sharp: bool = False) -> Jet:
    """Truncated Cauchy product.

    The result order is ``min(order(a), order(b))``.  With ``sharp=True``
    exact leading zeros are taken into account and the order becomes
    ``min(order(a) + val(b), order(b) + val(a))``, which is still
    trustworthy: the unknown tail of ``a`` is only ever multiplied by
    ``t^val(b)`` or higher.
    """
    a._check(b)
    if sharp:
        va, vb = a.leading_zeros(), b.leading_zeros()
        n = min(a.order + vb, b.order + va)
    else:
        n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        lo = max(0, k - b.order)
        hi = min(k, a.order)
        s = 0
        for i in range(lo, hi + 1):
            ai = ac[i]
            if ai:
                s += ai * bc[k - i]
        out.append(s)
    return Jet(out, a.backend)


def div(a: Jet, b: Jet, *, sharp: bool = False) -> Jet:
    """Quotient ``a / b``; requires ``b(0) != 0``.

    Order ``min(order(a), order(b))``, or ``min(order(a), order(b) + val(a))``
    with ``sharp=True``.
    """
    a._check(b)
    b0 = b.coeffs[0]
    if b0 == 0:
        raise NotInvertibleError("division by a jet with zero constant term")
    n = min(a.order, b.order + a.leading_zeros()) if sharp else min(a.order, b.order)
    c = []
    for k in range(n + 1):
        s = a.coeffs[k]
        for i in range(1, min(k, b.order) + 1):
            ci = c[k - i]
            if ci:
                s -= b.coeffs[i] * ci
        c.append(s / b0)
    return Jet(c, a.backend)


def sqrt(a: Jet) -> Jet:
    """Square root with positive constant term."""
    a0 = a.coeffs[0]
    if a0 <= 0:
        raise ValueError(f"square root needs a positive constant term, got {a0}")
    b0 = exact_sqrt(a0) if a.exact else math.sqrt(a0)
    b = [b0]
    two_b0 = 2 * b0
    for k in range(1, a.order + 1):
        s = a.coeffs[k]
        for i in range(1, k):
            s -= b[i] * b[k - i]
        b.append(s / two_b0)
    return Jet(b, a.backend)


def compose(f: Jet, g: Jet) -> Jet:
    """``f(g(t))`` for an inner jet with ``g(0) = 0`` (Horner scheme)."""
    f._check(g)
    if g.coeffs[0] != 0:
        raise ValueError("inner jet of a composition must vanish at 0")
    n = min(f.order, g.order)
    g = g.truncate(n)
    result = Jet.constant(f.coeffs[n], n, f.backend)
    for k in range(n - 1, -1, -1):
        result = mul(result, g) + f.coeffs[k]
    return result


def derivative(a: Jet) -> Jet:
    if a.order < 1:
        raise OrderExhaustedError("cannot differentiate a jet of order 0")
    return Jet(tuple(k * a.coeffs[k] for k in range(1, a.order + 1)), a.backend)


def valuation(a: Jet, tol: float | None = None):
    """Index of the first non-negligible coefficient, or ``math.inf``.

    Exact jets use exact zero tests and ignore ``tol``.  Float jets treat
    ``|a_k| <= tol * max|a_i|`` as zero (``tol`` defaults to 1e-9).
    """
    if a.exact:
        k = a.leading_zeros()
        return math.inf if k > a.order else k
    thresh = a._abs_tol(tol)
    for k, c in enumerate(a.coeffs):
        if abs(c) > thresh:
            return k
    return math.inf


def revert(g: Jet) -> Jet:
    """Compositional inverse ``h`` with ``g(h(s)) = s``; needs ``g(0)=0, g'(0)!=0``."""
    if g.coeffs[0] != 0:
        raise ValueError("series reversion needs g(0) = 0")
    if g.order < 1 or g.coeffs[1] == 0:
        raise NotInvertibleError("series reversion needs g'(0) != 0")
    s = Jet.variable(g.order, g.backend)
    g1 = g.coeffs[1]
    h = s / g1
    # each pass fixes one more coefficient
    for _ in range(g.order):
        h = h - (compose(g, h) - s) / g1
    return h

