"""Plane-curve germs as pairs of jets, plus the 2-vector toolkit."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .jet import (
    DEFAULT_FLOAT_TOL,
    RATIONAL,
    BackendMismatchError,
    Jet,
    OrderExhaustedError,
    Scalar,
    coerce_scalar,
    mul,
    valuation,
)


@dataclass(frozen=True)
class PlaneVec:
    u: Scalar
    v: Scalar

    def __add__(self, other: "PlaneVec") -> "PlaneVec":
        return PlaneVec(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "PlaneVec") -> "PlaneVec":
        return PlaneVec(self.u - other.u, self.v - other.v)

    def __neg__(self) -> "PlaneVec":
        return PlaneVec(-self.u, -self.v)

    def __mul__(self, s) -> "PlaneVec":
        return PlaneVec(s * self.u, s * self.v)

    __rmul__ = __mul__

    def norm_sq(self) -> Scalar:
        return self.u * self.u + self.v * self.v

    def norm(self) -> float:
        return math.sqrt(float(self.norm_sq()))

    def is_zero(self, atol: float = 0.0) -> bool:
        return abs(self.u) <= atol and abs(self.v) <= atol

    def __iter__(self):
        yield self.u
        yield self.v


def det2(p: PlaneVec, q: PlaneVec) -> Scalar:
    """``det(p, q)`` with ``p`` and ``q`` as columns."""
    return p.u * q.v - p.v * q.u


def rotate90(p: PlaneVec) -> PlaneVec:
    """Anticlockwise rotation by a right angle."""
    return PlaneVec(-p.v, p.u)


@dataclass(frozen=True)
class CurveJet:
    """A pair of jets ``(x(t), y(t))``.

    Used both for curve germs and for jet-valued vector fields along them
    (unit normals, frames).
    """

    x: Jet
    y: Jet

    def __post_init__(self):
        if self.x.backend != self.y.backend:
            raise BackendMismatchError("curve components use different backends")
        if self.x.order != self.y.order:
            n = min(self.x.order, self.y.order)
            object.__setattr__(self, "x", self.x.truncate(n))
            object.__setattr__(self, "y", self.y.truncate(n))

    @classmethod
    def from_polys(cls, xs, ys, order: int, backend: str = RATIONAL) -> "CurveJet":
        """Build from coefficient lists, e.g. ``from_polys([0,0,0,0,1], [0,0,0,0,0,1], 8)``."""
        return cls(Jet.from_poly(xs, order, backend), Jet.from_poly(ys, order, backend))

    @classmethod
    def from_monomials(cls, xterms: dict, yterms: dict, order: int, backend: str = RATIONAL) -> "CurveJet":
        """Build from ``{power: coefficient}`` dicts."""

        def build(terms):
            c = [0] * (order + 1)
            for k, a in terms.items():
                if k <= order:
                    c[k] += a
            return Jet(c, backend)

        return cls(build(xterms), build(yterms))

    @property
    def order(self) -> int:
        return self.x.order

    @property
    def backend(self) -> str:
        return self.x.backend

    @property
    def exact(self) -> bool:
        return self.x.exact

    def coeff(self, k: int) -> PlaneVec:
        return PlaneVec(self.x[k], self.y[k])

    def deriv_vec(self, k: int) -> PlaneVec:
        return deriv_vec(self, k)

    def derivative(self) -> "CurveJet":
        return CurveJet(self.x.derivative(), self.y.derivative())

    def truncate(self, order: int) -> "CurveJet":
        return CurveJet(self.x.truncate(order), self.y.truncate(order))

    def shift(self, k: int) -> "CurveJet":
        return CurveJet(self.x.shift(k), self.y.shift(k))

    def unshift(self, k: int) -> "CurveJet":
        return CurveJet(self.x.unshift(k), self.y.unshift(k))

    def as_float(self) -> "CurveJet":
        return CurveJet(self.x.as_float(), self.y.as_float())

    def __add__(self, other: "CurveJet") -> "CurveJet":
        return CurveJet(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "CurveJet") -> "CurveJet":
        return CurveJet(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "CurveJet":
        return CurveJet(-self.x, -self.y)

    def scale(self, f, *, sharp: bool = False) -> "CurveJet":
        """Multiply both components by a scalar or a scalar jet."""
        if isinstance(f, Jet):
            return CurveJet(mul(f, self.x, sharp=sharp), mul(f, self.y, sharp=sharp))
        return CurveJet(self.x * f, self.y * f)

    def dot(self, other: "CurveJet", *, sharp: bool = False) -> Jet:
        return mul(self.x, other.x, sharp=sharp) + mul(self.y, other.y, sharp=sharp)

    def rotate90(self) -> "CurveJet":
        return CurveJet(-self.y, self.x)

    def compose(self, psi: Jet) -> "CurveJet":
        return CurveJet(self.x.compose(psi), self.y.compose(psi))

    def valuation(self, tol: float | None = None):
        """Smallest k at which either component is non-negligible.

        For float jets the threshold is relative to the largest coefficient
        of the pair, not of each component separately.
        """
        if self.exact:
            return min(valuation(self.x), valuation(self.y))
        if tol is None:
            tol = DEFAULT_FLOAT_TOL
        scale = max(max(abs(c) for c in self.x.coeffs), max(abs(c) for c in self.y.coeffs))
        thresh = tol * scale
        for k in range(self.order + 1):
            if abs(self.x.coeffs[k]) > thresh or abs(self.y.coeffs[k]) > thresh:
                return k
        return math.inf

    def evaluate(self, t: float) -> tuple[float, float]:
        return self.x.evaluate(t), self.y.evaluate(t)

    def scalar(self, value) -> Scalar:
        return coerce_scalar(value, self.backend)


def deriv_vec(c: CurveJet, k: int) -> PlaneVec:
    """``gamma^(k)(0) = k! * (x_k, y_k)``."""
    if k > c.order:
        raise OrderExhaustedError(f"derivative of order {k} needs a jet of order >= {k}, have {c.order}")
    f = math.factorial(k)
    return PlaneVec(f * c.x[k], f * c.y[k])
