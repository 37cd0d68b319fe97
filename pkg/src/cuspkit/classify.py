"""Cusp criteria for plane-curve germs at ``t = 0``.

Everything here works on :class:`~cuspkit.curve.CurveJet` values and only
reads derivatives up to the jet's order.  When a decision would need a
higher-order derivative the result is ``Inconclusive``, never a guess.

Determinants follow the column convention of :func:`~cuspkit.curve.det2`.
The (4,5) invariants are::

    A = det(g5, g4)   B = det(g6, g4)   C = det(g7, g4)   D = det(g6, g5)

with ``gk`` the k-th derivative vector at 0, and the sign of
``-77 B^2 + 105 A D + 60 A C`` separates the three (4,5) classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .curve import CurveJet, PlaneVec, det2, deriv_vec
from .jet import (
    DEFAULT_FLOAT_TOL,
    Jet,
    OrderExhaustedError,
    Scalar,
    compose,
    revert,
)

#: numerator of the cuspidal curvature of (s^4, s^5 + T s^7) divided by T
NORMAL_FORM_CONSTANT = 20901888000

DEFAULT_FACT22_MAX_N = 13


class Kind(str, Enum):
    REGULAR = "RegularPoint"
    CUSP23 = "Cusp23"
    CUSP25 = "Cusp25"
    CUSP27 = "Cusp27"
    CUSP2N = "Cusp2N"
    CUSP34 = "Cusp34"
    CUSP35 = "Cusp35"
    CUSP45_ZERO = "Cusp45Zero"
    CUSP45_PLUS = "Cusp45Plus"
    CUSP45_MINUS = "Cusp45Minus"
    C1_ONLY = "C1Only"
    INCONCLUSIVE = "Inconclusive"


CUSP45_KINDS = (Kind.CUSP45_ZERO, Kind.CUSP45_PLUS, Kind.CUSP45_MINUS)


@dataclass(frozen=True)
class CuspClass:
    kind: Kind
    n: int | None = None
    reason: str | None = None

    def __str__(self):
        if self.kind in (Kind.CUSP2N, Kind.C1_ONLY):
            return f"{self.kind.value}({self.n})"
        if self.kind is Kind.INCONCLUSIVE:
            return f"Inconclusive({self.reason})"
        return self.kind.value

    def same_type(self, other: "CuspClass") -> bool:
        """Equality of the class tag (and its parameter), ignoring the reason text."""
        return self.kind is other.kind and self.n == other.n


@dataclass(frozen=True)
class Condition:
    name: str
    passed: bool
    values: dict


@dataclass
class Witness:
    n: int | float | None = None
    derivs: dict = field(default_factory=dict)
    A: Scalar | None = None
    B: Scalar | None = None
    C: Scalar | None = None
    D: Scalar | None = None
    numerator: Scalar | None = None
    kappa_q: float | None = None
    T: Scalar | None = None
    sufficient_only: bool = False
    conditions: list = field(default_factory=list)


@dataclass(frozen=True)
class CuspidalCurvature:
    """``numerator / |g4|^5`` kept exact as the pair (numerator, |g4|^2).

    The value itself is irrational unless ``|g4|^2`` is a rational square,
    so equality is decided on ``sign`` and ``squared``.
    """

    numerator: Scalar
    norm_sq: Scalar

    def __float__(self):
        return float(self.numerator) / float(self.norm_sq) ** 2.5

    @property
    def sign(self) -> int:
        return (self.numerator > 0) - (self.numerator < 0)

    def squared(self) -> Scalar:
        return self.numerator * self.numerator / self.norm_sq ** 5

    def exact(self) -> Fraction | None:
        """The exact value when ``|g4|`` is rational, else ``None``."""
        if not isinstance(self.norm_sq, Fraction):
            return None
        p, q = self.norm_sq.numerator, self.norm_sq.denominator
        rp, rq = math.isqrt(p), math.isqrt(q)
        if rp * rp != p or rq * rq != q:
            return None
        return self.numerator / Fraction(rp, rq) ** 5

    def __eq__(self, other):
        if not isinstance(other, CuspidalCurvature):
            return NotImplemented
        return self.sign == other.sign and self.squared() == other.squared()

    def __hash__(self):
        return hash((self.sign, self.squared()))


class _ZeroTest:
    """Exact zero tests for rational jets, relative tolerance for float jets."""

    def __init__(self, c: CurveJet, tol: float | None):
        self.exact = c.exact
        self.tol = DEFAULT_FLOAT_TOL if tol is None else tol
        self.coeff_scale = max(
            [abs(v) for v in c.x.coeffs] + [abs(v) for v in c.y.coeffs] + [0.0]
        )

    def coeff_vec(self, c: CurveJet, k: int) -> bool:
        v = c.coeff(k)
        if self.exact:
            return v.u == 0 and v.v == 0
        return v.is_zero(self.tol * self.coeff_scale)

    def scalar(self, value, scale) -> bool:
        if self.exact:
            return value == 0
        return abs(value) <= self.tol * abs(scale)

    def vec(self, v: PlaneVec, scale) -> bool:
        if self.exact:
            return v.u == 0 and v.v == 0
        return v.is_zero(self.tol * abs(scale))


def first_nonzero_derivative(c: CurveJet, tol: float | None = None, start: int = 1):
    """Smallest ``k >= start`` with ``gamma^(k)(0) != 0``, or ``math.inf`` within the jet."""
    z = _ZeroTest(c, tol)
    for k in range(start, c.order + 1):
        if not z.coeff_vec(c, k):
            return k
    return math.inf


# -- (4,5) invariants ------------------------------------------------------------


def quadruple_numerator(A, B, C, D, b2_coeff=-77):
    return b2_coeff * B * B + 105 * A * D + 60 * A * C


def invariant_quadruple(c: CurveJet, tol: float | None = None) -> Witness:
    """A, B, C, D, the numerator and the cuspidal curvature of a (4,5)-type germ."""
    if c.order < 7:
        raise OrderExhaustedError(f"the (4,5) invariants need a jet of order >= 7, have {c.order}")
    z = _ZeroTest(c, tol)
    for k in (1, 2, 3):
        if not z.coeff_vec(c, k):
            raise ValueError(f"derivative of order {k} does not vanish at 0")
    g = {k: deriv_vec(c, k) for k in range(4, 8)}
    A = det2(g[5], g[4])
    B = det2(g[6], g[4])
    C = det2(g[7], g[4])
    D = det2(g[6], g[5])
    w = Witness(n=first_nonzero_derivative(c, tol), derivs=g, A=A, B=B, C=C, D=D)
    w.numerator = quadruple_numerator(A, B, C, D)
    if not z.coeff_vec(c, 4):
        w.kappa_q = float(CuspidalCurvature(w.numerator, g[4].norm_sq()))
    return w


def cuspidal_curvature(c: CurveJet, tol: float | None = None) -> CuspidalCurvature:
    w = invariant_quadruple(c, tol)
    if w.kappa_q is None:
        raise ValueError("the cuspidal curvature needs a non-vanishing fourth derivative")
    return CuspidalCurvature(w.numerator, w.derivs[4].norm_sq())


def kappa_q(c: CurveJet, tol: float | None = None) -> float:
    return float(cuspidal_curvature(c, tol))


# -- C^1 type and normal forms ---------------------------------------------------


def c1_type(c: CurveJet, tol: float | None = None) -> tuple:
    """``(n, det(g_n, g_{n+1}))``; C^1-equivalence to (t^n, t^{n+1}) iff the determinant is non-zero."""
    z = _ZeroTest(c, tol)
    if not z.coeff_vec(c, 1):
        raise ValueError("the germ is regular at 0")
    n = first_nonzero_derivative(c, tol)
    if n == math.inf:
        raise OrderExhaustedError(f"all derivatives vanish up to order {c.order}")
    if n + 1 > c.order:
        raise OrderExhaustedError(f"need order >= {n + 1} for the C^1 type, have {c.order}")
    return n, det2(deriv_vec(c, n), deriv_vec(c, n + 1))


@dataclass(frozen=True)
class NormalForm:
    """Result of reducing a germ to ``(s^n, s^{n+1} + T s^{n+3}) + O(s^{n+4})``.

    ``delta`` is the determinant of the leading coefficient matrix
    ``[[x_n, x_{n+1}], [y_n, y_{n+1}]]`` that the linear step inverts; the
    cuspidal-curvature numerator of the input equals ``delta**2`` times that
    of ``reduced``.
    """

    n: int
    T: Scalar
    delta: Scalar
    reduced: CurveJet


def normal_form(c: CurveJet, tol: float | None = None) -> NormalForm:
    n, d = c1_type(c, tol)
    z = _ZeroTest(c, tol)
    if z.scalar(d, deriv_vec(c, n).norm() * deriv_vec(c, n + 1).norm()):
        raise ValueError(f"det(g{n}, g{n + 1}) vanishes; no (n, n+1) normal form")
    if c.order < n + 3:
        raise OrderExhaustedError(f"normal form needs order >= {n + 3}, have {c.order}")
    N = c.order
    x, y = c.x, c.y
    an, bn, an1, bn1 = x[n], y[n], x[n + 1], y[n + 1]
    delta = an * bn1 - an1 * bn
    # linear step: leading coefficients (an, bn) -> (1, 0), (an1, bn1) -> (0, 1)
    xl = (x * bn1 - y * an1) / delta
    yl = (y * an - x * bn) / delta
    a_hat, b_hat = xl[n + 2], yl[n + 2]
    c1 = -b_hat / (n + 1)
    c2 = -(a_hat + Fraction(n * (n - 1), 2 * (n + 1) ** 2) * b_hat * b_hat) / n
    tau = Jet.from_poly([0, 1, c1, c2], N, c.backend)
    xt, yt = compose(xl, tau), compose(yl, tau)
    shear = b_hat * n / (n + 1)
    xs = xt + yt * shear
    a3 = xs[n + 3]
    phi = Jet.from_poly([0, 1, 0, 0, -a3 / n], N, c.backend)
    reduced = CurveJet(compose(xs, phi), compose(yt, phi))
    return NormalForm(n=n, T=reduced.y[n + 3], delta=delta, reduced=reduced)


def normal_form_T(c: CurveJet, tol: float | None = None) -> Scalar:
    return normal_form(c, tol).T


def _two_normal_odd_part(c: CurveJet) -> Jet:
    """For ``gamma''(0) != 0``: odd part of y in a parametrization with x = x2 * s^2.

    The germ is moved by a linear map so that gamma''(0) lies on the x-axis,
    reparametrized so that x is exactly quadratic, and the even part of y is
    removed by the plane map ``(x, y) -> (x, y - sum b_2i (x/x2)^i)``.  All
    steps are A-equivalences, so the first odd exponent left is an invariant.
    """
    x, y = c.x - c.x[0], c.y - c.y[0]
    x2, y2 = x[2], y[2]
    if abs(x2) < abs(y2):
        x, y = y, x
        x2, y2 = y2, x2
    y = y - x * (y2 / x2)
    w = x.unshift(2) / x2
    s_of_t = w.sqrt().shift(1)
    t_of_s = revert(s_of_t)
    ys = compose(y.truncate(t_of_s.order), t_of_s)
    return Jet([a if k % 2 else 0 for k, a in enumerate(ys.coeffs)], c.backend)


def whitney_split(a: Jet, k: int) -> list:
    """Split ``a(t) = sum_l t^(l-1) g_l(t^(2^k))`` by residue class of the exponent."""
    if k < 0:
        raise ValueError("k must be non-negative")
    period = 2 ** k
    if period > a.order and k > 0:
        raise OrderExhaustedError(f"2^{k} exceeds the jet order {a.order}")
    parts = []
    for l in range(period):
        coeffs = a.coeffs[l::period]
        if not coeffs:
            coeffs = (0,)
        parts.append(Jet(coeffs, a.backend))
    return parts


def whitney_combine(parts: list, order: int) -> Jet:
    """Inverse of :func:`whitney_split`, truncated at ``order``."""
    period = len(parts)
    backend = parts[0].backend
    coeffs = [0] * (order + 1)
    for l, g in enumerate(parts):
        for j, c in enumerate(g.coeffs):
            k = l + j * period
            if k <= order:
                coeffs[k] = c
    return Jet(coeffs, backend)


# -- coordinate changes ------------------------------------------------------------


def apply_reparam(c: CurveJet, psi: Jet) -> CurveJet:
    """``gamma o psi`` for a parameter change with ``psi(0) = 0, psi'(0) != 0``."""
    if psi.coeffs[0] != 0:
        raise ValueError("a reparametrization must fix 0")
    if psi.order < 1 or psi.coeffs[1] == 0:
        raise ValueError("psi'(0) = 0: not a diffeomorphism germ")
    return c.compose(psi)


@dataclass(frozen=True)
class PlanePolyMap:
    """Polynomial map of the plane fixing the origin, ``{(i, j): coeff}`` per component."""

    p: dict
    q: dict

    def __post_init__(self):
        if self.p.get((0, 0), 0) != 0 or self.q.get((0, 0), 0) != 0:
            raise ValueError("plane map must fix the origin")
        if self.jacobian_det() == 0:
            raise ValueError("plane map has a singular linear part")

    @classmethod
    def linear(cls, a, b, c, d) -> "PlanePolyMap":
        """``(x, y) -> (a x + b y, c x + d y)``."""
        return cls({(1, 0): a, (0, 1): b}, {(1, 0): c, (0, 1): d})

    @classmethod
    def identity(cls) -> "PlanePolyMap":
        return cls.linear(1, 0, 0, 1)

    @classmethod
    def rotation90(cls) -> "PlanePolyMap":
        return cls.linear(0, -1, 1, 0)

    @classmethod
    def shear(cls, s) -> "PlanePolyMap":
        """``(x, y) -> (x + s y, y)``."""
        return cls.linear(1, s, 0, 1)

    def jacobian(self):
        return (self.p.get((1, 0), 0), self.p.get((0, 1), 0), self.q.get((1, 0), 0), self.q.get((0, 1), 0))

    def jacobian_det(self):
        a, b, c, d = self.jacobian()
        return a * d - b * c

    def degree(self) -> int:
        return max(i + j for i, j in list(self.p) + list(self.q))

    def __call__(self, c: CurveJet) -> CurveJet:
        return apply_plane_map(c, self)


def apply_plane_map(c: CurveJet, phi: PlanePolyMap) -> CurveJet:
    deg = phi.degree()
    xp = [Jet.constant(1, c.order, c.backend)]
    yp = [Jet.constant(1, c.order, c.backend)]
    for _ in range(deg):
        xp.append(xp[-1] * c.x)
        yp.append(yp[-1] * c.y)

    def substitute(poly):
        out = Jet.zero(c.order, c.backend)
        for (i, j), coeff in poly.items():
            if coeff:
                out = out + (xp[i] * yp[j]) * c.scalar(coeff)
        return out

    return CurveJet(substitute(phi.p), substitute(phi.q))


# -- the dispatcher ----------------------------------------------------------------


class _Classifier:
    def __init__(self, c: CurveJet, fact22_max_n: int, tol: float | None):
        self.c = c
        self.z = _ZeroTest(c, tol)
        self.tol = tol
        self.fact22_max_n = fact22_max_n
        self.w = Witness()
        self.c1_ok = False

    def g(self, k: int) -> PlaneVec:
        v = self.w.derivs.get(k)
        if v is None:
            v = self.w.derivs[k] = deriv_vec(self.c, k)
        return v

    def check(self, name: str, passed: bool, **values) -> bool:
        self.w.conditions.append(Condition(name, bool(passed), values))
        return passed

    def det_nonzero(self, name: str, p: PlaneVec, q: PlaneVec, **extra) -> bool:
        d = det2(p, q)
        return self.check(name, not self.z.scalar(d, p.norm() * q.norm()), det=d, **extra)

    def inconclusive(self, reason: str) -> CuspClass:
        return CuspClass(Kind.INCONCLUSIVE, reason=reason)

    def need(self, k: int) -> bool:
        return self.c.order >= k

    def run(self) -> CuspClass:
        c = self.c
        if c.order < 1:
            return self.inconclusive("jet order 0 carries no derivative information")
        self.g(1)
        if not self.check("gamma'(0) = 0", self.z.coeff_vec(c, 1), d1=self.g(1)):
            self.w.n = 1
            return CuspClass(Kind.REGULAR)
        m = first_nonzero_derivative(c, self.tol)
        self.w.n = m
        if m == math.inf:
            return self.inconclusive(f"all derivatives vanish up to order {c.order}")
        self.g(m)
        if self.need(m + 1):
            self.c1_ok = self.det_nonzero(f"C1 type: det(g{m}, g{m + 1}) != 0", self.g(m), self.g(m + 1))
        if m == 2:
            return self.branch_2()
        if m == 3:
            return self.branch_3()
        if m == 4:
            return self.branch_4()
        return self.branch_c1(m)

    def branch_2(self) -> CuspClass:
        if not self.need(3):
            return self.inconclusive("order budget: the (2,3) test needs order >= 3")
        g2, g3 = self.g(2), self.g(3)
        if self.det_nonzero("cusp23: det(g2, g3) != 0", g2, g3):
            return CuspClass(Kind.CUSP23)
        if not self.need(5):
            return self.inconclusive("order budget: the (2,5) test needs order >= 5")
        g4, g5 = self.g(4), self.g(5)
        d25, d24 = det2(g2, g5), det2(g2, g4)
        vec = g2 * (3 * d25) - g3 * (10 * d24)
        scale = 3 * abs(d25) * g2.norm() + 10 * abs(d24) * g3.norm()
        if self.check("cusp25: 3 det(g2,g5) g2 - 10 det(g2,g4) g3 != 0",
                      not self.z.vec(vec, scale), vector=vec, det25=d25, det24=d24):
            return CuspClass(Kind.CUSP25)
        if not self.need(7):
            return self.inconclusive("order budget: the (2,7) test needs order >= 7")
        g6, g7 = self.g(6), self.g(7)
        n22 = g2.norm_sq()
        k = (g3.u * g2.u + g3.v * g2.v) / n22
        lvec = g5 - g4 * (Fraction(10, 3) * k)
        ell = (lvec.u * g2.u + lvec.v * g2.v) / n22
        coef = 7 * ell - Fraction(70, 3) * k ** 3
        target = g7 - g6 * (7 * k) - g4 * coef
        if self.det_nonzero("cusp27: det(g2, g7 - 7k g6 - (7l - 70k^3/3) g4) != 0", g2, target, k=k, l=ell):
            return CuspClass(Kind.CUSP27)
        return self.branch_2n()

    def branch_2n(self) -> CuspClass:
        c = self.c
        budget = min(c.order, self.fact22_max_n)
        # the sufficient criterion as stated, on the given parametrization
        for j in range(3, budget + 1):
            if not self.z.coeff_vec(c, j):
                if j >= 9 and j % 2 and self.det_nonzero(f"cusp2n: g3..g{j - 1} = 0, det(g2, g{j}) != 0",
                                                         self.g(2), self.g(j)):
                    self.w.sufficient_only = True
                    return CuspClass(Kind.CUSP2N, n=j)
                break
        # the same criterion on an A-equivalent representative (x2 s^2, odd y(s))
        ys = _two_normal_odd_part(c)
        yscale = max([abs(a) for a in ys.coeffs] + [0.0])
        budget = min(ys.order, self.fact22_max_n)
        for j in range(3, budget + 1, 2):
            if not self.z.scalar(ys[j], yscale):
                if j >= 9 and self.check(f"cusp2n (normalized representative): first odd term s^{j}",
                                         True, coefficient=ys[j]):
                    self.w.sufficient_only = True
                    return CuspClass(Kind.CUSP2N, n=j)
                return self.inconclusive(f"normalized representative has odd term s^{j} but no criterion matched")
        if ys.order < self.fact22_max_n:
            return self.inconclusive(f"order budget: (2,n) search reached n = {ys.order}")
        return self.inconclusive(f"no (2,n) criterion matched for odd n <= {self.fact22_max_n}")

    def branch_3(self) -> CuspClass:
        if not self.need(4):
            return self.inconclusive("order budget: the (3,4) test needs order >= 4")
        g3, g4 = self.g(3), self.g(4)
        if self.det_nonzero("cusp34: det(g3, g4) != 0", g3, g4):
            return CuspClass(Kind.CUSP34)
        if not self.need(5):
            return self.inconclusive("order budget: the (3,5) test needs order >= 5")
        if self.det_nonzero("cusp35: det(g3, g4) = 0 and det(g3, g5) != 0", g3, self.g(5)):
            return CuspClass(Kind.CUSP35)
        return self.inconclusive("no criterion for this (3,n) germ")

    def branch_4(self) -> CuspClass:
        if not self.need(7):
            return self.inconclusive("order budget: the (4,5) trichotomy needs order >= 7")
        q = invariant_quadruple(self.c, self.tol)
        w = self.w
        w.A, w.B, w.C, w.D, w.numerator, w.kappa_q = q.A, q.B, q.C, q.D, q.numerator, q.kappa_q
        for k in range(4, 8):
            self.g(k)
        g4, g5 = self.g(4), self.g(5)
        if not self.check("cusp45: A = det(g5, g4) != 0",
                          not self.z.scalar(q.A, g4.norm() * g5.norm()), A=q.A):
            return self.inconclusive("A = det(g5, g4) = 0: no (4,n) criterion available")
        w.T = normal_form_T(self.c, self.tol)
        num = q.numerator
        scale = 77 * q.B * q.B + 105 * abs(q.A * q.D) + 60 * abs(q.A * q.C)
        if self.z.scalar(num, scale):
            self.check("cusp45 trichotomy: -77B^2 + 105AD + 60AC = 0", True, numerator=num)
            return CuspClass(Kind.CUSP45_ZERO)
        if num > 0:
            self.check("cusp45 trichotomy: -77B^2 + 105AD + 60AC > 0", True, numerator=num)
            return CuspClass(Kind.CUSP45_PLUS)
        self.check("cusp45 trichotomy: -77B^2 + 105AD + 60AC < 0", True, numerator=num)
        return CuspClass(Kind.CUSP45_MINUS)

    def branch_c1(self, m: int) -> CuspClass:
        if not self.need(m + 1):
            return self.inconclusive(f"order budget: the C1 test needs order >= {m + 1}")
        if self.c1_ok:
            return CuspClass(Kind.C1_ONLY, n=m)
        return self.inconclusive(f"det(g{m}, g{m + 1}) = 0: not C1-equivalent to ({m},{m + 1})")


def classify(c: CurveJet, *, fact22_max_n: int = DEFAULT_FACT22_MAX_N, tol: float | None = None):
    """Classify the germ at 0; returns ``(CuspClass, Witness)``.

    Cusp2N is reported on a sufficient criterion only (``witness.sufficient_only``).
    C1Only(n) asserts C^1-equivalence to (t^n, t^{n+1}) for n >= 5.
    """
    k = _Classifier(c, fact22_max_n, tol)
    cls = k.run()
    return cls, k.w
