"""Legendre frames and evolute chains of fronts.

For a front ``gamma`` with ``gamma' = t^k u`` and ``u(0) != 0`` the unit
normal is ``nu = M(u)/|u|`` (``M`` the quarter turn), ``mu = M(nu)``, and
the curvature pair is ``ell = nu'.mu``, ``beta = gamma'.mu``.  Successive
evolutes follow

    Ev^n = Ev^(n-1) - (beta_(n-1) / ell) M^(n-1)(nu),
    beta_n = d/dt (beta_(n-1) / ell),

which stays valid through singular points as long as ``ell(0) != 0``.

Products and quotients here use valuation-aware truncation (``sharp=True``)
so that the factor ``t^k`` does not eat into the trusted order.

Float zero tests compare against the largest coefficient in a short window
of orders (``SCALE_WINDOW``) starting at the tested one.  Quotients by
``l`` and ``|u|`` can have rapidly growing high-order coefficients, and a
scale taken over the whole jet would then swamp the low-order terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curve import CurveJet
from .jet import DEFAULT_FLOAT_TOL, InexactError, Jet, OrderExhaustedError, div, mul

SCALE_WINDOW = 4


class ZeroTangentError(ValueError):
    """gamma' vanishes identically up to the jet order."""


class InflectionError(ValueError):
    """ell(0) = 0: the front has an inflection at 0 and no evolute there."""


@dataclass(frozen=True)
class LegendreFrame:
    nu: CurveJet
    mu: CurveJet
    k: int
    u: CurveJet


@dataclass(frozen=True)
class CurvaturePair:
    ell: Jet
    beta: Jet


@dataclass(frozen=True)
class EvoluteLevel:
    curve: CurveJet
    curvature: CurvaturePair
    normal: CurveJet  # M^n(nu)
    singular_at_0: bool
    trusted_order: int


@dataclass(frozen=True)
class EvoluteChain:
    levels: tuple
    frame: LegendreFrame

    def __getitem__(self, n: int) -> EvoluteLevel:
        return self.levels[n]

    def __len__(self):
        return len(self.levels)

    @property
    def singular_flags(self) -> list:
        return [lv.singular_at_0 for lv in self.levels]


def legendre_frame(c: CurveJet, tol: float | None = None) -> LegendreFrame:
    """Unit normal ``nu = M(u)/|u|`` where ``gamma' = t^k u``.

    Raises :class:`~cuspkit.jet.InexactError` in the rational backend when
    ``|u(0)|^2`` is not a rational square.
    """
    d = c.derivative()
    k = d.valuation(tol)
    if k == math.inf:
        raise ZeroTangentError(f"gamma' vanishes up to order {d.order}")
    if k > d.order - 1:
        raise OrderExhaustedError(f"tangent valuation {k} leaves no room in a jet of order {c.order}")
    u = d.unshift(k)
    norm = u.dot(u).sqrt()
    nu = CurveJet(div(-u.y, norm), div(u.x, norm))
    return LegendreFrame(nu=nu, mu=nu.rotate90(), k=k, u=u)


def curvature_pair(c: CurveJet, f: LegendreFrame) -> CurvaturePair:
    ell = f.nu.derivative().dot(f.mu)
    beta = c.derivative().dot(f.mu, sharp=True)
    return CurvaturePair(ell=ell, beta=beta)


def _threshold(jets, k: int, tol: float | None) -> float:
    """Zero threshold for coefficient ``k``, relative to orders ``k .. k + SCALE_WINDOW``."""
    scale = max(abs(j.coeffs[i]) for j in jets for i in range(k, min(k + SCALE_WINDOW, j.order) + 1))
    return (DEFAULT_FLOAT_TOL if tol is None else tol) * scale


def singular_at_0(curve: CurveJet, tol: float | None = None) -> bool:
    """Whether the first-derivative vector vanishes at 0."""
    if curve.order < 1:
        raise OrderExhaustedError("singularity test needs a jet of order >= 1")
    if curve.exact:
        return curve.x[1] == 0 and curve.y[1] == 0
    thresh = _threshold((curve.x, curve.y), 1, tol)
    return abs(curve.x[1]) <= thresh and abs(curve.y[1]) <= thresh


def _check_no_inflection(ell: Jet, tol: float | None):
    zero = ell[0] == 0 if ell.exact else abs(ell[0]) <= _threshold((ell,), 0, tol)
    if zero:
        raise InflectionError("ell(0) = 0: inflection point at t = 0")


def evolute_chain(c: CurveJet, m: int, tol: float | None = None) -> EvoluteChain:
    """Levels ``Ev^0 = gamma, ..., Ev^m`` with curvature pairs ``(ell, beta_n)``.

    The first step costs two orders (it needs gamma''), every later step one.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    frame = legendre_frame(c, tol)
    pair = curvature_pair(c, frame)
    ell = pair.ell
    _check_no_inflection(ell, tol)
    levels = [EvoluteLevel(c, pair, frame.nu, singular_at_0(c, tol), c.order)]
    curve, beta, normal = c, pair.beta, frame.nu
    for n in range(1, m + 1):
        q = div(beta, ell, sharp=True)
        curve = curve - normal.scale(q, sharp=True)
        if curve.order < 1:
            raise OrderExhaustedError(f"order budget exhausted at evolute level {n}; raise the jet order")
        beta = q.derivative()
        normal = normal.rotate90()
        levels.append(EvoluteLevel(curve, CurvaturePair(ell, beta), normal,
                                   singular_at_0(curve, tol), curve.order))
    return EvoluteChain(tuple(levels), frame)


def _require_singular(c: CurveJet, tol):
    if not singular_at_0(c, tol):
        raise ValueError("t = 0 is a regular point of the curve")


def negative_criterion(c: CurveJet, n: int, tol: float | None = None) -> bool:
    """True means: not A-equivalent to (t^n, t^{n+1}), because Ev^1..Ev^{n-1} are all singular at 0."""
    if n < 2:
        raise ValueError("n must be at least 2")
    _require_singular(c, tol)
    chain = evolute_chain(c, n - 1, tol)
    return all(lv.singular_at_0 for lv in chain.levels[1:n])


def fact25_crosscheck(c: CurveJet, n: int, tol: float | None = None) -> bool:
    """Compare "gamma^(i)(0) = 0 for i = 2..n+1" with "Ev^1..Ev^n singular at 0"."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_singular(c, tol)
    if c.order < n + 1:
        raise OrderExhaustedError(f"need order >= {n + 1}, have {c.order}")

    def vanishes(i):
        if c.exact:
            return c.x[i] == 0 and c.y[i] == 0
        thresh = _threshold((c.x, c.y), i, tol)
        return abs(c.x[i]) <= thresh and abs(c.y[i]) <= thresh

    derivs_vanish = all(vanishes(i) for i in range(2, n + 2))
    chain = evolute_chain(c, n, tol)
    evolutes_singular = all(lv.singular_at_0 for lv in chain.levels[1:])
    return derivs_vanish == evolutes_singular


def classical_evolute(c: CurveJet) -> CurveJet:
    """``gamma + n/kappa`` for a regular germ, from ``kappa = det(g', g'')/|g'|^3``."""
    d1 = c.derivative()
    d2 = d1.derivative()
    speed = d1.dot(d1).sqrt()
    e = CurveJet(d1.x / speed, d1.y / speed)
    normal = e.rotate90()
    det = mul(d1.x, d2.y) - mul(d1.y, d2.x)
    radius = speed * speed * speed / det
    return c + normal.scale(radius)


def float_fallback(fn, c: CurveJet, *args, **kwargs):
    """Run ``fn(c, ...)``; on an exactness obstruction retry with float jets.

    Returns ``(result, backend_used)``.
    """
    try:
        return fn(c, *args, **kwargs), c.backend
    except InexactError:
        if not c.exact:
            raise
        return fn(c.as_float(), *args, **kwargs), "float"
