"""Seeded randomized checks of the coordinate-invariance results.

Each suite draws germs from known normal forms, pushes them through random
source and target diffeomorphisms, and checks that the classification
data behaves as the theory predicts.  Everything is exact rational
arithmetic, so a single failure means a bug.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import (
    NORMAL_FORM_CONSTANT,
    CuspClass,
    CuspidalCurvature,
    Kind,
    PlanePolyMap,
    apply_plane_map,
    apply_reparam,
    classify,
    invariant_quadruple,
    normal_form,
    quadruple_numerator,
)
from .curve import CurveJet
from .jet import RATIONAL, Jet

DEFAULT_ORDER = 16

#: normal forms and the class each one must receive
NORMAL_FORMS = {
    "regular": (({1: 1}, {2: 1}), CuspClass(Kind.REGULAR)),
    "23": (({2: 1}, {3: 1}), CuspClass(Kind.CUSP23)),
    "25": (({2: 1}, {5: 1}), CuspClass(Kind.CUSP25)),
    "27": (({2: 1}, {7: 1}), CuspClass(Kind.CUSP27)),
    "2n9": (({2: 1}, {9: 1}), CuspClass(Kind.CUSP2N, n=9)),
    "34": (({3: 1}, {4: 1}), CuspClass(Kind.CUSP34)),
    "35": (({3: 1}, {5: 1}), CuspClass(Kind.CUSP35)),
    "45zero": (({4: 1}, {5: 1}), CuspClass(Kind.CUSP45_ZERO)),
    "45plus": (({4: 1}, {5: 1, 7: 1}), CuspClass(Kind.CUSP45_PLUS)),
    "45minus": (({4: 1}, {5: 1, 7: -1}), CuspClass(Kind.CUSP45_MINUS)),
    "c1_5": (({5: 1}, {6: 1}), CuspClass(Kind.C1_ONLY, n=5)),
}


def _small(rng: random.Random, lo: int = -3, hi: int = 3, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3)))
        if v or not nonzero:
            return v


def random_reparam(rng: random.Random, order: int, degree: int = 3) -> Jet:
    """``psi(t) = a1 t + ... + a_d t^d`` with ``a1 != 0``."""
    coeffs = [0, _small(rng, nonzero=True)] + [_small(rng) for _ in range(degree - 1)]
    return Jet.from_poly(coeffs, order, RATIONAL)


def random_plane_map(rng: random.Random, degree: int = 3) -> PlanePolyMap:
    """Polynomial map fixing 0 with an invertible linear part and small rational coefficients."""
    while True:
        a, b, c, d = (_small(rng, -2, 2) for _ in range(4))
        if a * d - b * c:
            break
    p = {(1, 0): a, (0, 1): b}
    q = {(1, 0): c, (0, 1): d}
    for total in range(2, degree + 1):
        for i in range(total + 1):
            mon = (i, total - i)
            if rng.random() < 0.4:
                p[mon] = _small(rng)
            if rng.random() < 0.4:
                q[mon] = _small(rng)
    return PlanePolyMap(p, q)


def normal_form_germ(name: str, order: int = DEFAULT_ORDER) -> CurveJet:
    (xs, ys), _ = NORMAL_FORMS[name]
    return CurveJet.from_monomials(xs, ys, order)


def random_germ(rng: random.Random, order: int = DEFAULT_ORDER):
    """A normal form disguised by a random plane map and reparametrization; returns ``(name, germ)``."""
    name = rng.choice(sorted(NORMAL_FORMS))
    c = apply_plane_map(normal_form_germ(name, order), random_plane_map(rng))
    return name, apply_reparam(c, random_reparam(rng, order))


def random_45_germ(rng: random.Random, order: int = 9, leading_normalized: bool = False) -> CurveJet:
    """Random germ with vanishing first three derivatives and ``A != 0``.

    With ``leading_normalized`` the germ is ``(t^4, t^5)`` plus random terms of
    degree >= 6, otherwise the degree 4 and 5 coefficients are random too.
    """
    while True:
        xs = {k: _small(rng, -4, 4) for k in range(4, order + 1)}
        ys = {k: _small(rng, -4, 4) for k in range(4, order + 1)}
        if leading_normalized:
            xs[4], xs[5], ys[4], ys[5] = 1, 0, 0, 1
        if xs[4] * ys[5] - xs[5] * ys[4]:
            return CurveJet.from_monomials(xs, ys, order)


# -- individual checks, each returning (ok, detail) ---------------------------------


def check_class_reparam(rng: random.Random, order: int = DEFAULT_ORDER):
    name, c = random_germ(rng, order)
    expected = NORMAL_FORMS[name][1]
    before, _ = classify(c)
    after, _ = classify(apply_reparam(c, random_reparam(rng, order)))
    ok = before.same_type(expected) and after.same_type(expected)
    return ok, f"{name}: expected {expected}, got {before} then {after}"


def check_class_plane_map(rng: random.Random, order: int = DEFAULT_ORDER):
    name, c = random_germ(rng, order)
    expected = NORMAL_FORMS[name][1]
    before, _ = classify(c)
    after, _ = classify(apply_plane_map(c, random_plane_map(rng)))
    ok = before.same_type(expected) and after.same_type(expected)
    return ok, f"{name}: expected {expected}, got {before} then {after}"


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def check_numerator_sign(rng: random.Random, order: int = 9):
    """Sign of the numerator under plane maps and reparametrizations, with the exact scale factors."""
    c = random_45_germ(rng, order)
    phi = random_plane_map(rng)
    psi = random_reparam(rng, order)
    num = invariant_quadruple(c).numerator
    num_phi = invariant_quadruple(apply_plane_map(c, phi)).numerator
    num_psi = invariant_quadruple(apply_reparam(c, psi)).numerator
    ok = (
        _sign(num_phi) == _sign(num) == _sign(num_psi)
        and num_phi == phi.jacobian_det() ** 2 * num
        and num_psi == psi[1] ** 20 * num
    )
    return ok, f"numerator {num}, after plane map {num_phi}, after reparametrization {num_psi}"


def check_kappa_reparam(rng: random.Random, order: int = 9):
    c = random_45_germ(rng, order)
    psi = random_reparam(rng, order)
    k0 = _curvature(c)
    k1 = _curvature(apply_reparam(c, psi))
    return k0 == k1, f"kappa_q {float(k0)} vs {float(k1)}"


def _curvature(c: CurveJet) -> CuspidalCurvature:
    w = invariant_quadruple(c)
    return CuspidalCurvature(w.numerator, w.derivs[4].norm_sq())


def check_normal_form_constant(rng: random.Random, order: int = 9, b2_coeff: int = -77):
    """``numerator = 20901888000 T`` on germs of the form ``(t^4, t^5) + O(t^6)``."""
    c = random_45_germ(rng, order, leading_normalized=True)
    w = invariant_quadruple(c)
    num = quadruple_numerator(w.A, w.B, w.C, w.D, b2_coeff=b2_coeff)
    T = normal_form(c).T
    return num == NORMAL_FORM_CONSTANT * T, f"numerator {num}, T {T}"


SUITES = {
    "class_reparam": check_class_reparam,
    "class_plane_map": check_class_plane_map,
    "numerator_sign": check_numerator_sign,
    "kappa_q_reparam": check_kappa_reparam,
    "normal_form_constant": check_normal_form_constant,
}


@dataclass
class SuiteResult:
    name: str
    trials: int
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.trials


def run_suite(name: str, seed: int, trials: int, *, b2_coeff: int = -77, max_failures: int = 5) -> SuiteResult:
    check = SUITES[name]
    res = SuiteResult(name, trials)
    for i in range(trials):
        rng = random.Random(f"{seed}:{name}:{i}")
        if name == "normal_form_constant":
            ok, detail = check(rng, b2_coeff=b2_coeff)
        else:
            ok, detail = check(rng)
        if ok:
            res.passed += 1
        elif len(res.failures) < max_failures:
            res.failures.append({"trial": i, "detail": detail})
    return res


def run_all(seed: int, trials: int, *, b2_coeff: int = -77) -> list:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    return [run_suite(name, seed, trials, b2_coeff=b2_coeff) for name in SUITES]
