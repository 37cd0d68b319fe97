import random
from fractions import Fraction

import pytest

from cuspkit.classify import (
    NORMAL_FORM_CONSTANT,
    CuspClass,
    CuspidalCurvature,
    Kind,
    PlanePolyMap,
    apply_plane_map,
    apply_reparam,
    c1_type,
    classify,
    cuspidal_curvature,
    invariant_quadruple,
    kappa_q,
    normal_form,
    normal_form_T,
    quadruple_numerator,
    whitney_combine,
    whitney_split,
)
from cuspkit.curve import CurveJet, det2, deriv_vec
from cuspkit.expr import parse_curve, to_jet
from cuspkit.jet import FLOAT, Jet
from cuspkit.suites import random_45_germ, random_plane_map, random_reparam


def curve(x, y, order=16):
    return to_jet(parse_curve(x, y), order)


def kind_of(x, y, order=16, **kw):
    return classify(curve(x, y, order), **kw)[0]


@pytest.mark.parametrize("x,y,expected", [
    ("t", "t^2", CuspClass(Kind.REGULAR)),
    ("t^2", "t^3", CuspClass(Kind.CUSP23)),
    ("t^2", "t^5", CuspClass(Kind.CUSP25)),
    ("t^2", "t^7", CuspClass(Kind.CUSP27)),
    ("t^2", "t^9", CuspClass(Kind.CUSP2N, n=9)),
    ("t^2", "t^11 + t^12", CuspClass(Kind.CUSP2N, n=11)),
    ("t^3", "t^4", CuspClass(Kind.CUSP34)),
    ("t^3", "t^5", CuspClass(Kind.CUSP35)),
    ("t^4", "t^5", CuspClass(Kind.CUSP45_ZERO)),
    ("t^4", "t^5 + t^7", CuspClass(Kind.CUSP45_PLUS)),
    ("t^4", "t^5 - t^7", CuspClass(Kind.CUSP45_MINUS)),
    ("t^5", "t^6", CuspClass(Kind.C1_ONLY, n=5)),
    ("t^6", "t^7", CuspClass(Kind.C1_ONLY, n=6)),
    ("t - sin(t)", "1 - cos(t)", CuspClass(Kind.CUSP23)),
])
def test_class_table(x, y, expected):
    assert kind_of(x, y).same_type(expected)


def test_cusp25_vector_condition_values():
    _, w = classify(curve("t^2", "t^5"))
    cond = [c for c in w.conditions if c.name.startswith("cusp25")][0]
    assert cond.passed and tuple(cond.values["vector"]) == (1440, 0)


def test_cusp2n_is_flagged_sufficient_only():
    cls, w = classify(curve("t^2", "t^9"))
    assert cls.kind is Kind.CUSP2N and w.sufficient_only


def test_cusp2n_survives_coordinate_changes():
    c = curve("t^2", "t^9")
    psi = Jet.from_poly([0, 1, 1], 16)
    phi = PlanePolyMap({(1, 0): 1}, {(0, 1): 1, (2, 0): 3})
    assert classify(apply_reparam(c, psi))[0].same_type(CuspClass(Kind.CUSP2N, n=9))
    assert classify(apply_plane_map(c, phi))[0].same_type(CuspClass(Kind.CUSP2N, n=9))


def test_two_n_search_budget():
    assert kind_of("t^2", "t^15", fact22_max_n=13).kind is Kind.INCONCLUSIVE
    assert kind_of("t^2", "t^15", fact22_max_n=15).same_type(CuspClass(Kind.CUSP2N, n=15))


@pytest.mark.parametrize("x,y,order", [
    ("t^2", "t^5", 4),   # (2,5) test needs order 5
    ("t^4", "t^5", 6),   # trichotomy needs order 7
    ("t^5", "t^6", 5),   # C1 test needs order 6
    ("t^3", "t^5", 4),
])
def test_insufficient_order_is_inconclusive(x, y, order):
    cls = kind_of(x, y, order)
    assert cls.kind is Kind.INCONCLUSIVE and "order" in cls.reason


def test_no_criterion_is_inconclusive():
    assert kind_of("t^4", "t^6 + t^7").kind is Kind.INCONCLUSIVE  # A = 0
    assert kind_of("t^3", "t^7").kind is Kind.INCONCLUSIVE
    assert kind_of("t^5", "t^7").kind is Kind.INCONCLUSIVE
    assert kind_of("0", "0").kind is Kind.INCONCLUSIVE


def test_witness_for_45_plus():
    cls, w = classify(curve("t^4", "t^5 + t^7"))
    assert cls.kind is Kind.CUSP45_PLUS
    assert w.A == -2880 and w.numerator == NORMAL_FORM_CONSTANT
    assert w.kappa_q == 2625.0
    assert w.T == 1


def test_q3_numerator_is_105AD():
    _, w = classify(curve("t^4 - t^6", "t^5"))
    assert w.A == -2880 and w.D == -86400 and w.B == 0 and w.C == 0
    assert w.numerator == 105 * (-2880) * (-86400) > 0


def test_quadruple_definitions():
    c = curve("t^4 + 2*t^6 - t^7", "t^5 + 3*t^6 + 5*t^7")
    w = invariant_quadruple(c)
    g = {k: deriv_vec(c, k) for k in range(4, 8)}
    assert (w.A, w.B, w.C, w.D) == (det2(g[5], g[4]), det2(g[6], g[4]), det2(g[7], g[4]), det2(g[6], g[5]))
    assert w.numerator == quadruple_numerator(w.A, w.B, w.C, w.D)


def test_kappa_q_examples():
    assert kappa_q(curve("t^4", "t^5 + t^7")) == 2625
    assert kappa_q(curve("t^4", "t^5 - t^7")) == -2625
    assert cuspidal_curvature(curve("t^4", "t^5 + t^7")).exact() == 2625


def test_kappa_q_sign_matches_numerator():
    rng = random.Random(7)
    for _ in range(20):
        c = random_45_germ(rng)
        w = invariant_quadruple(c)
        assert (w.kappa_q > 0) == (w.numerator > 0) and (w.kappa_q < 0) == (w.numerator < 0)


def test_kappa_q_rotation_float():
    c = curve("t^4 + t^6", "t^5 - 2*t^7 + t^6").as_float()
    rot = apply_plane_map(c, PlanePolyMap.linear(0.6, -0.8, 0.8, 0.6))
    assert kappa_q(rot) == pytest.approx(kappa_q(c), rel=1e-9)


def test_c1_type_examples():
    assert c1_type(curve("t^4", "t^5")) == (4, 2880)
    assert c1_type(curve("t^3", "t^4 + t^5")) == (3, 144)
    assert c1_type(curve("t^4", "t^6")) == (4, 0)
    assert c1_type(curve("t^5", "t^6")) == (5, 86400)
    with pytest.raises(ValueError):
        c1_type(curve("t", "0"))


def test_normal_form_examples():
    assert normal_form_T(curve("t^4", "t^5 + 3*t^7")) == 3
    assert normal_form_T(curve("t^4", "t^5")) == 0


def test_normal_form_shape():
    nf = normal_form(curve("2*t^4 + t^5 - t^6 + 3*t^7", "t^4 + 3*t^5 + t^6 - 2*t^7 + t^8", 12))
    r = nf.reduced
    assert [r.x[k] for k in range(8)] == [0, 0, 0, 0, 1, 0, 0, 0]
    assert [r.y[k] for k in range(7)] == [0, 0, 0, 0, 0, 1, 0]
    assert r.y[7] == nf.T


def test_normal_form_constant_on_leading_normalized():
    rng = random.Random(11)
    for _ in range(50):
        c = random_45_germ(rng, leading_normalized=True)
        assert invariant_quadruple(c).numerator == NORMAL_FORM_CONSTANT * normal_form_T(c)


def test_normal_form_constant_general_position_scales_with_delta():
    rng = random.Random(12)
    for _ in range(50):
        c = random_45_germ(rng)
        nf = normal_form(c)
        assert invariant_quadruple(nf.reduced).numerator == NORMAL_FORM_CONSTANT * nf.T
        assert invariant_quadruple(c).numerator == nf.delta ** 2 * NORMAL_FORM_CONSTANT * nf.T


def test_whitney_split_examples():
    a = Jet.from_poly([0, 1, 0, 1, 1, 0, 0, 0, 1], 8)
    g = whitney_split(a, 2)
    assert g[0].coeffs == (0, 1, 1)
    assert g[1].coeffs[0] == 1 and not any(g[1].coeffs[1:])
    assert not any(g[2].coeffs)
    assert g[3].coeffs[0] == 1 and not any(g[3].coeffs[1:])
    const = whitney_split(Jet.constant(5, 8), 3)
    assert const[0].coeffs[0] == 5 and not any(const[0].coeffs[1:])
    assert all(not any(part.coeffs) for part in const[1:])
    with pytest.raises(ValueError):
        whitney_split(a, -1)


@pytest.mark.parametrize("seed", range(5))
def test_whitney_recombination(seed):
    rng = random.Random(seed)
    a = Jet([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(13)])
    g1, g2 = whitney_split(a, 1)
    # direct recombination g1(t^2) + t g2(t^2), written out by hand
    coeffs = [0] * 13
    for j, c in enumerate(g1.coeffs):
        if 2 * j <= 12:
            coeffs[2 * j] += c
    for j, c in enumerate(g2.coeffs):
        if 2 * j + 1 <= 12:
            coeffs[2 * j + 1] += c
    assert tuple(coeffs) == a.coeffs
    for k in range(4):
        assert whitney_combine(whitney_split(a, k), 12) == a


def test_reparam_examples():
    c = curve("t^4", "t^5")
    assert apply_reparam(c, Jet.variable(16)) == c
    d = apply_reparam(c, Jet.from_poly([0, 2], 16))
    assert d.x[4] == 16 and d.y[5] == 32
    assert deriv_vec(d, 4) == deriv_vec(c, 4) * 16
    with pytest.raises(ValueError):
        apply_reparam(c, Jet.from_poly([0, 0, 1], 16))


def test_reparam_scales_c1_determinant():
    rng = random.Random(3)
    for n in (2, 3, 4, 5):
        for _ in range(5):
            xs = {k: rng.randint(-3, 3) for k in range(n, 12)}
            ys = {k: rng.randint(-3, 3) for k in range(n, 12)}
            c = CurveJet.from_monomials(xs, ys, 11)
            psi = random_reparam(rng, 11)
            d0 = det2(deriv_vec(c, n), deriv_vec(c, n + 1))
            d1 = det2(*(deriv_vec(apply_reparam(c, psi), k) for k in (n, n + 1)))
            assert d1 == psi[1] ** (2 * n + 1) * d0


def test_plane_map_examples():
    c = curve("t^4", "t^5 + t^7")
    assert apply_plane_map(c, PlanePolyMap.identity()) == c
    rot = apply_plane_map(c, PlanePolyMap.rotation90())
    assert rot.x == -c.y and rot.y == c.x
    sheared = apply_plane_map(c, PlanePolyMap.shear(Fraction(4, 5)))
    assert classify(sheared)[0].kind is Kind.CUSP45_PLUS
    with pytest.raises(ValueError):
        PlanePolyMap.linear(1, 2, 2, 4)
    with pytest.raises(ValueError):
        PlanePolyMap({(0, 0): 1, (1, 0): 1}, {(0, 1): 1})


def test_numerator_scaling_factors():
    rng = random.Random(5)
    for _ in range(20):
        c = random_45_germ(rng)
        phi, psi = random_plane_map(rng), random_reparam(rng, c.order)
        num = invariant_quadruple(c).numerator
        assert invariant_quadruple(apply_plane_map(c, phi)).numerator == phi.jacobian_det() ** 2 * num
        assert invariant_quadruple(apply_reparam(c, psi)).numerator == psi[1] ** 20 * num


def test_cuspidal_curvature_exact_equality():
    a = CuspidalCurvature(Fraction(10), Fraction(2))
    # numerator / norm_sq^(5/2) is unchanged when norm_sq grows by 9 and the numerator by 3^5
    b = CuspidalCurvature(Fraction(10 * 3 ** 5), Fraction(2 * 9))
    assert a == b and hash(a) == hash(b)
    assert a != CuspidalCurvature(Fraction(-10), Fraction(2))


def test_float_backend_classification():
    c = curve("t^4", "t^5 - t^7").as_float()
    assert classify(c)[0].kind is Kind.CUSP45_MINUS
    assert classify(to_jet(parse_curve("t^2", "t^3"), 8, FLOAT))[0].kind is Kind.CUSP23
