"""The nine acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary and also when this file is run as a script.
"""

import contextlib
import math
import random
import time
from fractions import Fraction

import conftest
from cuspkit.classify import (
    NORMAL_FORM_CONSTANT,
    CuspClass,
    Kind,
    classify,
    invariant_quadruple,
    normal_form,
    whitney_combine,
    whitney_split,
)
from cuspkit.curve import CurveJet
from cuspkit.evolute import InflectionError, curvature_pair, evolute_chain, fact25_crosscheck, legendre_frame
from cuspkit.expr import parse_curve, to_jet
from cuspkit.jet import FLOAT, RATIONAL, Jet, compose, div, mul, sqrt
from cuspkit.suites import random_45_germ, run_suite
from oracles import beta_45, ell_45, faa_di_bruno, poly_mul


@contextlib.contextmanager
def criterion(number, title):
    start = time.perf_counter()
    info = {}
    try:
        yield info
    except BaseException:
        line = f"FAIL  criterion {number}: {title}"
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    elapsed = time.perf_counter() - start
    extra = f" ({info['detail']})" if "detail" in info else ""
    line = f"PASS  criterion {number}: {title}{extra} [{elapsed:.2f}s]"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def mono(xs, ys, order):
    return CurveJet.from_monomials(xs, ys, order)


def sparse(jet):
    return {k: c for k, c in enumerate(jet.coeffs) if c != 0}


def test_criterion_1_golden_evolutes():
    with criterion(1, "golden evolutes of (t^4, t^5), exact, order 24, < 1 s") as info:
        start = time.perf_counter()
        ch = evolute_chain(mono({4: 1}, {5: 1}, 24), 3)
        elapsed = time.perf_counter() - start
        F = Fraction
        expected = {
            1: ({4: -3, 6: F(-25, 4)}, {3: F(16, 5), 5: 6}),
            2: ({2: F(-192, 25), 4: -39, 6: F(-175, 4)}, {3: F(-32, 5), 5: -39, 7: F(-375, 8)}),
            3: ({2: F(192, 25), 4: 141, 6: F(925, 2), 8: F(13125, 32)},
                {1: F(-1536, 125), 3: F(-752, 5), 5: -444, 7: -375}),
        }
        for n, (ex, ey) in expected.items():
            assert ch[n].curve.exact
            assert sparse(ch[n].curve.x) == ex, n
            assert sparse(ch[n].curve.y) == ey, n
        assert ch[3].curve.y[1] == F(-1536, 125)
        assert elapsed < 1.0
        info["detail"] = f"chain built in {elapsed * 1000:.0f} ms"


def test_criterion_2_curvature_pair():
    with criterion(2, "curvature pair of (t^4, t^5) through order 9, exact"):
        c = mono({4: 1}, {5: 1}, 24)
        p = curvature_pair(c, legendre_frame(c))
        assert list(p.ell.coeffs[:10]) == ell_45(9)
        assert list(p.beta.coeffs[:10]) == beta_45(9)


def test_criterion_3_singularity_profile():
    with criterion(3, "Ev^1..Ev^3 of (t^4, t^5) are singular, singular, regular"):
        ch = evolute_chain(mono({4: 1}, {5: 1}, 24), 3)
        assert [lv.singular_at_0 for lv in ch.levels[1:]] == [True, True, False]


EXAMPLES_51 = [
    ("t^4 + t^7", "t^5", Kind.CUSP45_ZERO),
    ("t^4 - t^7", "t^5", Kind.CUSP45_ZERO),
    ("t^4 + t^7", "t^5 + t^7", Kind.CUSP45_PLUS),
    ("t^4 - t^7", "t^5 + t^7", Kind.CUSP45_PLUS),
    ("t^4 - t^6", "t^5", Kind.CUSP45_PLUS),
    ("t^4 + t^7", "t^5 - t^7", Kind.CUSP45_MINUS),
    ("t^4 - t^7", "t^5 - t^7", Kind.CUSP45_MINUS),
    ("t^4", "t^5 + t^6", Kind.CUSP45_MINUS),
    ("t^4", "t^5 - t^6", Kind.CUSP45_MINUS),
    ("t^4 + t^6", "t^5", Kind.CUSP45_MINUS),
]


def test_criterion_4_classification_table():
    with criterion(4, "worked (4,5) examples classify as stated, exact, < 1 s") as info:
        start = time.perf_counter()
        got = [classify(to_jet(parse_curve(x, y), 16))[0].kind for x, y, _ in EXAMPLES_51]
        elapsed = time.perf_counter() - start
        assert got == [k for _, _, k in EXAMPLES_51]
        assert elapsed < 1.0
        info["detail"] = f"{len(got)} curves in {elapsed * 1000:.0f} ms"


def test_criterion_5_normal_form_constant():
    with criterion(5, "numerator = 20901888000 T on random germs, exact") as info:
        rng = random.Random(20901888000)
        trials = 120
        for _ in range(trials):
            c = random_45_germ(rng, order=10, leading_normalized=True)
            nf = normal_form(c)
            r = nf.reduced
            assert [r.x[k] for k in range(4, 8)] == [1, 0, 0, 0]
            assert [r.y[k] for k in range(4, 7)] == [0, 1, 0]
            assert invariant_quadruple(c).numerator == NORMAL_FORM_CONSTANT * nf.T
        info["detail"] = f"{trials} germs"


def test_criterion_6_invariance_suites():
    with criterion(6, "invariance suites, 100 seeded trials each, 100% pass") as info:
        counts = {}
        for name in ("class_reparam", "class_plane_map", "numerator_sign", "kappa_q_reparam"):
            res = run_suite(name, seed=6, trials=100)
            counts[name] = res.passed
            assert res.passed == 100, (name, res.failures)
        info["detail"] = ", ".join(f"{k} {v}/100" for k, v in counts.items())


def test_criterion_7_low_order_cusps():
    with criterion(7, "(2,3), (2,5), (2,7), (3,4), (3,5), (2,9), cycloid"):
        table = [
            ("t^2", "t^3", CuspClass(Kind.CUSP23)),
            ("t^2", "t^5", CuspClass(Kind.CUSP25)),
            ("t^2", "t^7", CuspClass(Kind.CUSP27)),
            ("t^3", "t^4", CuspClass(Kind.CUSP34)),
            ("t^3", "t^5", CuspClass(Kind.CUSP35)),
            ("t^2", "t^9", CuspClass(Kind.CUSP2N, n=9)),
            ("t - sin(t)", "1 - cos(t)", CuspClass(Kind.CUSP23)),
        ]
        for x, y, expected in table:
            c = to_jet(parse_curve(x, y), 16, RATIONAL)
            cls, w = classify(c)
            assert cls.same_type(expected), (x, y, cls)
            assert w.sufficient_only == (expected.kind is Kind.CUSP2N)


def test_criterion_8_singular_evolute_biconditional():
    with criterion(8, "derivative pattern <-> singular evolutes for (t^a, t^b), 2 <= a < b <= 7") as info:
        order = 24
        checked, excluded = 0, []
        for a in range(2, 8):
            for b in range(a + 1, 8):
                if math.gcd(a, b) != 1:
                    continue
                c = mono({a: 1}, {b: 1}, order)
                p = curvature_pair(c, legendre_frame(c))
                if p.ell[0] == 0:
                    try:
                        evolute_chain(c, 1)
                    except InflectionError:
                        excluded.append((a, b))
                        continue
                    raise AssertionError(f"({a},{b}) has ell(0) = 0 but no inflection error")
                for n in range(1, order - 1):  # level n keeps trusted order order - 1 - n >= 1
                    assert fact25_crosscheck(c, n), (a, b, n)
                    checked += 1
        assert checked > 0
        info["detail"] = f"{checked} (pair, n) checks, excluded with ell(0) = 0: {excluded}"


def _close(a: Jet, b: Jet, rel=1e-12):
    scale = max([1.0] + [abs(float(v)) for v in a.coeffs + b.coeffs])
    return all(abs(float(x) - float(y)) <= rel * scale for x, y in zip(a.coeffs, b.coeffs))


def _random_jet(rng, order, backend, lo=-1.0, hi=1.0, c0=None):
    if backend == RATIONAL:
        cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(order + 1)]
    else:
        cs = [rng.uniform(lo, hi) for _ in range(order + 1)]
    if c0 is not None:
        cs[0] = c0
    return Jet(cs, backend)


def test_criterion_9_jet_engine_properties():
    with criterion(9, ">= 500 randomized jet-engine cases; exact equality, float rel 1e-12") as info:
        rng = random.Random(9)
        cases = 0

        def check(ok_exact, ok_float=None):
            nonlocal cases
            assert ok_exact
            cases += 1
            if ok_float is not None:
                assert ok_float
                cases += 1

        order = 8
        for _ in range(80):  # ring axioms
            ex = [_random_jet(rng, order, RATIONAL) for _ in range(3)]
            fl = [_random_jet(rng, order, FLOAT) for _ in range(3)]
            a, b, c = ex
            p, q, r = fl
            check(mul(mul(a, b), c) == mul(a, mul(b, c)) and mul(a, b + c) == mul(a, b) + mul(a, c)
                  and mul(a, b) == mul(b, a) and list(mul(a, b).coeffs) == poly_mul(a.coeffs, b.coeffs, order),
                  _close(mul(mul(p, q), r), mul(p, mul(q, r))) and _close(mul(p, q + r), mul(p, q) + mul(p, r))
                  and _close(mul(p, q), mul(q, p)))
        for _ in range(60):  # division round trip
            a, b = _random_jet(rng, order, RATIONAL), _random_jet(rng, order, RATIONAL, c0=Fraction(rng.choice([-3, -1, 2, 5]), 2))
            p = _random_jet(rng, order, FLOAT)
            q = _random_jet(rng, order, FLOAT, c0=rng.choice([-1, 1]) * rng.uniform(1.0, 2.0))
            check(mul(div(a, b), b) == a, _close(mul(div(p, q), q), p))
        for _ in range(60):  # square root round trip
            a = _random_jet(rng, order, RATIONAL, c0=Fraction(rng.randint(1, 7), rng.randint(1, 5)) ** 2)
            p = _random_jet(rng, order, FLOAT, c0=rng.uniform(1.0, 4.0))
            ra, rp = sqrt(a), sqrt(p)
            check(mul(ra, ra) == a and ra[0] > 0, _close(mul(rp, rp), p) and rp[0] > 0)
        for _ in range(40):  # composition associativity
            f, g, h = (_random_jet(rng, 6, RATIONAL, c0=c0) for c0 in (None, 0, 0))
            pf, pg, ph = (_random_jet(rng, 6, FLOAT, c0=c0) for c0 in (None, 0.0, 0.0))
            check(compose(compose(f, g), h) == compose(f, compose(g, h)),
                  _close(compose(compose(pf, pg), ph), compose(pf, compose(pg, ph))))
        for _ in range(40):  # chain-rule partition sum, m <= 6
            f = _random_jet(rng, 6, RATIONAL)
            g = _random_jet(rng, 6, RATIONAL, c0=Fraction(0))
            fg = compose(f, g)
            fd = [math.factorial(k) * f[k] for k in range(7)]
            gd = [math.factorial(k) * g[k] for k in range(7)]
            check(all(math.factorial(m) * fg[m] == faa_di_bruno(fd, gd, m) for m in range(7)))
        for _ in range(40):  # Whitney split and recombination
            a = _random_jet(rng, 12, RATIONAL)
            check(all(whitney_combine(whitney_split(a, k), 12) == a for k in range(4)))
        info["detail"] = f"{cases} cases"
        assert cases >= 500


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
