import random

import pytest
from hypothesis import given, strategies as st

from woundlab.field_core import GF, BivarRatFunc, DensePoly, LaurentSeries, RatFunc, is_pth_power
from woundlab.ppoly import (
    MalformedEquation, PPolynomial, RussellEquation, classify, compactify, dehomogenize, genus,
    is_separable, is_wound, principal_part, reduce_case_1c, splitting_degree,
)

from strategies import ratfuncs

F2, F3 = GF(2), GF(3)
t2, t3 = RatFunc.t(F2), RatFunc.t(F3)


def R(p, n, *a):
    return RussellEquation(p, n, tuple(a))


class TestPrincipalPart:
    def test_quasi_rational(self):
        phi = R(2, 1, t2).to_ppoly()
        pp = principal_part(phi)
        assert str(pp) == "u^2 + t*v^2"

    def test_case_1c_shape(self):
        s, t = BivarRatFunc.s(F2), BivarRatFunc.t(F2)
        pp = principal_part(R(2, 2, s, t**2).to_ppoly())
        assert pp.coeffs[0][-1] == 1 and pp.coeffs[1][-1] == t**2
        assert all(not c for c in pp.coeffs[1][:-1])

    def test_single_variable(self):
        phi = PPolynomial(3, [[t3, 0, t3 + 1]], ("x",))
        assert principal_part(phi) == PPolynomial(3, [[0, 0, t3 + 1]], ("x",))


class TestSeparable:
    def test_examples(self):
        one = RatFunc.constant(F2, 1)
        assert is_separable(R(2, 1, t2).to_ppoly())
        assert not is_separable(PPolynomial(2, [[0, one], [0, t2]], ("u", "v")))

    @given(st.data())
    def test_russell_always_separable(self, data):
        p = data.draw(st.sampled_from([2, 3]))
        F = GF(p)
        a = data.draw(ratfuncs(F).filter(bool))
        assert is_separable(R(p, data.draw(st.integers(1, 2)), a).to_ppoly())


class TestWound:
    def test_valuation_parity(self):
        one = RatFunc.constant(F2, 1)
        res = is_wound(PPolynomial(2, [[0, one], [0, t2]], ("u", "v")))
        assert res.verdict == "Wound"

    def test_not_wound_with_witness(self):
        one = RatFunc.constant(F2, 1)
        phi = PPolynomial(2, [[0, one], [0, t2**2]], ("u", "v"))
        res = is_wound(phi)
        assert res.verdict == "NotWound"
        assert res.principal_zero == (t2, one)
        assert not phi.evaluate(list(res.principal_zero))

    def test_converse_fails_unknown(self):
        # y^2 + x + t x^2 composed with the automorphism (x, y) -> (x, y + x^2):
        # y^2 + x + t x^2 + x^4, whose principal part y^2 + x^4 vanishes at (1, 1)
        one = RatFunc.constant(F2, 1)
        phi = PPolynomial(2, [[one, t2, one], [0, one]], ("x", "y"))
        res = is_wound(phi)
        assert res.verdict == "Unknown"
        assert res.principal_zero is not None
        assert not principal_part(phi).evaluate(list(res.principal_zero))

    def test_split_russell_not_wound(self):
        res = is_wound(R(2, 1, t2**2).to_ppoly())
        assert res.verdict == "NotWound"
        u, v = res.witness
        assert u and v

    def test_three_variables(self):
        one = RatFunc.constant(F3, 1)
        phi = PPolynomial(3, [[0, one], [0, t3], [0, t3**2]], ("x", "y", "z"))
        assert is_wound(phi).verdict == "Wound"

    def test_laurent_coefficients(self):
        F = GF(2)
        one = LaurentSeries.monomial(F, 0, 1)
        t = LaurentSeries.t(F)
        assert is_wound(PPolynomial(2, [[0, one], [0, t]], ("u", "v"))).verdict == "Wound"

    def test_never_wound_when_split(self):
        rng = random.Random(4)
        for _ in range(40):
            p = rng.choice([2, 3])
            F = GF(p)
            n = rng.randint(1, 2)
            a = []
            for _ in range(rng.randint(1, 2)):
                g = RatFunc(DensePoly.from_codes(F, [rng.randrange(p) for _ in range(3)] + [1]))
                a.append(g ** (p**n))
            eq = RussellEquation(p, n, tuple(a))
            assert splitting_degree(eq) == 1
            assert is_wound(eq.to_ppoly()).verdict != "Wound"


class TestAdditivity:
    def test_random(self):
        rng = random.Random(7)
        for _ in range(200):
            p = rng.choice([2, 3])
            F = GF(p)
            mk = lambda: RatFunc(DensePoly.from_codes(F, [rng.randrange(p) for _ in range(3)]),
                                 DensePoly.from_codes(F, [rng.randrange(p) for _ in range(2)] + [1]))
            blocks = [[mk() for _ in range(rng.randint(1, 3))] for _ in range(2)]
            if any(not b[-1] for b in blocks):
                continue
            phi = PPolynomial(p, blocks)
            x, y = [mk(), mk()], [mk(), mk()]
            s = [a + b for a, b in zip(x, y)]
            assert phi.evaluate(s) == phi.evaluate(x) + phi.evaluate(y)


class TestGenus:
    @pytest.mark.parametrize("pnm,g", [((3, 1, 1), 1), ((2, 2, 2), 3), ((2, 1, 1), 0), ((5, 1, 1), 6),
                                       ((2, 1, 2), 1), ((2, 2, 1), 1)])
    def test_values(self, pnm, g):
        assert genus(*pnm) == g

    @given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(1, 4))
    def test_symmetric(self, p, n, m):
        assert genus(p, n, m) == genus(p, m, n)


class TestSplitting:
    def test_examples(self):
        assert splitting_degree(R(3, 1, t3)) == 3
        assert splitting_degree(R(2, 1, t2**2)) == 1
        assert splitting_degree(R(2, 2, t2)) == 4

    def test_bivariate(self):
        s, t = BivarRatFunc.s(F2), BivarRatFunc.t(F2)
        assert splitting_degree(R(2, 1, s, t)) == 4
        assert splitting_degree(R(2, 1, s, s * t**2)) == 2


class TestClassify:
    def test_case_2(self):
        c = classify(R(3, 1, t3))
        assert (c.tag, c.case, c.genus) == ("QuasiElliptic", "2", 1)

    def test_quasi_rational(self):
        assert classify(R(2, 1, t2)).tag == "QuasiRational"

    def test_case_1b(self):
        c = classify(R(2, 2, t2))
        assert (c.tag, c.case) == ("QuasiElliptic", "1b")

    def test_case_1a(self):
        c = classify(R(2, 1, t2 + 1, t2))
        assert (c.tag, c.case) == ("QuasiElliptic", "1a")

    def test_case_1c(self):
        s, t = BivarRatFunc.s(F2), BivarRatFunc.t(F2)
        c = classify(R(2, 2, s, t**2))
        assert (c.tag, c.case) == ("QuasiElliptic", "1c")

    def test_splits(self):
        assert classify(R(2, 1, t2**2)).tag == "SplitsToGa"
        assert classify(R(3, 1, t3**3)).tag == "SplitsToGa"

    def test_higher_genus(self):
        c = classify(R(3, 1, t3, t3))
        assert (c.tag, c.genus) == ("HigherGenus", 7)
        c = classify(R(2, 2, t2, t2**3))
        assert (c.tag, c.genus) == ("HigherGenus", 3)

    def test_malformed(self):
        with pytest.raises(MalformedEquation):
            classify(R(2, 1, RatFunc.constant(F2, 0)))
        with pytest.raises(MalformedEquation):
            classify(RussellEquation(2, 0, (t2,)))

    def test_tags_respect_characteristic(self):
        rng = random.Random(11)
        for _ in range(60):
            p = rng.choice([2, 3, 5])
            F = GF(p)
            a = [RatFunc(DensePoly.from_codes(F, [rng.randrange(p) for _ in range(2)] + [1]))
                 for _ in range(rng.randint(1, 2))]
            c = classify(RussellEquation(p, rng.randint(1, 2), tuple(a)))
            if c.tag == "QuasiRational":
                assert p == 2
            if c.tag == "QuasiElliptic":
                assert p in (2, 3)

    def test_stable_under_pn_power_rewrite(self):
        rng = random.Random(12)
        base = [R(3, 1, t3), R(2, 2, t2), R(2, 1, t2), R(2, 1, t2 + 1, t2), R(3, 1, t3, t3)]
        for eq in base:
            before = classify(eq).label()
            for _ in range(50):
                g = RatFunc(DensePoly.from_codes(eq.field, [rng.randrange(eq.p) for _ in range(3)]),
                            DensePoly.from_codes(eq.field, [rng.randrange(eq.p) for _ in range(2)] + [1]))
                a = list(eq.a)
                a[-1] = a[-1] + g ** (eq.p**eq.n)
                if not a[-1]:
                    continue
                assert classify(eq.with_coeffs(a)).label() == before


class TestCase1c:
    def test_stays_1c(self):
        s, t = BivarRatFunc.s(F2), BivarRatFunc.t(F2)
        rep = reduce_case_1c(s, t)
        assert rep.cubic == (s, t)
        assert not rep.genus0 and not rep.reduces_to_1b

    def test_square_a_genus0(self):
        rep = reduce_case_1c(t2**2, t2)
        assert rep.genus0

    def test_reduces_to_1b_with_witness(self):
        rng = random.Random(13)
        s, t = BivarRatFunc.s(F2), BivarRatFunc.t(F2)
        a = s
        for _ in range(20):
            al = s ** rng.randint(0, 2) * t ** rng.randint(0, 2) + rng.randint(0, 1)
            be = t ** rng.randint(0, 3) + s * rng.randint(0, 1)
            c = a * al**2 + be**2
            rep = reduce_case_1c(a, c)
            assert rep.reduces_to_1b
            x, y = rep.witness
            assert a * x**2 + y**2 == c


class TestCompactify:
    def test_cubic(self):
        rep = compactify(R(3, 1, t3))
        assert rep.weights == (1, 1, 1) and rep.degree == 3
        assert {m.exps for m in rep.monomials} == {(0, 0, 3), (2, 1, 0), (0, 3, 0)}
        assert rep.to_str() == "t2^3 + t0^2*t1 + t*t1^3"
        assert rep.regular and rep.genus == 1 and rep.canonical_degree == 0

    def test_conic(self):
        rep = compactify(R(2, 1, t2))
        assert rep.to_str() == "t2^2 + t0*t1 + t*t1^2"
        assert rep.genus == 0
        assert rep.boundary_degree == 2

    def test_weights_n_le_m(self):
        rep = compactify(R(2, 1, t2 + 1, t2))
        assert rep.weights == (1, 1, 2) and rep.degree == 4
        assert all(m.weighted_degree(rep.weights) == 4 for m in rep.monomials)

    def test_weights_m_lt_n(self):
        rep = compactify(R(2, 2, t2))
        assert rep.weights == (1, 2, 1) and rep.degree == 4
        assert rep.uniform()

    def test_not_regular(self):
        rep = compactify(R(2, 1, t2, t2**2))
        assert not rep.regular

    def test_round_trip(self):
        rng = random.Random(14)
        for _ in range(60):
            p = rng.choice([2, 3])
            F = GF(p)
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            a = [RatFunc(DensePoly.from_codes(F, [rng.randrange(p) for _ in range(3)]),
                         DensePoly.from_codes(F, [rng.randrange(p) for _ in range(2)] + [1]))
                 for _ in range(m)]
            if not a[-1]:
                a[-1] = RatFunc.t(F)
            eq = RussellEquation(p, n, tuple(a))
            rep = compactify(eq)
            assert rep.uniform()
            assert dehomogenize(rep) == eq.to_ppoly()
            assert rep.regular == (is_pth_power(a[-1]) is None)
            assert rep.canonical_degree == -2 - p ** abs(n - m) + p ** max(n, m)
