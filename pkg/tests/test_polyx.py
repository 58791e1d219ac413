import random
from fractions import Fraction

import pytest

from helpers import random_rational_poly, vamos_bases_as_sets
from spectra import matroid
from spectra.polyx import (
    GAUSS,
    RATIONAL,
    GaussRational,
    Polynomial,
    UnivariatePoly,
    exact_divide,
    poly_from_json,
    poly_to_json,
    shift,
    univariate_gcd,
    widen_to_gauss,
)


def P(num_vars, terms):
    return Polynomial(num_vars, terms)


def x_(n, i):
    return Polynomial.variable(n, i)


class TestGaussRational:
    def test_arithmetic_closed(self):
        a = GaussRational(Fraction(1, 2), Fraction(-3))
        b = GaussRational(2, Fraction(1, 3))
        assert (a + b) - b == a
        assert (a * b) / b == a
        assert a.conjugate().conjugate() == a

    def test_abs2(self):
        assert GaussRational(3, 4).abs2() == 25
        assert GaussRational(Fraction(1, 2), Fraction(1, 2)).abs2() == Fraction(1, 2)

    def test_equality_with_rationals(self):
        assert GaussRational(Fraction(2, 3), 0) == Fraction(2, 3)
        assert GaussRational(1, 1) != 1
        assert hash(GaussRational(5, 0)) == hash(Fraction(5))

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussRational(1) / GaussRational(0)


class TestAddition:
    def test_merge(self):
        one_plus_x = P(1, {(0,): 1, (1,): 1})
        assert one_plus_x + x_(1, 0) == P(1, {(0,): 1, (1,): 2})

    def test_identity(self):
        p = P(2, {(1, 1): Fraction(3, 2)})
        assert p + Polynomial.zero(2) == p

    def test_cancellation(self):
        x, y = x_(2, 0), x_(2, 1)
        assert ((x - y) + (y - x)).is_zero

    def test_variable_count_mismatch(self):
        with pytest.raises(ValueError, match="variable-count"):
            x_(1, 0) + x_(2, 0)


class TestMultiplication:
    def test_binomial_product(self):
        x, y = x_(2, 0), x_(2, 1)
        assert (1 + x) * (1 + y) == P(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})

    def test_square(self):
        x = x_(1, 0)
        assert (1 + x) * (1 + x) == P(1, {(0,): 1, (1,): 2, (2,): 1})

    def test_one_is_neutral(self):
        h = matroid.bases_polynomial(matroid.uniform(2, 3))
        assert h * Polynomial.one(3) == h


class TestPower:
    def test_cube(self):
        x = x_(1, 0)
        assert (1 + x) ** 3 == P(1, {(0,): 1, (1,): 3, (2,): 3, (3,): 1})

    def test_zeroth_power(self):
        p = P(2, {(2, 1): 5})
        assert p**0 == Polynomial.one(2)

    def test_vamos_square_degree(self):
        # degree additivity, cross-checked against the explicit expansion
        h = matroid.bases_polynomial(matroid.vamos())
        square = h * h
        assert (h**2) == square
        assert square.degree() == 8 == 2 * h.degree()


class TestCompose:
    def test_product_of_images(self):
        p = x_(2, 0) * x_(2, 1)
        t = x_(1, 0)
        assert p.compose([1 + t, Polynomial.one(1)]) == 1 + t

    def test_shift_one_variable(self):
        p = x_(1, 0)
        assert p.compose([x_(1, 0) + 1]) == x_(1, 0) + 1

    def test_uniform_diagonal(self):
        # three quadratic monomials t*t collapse to 3t^2
        h = matroid.bases_polynomial(matroid.uniform(2, 3))
        t = x_(1, 0)
        assert h.compose([t, t, t]) == P(1, {(2,): 3})

    def test_arity_mismatch(self):
        with pytest.raises(ValueError, match="arity"):
            x_(2, 0).compose([x_(1, 0)])

    def test_identity_images(self):
        rng = random.Random(11)
        for _ in range(10):
            p = random_rational_poly(rng, 3)
            identity = [x_(3, i) for i in range(3)]
            assert p.compose(identity) == p


class TestRestrict:
    def test_along_first_axis(self):
        p = x_(2, 0) * x_(2, 1)
        r = p.restrict([1, 1], [1, 0])
        assert r == UnivariatePoly([1, 1])
        assert r.degree() == 1

    def test_vamos_direction_degree(self):
        # independent oracle: degree = max basis intersection with {1,4,5,6}
        bases = vamos_bases_as_sets()
        expected = max(len(frozenset({1, 4, 5, 6}) & b) for b in bases)
        assert expected == 3
        h = matroid.bases_polynomial(matroid.vamos())
        direction = [1 if i in (0, 3, 4, 5) else 0 for i in range(8)]
        assert h.restrict([1] * 8, direction).degree() == 3

    def test_zero_direction(self):
        rng = random.Random(5)
        for _ in range(5):
            p = random_rational_poly(rng, 2, max_terms=4)
            base = [random.Random(1).randint(-2, 2), 1]
            r = p.restrict(base, [0, 0])
            assert r == UnivariatePoly([p.eval(base)])

    def test_degree_bound(self):
        rng = random.Random(7)
        for _ in range(20):
            p = random_rational_poly(rng, 3)
            if p.is_zero:
                continue
            base = [Fraction(rng.randint(-2, 2)) for _ in range(3)]
            direction = [Fraction(rng.randint(-2, 2)) for _ in range(3)]
            d = p.restrict(base, direction).degree()
            assert d is None or d <= p.degree()

    def test_generic_direction_attains_degree(self):
        h = matroid.bases_polynomial(matroid.vamos())
        r = h.restrict([1] * 8, [Fraction(i + 1, 2) for i in range(8)])
        assert r.degree() == h.degree()


class TestSupportAndEval:
    def test_uniform_support(self):
        h = matroid.bases_polynomial(matroid.uniform(2, 3))
        assert h.support() == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}

    def test_zero_support(self):
        assert Polynomial.zero(4).support() == frozenset()

    def test_vamos_support(self):
        h = matroid.bases_polynomial(matroid.vamos())
        support = h.support()
        assert len(support) == 65  # C(8,4) minus the five planes
        assert all(sum(e) == 4 for e in support)

    def test_eval_examples(self):
        one_plus_x = 1 + x_(1, 0)
        assert one_plus_x.eval([1]) == 2
        square = P(1, {(2,): 1})
        assert square.eval([GaussRational(0, 1)]) == -1
        h = matroid.bases_polynomial(matroid.vamos())
        assert h.eval([1] * 8) == 65

    def test_eval_complex(self):
        p = Polynomial(1, {(1,): 1, (0,): GaussRational(0, -1)}, GAUSS)
        assert abs(p.eval([complex(0, 1)])) == 0

    def test_eval_multiplicative(self):
        rng = random.Random(13)
        for _ in range(15):
            a = random_rational_poly(rng, 2)
            b = random_rational_poly(rng, 2)
            v = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)]
            assert (a * b).eval(v) == a.eval(v) * b.eval(v)

    def test_support_minkowski(self):
        rng = random.Random(17)
        for _ in range(15):
            a = random_rational_poly(rng, 2)
            b = random_rational_poly(rng, 2)
            minkowski = {
                tuple(x + y for x, y in zip(ea, eb))
                for ea in a.support()
                for eb in b.support()
            }
            assert (a * b).support() <= minkowski


class TestRingAxioms:
    def test_axioms_on_random_inputs(self):
        rng = random.Random(23)
        for _ in range(20):
            a = random_rational_poly(rng, 2)
            b = random_rational_poly(rng, 2)
            c = random_rational_poly(rng, 2)
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)


class TestKinds:
    def test_no_silent_mixing(self):
        rational = 1 + x_(1, 0)
        gauss = Polynomial(1, {(1,): GaussRational(0, 1)})
        with pytest.raises(ValueError, match="kind"):
            rational + gauss
        with pytest.raises(ValueError, match="widen"):
            rational * GaussRational(0, 1)

    def test_explicit_widen_and_demote(self):
        p = 1 + x_(1, 0)
        wide = widen_to_gauss(p)
        assert wide.kind == GAUSS
        assert wide.as_rational() == p
        bad = Polynomial(1, {(0,): GaussRational(0, 1)})
        with pytest.raises(ValueError, match="imaginary"):
            bad.as_rational()

    def test_rational_kind_rejects_gauss_values(self):
        with pytest.raises(ValueError):
            Polynomial(1, {(0,): GaussRational(0, 1)}, RATIONAL)

    def test_degree_of_zero_is_none(self):
        assert Polynomial.zero(3).degree() is None
        assert UnivariatePoly.zero().degree() is None


class TestShiftHelper:
    def test_shift_matches_manual_expansion(self):
        h = matroid.bases_polynomial(matroid.uniform(2, 3))
        shifted = shift(h, [1, 1, 1])
        # (x1+1)(x2+1) + (x1+1)(x3+1) + (x2+1)(x3+1)
        x1, x2, x3 = (x_(3, i) for i in range(3))
        manual = (x1 + 1) * (x2 + 1) + (x1 + 1) * (x3 + 1) + (x2 + 1) * (x3 + 1)
        assert shifted == manual
        assert shifted.eval([0, 0, 0]) == 3


class TestUnivariate:
    def test_divmod_roundtrip(self):
        rng = random.Random(3)
        for _ in range(25):
            a = UnivariatePoly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(0, 6))])
            b = UnivariatePoly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))])
            if b.is_zero:
                continue
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.is_zero or r.degree() < b.degree()

    def test_gcd_divides_both(self):
        a = UnivariatePoly([-1, 0, 1])  # (t-1)(t+1)
        b = UnivariatePoly([1, 2, 1])  # (t+1)^2
        g = univariate_gcd(a, b)
        assert g == UnivariatePoly([1, 1])
        assert exact_divide(a, g) * g == a

    def test_content_normalization_preserves_signs(self):
        p = UnivariatePoly([Fraction(-2, 3), 0, Fraction(4, 9)])
        q = p.content_normalized()
        assert q == UnivariatePoly([-3, 0, 2])
        assert [c > 0 for c in p.coeffs if c] == [c > 0 for c in q.coeffs if c]

    def test_derivative_and_eval(self):
        p = UnivariatePoly([2, -3, 0, 1])
        assert p.derivative() == UnivariatePoly([-3, 0, 3])
        assert p.eval(2) == 2 - 6 + 8


class TestJson:
    def test_round_trip_rational(self):
        h = matroid.bases_polynomial(matroid.vamos())
        assert poly_from_json(poly_to_json(h)) == h

    def test_round_trip_gauss(self):
        p = Polynomial(2, {(1, 0): GaussRational(Fraction(1, 2), -1), (0, 0): 3}, GAUSS)
        assert poly_from_json(poly_to_json(p)) == p

    def test_canonical_term_order(self):
        p = P(2, {(2, 0): 1, (0, 1): 1, (1, 0): 1, (0, 0): 1})
        exponents = [t["e"] for t in poly_to_json(p)["terms"]]
        assert exponents == [[0, 0], [0, 1], [1, 0], [2, 0]]

    def test_duplicate_exponents_rejected(self):
        obj = {"vars": 1, "terms": [{"c": "1", "e": [1]}, {"c": "2", "e": [1]}]}
        with pytest.raises(ValueError, match="duplicate"):
            poly_from_json(obj)

    def test_parser_accepts_any_order(self):
        obj = {"vars": 1, "terms": [{"c": "1/2", "e": [2]}, {"c": "-3", "e": [0]}]}
        p = poly_from_json(obj)
        assert p == P(1, {(2,): Fraction(1, 2), (0,): -3})
