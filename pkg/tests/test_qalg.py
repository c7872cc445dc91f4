from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qvariant.qalg import (
    BasisDescriptor,
    BasisKind,
    LaurentPoly,
    LSeries,
    as_rational,
    basis_expand,
    basis_project,
    binomial_power,
    combine,
    euler_expand,
    format_rational,
    inv_euler_expand,
    poly_mul,
    poly_scale_arg,
    q_pochhammer,
    rising_factorial,
)

from conftest import rationals

x = LaurentPoly({1: 1})


def laurent(lo=-4, hi=4):
    return st.dictionaries(st.integers(lo, hi), rationals(20, positive=False), max_size=5).map(LaurentPoly)


def unit_q():
    return st.builds(lambda a, b: F(min(a, b), max(a, b)), st.integers(1, 30), st.integers(1, 30)).filter(
        lambda v: v != 1)


class TestRationals:
    def test_parse_forms(self):
        assert as_rational("3/4") == F(3, 4)
        assert as_rational(" -7 ") == F(-7)
        assert format_rational(F(-3, 4)) == "-3/4"
        assert format_rational(F(5)) == "5"

    @pytest.mark.parametrize("bad", ["1/0", "x", "1/2/3", ""])
    def test_malformed(self, bad):
        with pytest.raises((ValueError, ZeroDivisionError)):
            as_rational(bad)

    def test_floats_refused(self):
        with pytest.raises(TypeError):
            as_rational(0.5)


class TestPochhammer:
    def test_empty_product(self):
        assert q_pochhammer(F(7, 3), F(1, 2), 0) == 1

    def test_vanishing_first_factor(self):
        assert q_pochhammer(F(1), F(1, 2), 3) == 0

    def test_two_factors(self):
        assert q_pochhammer(F(1, 2), F(1, 2), 2) == F(3, 8)

    def test_rising_factorial(self):
        assert rising_factorial(F(5), 0) == 1
        assert rising_factorial(F(1), 4) == 24
        assert rising_factorial(F(-2), 3) == 0

    @given(rationals(30), unit_q(), st.integers(0, 6), st.integers(0, 6))
    def test_splits_at_any_index(self, a, q, m, n):
        assert q_pochhammer(a, q, m + n) == q_pochhammer(a, q, m) * q_pochhammer(a * q**m, q, n)


class TestEuler:
    def test_low_coefficients(self):
        e = euler_expand(F(1), F(1, 2), 4)
        assert (e[0], e[1], e[2]) == (1, -2, F(4, 3))
        i = inv_euler_expand(F(1), F(1, 2), 4)
        assert (i[0], i[1]) == (1, 2)

    def test_reciprocal(self):
        prod = euler_expand(F(1), F(1, 2), 8) * inv_euler_expand(F(1), F(1, 2), 8)
        assert prod.truncate(None, 8) == LaurentPoly({0: 1})

    @given(rationals(20), unit_q())
    def test_functional_equation(self, alpha, q):
        # (a x; q)_inf = (1 - a x) (a q x; q)_inf
        N = 7
        f = euler_expand(alpha, q, N)
        assert f.truncate(None, N) == ((1 - x * alpha) * f.scale_arg(q)).truncate(None, N)
        g = inv_euler_expand(alpha, q, N)
        assert ((1 - x * alpha) * g).truncate(None, N) == g.scale_arg(q).truncate(None, N)


class TestLaurentPoly:
    def test_scale_arg(self):
        assert poly_scale_arg(x * x, F(1, 4)) == LaurentPoly({2: F(1, 16)})
        assert poly_scale_arg(LaurentPoly({-1: 1}), F(4)) == LaurentPoly({-1: F(1, 4)})

    def test_difference_of_squares(self):
        assert poly_mul(1 - x, 1 + x) == 1 - x * x

    def test_zero_is_clean(self):
        assert (x - x).is_zero()
        assert (x - x).degrees() == []

    def test_divide_linear(self):
        p = (1 - x * F(2, 3)) * (x - 3)
        assert p.divide_linear(F(2, 3)) == x - 3
        with pytest.raises(ValueError):
            (x - 3).divide_linear(F(2, 3))

    @given(laurent(), laurent(), rationals(10, positive=False).filter(bool))
    def test_evaluation_is_a_ring_map(self, p, r, v):
        assert (p * r)(v) == p(v) * r(v)
        assert (p + r)(v) == p(v) + r(v)

    @given(laurent(), rationals(10), rationals(10))
    def test_scale_arg_composes(self, p, a, b):
        assert p.scale_arg(a).scale_arg(b) == p.scale_arg(a * b)

    @given(laurent(0, 4), rationals(10))
    def test_derivative_product_rule(self, p, c):
        r = x - c
        assert (p * r).derivative() == p.derivative() * r + p


class TestBasis:
    def test_first_element_is_one(self):
        for kind in BasisKind:
            assert basis_expand(BasisDescriptor(kind, F(1, 2), F(3), F(5)), 0) == LaurentPoly({0: 1})

    def test_poch_asc(self):
        b = BasisDescriptor(BasisKind.POCH_ASC, F(1, 2), F(2))
        assert b.element(2) == LaurentPoly({0: 1, 1: F(-3, 4), 2: F(1, 8)})

    def test_poch_desc(self):
        b = BasisDescriptor(BasisKind.POCH_DESC, F(1, 2), F(3))
        assert b.element(1) == LaurentPoly({0: 1, -1: -3})

    def test_project_basis_element(self):
        b = BasisDescriptor(BasisKind.POCH_DESC, F(1, 3), F(2))
        comps, over = basis_project(b.element(2), b, 2)
        assert comps == [0, 0, 1] and over.is_zero()

    def test_project_square_on_ascending(self):
        q, c = F(1, 3), F(5, 2)
        b = BasisDescriptor(BasisKind.POCH_ASC, q, c)
        comps, over = basis_project(x * x, b, 2)
        assert comps == [c * c, -c * c * (1 + 1 / q), c * c / q] and over.is_zero()

    def test_positive_power_overflows_descending(self):
        b = BasisDescriptor(BasisKind.POCH_DESC, F(1, 3), F(2))
        _, over = basis_project(x, b, 5)
        assert over[1] == 1

    def test_zero_center_rejected(self):
        with pytest.raises(ValueError):
            BasisDescriptor(BasisKind.POCH_ASC, F(1, 2), F(0))

    @given(st.sampled_from(list(BasisKind)), unit_q(), rationals(9), rationals(9),
           st.lists(rationals(9, positive=False), min_size=1, max_size=7))
    def test_project_inverts_combine(self, kind, q, c, d, coeffs):
        b = BasisDescriptor(kind, q, c, d)
        comps, over = basis_project(combine(b, coeffs), b, len(coeffs) - 1)
        assert comps == coeffs and over.is_zero()


class TestSeries:
    def test_monomial_inverse_is_exact(self):
        u = LSeries.gen("u")
        inv = 1 / (u * 3)
        assert inv.is_exact and (inv * u * 3) == LSeries({0: 1}, None, "u")

    def test_geometric_inverse(self):
        u = LSeries.gen("u")
        inv = (1 - u).inverse(6)
        assert [inv[k] for k in range(6)] == [1] * 6

    def test_binomial_power_squares_back(self):
        r = binomial_power(F(1), 1, F(1, 2), 8, "r")  # (1 + r)^(1/2)
        sq = r * r
        assert [sq[k] for k in range(8)] == [1, 1, 0, 0, 0, 0, 0, 0]

    def test_polynomial_evaluation(self):
        u = LSeries.gen("u")
        p = (1 + u) * (2 - u)
        assert p.is_polynomial() and p.at_zero() == 2 and p(F(1, 7)) == F(8, 7) * F(13, 7)
