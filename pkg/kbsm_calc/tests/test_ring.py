"""
Unit tests for exact coefficient arithmetic.

Tests Laurent polynomials, polynomials in x and the P_n / P_{n,k} families.
"""

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from kbsm_calc.core.ring import (
    A, ONE, ZERO, X, LaurentPoly, XPoly, encircle, kink_factor, loop_value,
    p_n, p_nk, parse_laurent,
)

laurent_polys = st.dictionaries(
    st.integers(min_value=-8, max_value=8), st.integers(min_value=-5, max_value=5), max_size=5
).map(LaurentPoly.from_dict)


def lp(text):
    return parse_laurent(text)


class TestLaurentPoly:
    """Test cases for Z[A, A^-1] arithmetic."""

    def test_canonical_form(self):
        """Test that zero coefficients vanish and terms merge."""
        poly = LaurentPoly(((2, 1), (0, 3), (2, -1), (-1, 0)))
        assert poly == LaurentPoly.constant(3)
        assert LaurentPoly(((1, 1), (1, 1))) == LaurentPoly.monomial(1, 2)

    def test_zero(self):
        """Test the zero polynomial."""
        assert ZERO.is_zero()
        assert not ZERO
        assert str(ZERO) == "0"

    def test_print_decreasing_exponents(self):
        """Test that terms print from the highest exponent down."""
        assert str(loop_value()) == "-A^2-A^-2"
        assert str(LaurentPoly.from_dict({4: 1, 0: 1})) == "A^4+1"
        assert str(LaurentPoly.from_dict({-4: -1, 0: 1})) == "1-A^-4"
        assert str(LaurentPoly.monomial(1, 2)) == "2A"

    def test_as_factor(self):
        """Test factor rendering: bare for positive monomials."""
        assert A.as_factor() == "A"
        assert LaurentPoly.monomial(-6).as_factor() == "A^-6"
        assert LaurentPoly.monomial(2, -1).as_factor() == "(-A^2)"
        assert loop_value().as_factor() == "(-A^2-A^-2)"

    def test_parse(self):
        """Test parsing of printed polynomials."""
        assert lp("-A^2-A^-2") == loop_value()
        assert lp("(A^4+1)") == LaurentPoly.from_dict({4: 1, 0: 1})
        assert lp("3A^-1 + 2") == LaurentPoly.from_dict({-1: 3, 0: 2})
        assert lp("0") == ZERO

    def test_parse_invalid(self):
        """Test that malformed input raises ValueError."""
        with pytest.raises(ValueError):
            parse_laurent("A^^2")
        with pytest.raises(ValueError):
            parse_laurent("")

    def test_negative_power(self):
        """Test inverses of unit monomials."""
        assert A ** -3 == LaurentPoly.monomial(-3)
        assert LaurentPoly.monomial(2, -1) ** -1 == LaurentPoly.monomial(-2, -1)
        with pytest.raises(ValueError):
            loop_value() ** -1

    def test_kink_factor(self):
        """Test the framing factors."""
        assert kink_factor(1) == LaurentPoly.monomial(3, -1)
        assert kink_factor(-1) == LaurentPoly.monomial(-3, -1)
        with pytest.raises(ValueError):
            kink_factor(0)

    @given(laurent_polys, laurent_polys, laurent_polys)
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, p, q, r):
        """Test commutativity, associativity and distributivity."""
        assert p + q == q + p
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == ZERO
        assert p * ONE == p

    @given(laurent_polys)
    @settings(max_examples=60, deadline=None)
    def test_print_parse(self, p):
        """Test that the printed form parses back."""
        assert parse_laurent(str(p)) == p


class TestXPoly:
    """Test cases for polynomials in x."""

    def test_negative_degree_rejected(self):
        """Test that x^-1 is not an XPoly."""
        with pytest.raises(ValueError):
            XPoly(((-1, ONE),))

    def test_degree(self):
        """Test degree of zero and nonzero polynomials."""
        assert XPoly().degree == -1
        assert (X * X + 1).degree == 2

    def test_print(self):
        """Test the x-polynomial print form."""
        assert str(p_n(2)) == "(-A^-2)*x^2 + (A^4+1)"
        assert str(X) == "x"
        assert str(XPoly.constant(1)) == "1"
        assert str(XPoly()) == "0"

    def test_shift_and_scale(self):
        """Test multiplication by x and by a coefficient."""
        poly = XPoly.constant(loop_value()).shift(2)
        assert poly.coefficient(2) == loop_value()
        assert poly.scale(A).coefficient(2) == loop_value() * A


class TestPolynomialFamilies:
    """Test cases for P_n and P_{n,k}."""

    def test_initial_values(self):
        """Test P_0 and P_1."""
        assert p_n(0) == XPoly.constant(loop_value())
        assert p_n(1) == X

    def test_p2(self):
        """Test P_2 = -A^-2 x^2 + A^4 + 1."""
        expected = XPoly.x_power(2, LaurentPoly.monomial(-2, -1)) + lp("A^4+1")
        assert p_n(2) == expected

    def test_p_minus_one(self):
        """Test P_-1 = A^-6 x."""
        assert p_n(-1) == XPoly.x_power(1, LaurentPoly.monomial(-6))
        assert str(p_n(-1)) == "A^-6*x"

    @pytest.mark.parametrize("n", range(-12, 13))
    def test_recursion_holds_everywhere(self, n):
        """Test P_n = -A^-2 x P_{n-1} - A^2 P_{n-2} on both sides of zero."""
        lhs = p_n(n)
        rhs = (p_n(n - 1).shift().scale(LaurentPoly.monomial(-2, -1))
               + p_n(n - 2).scale(LaurentPoly.monomial(2, -1)))
        assert lhs == rhs

    def test_pnk_zero(self):
        """Test P_{n,0} = P_n."""
        for n in range(-3, 4):
            assert p_nk(n, 0) == p_n(n)

    def test_p01(self):
        """Test P_{0,1} = -(A^4+A^-4) x."""
        assert p_nk(0, 1) == XPoly.x_power(1, lp("-A^4-A^-4"))

    def test_pnk_negative_k(self):
        """Test that k < 0 is rejected."""
        with pytest.raises(ValueError):
            p_nk(1, -1)

    def test_encircle_linear(self):
        """Test that encircle is linear in the inner content."""
        inner = XPoly.constant(2) + X.scale(A)
        assert encircle(1, inner) == p_n(1) * 2 + p_nk(1, 1).scale(A)
        assert encircle(3, XPoly.constant(1)) == p_n(3)


class TestPnk:
    """Test cases for the P_{n,k} family on both sides of zero."""

    @pytest.mark.parametrize("n", range(-12, 13))
    def test_degree(self, n):
        """Test that P_n has degree |n| in x."""
        assert p_n(n).degree == abs(n)

    @pytest.mark.parametrize("k", range(1, 7))
    @pytest.mark.parametrize("n", range(-8, 9))
    def test_residual(self, n, k):
        """Test P_{n,k} - (-A^4+1) P_{n+1,k-1} - A^-2 x P_{n,k-1} = 0."""
        residual = (p_nk(n, k)
                    - p_nk(n + 1, k - 1).scale(lp("-A^4+1"))
                    - p_nk(n, k - 1).shift().scale(LaurentPoly.monomial(-2)))
        assert not residual

    @pytest.mark.parametrize("k", range(0, 5))
    @pytest.mark.parametrize("n", range(-8, 1))
    def test_index_recursion_below_zero(self, n, k):
        """Test P_{n,k} = -A^-2 x P_{n-1,k} - A^2 P_{n-2,k} for n <= 0."""
        rhs = (p_nk(n - 1, k).shift().scale(LaurentPoly.monomial(-2, -1))
               + p_nk(n - 2, k).scale(LaurentPoly.monomial(2, -1)))
        assert p_nk(n, k) == rhs

    def test_p_minus_one_one(self):
        """Test P_{-1,1} = A^-8 x^2 + A^6 - A^-2."""
        assert p_nk(-1, 1) == XPoly.x_power(2, LaurentPoly.monomial(-8)) + lp("A^6-A^-2")


class TestDiskArrowSlides:
    """Test cases for the disk identities behind sliding an arrow through a crossing."""

    @pytest.mark.parametrize("m", range(-3, 4))
    def test_slide_past_negative_circle(self, m):
        """Test A P_-1 P_m + A^-1 P_{m-1} = -A^-3 P_{m+1}."""
        lhs = (p_n(-1) * p_n(m)).scale(A) + p_n(m - 1).scale(LaurentPoly.monomial(-1))
        assert lhs == p_n(m + 1).scale(LaurentPoly.monomial(-3, -1))

    @pytest.mark.parametrize("m", range(-3, 4))
    def test_slide_with_free_x(self, m):
        """Test A P_{m+2} + A^-1 x P_{m+1} = -A^3 P_m."""
        lhs = p_n(m + 2).scale(A) + p_n(m + 1).shift().scale(LaurentPoly.monomial(-1))
        assert lhs == p_n(m).scale(LaurentPoly.monomial(3, -1))

    @pytest.mark.parametrize("m", range(-3, 4))
    def test_slide_into_encircled_x(self, m):
        """Test A P_{m-1} + A^-1 P_{m,1} = -A^3 P_{m+1}."""
        lhs = p_n(m - 1).scale(A) + p_nk(m, 1).scale(LaurentPoly.monomial(-1))
        assert lhs == p_n(m + 1).scale(LaurentPoly.monomial(3, -1))

    @pytest.mark.parametrize("m", range(-3, 4))
    def test_slide_out_of_encircled_x(self, m):
        """Test A A^-6 P_{m+1,1} + A^-1 P_{m+2} = -A^-3 P_m."""
        lhs = (p_nk(m + 1, 1).scale(LaurentPoly.monomial(-5))
               + p_n(m + 2).scale(LaurentPoly.monomial(-1)))
        assert lhs == p_n(m).scale(LaurentPoly.monomial(-3, -1))
