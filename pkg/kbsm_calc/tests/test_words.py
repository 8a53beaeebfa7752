"""
Unit tests for the word algebra.

Tests parsing, printing, the chain view, basis predicates and elements.
"""

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from kbsm_calc.core.enums import LetterKind, Surface
from kbsm_calc.core.ring import LaurentPoly, loop_value, p_n, parse_laurent
from kbsm_calc.core.words import (
    EMPTY_WORD, X_LETTER, AlphabetError, Chains, GeneralWord, SkeinElement,
    TypeOrderError, WordSyntaxError, enumerate_basis_words, from_chains, is_basis_word,
    is_final, is_quasi_final, is_reduced, linear_combination, parse_element, parse_word,
    to_chains, t, word_size, y, z,
)


def w(text, surface=Surface.PANTS):
    return parse_word(text, surface)


class TestParseWord:
    """Test cases for the word grammar."""

    def test_tokens(self):
        """Test every token form."""
        word = w("x y y' y_2 y_-1 z t")
        assert word.tokens == (X_LETTER, y(0), y(1), y(2), y(-1), z(0), t(0))

    def test_powers(self):
        """Test that ^n repeats a token."""
        assert w("y^3 x^2") == GeneralWord.of(y(), y(), y(), X_LETTER, X_LETTER)

    def test_whitespace_optional(self):
        """Test that spaces between tokens do not matter."""
        assert w("yy'x") == w("y y' x")

    def test_empty_word(self):
        """Test that 1 is the empty word."""
        assert w("1") == EMPTY_WORD
        assert str(EMPTY_WORD) == "1"

    def test_syntax_error(self):
        """Test rejection of text outside the grammar."""
        with pytest.raises(WordSyntaxError):
            w("y q")
        with pytest.raises(WordSyntaxError):
            w("")
        with pytest.raises(WordSyntaxError):
            w("x^0")

    def test_alphabet(self):
        """Test that letters must exist on the surface."""
        with pytest.raises(AlphabetError):
            w("y", Surface.DISK)
        with pytest.raises(AlphabetError):
            w("z", Surface.ANNULUS)
        assert w("x^2", Surface.DISK).x_count == 2

    def test_type_order(self):
        """Test that y < z < t must hold in reading order."""
        with pytest.raises(TypeOrderError):
            w("z y")
        with pytest.raises(TypeOrderError):
            w("t x z")
        with pytest.raises(ValueError):
            w("t y")

    def test_print_collapses_runs(self):
        """Test the canonical print form."""
        assert w("y y y' x x").text == "y^2 y' x^2"
        assert str(w("y_-1 z_3 t'")) == "y_-1 z_3 t'"

    @given(st.lists(st.sampled_from(["x", "y", "y'", "y_2", "y_-3"]), min_size=1, max_size=6))
    @settings(max_examples=50, deadline=None)
    def test_print_parse(self, tokens):
        """Test that printing then parsing gives the same word."""
        ys = [tok for tok in tokens if tok != "x"]
        xs = [tok for tok in tokens if tok == "x"]
        word = parse_word(" ".join(ys + xs), Surface.ANNULUS)
        assert parse_word(word.text, Surface.ANNULUS) == word


class TestChains:
    """Test cases for the chain view of a word."""

    def test_split(self):
        """Test that x-runs attach to the following letter."""
        chains = to_chains(w("x y y' x^2 z t x"))
        assert chains.y == ((1, 0), (0, 1))
        assert chains.z == ((2, 0),)
        assert chains.t == ((0, 0),)
        assert chains.central == 1

    def test_rebuild(self):
        """Test that from_chains inverts to_chains."""
        for text in ("y x y' z x t t'", "x^3", "1", "x y_2 x z_-1 x t_3 x^2"):
            word = w(text)
            assert from_chains(to_chains(word)) == word

    def test_with_chain(self):
        """Test replacing a single chain."""
        chains = Chains(y=((0, 0),), central=2).with_chain(LetterKind.Z, ((1, 1),))
        assert from_chains(chains) == w("y x z' x^2")


class TestBasisPredicates:
    """Test cases for reduced, quasi-final and final words."""

    def test_reduced(self):
        """Test the reduced shape l^k l' with central x's."""
        assert is_reduced(w("y y y' z t' x^2"))
        assert not is_reduced(w("y' y"))
        assert not is_reduced(w("y_2"))
        assert not is_reduced(w("x y"))
        assert not is_reduced(w("y_-1"))

    def test_quasi_final(self):
        """Test that at most one prime is allowed and only x follows it."""
        assert is_quasi_final(w("y y z z' x"))
        assert not is_quasi_final(w("y' z'"))
        assert not is_quasi_final(w("y' z"))
        assert is_quasi_final(w("y z t'"))

    def test_final(self):
        """Test that x, y, z and t cannot all appear."""
        assert is_final(w("y z t"))
        assert not is_final(w("y z t x"))
        assert is_final(w("y z x^3"))

    def test_basis_per_surface(self):
        """Test the basis predicate on each surface."""
        assert is_basis_word(w("x^4", Surface.DISK), Surface.DISK)
        assert is_basis_word(w("y' y", Surface.ANNULUS), Surface.ANNULUS) is False
        assert is_basis_word(w("y y' x", Surface.ANNULUS), Surface.ANNULUS)
        assert not is_basis_word(w("y z"), Surface.ANNULUS)
        assert not is_basis_word(w("y z t x"), Surface.PANTS)

    def test_enumerate_disk(self):
        """Test that the disk basis is the powers of x."""
        assert [word.x_count for word in enumerate_basis_words(Surface.DISK, 3)] == [0, 1, 2, 3]

    def test_enumerate_annulus_small(self):
        """Test the annulus basis of size at most 2."""
        words = {word.text for word in enumerate_basis_words(Surface.ANNULUS, 2)}
        assert words == {"1", "x", "x^2", "y", "y x", "y'", "y' x", "y^2", "y y'"}

    def test_enumerated_words_are_basis(self):
        """Test that every enumerated pants word passes the predicate."""
        words = enumerate_basis_words(Surface.PANTS, 4)
        assert len(words) == len(set(words))
        assert len({word.text for word in words}) == len(words)
        for word in words:
            assert is_basis_word(word, Surface.PANTS)
            assert word_size(word) <= 4


class TestSkeinElement:
    """Test cases for linear combinations of words."""

    def test_merge_and_cancel(self):
        """Test that equal words merge and zero terms vanish."""
        a = SkeinElement.from_word(w("y"), 2)
        b = SkeinElement.from_word(w("y"), -2)
        assert (a + b).is_zero()
        assert (a + a).coefficient(w("y")) == LaurentPoly.constant(4)

    def test_print_unknot(self):
        """Test the print form of the unknot value."""
        element = SkeinElement.from_word(EMPTY_WORD, loop_value())
        assert str(element) == "(-A^2-A^-2) * 1"

    def test_print_order(self):
        """Test that terms with more x's come first."""
        element = linear_combination([
            (LaurentPoly.monomial(2, -1), w("y", Surface.ANNULUS)),
            (LaurentPoly.monomial(-2, -1), w("y' x", Surface.ANNULUS)),
        ])
        assert str(element) == "(-A^-2) * y' x + (-A^2) * y"

    def test_print_bare_coefficient(self):
        """Test that positive monomials and 1 print without parentheses."""
        element = linear_combination([
            (LaurentPoly.monomial(2), w("y y'", Surface.ANNULUS)),
            (1, w("x", Surface.ANNULUS)),
        ])
        assert str(element) == "x + A^2 * y y'"

    def test_parse_element(self):
        """Test parsing the printed form back."""
        text = "(1-A^-4) * x + A^2 * y y'"
        element = parse_element(text, Surface.ANNULUS)
        assert element.coefficient(w("x")) == parse_laurent("1-A^-4")
        assert element.coefficient(w("y y'")) == LaurentPoly.monomial(2)
        assert str(element) == text

    def test_parse_element_errors(self):
        """Test malformed element text."""
        with pytest.raises(WordSyntaxError):
            parse_element("A * B * y", Surface.ANNULUS)
        with pytest.raises(WordSyntaxError):
            parse_element("(A^^2) * y", Surface.ANNULUS)
        assert parse_element("0", Surface.DISK).is_zero()

    def test_from_xpoly(self):
        """Test reading P_2 as a combination of x-powers."""
        element = SkeinElement.from_xpoly(p_n(2))
        assert element.coefficient(GeneralWord.x_power(2)) == LaurentPoly.monomial(-2, -1)
        assert element.coefficient(EMPTY_WORD) == parse_laurent("A^4+1")

    def test_map_words(self):
        """Test linear extension of a word map."""
        element = linear_combination([(2, w("y")), (LaurentPoly.monomial(1), w("z"))])
        doubled = element.map_words(lambda word: SkeinElement.from_word(word + word))
        assert doubled.coefficient(w("y y")) == LaurentPoly.constant(2)
        assert doubled.coefficient(w("z z")) == LaurentPoly.monomial(1)
