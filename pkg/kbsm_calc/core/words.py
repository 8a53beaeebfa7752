"""
Word algebra for crossingless diagrams.

A word is a sequence of x's and y/z/t letters carrying arrow counts. Its
reading order fixes where every x-circle lives: an x-run belongs to the
next letter of its own chain (inside a y or z letter, on the boundary
side of a t letter) and a trailing run lies in the central region.

词代数：无交叉图的编码、解析、打印与基判定。
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, Iterator, List, Tuple, Union

from .enums import LetterKind, Surface
from .ring import ONE, LaurentPoly, XPoly, _as_laurent, parse_laurent

_TOKEN = re.compile(r"(x|[yzt](?:'|_-?\d+)?)(?:\^(\d+))?")


class WordError(ValueError):
    """Base class for malformed words."""


class WordSyntaxError(WordError):
    """Text does not follow the word grammar."""


class AlphabetError(WordError):
    """A letter is not available on the chosen surface."""


class TypeOrderError(WordError):
    """A y letter after a z or t letter, or a z letter after a t letter."""


@dataclass(frozen=True)
class Letter:
    """
    A single token of a word.

    x letters carry no arrows; y/z/t letters carry their net arrow count
    (counterclockwise positive for y and z, clockwise positive for t).
    """
    kind: LetterKind
    arrows: int = 0

    def __post_init__(self):
        if self.kind is LetterKind.X and self.arrows != 0:
            raise ValueError("x letters carry no arrows")

    @property
    def is_x(self) -> bool:
        return self.kind is LetterKind.X

    def __str__(self) -> str:
        if self.is_x:
            return "x"
        if self.arrows == 0:
            return self.kind.value
        if self.arrows == 1:
            return f"{self.kind.value}'"
        return f"{self.kind.value}_{self.arrows}"


X_LETTER = Letter(LetterKind.X)


def y(n: int = 0) -> Letter:
    return Letter(LetterKind.Y, n)


def z(n: int = 0) -> Letter:
    return Letter(LetterKind.Z, n)


def t(n: int = 0) -> Letter:
    return Letter(LetterKind.T, n)


@dataclass(frozen=True)
class GeneralWord:
    """
    Interleaved word over {x, y_m, z_m, t_m}.

    Y letters precede Z letters precede T letters; x may sit anywhere.
    """
    tokens: Tuple[Letter, ...] = ()

    def __post_init__(self):
        rank = -1
        for letter in self.tokens:
            if letter.is_x:
                continue
            if letter.kind.chain_rank < rank:
                raise TypeOrderError(f"{letter} cannot follow a later letter type")
            rank = letter.kind.chain_rank

    @classmethod
    def of(cls, *tokens: Letter) -> "GeneralWord":
        return cls(tuple(tokens))

    @classmethod
    def x_power(cls, n: int) -> "GeneralWord":
        return cls((X_LETTER,) * n)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.tokens)

    def __add__(self, other: "GeneralWord") -> "GeneralWord":
        return GeneralWord(self.tokens + other.tokens)

    @property
    def x_count(self) -> int:
        return sum(1 for letter in self.tokens if letter.is_x)

    def kinds(self) -> frozenset:
        return frozenset(letter.kind for letter in self.tokens)

    def letters(self, kind: LetterKind) -> Tuple[Letter, ...]:
        return tuple(letter for letter in self.tokens if letter.kind is kind)

    def check_alphabet(self, surface: Surface) -> None:
        """Raise AlphabetError if a letter is not available on ``surface``."""
        allowed = surface.letters
        for letter in self.tokens:
            if letter.kind not in allowed:
                raise AlphabetError(
                    f"letter {letter} is not available on the {surface.value} surface"
                )

    @cached_property
    def text(self) -> str:
        """Canonical print: powers collapsed, empty word as ``1``."""
        if not self.tokens:
            return "1"
        parts = []
        index = 0
        while index < len(self.tokens):
            run = 1
            while (index + run < len(self.tokens)
                   and self.tokens[index + run] == self.tokens[index]):
                run += 1
            token = str(self.tokens[index])
            parts.append(token if run == 1 else f"{token}^{run}")
            index += run
        return " ".join(parts)

    def __str__(self) -> str:
        return self.text


EMPTY_WORD = GeneralWord()


def parse_word(text: str, surface: Surface) -> GeneralWord:
    """
    Parse a word such as ``y' z^2 t t' x^2``.

    Whitespace between tokens is optional; ``1`` is the empty word.

    Raises:
        WordSyntaxError: text outside the grammar
        AlphabetError: letter not available on ``surface``
        TypeOrderError: y/z/t order broken
    """
    compact = "".join(text.split())
    if compact == "1":
        return EMPTY_WORD
    if not compact:
        raise WordSyntaxError("empty word text (use 1 for the empty word)")
    tokens: List[Letter] = []
    position = 0
    while position < len(compact):
        match = _TOKEN.match(compact, position)
        if match is None:
            raise WordSyntaxError(f"unexpected {compact[position:]!r} in word {text!r}")
        letter = _letter_from_token(match.group(1))
        repeat = int(match.group(2)) if match.group(2) is not None else 1
        if repeat < 1:
            raise WordSyntaxError(f"exponent must be positive in {match.group(0)!r}")
        tokens.extend([letter] * repeat)
        position = match.end()
    word = GeneralWord(tuple(tokens))
    word.check_alphabet(surface)
    return word


def _letter_from_token(token: str) -> Letter:
    if token == "x":
        return X_LETTER
    kind = LetterKind(token[0])
    if len(token) == 1:
        return Letter(kind, 0)
    if token[1] == "'":
        return Letter(kind, 1)
    return Letter(kind, int(token[2:]))


def print_word(word: GeneralWord) -> str:
    return word.text


def word_size(word: GeneralWord) -> int:
    """Total exponent sum: number of tokens, x's included."""
    return len(word.tokens)


# ---------------------------------------------------------------------------
# Chain view
# ---------------------------------------------------------------------------

ChainPairs = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class Chains:
    """
    Structured view of a word.

    Each chain is a tuple of (x-run before the letter, arrows) pairs in
    reading order: y and z innermost first, t outermost first. ``central``
    counts the x's of the trailing run.
    """
    y: ChainPairs = ()
    z: ChainPairs = ()
    t: ChainPairs = ()
    central: int = 0

    def chain(self, kind: LetterKind) -> ChainPairs:
        return {LetterKind.Y: self.y, LetterKind.Z: self.z, LetterKind.T: self.t}[kind]

    def with_chain(self, kind: LetterKind, pairs: ChainPairs) -> "Chains":
        values = {"y": self.y, "z": self.z, "t": self.t, "central": self.central}
        values[kind.value] = tuple(pairs)
        return Chains(**values)


def to_chains(word: GeneralWord) -> Chains:
    """Split a word into its y, z and t chains and the central x count."""
    pairs: Dict[LetterKind, List[Tuple[int, int]]] = {
        LetterKind.Y: [], LetterKind.Z: [], LetterKind.T: [],
    }
    pending = 0
    for letter in word.tokens:
        if letter.is_x:
            pending += 1
            continue
        pairs[letter.kind].append((pending, letter.arrows))
        pending = 0
    return Chains(
        y=tuple(pairs[LetterKind.Y]),
        z=tuple(pairs[LetterKind.Z]),
        t=tuple(pairs[LetterKind.T]),
        central=pending,
    )


def from_chains(chains: Chains) -> GeneralWord:
    """Inverse of :func:`to_chains`."""
    tokens: List[Letter] = []
    for kind in (LetterKind.Y, LetterKind.Z, LetterKind.T):
        for before, arrows in chains.chain(kind):
            tokens.extend([X_LETTER] * before)
            tokens.append(Letter(kind, arrows))
    tokens.extend([X_LETTER] * chains.central)
    return GeneralWord(tuple(tokens))


# ---------------------------------------------------------------------------
# Basis predicates
# ---------------------------------------------------------------------------

def _chain_is_reduced(pairs: ChainPairs) -> bool:
    """No x inside the chain, arrows 0 except possibly 1 on the last letter."""
    if any(before for before, _ in pairs):
        return False
    if any(arrows != 0 for _, arrows in pairs[:-1]):
        return False
    return not pairs or pairs[-1][1] in (0, 1)


def is_reduced(word: GeneralWord) -> bool:
    """Every chain has the shape l^k or l^k l' and all x's are central."""
    chains = to_chains(word)
    return all(_chain_is_reduced(chains.chain(kind))
               for kind in (LetterKind.Y, LetterKind.Z, LetterKind.T))


def is_quasi_final(word: GeneralWord) -> bool:
    """Reduced, at most one prime, and only x's after that prime."""
    if not is_reduced(word):
        return False
    primes = [i for i, letter in enumerate(word.tokens)
              if not letter.is_x and letter.arrows == 1]
    if len(primes) > 1:
        return False
    if primes:
        return all(letter.is_x for letter in word.tokens[primes[0] + 1:])
    return True


def is_final(word: GeneralWord) -> bool:
    """Quasi-final and not containing components of all four types."""
    return is_quasi_final(word) and len(word.kinds()) < 4


def is_basis_word(word: GeneralWord, surface: Surface) -> bool:
    """True iff ``word`` belongs to the free basis of the surface's module."""
    if not word.kinds() <= surface.letters:
        return False
    if surface is Surface.DISK:
        return True
    if surface is Surface.ANNULUS:
        return is_reduced(word)
    return is_final(word)


def enumerate_basis_words(surface: Surface, max_size: int) -> List[GeneralWord]:
    """
    All basis words with at most ``max_size`` tokens, in a fixed order.

    列举给定曲面上所有规模不超过 max_size 的基词。
    """
    if surface is Surface.DISK:
        return [GeneralWord.x_power(n) for n in range(max_size + 1)]
    kinds = [LetterKind.Y] if surface is Surface.ANNULUS else [
        LetterKind.Y, LetterKind.Z, LetterKind.T]

    words: List[GeneralWord] = []

    def extend(index: int, pairs: Dict[LetterKind, ChainPairs], used: int) -> None:
        if index == len(kinds):
            for d in range(max_size - used + 1):
                word = from_chains(Chains(
                    y=pairs.get(LetterKind.Y, ()),
                    z=pairs.get(LetterKind.Z, ()),
                    t=pairs.get(LetterKind.T, ()),
                    central=d,
                ))
                if is_basis_word(word, surface):
                    words.append(word)
            return
        kind = kinds[index]
        for plain in range(max_size - used + 1):
            for primed in (0, 1):
                if used + plain + primed > max_size:
                    continue
                chain = ((0, 0),) * plain + ((0, 1),) * primed
                extend(index + 1, {**pairs, kind: chain}, used + plain + primed)

    extend(0, {}, 0)
    return words


# ---------------------------------------------------------------------------
# Linear combinations
# ---------------------------------------------------------------------------

def _term_order(word: GeneralWord) -> Tuple[int, str]:
    return (-word.x_count, word.text)


@dataclass(frozen=True)
class SkeinElement:
    """
    Finite linear combination of words with LaurentPoly coefficients.

    ``terms`` is canonical: no zero coefficient, one entry per word, sorted
    by decreasing x count and then by word print.
    """
    terms: Tuple[Tuple[GeneralWord, LaurentPoly], ...] = ()

    def __post_init__(self):
        merged: Dict[GeneralWord, LaurentPoly] = {}
        for word, coeff in self.terms:
            merged[word] = merged.get(word, LaurentPoly()) + coeff
        canonical = sorted(
            ((w, c) for w, c in merged.items() if c), key=lambda item: _term_order(item[0])
        )
        object.__setattr__(self, "terms", tuple(canonical))

    @classmethod
    def zero(cls) -> "SkeinElement":
        return cls()

    @classmethod
    def from_word(cls, word: GeneralWord,
                  coeff: Union[LaurentPoly, int] = 1) -> "SkeinElement":
        return cls(((word, _as_laurent(coeff)),))

    @classmethod
    def from_mapping(cls, mapping: Dict[GeneralWord, LaurentPoly]) -> "SkeinElement":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_xpoly(cls, poly: XPoly) -> "SkeinElement":
        """Read a polynomial in x as a combination of x-powers."""
        return cls(tuple((GeneralWord.x_power(k), c) for k, c in poly))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[GeneralWord, LaurentPoly]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def words(self) -> Tuple[GeneralWord, ...]:
        return tuple(word for word, _ in self.terms)

    def coefficient(self, word: GeneralWord) -> LaurentPoly:
        for w, c in self.terms:
            if w == word:
                return c
        return LaurentPoly()

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return SkeinElement(self.terms + other.terms)

    def __neg__(self) -> "SkeinElement":
        return SkeinElement(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        return self + (-other)

    def scale(self, factor: Union[LaurentPoly, int]) -> "SkeinElement":
        factor = _as_laurent(factor)
        return SkeinElement(tuple((w, c * factor) for w, c in self.terms))

    def __mul__(self, factor: Union[LaurentPoly, int]) -> "SkeinElement":
        if not isinstance(factor, (LaurentPoly, int)):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def map_words(self, image: Callable[[GeneralWord], "SkeinElement"]) -> "SkeinElement":
        """Extend ``image`` linearly over this element."""
        pieces: List[Tuple[GeneralWord, LaurentPoly]] = []
        for word, coeff in self.terms:
            pieces.extend((w, c * coeff) for w, c in image(word).terms)
        return SkeinElement(tuple(pieces))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, coeff in self.terms:
            parts.append(word.text if coeff == ONE else f"{coeff.as_factor()} * {word.text}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SkeinElement({self})"


def element_add(left: SkeinElement, right: SkeinElement) -> SkeinElement:
    return left + right


def element_scale(element: SkeinElement, coeff: Union[LaurentPoly, int]) -> SkeinElement:
    return element.scale(coeff)


def linear_combination(pairs: Iterable[Tuple[Union[LaurentPoly, int], GeneralWord]]) -> SkeinElement:
    """Build sum of c*w from (c, w) pairs."""
    return SkeinElement(tuple((w, _as_laurent(c)) for c, w in pairs))


def _split_top_level(text: str, separator: str) -> List[str]:
    parts: List[str] = []
    depth = 0
    start = 0
    index = 0
    while index < len(text):
        char = text[index]
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif depth == 0 and text.startswith(separator, index):
            parts.append(text[start:index])
            index += len(separator)
            start = index
            continue
        index += 1
    parts.append(text[start:])
    return parts


def parse_element(text: str, surface: Surface) -> SkeinElement:
    """
    Parse the printed form of an element, e.g. ``(-A^-4+1) * x + A^2 * y y'``.

    A term without ``*`` is a word with coefficient 1; ``0`` is the zero
    element.

    Raises:
        WordError: on malformed terms
    """
    stripped = text.strip()
    if stripped == "0":
        return SkeinElement.zero()
    pieces: List[Tuple[GeneralWord, LaurentPoly]] = []
    for raw in _split_top_level(stripped, " + "):
        term = raw.strip()
        if not term:
            raise WordSyntaxError(f"empty term in {text!r}")
        factors = _split_top_level(term, "*")
        if len(factors) == 1:
            pieces.append((parse_word(term, surface), ONE))
            continue
        if len(factors) != 2:
            raise WordSyntaxError(f"term {term!r} has more than one '*'")
        try:
            coeff = parse_laurent(factors[0])
        except ValueError as error:
            raise WordSyntaxError(str(error)) from error
        pieces.append((parse_word(factors[1], surface), coeff))
    return SkeinElement(tuple(pieces))
