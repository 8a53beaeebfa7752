"""
Exact coefficient arithmetic.

LaurentPoly is an element of Z[A, A^-1]; XPoly is a polynomial in the
central variable x with LaurentPoly coefficients. The families P_n and
P_{n,k} that replace arrowed x-type circles live here as memoised
functions.

精确系数运算：Z[A^{±1}] 与 Z[A^{±1}][x]。
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

LOG = logging.getLogger(__name__)

_TERM = r"[+-]?(?:\d+A(?:\^-?\d+)?|A(?:\^-?\d+)?|\d+)"


def _canonical(pairs: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    merged: Dict[int, int] = {}
    for exponent, coeff in pairs:
        merged[exponent] = merged.get(exponent, 0) + coeff
    return tuple(sorted((e, c) for e, c in merged.items() if c != 0))


@dataclass(frozen=True)
class LaurentPoly:
    """
    Finite sum of c*A^e with integer c.

    ``terms`` is kept canonical: sorted by exponent, no zero coefficient,
    so dataclass equality and hashing are term-by-term.
    """
    terms: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical(self.terms))

    @classmethod
    def from_dict(cls, mapping: Mapping[int, int]) -> "LaurentPoly":
        """Build from {exponent: coefficient}."""
        return cls(tuple(mapping.items()))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        """c*A^e."""
        return cls(((exponent, coeff),))

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls(((0, value),))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = _as_laurent(other)
        return LaurentPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        return self + (-_as_laurent(other))

    def __rsub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        return _as_laurent(other) - self

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(tuple((e, c * other) for e, c in self.terms))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(tuple(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        ))

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            if not self.is_monomial() or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials have negative powers")
            (e, c), = self.terms
            return LaurentPoly.monomial(-e * -power, c ** -power)
        result = ONE
        for _ in range(power):
            result = result * self
        return result

    def mul_monomial(self, coeff: int, exponent: int) -> "LaurentPoly":
        """Multiply by coeff*A^exponent."""
        return LaurentPoly(tuple((e + exponent, c * coeff) for e, c in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for index, (e, c) in enumerate(reversed(self.terms)):
            sign = "-" if c < 0 else ("+" if index else "")
            magnitude = abs(c)
            if e == 0:
                body = str(magnitude)
            else:
                power = "A" if e == 1 else f"A^{e}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            parts.append(sign + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def as_factor(self) -> str:
        """Render as a multiplicative factor: bare for c*A^e with c > 0."""
        if self.is_monomial() and self.terms[0][1] > 0:
            return str(self)
        return f"({self})"


def _as_laurent(value: Union[LaurentPoly, int]) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as a Laurent polynomial")


def parse_laurent(text: str) -> LaurentPoly:
    """
    Parse the printed form of a Laurent polynomial, e.g. ``-A^4+1``.

    Raises:
        ValueError: if the text is not in the printing grammar
    """
    compact = text.replace(" ", "")
    if compact.startswith("(") and compact.endswith(")"):
        compact = compact[1:-1]
    if compact == "0":
        return ZERO
    if not compact or not re.fullmatch(rf"(?:{_TERM})+", compact):
        raise ValueError(f"not a Laurent polynomial: {text!r}")
    pairs = []
    for term in re.findall(_TERM, compact):
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if "A" in body:
            digits, _, power = body.partition("A")
            coeff = int(digits) if digits else 1
            exponent = int(power[1:]) if power else 1
        else:
            coeff, exponent = int(body), 0
        pairs.append((exponent, sign * coeff))
    return LaurentPoly(tuple(pairs))


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
A = LaurentPoly.monomial(1)


def loop_value() -> LaurentPoly:
    """Value -A^2-A^-2 of a trivial circle."""
    return LaurentPoly.from_dict({2: -1, -2: -1})


def kink_factor(sign: int) -> LaurentPoly:
    """Framing change: -A^3 for a positive kink, -A^-3 for a negative one."""
    if sign not in (1, -1):
        raise ValueError(f"kink sign must be +1 or -1, got {sign}")
    return LaurentPoly.monomial(3 * sign, -1)


@dataclass(frozen=True)
class XPoly:
    """
    Polynomial in x with LaurentPoly coefficients.

    ``coeffs`` is canonical: sorted by degree, zero coefficients dropped.
    """
    coeffs: Tuple[Tuple[int, LaurentPoly], ...] = ()

    def __post_init__(self):
        merged: Dict[int, LaurentPoly] = {}
        for degree, coeff in self.coeffs:
            if degree < 0:
                raise ValueError(f"negative power of x: {degree}")
            merged[degree] = merged.get(degree, ZERO) + coeff
        object.__setattr__(
            self, "coeffs", tuple(sorted((d, c) for d, c in merged.items() if c))
        )

    @classmethod
    def constant(cls, value: Union[LaurentPoly, int]) -> "XPoly":
        return cls(((0, _as_laurent(value)),))

    @classmethod
    def x_power(cls, degree: int, coeff: Union[LaurentPoly, int] = 1) -> "XPoly":
        return cls(((degree, _as_laurent(coeff)),))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree in x; -1 for the zero polynomial."""
        return self.coeffs[-1][0] if self.coeffs else -1

    def coefficient(self, degree: int) -> LaurentPoly:
        for d, c in self.coeffs:
            if d == degree:
                return c
        return ZERO

    def __iter__(self) -> Iterator[Tuple[int, LaurentPoly]]:
        return iter(self.coeffs)

    def __add__(self, other: Union["XPoly", LaurentPoly, int]) -> "XPoly":
        other = _as_xpoly(other)
        return XPoly(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self) -> "XPoly":
        return XPoly(tuple((d, -c) for d, c in self.coeffs))

    def __sub__(self, other: Union["XPoly", LaurentPoly, int]) -> "XPoly":
        return self + (-_as_xpoly(other))

    def __mul__(self, other: Union["XPoly", LaurentPoly, int]) -> "XPoly":
        if isinstance(other, (LaurentPoly, int)):
            return self.scale(_as_laurent(other))
        if not isinstance(other, XPoly):
            return NotImplemented
        return XPoly(tuple(
            (d1 + d2, c1 * c2) for d1, c1 in self.coeffs for d2, c2 in other.coeffs
        ))

    __rmul__ = __mul__

    def scale(self, factor: LaurentPoly) -> "XPoly":
        return XPoly(tuple((d, c * factor) for d, c in self.coeffs))

    def shift(self, k: int = 1) -> "XPoly":
        """Multiply by x^k."""
        return XPoly(tuple((d + k, c) for d, c in self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for degree, coeff in reversed(self.coeffs):
            if degree == 0:
                parts.append(coeff.as_factor() if coeff != ONE else "1")
                continue
            power = "x" if degree == 1 else f"x^{degree}"
            parts.append(power if coeff == ONE else f"{coeff.as_factor()}*{power}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"XPoly({self})"


def _as_xpoly(value: Union[XPoly, LaurentPoly, int]) -> XPoly:
    if isinstance(value, XPoly):
        return value
    return XPoly.constant(_as_laurent(value))


X = XPoly.x_power(1)


@lru_cache(maxsize=None)
def p_n(n: int) -> XPoly:
    """
    P_n: value of an x-type circle carrying n arrows.

    P_0 = -A^2-A^-2, P_1 = x, P_n = -A^-2 x P_{n-1} - A^2 P_{n-2};
    for n < 0 the same relation is solved for the lower index.
    """
    if n == 0:
        return XPoly.constant(loop_value())
    if n == 1:
        return X
    if n > 1:
        return (p_n(n - 1).shift().scale(LaurentPoly.monomial(-2, -1))
                + p_n(n - 2).scale(LaurentPoly.monomial(2, -1)))
    return (p_n(n + 1).shift().scale(LaurentPoly.monomial(-4, -1))
            + p_n(n + 2).scale(LaurentPoly.monomial(-2, -1)))


@lru_cache(maxsize=None)
def p_nk(n: int, k: int) -> XPoly:
    """
    P_{n,k}: an n-arrow circle encircling k copies of x.

    P_{n,0} = P_n, P_{n,k} = (-A^4+1) P_{n+1,k-1} + A^-2 x P_{n,k-1}.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k == 0:
        return p_n(n)
    return (p_nk(n + 1, k - 1).scale(LaurentPoly.from_dict({4: -1, 0: 1}))
            + p_nk(n, k - 1).shift().scale(LaurentPoly.monomial(-2)))


def encircle(n: int, inner: XPoly) -> XPoly:
    """Value of an n-arrow circle around a region whose content is ``inner``."""
    result = XPoly()
    for k, coeff in inner:
        result = result + p_nk(n, k).scale(coeff)
    return result
