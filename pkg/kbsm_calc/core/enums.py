"""
Core enumerations for the KBSM calculator.

This module defines all the enums used throughout the engine.
"""

from enum import Enum


class Surface(Enum):
    """底面曲面 - The surface F of F x S^1"""
    DISK = "disk"          # F_{0,1}
    ANNULUS = "annulus"    # F_{0,2}
    PANTS = "pants"        # F_{0,3}, disk with two holes

    @property
    def letters(self) -> frozenset:
        """Letter kinds allowed in words over this surface."""
        if self is Surface.DISK:
            return frozenset({LetterKind.X})
        if self is Surface.ANNULUS:
            return frozenset({LetterKind.X, LetterKind.Y})
        return frozenset(LetterKind)


class LetterKind(Enum):
    """分量类型 - Component types of a smoothed state"""
    X = "x"    # bounds a disk
    Y = "y"    # parallel to the left (annulus: the only) inner boundary
    Z = "z"    # parallel to the right inner boundary
    T = "t"    # parallel to the outer boundary

    @property
    def chain_rank(self) -> int:
        """Position of the chain in the word's type order (x has none)."""
        return {LetterKind.Y: 0, LetterKind.Z: 1, LetterKind.T: 2}[self]


class Marker(Enum):
    """交叉点标记 - Crossing markers of a state"""
    POSITIVE = "+"    # A-smoothing, contributes A
    NEGATIVE = "-"    # B-smoothing, contributes A^-1


class Strand(Enum):
    """Which strand of a crossing lies underneath."""
    A = "A"
    B = "B"


class DotDirection(Enum):
    """Arrow direction of a dot relative to the stored traversal order."""
    ALONG = "+"
    AGAINST = "-"

    @property
    def sign(self) -> int:
        return 1 if self is DotDirection.ALONG else -1


class MoveKind(Enum):
    """Reidemeister moves of arrow diagrams"""
    OMEGA1_POS = "omega1+"    # positive kink
    OMEGA1_NEG = "omega1-"    # negative kink
    OMEGA2 = "omega2"
    OMEGA3 = "omega3"
    OMEGA4 = "omega4"         # two adjacent opposite dots
    OMEGA5 = "omega5"         # dot slides through a crossing

    @property
    def is_regular(self) -> bool:
        return self not in (MoveKind.OMEGA1_POS, MoveKind.OMEGA1_NEG)


class Stage(Enum):
    """归约阶段 - Reduction stages, in the order they are applied"""
    SRR = "SRR"    # semi-reduced
    RR = "RR"      # reduced
    QF = "QF"      # quasi-final
    F = "F"        # final


class RuleId(Enum):
    """Rewrite rule identifiers as printed in traces."""
    SRR_2 = "SRR.2"      # push an x through the next letter
    SRR_3 = "SRR.3"      # lower arrows > 1
    SRR_4 = "SRR.4"      # raise arrows < 0
    RR_PRIME_PLAIN = "RR.yy'"     # y' y -> x, y y'
    RR_PRIME_PRIME = "RR.y'y'"    # y' y' -> x^2, 1, y y_2
    QF_2 = "QF.2"
    QF_3 = "QF.3"
    QF_4 = "QF.4"
    QF_5 = "QF.5"
    QF_6 = "QF.6"
    QF_7 = "QF.7"
    F_2 = "F.2"
    F_3 = "F.3"

    @property
    def stage(self) -> Stage:
        return Stage(self.value.split(".")[0])
