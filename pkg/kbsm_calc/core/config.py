"""
Configuration system for the KBSM calculator.

This module centralizes the geometric conventions and the tunables of the
generator, the reducer and the invariance harness.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple

from .enums import Surface

Point = Tuple[Fraction, Fraction]


@dataclass
class Config:
    """
    Central configuration for all calculator parameters.

    Geometry is exact: every coordinate is a Fraction.
    """

    # Surface model - punctures and the ambient disk
    punctures: Dict[Surface, Tuple[Point, ...]] = field(default_factory=dict)
    ambient_radius: Fraction = Fraction(4)

    # Random diagram generation
    max_components: int = 3          # 随机图的分量上限
    min_polygon_vertices: int = 4
    max_polygon_vertices: int = 7
    grid_denominator: int = 64       # coordinates are multiples of 1/64
    generation_attempts: int = 400   # retries before giving up on a seed

    # Move splicing
    splice_attempts: int = 40

    # Invariance harness
    default_trials: int = 100
    base_max_crossings: int = 4
    base_max_dots: int = 4

    # Reduction
    qf5_variant: str = "corrected"   # or "verbatim"
    check_termination: bool = False

    # Random seed for reproducible runs
    random_seed: int = 0

    @classmethod
    def default(cls) -> "Config":
        """Create the standard configuration."""
        config = cls()
        config.punctures = {
            Surface.DISK: (),
            Surface.ANNULUS: ((Fraction(0), Fraction(0)),),
            Surface.PANTS: ((Fraction(-1), Fraction(0)), (Fraction(1), Fraction(0))),
        }
        return config

    def punctures_for(self, surface: Surface) -> Tuple[Point, ...]:
        """Puncture points of a surface, left one first for pants."""
        if not self.punctures:
            return Config.default().punctures[surface]
        return self.punctures[surface]

    def validate(self) -> None:
        """Raise ValueError on inconsistent settings."""
        if self.qf5_variant not in ("corrected", "verbatim"):
            raise ValueError(f"unknown qf5_variant: {self.qf5_variant!r}")
        if self.ambient_radius <= 0:
            raise ValueError("ambient_radius must be positive")
        if not 3 <= self.min_polygon_vertices <= self.max_polygon_vertices:
            raise ValueError("polygon vertex bounds are inconsistent")
        if self.grid_denominator < 1:
            raise ValueError("grid_denominator must be positive")
