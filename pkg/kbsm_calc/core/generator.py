"""
Random arrow diagrams for the test harness.

Diagrams are built from star-shaped polygons on a rational grid; every
intersection gets a random over/under choice, kinks are added at random
and dots are scattered on random segments. The output depends only
on the seed.

随机箭头图生成器（结果只取决于种子）。
"""

import logging
import math
import random
from fractions import Fraction
from typing import List, Optional, Tuple

from .config import Config
from .diagram import (
    ArrowDiagram,
    Crossing,
    DiagramError,
    Dot,
    ValidatedDiagram,
    find_intersections,
    validate,
)
from .enums import DotDirection, Strand, Surface
from .geometry import Point, norm2
from .moves import find_interval_site, insert_curl

LOG = logging.getLogger(__name__)


def _grid(value: float, denominator: int) -> Fraction:
    return Fraction(round(value * denominator), denominator)


def random_polygon(rng: random.Random, center: Tuple[float, float], radius: float,
                   config: Config) -> Tuple[Point, ...]:
    """A star-shaped polygon around ``center`` snapped to the grid."""
    count = rng.randint(config.min_polygon_vertices, config.max_polygon_vertices)
    step = 2 * math.pi / count
    offset = rng.uniform(0, 2 * math.pi)
    points = []
    for i in range(count):
        angle = offset + step * (i + rng.uniform(-0.3, 0.3))
        r = radius * rng.uniform(0.75, 1.25)
        points.append((_grid(center[0] + r * math.cos(angle), config.grid_denominator),
                       _grid(center[1] + r * math.sin(angle), config.grid_denominator)))
    if rng.random() < 0.5:
        points.reverse()
    return tuple(points)


def _random_center(rng: random.Random, surface: Surface,
                   config: Config) -> Tuple[Tuple[float, float], float]:
    punctures = [(float(x), float(y)) for x, y in config.punctures_for(surface)]
    roll = rng.random()
    if punctures and roll < 0.45:
        center = rng.choice(punctures)
        return (center[0] + rng.uniform(-0.2, 0.2), center[1] + rng.uniform(-0.2, 0.2)), \
            rng.uniform(0.4, 0.8)
    if roll < 0.7:
        return (rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)), rng.uniform(1.4, 2.4)
    return (rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)), rng.uniform(0.3, 1.0)


def _fits(polygon: Tuple[Point, ...], config: Config) -> bool:
    limit = (config.ambient_radius * Fraction(39, 40)) ** 2
    return all(norm2(p) < limit for p in polygon)


def _attempt(rng: random.Random, surface: Surface, max_crossings: int, max_dots: int,
             config: Config) -> Optional[ValidatedDiagram]:
    components: List[Tuple[Point, ...]] = []
    for _ in range(rng.randint(1, config.max_components)):
        center, radius = _random_center(rng, surface, config)
        polygon = random_polygon(rng, center, radius, config)
        if not _fits(polygon, config):
            return None
        components.append(polygon)

    shell = ArrowDiagram(surface, tuple(components))
    try:
        found = find_intersections(shell)
    except DiagramError:
        return None
    if len(found) > max_crossings:
        return None
    crossings = tuple(
        Crossing(a[0], a[1], b[0], b[1], rng.choice((Strand.A, Strand.B)))
        for a, b in sorted(found)
    )
    dots = []
    for _ in range(rng.randint(0, max_dots)):
        comp = rng.randrange(len(components))
        seg = rng.randrange(len(components[comp]))
        dots.append(Dot(comp, seg, Fraction(rng.randint(1, 15), 16),
                        rng.choice((DotDirection.ALONG, DotDirection.AGAINST))))
    try:
        diagram = validate(ArrowDiagram(surface, tuple(components), crossings, tuple(dots)),
                           config)
    except DiagramError:
        return None

    if diagram.crossing_count < max_crossings and rng.random() < 0.3:
        try:
            site = find_interval_site(diagram, rng, config)
            diagram = validate(insert_curl(diagram, site, positive=rng.random() < 0.5), config)
        except DiagramError:
            return None
    return diagram


def fallback_diagram(surface: Surface, config: Config) -> ValidatedDiagram:
    """A single square around the origin, valid on every surface."""
    two = Fraction(2)
    square = ((-two, -two), (two, -two), (two, two), (-two, two))
    return validate(ArrowDiagram(surface, (square,)), config)


def random_diagram(surface: Surface, max_crossings: int, max_dots: int, seed: int,
                   config: Optional[Config] = None) -> ValidatedDiagram:
    """
    A reproducible random diagram within the given bounds.

    Retries internally; after ``generation_attempts`` failures the square
    from fallback_diagram() is returned.
    """
    config = config or Config.default()
    rng = random.Random(seed)
    for attempt in range(config.generation_attempts):
        diagram = _attempt(rng, surface, max_crossings, max_dots, config)
        if diagram is not None:
            LOG.debug("seed %d: diagram after %d attempts", seed, attempt + 1)
            return diagram
    LOG.warning("seed %d: no random diagram within bounds, using the fallback", seed)
    return fallback_diagram(surface, config)
