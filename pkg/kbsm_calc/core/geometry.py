"""
Exact planar geometry on rational points.

Every predicate works on fractions.Fraction coordinates, so no comparison
needs a tolerance.
精确有理几何：线段求交、点在多边形内、有向面积。
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

Point = Tuple[Fraction, Fraction]


def point(x, y) -> Point:
    return Fraction(x), Fraction(y)


def add(p: Point, q: Point) -> Point:
    return p[0] + q[0], p[1] + q[1]


def sub(p: Point, q: Point) -> Point:
    return p[0] - q[0], p[1] - q[1]


def scale(p: Point, factor: Fraction) -> Point:
    return p[0] * factor, p[1] * factor


def rot90(p: Point) -> Point:
    """Counterclockwise quarter turn."""
    return -p[1], p[0]


def cross(u: Point, v: Point) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def orient(o: Point, a: Point, b: Point) -> Fraction:
    """Twice the signed area of triangle o, a, b."""
    return cross(sub(a, o), sub(b, o))


def norm2(p: Point) -> Fraction:
    return p[0] * p[0] + p[1] * p[1]


def lerp(a: Point, b: Point, t: Fraction) -> Point:
    return a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """True if p lies on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_param(p: Point, a: Point, b: Point) -> Fraction:
    """Parameter of a point known to lie on segment ab."""
    d = sub(b, a)
    if d[0] != 0:
        return Fraction(p[0] - a[0]) / d[0]
    return Fraction(p[1] - a[1]) / d[1]


class Contact(Enum):
    """How two closed segments meet."""
    NONE = "none"
    PROPER = "proper"      # one transversal point interior to both
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class SegmentContact:
    kind: Contact
    point: Optional[Point] = None
    t: Optional[Fraction] = None      # parameter along the first segment
    u: Optional[Fraction] = None      # parameter along the second segment


def intersect_segments(p1: Point, p2: Point, q1: Point, q2: Point) -> SegmentContact:
    """
    Classify how segments p1p2 and q1q2 meet.

    Touching at an endpoint and collinear overlap are DEGENERATE.
    """
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if _sign(d1) * _sign(d2) < 0 and _sign(d3) * _sign(d4) < 0:
        t = Fraction(d1) / (d1 - d2)
        u = Fraction(d3) / (d3 - d4)
        return SegmentContact(Contact.PROPER, lerp(p1, p2, t), t, u)
    touching = (
        (d1 == 0 and point_on_segment(p1, q1, q2))
        or (d2 == 0 and point_on_segment(p2, q1, q2))
        or (d3 == 0 and point_on_segment(q1, p1, p2))
        or (d4 == 0 and point_on_segment(q2, p1, p2))
    )
    if touching:
        return SegmentContact(Contact.DEGENERATE)
    return SegmentContact(Contact.NONE)


def segments_meet(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    return intersect_segments(p1, p2, q1, q2).kind is not Contact.NONE


def signed_area(polygon: Sequence[Point]) -> Fraction:
    """Shoelace area, positive for counterclockwise polygons."""
    total = Fraction(0)
    count = len(polygon)
    for index in range(count):
        total += cross(polygon[index], polygon[(index + 1) % count])
    return total / 2


def point_in_polygon(p: Point, polygon: Sequence[Point]) -> bool:
    """
    Even-odd test for a point not on the polygon's boundary.

    奇偶规则判定点是否在多边形内（点不在边界上）。
    """
    x, y = p
    inside = False
    count = len(polygon)
    for index in range(count):
        a = polygon[index]
        b = polygon[(index + 1) % count]
        if (a[1] > y) != (b[1] > y):
            x_cross = a[0] + Fraction(y - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x < x_cross:
                inside = not inside
    return inside


def point_in_convex(p: Point, polygon: Sequence[Point]) -> bool:
    """Closed containment in a convex polygon of either orientation."""
    signs = set()
    count = len(polygon)
    for index in range(count):
        s = _sign(orient(polygon[index], polygon[(index + 1) % count], p))
        if s:
            signs.add(s)
    return len(signs) <= 1


def segment_meets_convex(a: Point, b: Point, polygon: Sequence[Point]) -> bool:
    if point_in_convex(a, polygon) or point_in_convex(b, polygon):
        return True
    count = len(polygon)
    return any(
        segments_meet(a, b, polygon[i], polygon[(i + 1) % count]) for i in range(count)
    )


def convex_polygons_meet(first: Sequence[Point], second: Sequence[Point]) -> bool:
    if any(point_in_convex(p, second) for p in first):
        return True
    if any(point_in_convex(p, first) for p in second):
        return True
    n, m = len(first), len(second)
    return any(
        segments_meet(first[i], first[(i + 1) % n], second[j], second[(j + 1) % m])
        for i in range(n) for j in range(m)
    )


def parallelogram(center: Point, u: Point, v: Point, radius: Fraction) -> Tuple[Point, ...]:
    """Corners of {center + a*u + b*v : |a|, |b| <= radius}."""
    ru, rv = scale(u, radius), scale(v, radius)
    return (
        add(add(center, ru), rv),
        add(sub(center, ru), rv),
        sub(sub(center, ru), rv),
        sub(add(center, ru), rv),
    )
