"""
Arrow diagrams in a punctured disk.

An ArrowDiagram is a set of closed polylines with exact rational vertices,
an over/under decoration for every crossing and a list of directed dots.
validate() checks general position and returns a ValidatedDiagram that
carries the crossing geometry needed by the state sum and the moves.

带箭头的图：精确有理坐标的闭折线、交叉点上下信息与方向点。
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .config import Config
from .enums import DotDirection, Strand, Surface
from .geometry import (
    Contact,
    Point,
    convex_polygons_meet,
    cross,
    intersect_segments,
    lerp,
    norm2,
    orient,
    parallelogram,
    point_in_convex,
    point_on_segment,
    segment_meets_convex,
    sub,
)

LOG = logging.getLogger(__name__)

SegmentRef = Tuple[int, int]


class DiagramError(ValueError):
    """Base class for invalid diagrams."""


class DiagramFormatError(DiagramError):
    """Syntax error in a diagram file."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message)


class DiagramGeometryError(DiagramError):
    """General-position violation."""

    def __init__(self, message: str, point: Optional[Point] = None):
        self.point = point
        suffix = f" at ({point[0]}, {point[1]})" if point is not None else ""
        super().__init__(message + suffix)


@dataclass(frozen=True)
class Crossing:
    """
    Decoration of the crossing between two segments.

    ``under`` names which of the two listed strands passes underneath.
    """
    comp_a: int
    seg_a: int
    comp_b: int
    seg_b: int
    under: Strand

    @property
    def ref_a(self) -> SegmentRef:
        return self.comp_a, self.seg_a

    @property
    def ref_b(self) -> SegmentRef:
        return self.comp_b, self.seg_b

    def key(self) -> Tuple[SegmentRef, SegmentRef]:
        return tuple(sorted((self.ref_a, self.ref_b)))

    def ref(self, strand: Strand) -> SegmentRef:
        return self.ref_a if strand is Strand.A else self.ref_b

    @property
    def under_ref(self) -> SegmentRef:
        return self.ref(self.under)

    @property
    def over_ref(self) -> SegmentRef:
        return self.ref(Strand.B if self.under is Strand.A else Strand.A)


@dataclass(frozen=True)
class Dot:
    """A directed dot at parameter ``t`` of a segment."""
    component: int
    segment: int
    t: Fraction
    direction: DotDirection

    @property
    def ref(self) -> SegmentRef:
        return self.component, self.segment


@dataclass(frozen=True)
class ArrowDiagram:
    """
    Closed polylines with crossing decorations and dots.

    Segment s of a component runs from vertex s to vertex s+1 (cyclically).
    """
    surface: Surface
    components: Tuple[Tuple[Point, ...], ...]
    crossings: Tuple[Crossing, ...] = ()
    dots: Tuple[Dot, ...] = ()

    def segment_count(self, component: int) -> int:
        return len(self.components[component])

    def segment(self, ref: SegmentRef) -> Tuple[Point, Point]:
        comp, seg = ref
        vertices = self.components[comp]
        return vertices[seg], vertices[(seg + 1) % len(vertices)]

    def segment_refs(self) -> List[SegmentRef]:
        return [(c, s) for c, vertices in enumerate(self.components)
                for s in range(len(vertices))]

    def dot_point(self, dot: Dot) -> Point:
        a, b = self.segment(dot.ref)
        return lerp(a, b, dot.t)


@dataclass(frozen=True)
class CrossingData:
    """
    Geometry of one decorated crossing.

    ``t_a`` and ``t_b`` are the crossing's parameters along the two
    segments; ``sign`` is the crossing sign for the stored orientations.
    """
    index: int
    crossing: Crossing
    point: Point
    t_a: Fraction
    t_b: Fraction
    sign: int

    def param(self, strand: Strand) -> Fraction:
        return self.t_a if strand is Strand.A else self.t_b


@dataclass(frozen=True)
class SegmentEvent:
    """A crossing pass or a dot on a segment, ordered by parameter."""
    segment: int
    t: Fraction
    crossing: Optional[int] = None
    strand: Optional[Strand] = None
    dot: Optional[int] = None


@dataclass(frozen=True)
class ValidatedDiagram:
    """
    A diagram that passed validate().

    ``smoothing_radius`` is a parameter offset small enough that cutting
    every crossing at that distance and joining the cut points inside the
    crossing's parallelogram never meets any other part of the diagram.
    """
    diagram: ArrowDiagram
    crossing_data: Tuple[CrossingData, ...]
    punctures: Tuple[Point, ...]
    smoothing_radius: Fraction
    events: Tuple[Tuple[SegmentEvent, ...], ...] = field(default=())

    @property
    def surface(self) -> Surface:
        return self.diagram.surface

    @property
    def crossing_count(self) -> int:
        return len(self.crossing_data)

    def component_events(self, component: int) -> Tuple[SegmentEvent, ...]:
        return self.events[component]

    def segment_events(self, ref: SegmentRef) -> List[SegmentEvent]:
        comp, seg = ref
        return [event for event in self.events[comp] if event.segment == seg]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _adjacent(first: SegmentRef, second: SegmentRef, diagram: ArrowDiagram) -> bool:
    if first[0] != second[0]:
        return False
    n = diagram.segment_count(first[0])
    return (first[1] - second[1]) % n in (1, n - 1)


def _check_adjacent_pair(diagram: ArrowDiagram, first: SegmentRef, second: SegmentRef) -> None:
    n = diagram.segment_count(first[0])
    if (second[1] - first[1]) % n != 1:
        first, second = second, first
    a, b = diagram.segment(first)
    _, c = diagram.segment(second)
    if orient(a, b, c) == 0 and (point_on_segment(c, a, b) or point_on_segment(a, b, c)):
        raise DiagramGeometryError("polyline folds back on itself", b)


def find_intersections(diagram: ArrowDiagram) -> Dict[Tuple[SegmentRef, SegmentRef],
                                                      Tuple[Point, Fraction, Fraction]]:
    """
    All transversal intersections, keyed by sorted segment pair.

    Values are (point, parameter on the first ref, parameter on the second).

    Raises:
        DiagramGeometryError: on tangency, overlap or a vertex on another segment
    """
    refs = diagram.segment_refs()
    found: Dict[Tuple[SegmentRef, SegmentRef], Tuple[Point, Fraction, Fraction]] = {}
    for i, first in enumerate(refs):
        p1, p2 = diagram.segment(first)
        for second in refs[i + 1:]:
            if _adjacent(first, second, diagram):
                _check_adjacent_pair(diagram, first, second)
                continue
            q1, q2 = diagram.segment(second)
            contact = intersect_segments(p1, p2, q1, q2)
            if contact.kind is Contact.DEGENERATE:
                raise DiagramGeometryError(
                    f"non-transversal intersection of segments {first} and {second}"
                )
            if contact.kind is Contact.PROPER:
                found[(first, second)] = (contact.point, contact.t, contact.u)
    return found


def crossing_sign(diagram: ArrowDiagram, crossing: Crossing) -> int:
    """+1 or -1 from the over and under directions."""
    a, b = diagram.segment(crossing.over_ref)
    c, d = diagram.segment(crossing.under_ref)
    return 1 if cross(sub(b, a), sub(d, c)) > 0 else -1


def validate(diagram: ArrowDiagram, config: Optional[Config] = None) -> ValidatedDiagram:
    """
    Check every general-position invariant with exact arithmetic.

    Raises:
        DiagramGeometryError: on any violation
    """
    config = config or Config.default()
    punctures = config.punctures_for(diagram.surface)
    radius2 = config.ambient_radius ** 2

    if not diagram.components:
        raise DiagramGeometryError("diagram has no components")
    for index, vertices in enumerate(diagram.components):
        if len(vertices) < 3:
            raise DiagramGeometryError(f"component {index} has fewer than 3 vertices")
        for vertex in vertices:
            if norm2(vertex) >= radius2:
                raise DiagramGeometryError(
                    f"component {index} leaves the disk of radius {config.ambient_radius}", vertex
                )
        for s in range(len(vertices)):
            if vertices[s] == vertices[(s + 1) % len(vertices)]:
                raise DiagramGeometryError(f"component {index} has a zero-length segment",
                                           vertices[s])

    for ref in diagram.segment_refs():
        a, b = diagram.segment(ref)
        for puncture in punctures:
            if point_on_segment(puncture, a, b):
                raise DiagramGeometryError(f"segment {ref} passes through a puncture", puncture)

    intersections = find_intersections(diagram)
    points = [value[0] for value in intersections.values()]
    if len(set(points)) != len(points):
        seen = set()
        for p in points:
            if p in seen:
                raise DiagramGeometryError("triple point", p)
            seen.add(p)

    declared: Dict[Tuple[SegmentRef, SegmentRef], int] = {}
    for index, crossing in enumerate(diagram.crossings):
        for comp, seg in (crossing.ref_a, crossing.ref_b):
            if not (0 <= comp < len(diagram.components)
                    and 0 <= seg < diagram.segment_count(comp)):
                raise DiagramGeometryError(f"crossing {index} names a missing segment {comp} {seg}")
        key = crossing.key()
        if key in declared:
            raise DiagramGeometryError(f"crossing {index} repeats crossing {declared[key]}")
        if key not in intersections:
            raise DiagramGeometryError(
                f"crossing {index} decorates segments {key[0]} and {key[1]}, which do not cross"
            )
        declared[key] = index
    for key, (p, _, _) in intersections.items():
        if key not in declared:
            raise DiagramGeometryError(
                f"segments {key[0]} and {key[1]} cross without a decoration", p
            )

    data: List[CrossingData] = []
    for index, crossing in enumerate(diagram.crossings):
        key = crossing.key()
        p, t_first, t_second = intersections[key]
        if key[0] == crossing.ref_a:
            t_a, t_b = t_first, t_second
        else:
            t_a, t_b = t_second, t_first
        data.append(CrossingData(index, crossing, p, t_a, t_b, crossing_sign(diagram, crossing)))

    crossing_points = {d.point for d in data}
    dot_points = set()
    for index, dot in enumerate(diagram.dots):
        if not (0 <= dot.component < len(diagram.components)
                and 0 <= dot.segment < diagram.segment_count(dot.component)):
            raise DiagramGeometryError(f"dot {index} names a missing segment")
        if not 0 < dot.t < 1:
            raise DiagramGeometryError(f"dot {index} parameter {dot.t} is not in (0, 1)")
        p = diagram.dot_point(dot)
        if p in crossing_points:
            raise DiagramGeometryError(f"dot {index} sits on a crossing", p)
        if p in dot_points:
            raise DiagramGeometryError(f"dot {index} coincides with another dot", p)
        dot_points.add(p)

    events = _collect_events(diagram, data)
    radius = _smoothing_radius(diagram, data, events, punctures)
    LOG.debug("validated diagram: %d components, %d crossings, %d dots, radius %s",
              len(diagram.components), len(data), len(diagram.dots), radius)
    return ValidatedDiagram(diagram, tuple(data), punctures, radius, events)


def _collect_events(diagram: ArrowDiagram,
                    data: Sequence[CrossingData]) -> Tuple[Tuple[SegmentEvent, ...], ...]:
    per_component: List[List[SegmentEvent]] = [[] for _ in diagram.components]
    for d in data:
        for strand in (Strand.A, Strand.B):
            comp, seg = d.crossing.ref(strand)
            per_component[comp].append(
                SegmentEvent(seg, d.param(strand), crossing=d.index, strand=strand)
            )
    for index, dot in enumerate(diagram.dots):
        per_component[dot.component].append(SegmentEvent(dot.segment, dot.t, dot=index))
    return tuple(
        tuple(sorted(events, key=lambda e: (e.segment, e.t))) for events in per_component
    )


def _smoothing_radius(diagram: ArrowDiagram, data: Sequence[CrossingData],
                      events: Sequence[Sequence[SegmentEvent]],
                      punctures: Sequence[Point]) -> Fraction:
    radius = Fraction(1, 4)
    if not data:
        return radius
    for comp, comp_events in enumerate(events):
        for seg in range(diagram.segment_count(comp)):
            params = [Fraction(0)] + [e.t for e in comp_events if e.segment == seg] + [Fraction(1)]
            gaps = [b - a for a, b in zip(params, params[1:])]
            radius = min(radius, min(gaps) / 3)

    dot_points = [diagram.dot_point(dot) for dot in diagram.dots]
    refs = diagram.segment_refs()
    while True:
        boxes = []
        clear = True
        for d in data:
            a0, a1 = diagram.segment(d.crossing.ref_a)
            b0, b1 = diagram.segment(d.crossing.ref_b)
            box = parallelogram(d.point, sub(a1, a0), sub(b1, b0), radius)
            own = {d.crossing.ref_a, d.crossing.ref_b}
            if any(segment_meets_convex(*diagram.segment(ref), box)
                   for ref in refs if ref not in own):
                clear = False
            elif any(point_in_convex(p, box) for p in dot_points + list(punctures)):
                clear = False
            elif any(convex_polygons_meet(box, other) for other in boxes):
                clear = False
            if not clear:
                break
            boxes.append(box)
        if clear:
            return radius
        radius /= 2


def writhe(diagram: ValidatedDiagram) -> int:
    """Sum of crossing signs."""
    return sum(d.sign for d in diagram.crossing_data)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def _parse_fraction(token: str, line_number: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as error:
        raise DiagramFormatError(f"bad number {token!r}", line_number) from error


def _parse_int(token: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError as error:
        raise DiagramFormatError(f"bad index {token!r}", line_number) from error


def read_diagram(text: str) -> ArrowDiagram:
    """
    Parse the line-based diagram format.

    ``#`` starts a comment; blank lines are ignored.

    Raises:
        DiagramFormatError: with the offending line number
    """
    surface: Optional[Surface] = None
    components: List[List[Point]] = []
    crossings: List[Crossing] = []
    dots: List[Dot] = []
    current: Optional[List[Point]] = None

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        keyword = fields[0]
        if keyword == "surface":
            if len(fields) != 2:
                raise DiagramFormatError("expected 'surface disk|annulus|pants'", line_number)
            if surface is not None:
                raise DiagramFormatError("surface given twice", line_number)
            try:
                surface = Surface(fields[1])
            except ValueError as error:
                raise DiagramFormatError(f"unknown surface {fields[1]!r}", line_number) from error
            current = None
        elif keyword == "component":
            if len(fields) != 1:
                raise DiagramFormatError("'component' takes no arguments", line_number)
            current = []
            components.append(current)
        elif keyword == "crossing":
            if len(fields) != 6 or fields[5] not in ("under=A", "under=B"):
                raise DiagramFormatError("expected 'crossing cA sA cB sB under=A|B'", line_number)
            ca, sa, cb, sb = (_parse_int(f, line_number) for f in fields[1:5])
            crossings.append(Crossing(ca, sa, cb, sb, Strand(fields[5][-1])))
            current = None
        elif keyword == "dot":
            if len(fields) != 5 or fields[4] not in ("dir=+", "dir=-"):
                raise DiagramFormatError("expected 'dot c s t dir=+|-'", line_number)
            comp, seg = _parse_int(fields[1], line_number), _parse_int(fields[2], line_number)
            dots.append(Dot(comp, seg, _parse_fraction(fields[3], line_number),
                            DotDirection(fields[4][-1])))
            current = None
        else:
            if current is None or len(fields) != 2:
                raise DiagramFormatError(f"unexpected line {line!r}", line_number)
            current.append((_parse_fraction(fields[0], line_number),
                             _parse_fraction(fields[1], line_number)))

    if surface is None:
        raise DiagramFormatError("missing 'surface' line")
    if not components:
        raise DiagramFormatError("no component blocks")
    return ArrowDiagram(
        surface=surface,
        components=tuple(tuple(c) for c in components),
        crossings=tuple(crossings),
        dots=tuple(dots),
    )


def write_diagram(diagram: ArrowDiagram) -> str:
    """Canonical text form; read_diagram(write_diagram(d)) == d."""
    lines = [f"surface {diagram.surface.value}"]
    for vertices in diagram.components:
        lines.append("component")
        lines.extend(f"{x} {y}" for x, y in vertices)
    for c in diagram.crossings:
        lines.append(f"crossing {c.comp_a} {c.seg_a} {c.comp_b} {c.seg_b} under={c.under.value}")
    for d in diagram.dots:
        lines.append(f"dot {d.component} {d.segment} {d.t} dir={d.direction.value}")
    return "\n".join(lines) + "\n"


def load_diagram(text: str, config: Optional[Config] = None) -> ValidatedDiagram:
    """read_diagram followed by validate."""
    return validate(read_diagram(text), config)
