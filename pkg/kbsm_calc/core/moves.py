"""
Reidemeister move pairs for arrow diagrams.

A move is realized by splicing a small local pattern into a base diagram
twice, once for each side of the move. The two diagrams agree outside the
splice site, a convex region returned with the pair.

箭头图的 Reidemeister 移动：在基图中拼接局部图样。
"""

import logging
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .config import Config
from .diagram import (
    ArrowDiagram,
    Crossing,
    DiagramError,
    Dot,
    SegmentRef,
    ValidatedDiagram,
    validate,
)
from .enums import DotDirection, MoveKind, Strand
from .geometry import (
    Point,
    add,
    lerp,
    norm2,
    parallelogram,
    point_in_convex,
    rot90,
    scale,
    segment_meets_convex,
    sub,
)
from .ring import ONE, LaurentPoly, kink_factor

LOG = logging.getLogger(__name__)

F = Fraction

# Local patterns in the unit box [-1, 1]^2 of a site frame.
CURL = ((F(-3, 5), F(0)), (F(3, 10), F(1, 2)), (F(0), F(4, 5)),
        (F(-3, 10), F(1, 2)), (F(3, 5), F(0)))
HELPER_FLAT = ((F(-1, 2), F(1, 5)), (F(1, 2), F(1, 5)),
               (F(1, 2), F(4, 5)), (F(-1, 2), F(4, 5)))
HELPER_DIPPED = ((F(-1, 2), F(1, 5)), (F(0), F(-3, 10)), (F(1, 2), F(1, 5)),
                 (F(1, 2), F(4, 5)), (F(-1, 2), F(4, 5)))
FINGER = ((F(-1, 2), F(0)), (F(0), F(1, 2)), (F(1, 2), F(0)))


class SpliceError(DiagramError):
    """No admissible site for the requested move."""


@dataclass(frozen=True)
class MoveSpec:
    """
    A move and its local variant.

    ``over``: the moving strand of omega2/omega3 passes over.
    ``arc``: omega2 pushes a finger of the base strand instead of the helper.
    ``strand``: the strand of the chosen crossing that carries the omega5 dot.
    ``direction``: the omega5 arrow, or the first dot of the omega4 pair.
    """
    move: MoveKind
    over: bool = True
    strand: Strand = Strand.A
    direction: DotDirection = DotDirection.ALONG
    arc: bool = False

    def __str__(self) -> str:
        if self.move is MoveKind.OMEGA2 and self.arc:
            return f"{self.move.value}:{'over' if self.over else 'under'}:arc"
        if self.move in (MoveKind.OMEGA2, MoveKind.OMEGA3):
            return f"{self.move.value}:{'over' if self.over else 'under'}"
        if self.move is MoveKind.OMEGA4:
            return f"{self.move.value}:{self.direction.value}"
        if self.move is MoveKind.OMEGA5:
            return f"{self.move.value}:{self.strand.value}{self.direction.value}"
        return self.move.value


class MovePair(NamedTuple):
    before: ArrowDiagram
    after: ArrowDiagram
    site: Tuple[Point, ...]


def random_move_spec(kind: MoveKind, rng: random.Random) -> MoveSpec:
    """Pick a random variant of ``kind``."""
    return MoveSpec(
        move=kind,
        over=rng.random() < 0.5,
        strand=rng.choice((Strand.A, Strand.B)),
        direction=rng.choice((DotDirection.ALONG, DotDirection.AGAINST)),
        arc=rng.random() < 0.5,
    )


def framing_factor(spec: MoveSpec) -> LaurentPoly:
    """Factor relating the two sides: after == factor * before."""
    if spec.move is MoveKind.OMEGA1_POS:
        return kink_factor(1)
    if spec.move is MoveKind.OMEGA1_NEG:
        return kink_factor(-1)
    return ONE


def flip(direction: DotDirection) -> DotDirection:
    return DotDirection.AGAINST if direction is DotDirection.ALONG else DotDirection.ALONG


# ---------------------------------------------------------------------------
# Sites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalSite:
    """
    A free stretch of one segment.

    The frame has origin on the segment at ``t``, first axis the segment
    vector and second axis its quarter turn; the unit box scaled by
    ``radius`` meets nothing but this segment.
    """
    ref: SegmentRef
    t: Fraction
    radius: Fraction
    origin: Point
    axis: Point

    def to_world(self, local: Point) -> Point:
        a, b = local
        return add(self.origin, scale(add(scale(self.axis, a), scale(rot90(self.axis), b)),
                                      self.radius))

    def param(self, a: Fraction) -> Fraction:
        """Segment parameter of the local point (a, 0)."""
        return self.t + a * self.radius

    @property
    def box(self) -> Tuple[Point, ...]:
        return parallelogram(self.origin, self.axis, rot90(self.axis), self.radius)


def _interval_clear(vd: ValidatedDiagram, site: IntervalSite, radius2: Fraction) -> bool:
    if not (0 < site.t - site.radius and site.t + site.radius < 1):
        return False
    if any(abs(e.t - site.t) <= site.radius for e in vd.segment_events(site.ref)):
        return False
    box = site.box
    if any(norm2(corner) >= radius2 for corner in box):
        return False
    if any(point_in_convex(p, box) for p in vd.punctures):
        return False
    source = vd.diagram
    return not any(segment_meets_convex(*source.segment(ref), box)
                   for ref in source.segment_refs() if ref != site.ref)


def find_interval_site(vd: ValidatedDiagram, rng: random.Random,
                       config: Optional[Config] = None) -> IntervalSite:
    """
    Search a free segment stretch, trying segments in random order.

    Raises:
        SpliceError: when every candidate is blocked
    """
    config = config or Config.default()
    radius2 = config.ambient_radius ** 2
    refs = vd.diagram.segment_refs()
    rng.shuffle(refs)
    for ref in refs:
        params = sorted({F(0), F(1)} | {e.t for e in vd.segment_events(ref)})
        gaps = [(b - a, a, b) for a, b in zip(params, params[1:])]
        _, low, high = max(gaps)
        t = (low + high) / 2
        a, b = vd.diagram.segment(ref)
        radius = (high - low) / 4
        for _ in range(config.splice_attempts):
            site = IntervalSite(ref, t, radius, lerp(a, b, t), sub(b, a))
            if _interval_clear(vd, site, radius2):
                return site
            radius /= 2
    raise SpliceError("no free interval for a splice")


# ---------------------------------------------------------------------------
# Editing helpers
# ---------------------------------------------------------------------------

def insert_path(vd: ValidatedDiagram, site: IntervalSite,
                local_path: Sequence[Point]) -> ArrowDiagram:
    """
    Replace a stretch of the site's segment by a polyline.

    The first and last points of ``local_path`` must lie on the segment;
    crossings and dots of the component are re-indexed.
    """
    diagram = vd.diagram
    comp, seg = site.ref
    enter, leave = site.param(local_path[0][0]), site.param(local_path[-1][0])
    shift = len(local_path)
    vertices = list(diagram.components[comp])
    vertices[seg + 1:seg + 1] = [site.to_world(p) for p in local_path]

    def moved(c: int, s: int, t: Fraction) -> Tuple[int, Fraction]:
        if c != comp or s < seg:
            return s, t
        if s > seg:
            return s + shift, t
        if t < enter:
            return s, t / enter
        return s + shift, (t - leave) / (1 - leave)

    crossings = []
    for data in vd.crossing_data:
        c = data.crossing
        seg_a, _ = moved(c.comp_a, c.seg_a, data.t_a)
        seg_b, _ = moved(c.comp_b, c.seg_b, data.t_b)
        crossings.append(replace(c, seg_a=seg_a, seg_b=seg_b))
    dots = []
    for d in diagram.dots:
        s, t = moved(d.component, d.segment, d.t)
        dots.append(replace(d, segment=s, t=t))
    components = list(diagram.components)
    components[comp] = tuple(vertices)
    return ArrowDiagram(diagram.surface, tuple(components), tuple(crossings), tuple(dots))


def insert_curl(vd: ValidatedDiagram, site: IntervalSite, positive: bool) -> ArrowDiagram:
    """Add a kink of the given sign at an interval site."""
    comp, seg = site.ref
    curled = insert_path(vd, site, CURL)
    # segment seg+1 enters the loop, seg+4 leaves it
    kink = Crossing(comp, seg + 1, comp, seg + 4, Strand.A if positive else Strand.B)
    return replace(curled, crossings=curled.crossings + (kink,))


def append_component(diagram: ArrowDiagram,
                     vertices: Sequence[Point]) -> Tuple[ArrowDiagram, int]:
    """Add a polyline; returns the new diagram and the component index."""
    grown = replace(diagram, components=diagram.components + (tuple(vertices),))
    return grown, len(diagram.components)


def add_component(diagram: ArrowDiagram, site: IntervalSite,
                  local: Sequence[Point]) -> Tuple[ArrowDiagram, int]:
    return append_component(diagram, [site.to_world(p) for p in local])


def _ensure_crossing(vd: ValidatedDiagram, rng: random.Random,
                     config: Config) -> ValidatedDiagram:
    if vd.crossing_count:
        return vd
    site = find_interval_site(vd, rng, config)
    return validate(insert_curl(vd, site, positive=True), config)


# ---------------------------------------------------------------------------
# Moves
# ---------------------------------------------------------------------------

def _omega1(vd: ValidatedDiagram, spec: MoveSpec, rng, config) -> MovePair:
    site = find_interval_site(vd, rng, config)
    after = insert_curl(vd, site, positive=spec.move is MoveKind.OMEGA1_POS)
    return MovePair(vd.diagram, after, site.box)


def _omega2(vd: ValidatedDiagram, spec: MoveSpec, rng, config) -> MovePair:
    site = find_interval_site(vd, rng, config)
    if spec.arc:
        return _omega2_arc(vd, spec, site)
    before, _ = add_component(vd.diagram, site, HELPER_FLAT)
    after, helper = add_component(vd.diagram, site, HELPER_DIPPED)
    comp, seg = site.ref
    under = Strand.A if spec.over else Strand.B
    extra = (Crossing(comp, seg, helper, 0, under), Crossing(comp, seg, helper, 1, under))
    return MovePair(before, replace(after, crossings=after.crossings + extra), site.box)


def _omega2_arc(vd: ValidatedDiagram, spec: MoveSpec, site: IntervalSite) -> MovePair:
    """Push a finger of the site strand across the bottom edge of a flat helper."""
    before, _ = add_component(vd.diagram, site, HELPER_FLAT)
    after, helper = add_component(insert_path(vd, site, FINGER), site, HELPER_FLAT)
    comp, seg = site.ref
    under = Strand.B if spec.over else Strand.A
    extra = (Crossing(comp, seg + 1, helper, 0, under), Crossing(comp, seg + 2, helper, 0, under))
    return MovePair(before, replace(after, crossings=after.crossings + extra), site.box)


def _omega3(vd: ValidatedDiagram, spec: MoveSpec, rng, config) -> MovePair:
    vd = _ensure_crossing(vd, rng, config)
    data = vd.crossing_data[rng.randrange(vd.crossing_count)]
    source = vd.diagram
    a0, a1 = source.segment(data.crossing.ref_a)
    b0, b1 = source.segment(data.crossing.ref_b)
    u, v = sub(a1, a0), sub(b1, b0)
    rho = vd.smoothing_radius
    radius2 = config.ambient_radius ** 2
    while any(norm2(p) >= radius2 for p in parallelogram(data.point, u, v, rho)):
        rho /= 2

    def world(a: Fraction, b: Fraction) -> Point:
        return add(data.point, scale(add(scale(u, a), scale(v, b)), rho))

    k = F(2, 5)
    under = Strand.A if spec.over else Strand.B
    sides = []
    for h in (F(3, 10), F(-3, 10)):
        triangle = (world(h + k, -k), world(-k, h + k), world(F(-9, 10), F(-9, 10)))
        grown, helper = append_component(source, triangle)
        ca, sa = data.crossing.ref_a
        cb, sb = data.crossing.ref_b
        extra = (
            Crossing(ca, sa, helper, 0, under),
            Crossing(cb, sb, helper, 0, under),
            Crossing(ca, sa, helper, 1, under),
            Crossing(cb, sb, helper, 2, under),
        )
        sides.append(replace(grown, crossings=grown.crossings + extra))
    return MovePair(sides[0], sides[1], parallelogram(data.point, u, v, rho))


def _omega4(vd: ValidatedDiagram, spec: MoveSpec, rng, config) -> MovePair:
    site = find_interval_site(vd, rng, config)
    comp, seg = site.ref
    pair = (
        Dot(comp, seg, site.param(F(-1, 2)), spec.direction),
        Dot(comp, seg, site.param(F(1, 2)), flip(spec.direction)),
    )
    after = replace(vd.diagram, dots=vd.diagram.dots + pair)
    return MovePair(vd.diagram, after, site.box)


def _omega5(vd: ValidatedDiagram, spec: MoveSpec, rng, config) -> MovePair:
    """
    Slide a dot through a crossing.

    With the arrow pointing towards the crossing the dotted strand passes
    under; once the dot is past the crossing that strand passes over.
    """
    vd = _ensure_crossing(vd, rng, config)
    data = vd.crossing_data[rng.randrange(vd.crossing_count)]
    comp, seg = data.crossing.ref(spec.strand)
    t = data.param(spec.strand)
    offset = vd.smoothing_radius / 2
    toward = -offset if spec.direction is DotDirection.ALONG else offset
    other = Strand.B if spec.strand is Strand.A else Strand.A

    sides = []
    for position, under in ((t + toward, spec.strand), (t - toward, other)):
        crossings = list(vd.diagram.crossings)
        crossings[data.index] = replace(data.crossing, under=under)
        dots = vd.diagram.dots + (Dot(comp, seg, position, spec.direction),)
        sides.append(replace(vd.diagram, crossings=tuple(crossings), dots=dots))
    a, b = vd.diagram.segment(data.crossing.ref_a)
    c, d = vd.diagram.segment(data.crossing.ref_b)
    return MovePair(sides[0], sides[1],
                    parallelogram(data.point, sub(b, a), sub(d, c), vd.smoothing_radius))


_BUILDERS = {
    MoveKind.OMEGA1_POS: _omega1,
    MoveKind.OMEGA1_NEG: _omega1,
    MoveKind.OMEGA2: _omega2,
    MoveKind.OMEGA3: _omega3,
    MoveKind.OMEGA4: _omega4,
    MoveKind.OMEGA5: _omega5,
}


def make_move_pair(base: ValidatedDiagram, spec: MoveSpec, seed: int,
                   config: Optional[Config] = None) -> MovePair:
    """
    Build the two sides of a move spliced into ``base``.

    Both sides are validated before they are returned.

    Raises:
        SpliceError: if no admissible site exists
    """
    config = config or Config.default()
    rng = random.Random(seed)
    pair = _BUILDERS[spec.move](base, spec, rng, config)
    for side in (pair.before, pair.after):
        try:
            validate(side, config)
        except DiagramError as error:
            raise SpliceError(f"{spec} produced an invalid diagram: {error}") from error
    LOG.debug("spliced %s into a diagram with %d crossings", spec, base.crossing_count)
    return pair


def vertices_outside(diagram: ArrowDiagram, region: Sequence[Point]) -> List[Point]:
    """Polyline vertices outside a convex region, in storage order."""
    return [p for vertices in diagram.components for p in vertices
            if not point_in_convex(p, region)]
