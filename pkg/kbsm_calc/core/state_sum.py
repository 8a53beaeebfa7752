"""
State sum of an arrow diagram.

Every crossing gets a marker; smoothing all crossings leaves disjoint
simple closed curves that are classified by the punctures they enclose
and by their net arrow count. Trivial circles are factored out and the
rest is arranged in a containment forest, which refine() turns into a
linear combination of words.

状态和：标记、光滑化、分类、包含森林与细化。
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .diagram import (
    ArrowDiagram,
    Crossing,
    Dot,
    ValidatedDiagram,
    writhe,
)
from .enums import DotDirection, LetterKind, Marker, Strand
from .geometry import (
    Point,
    lerp,
    orient,
    point_in_polygon,
    point_on_segment,
    segment_param,
    signed_area,
    sub,
)
from .ring import ONE, LaurentPoly, XPoly, encircle, loop_value
from .words import Chains, SkeinElement, from_chains

LOG = logging.getLogger(__name__)

__all__ = [
    "State", "StateSummary", "ClassifiedComponent", "ForestNode", "ConfigForest",
    "BracketTable", "SmoothingPlan", "smooth", "classify_components", "bracket_raw",
    "refine", "smooth_crossing", "state_count", "writhe",
]


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class State:
    """A marker for every crossing, indexed like the diagram's crossings."""
    markers: Tuple[Marker, ...]

    @classmethod
    def all_states(cls, crossing_count: int) -> Iterator["State"]:
        for markers in itertools.product((Marker.POSITIVE, Marker.NEGATIVE),
                                         repeat=crossing_count):
            yield cls(markers)

    @property
    def positive(self) -> int:
        return sum(1 for m in self.markers if m is Marker.POSITIVE)

    @property
    def negative(self) -> int:
        return len(self.markers) - self.positive

    def __str__(self) -> str:
        return "".join(m.value for m in self.markers) or "."


@dataclass(frozen=True)
class StateSummary:
    """Positive and negative marker counts and the number of trivial circles."""
    p: int
    n: int
    trivial_count: int

    @property
    def coefficient(self) -> LaurentPoly:
        """A^(p-n) times the loop value per trivial circle."""
        return LaurentPoly.monomial(self.p - self.n) * loop_value() ** self.trivial_count


@dataclass(frozen=True)
class ClassifiedComponent:
    """
    A smoothed curve with its type and net arrows.

    Arrows count counterclockwise as positive, except on t-type curves
    where clockwise counts as positive.
    """
    kind: LetterKind
    arrows: int
    polygon: Tuple[Point, ...] = field(compare=False, repr=False)


_KIND_ORDER = {LetterKind.X: 0, LetterKind.Y: 1, LetterKind.Z: 2, LetterKind.T: 3}


def _node_order(node: "ForestNode") -> Tuple[int, int, str]:
    return _KIND_ORDER[node.kind], node.arrows, node.key


@dataclass(frozen=True)
class ForestNode:
    """A classified curve and the curves directly inside it."""
    kind: LetterKind
    arrows: int
    children: Tuple["ForestNode", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(sorted(self.children, key=_node_order)))

    @property
    def key(self) -> str:
        head = f"{self.kind.value}{self.arrows}"
        if not self.children:
            return head
        return head + "[" + " ".join(child.key for child in self.children) + "]"

    def walk(self) -> Iterator["ForestNode"]:
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class ConfigForest:
    """
    Containment forest of the non-trivial curves of a state.

    Children are kept in canonical order, so equal configurations compare
    and hash equal.
    """
    roots: Tuple[ForestNode, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(sorted(self.roots, key=_node_order)))

    @property
    def key(self) -> str:
        return " ".join(node.key for node in self.roots) or "{}"

    def nodes(self) -> Iterator[ForestNode]:
        for root in self.roots:
            yield from root.walk()

    def __str__(self) -> str:
        return self.key


@dataclass
class BracketTable:
    """Result of the raw state sum: coefficient per forest."""
    entries: Dict[ConfigForest, LaurentPoly] = field(default_factory=dict)
    states_visited: int = 0

    def add(self, forest: ConfigForest, coeff: LaurentPoly) -> None:
        total = self.entries.get(forest, LaurentPoly()) + coeff
        if total.is_zero():
            self.entries.pop(forest, None)
        else:
            self.entries[forest] = total

    def items(self) -> List[Tuple[ConfigForest, LaurentPoly]]:
        return sorted(self.entries.items(), key=lambda item: item[0].key)

    def format_lines(self) -> List[str]:
        return [f"{coeff} : {forest}" for forest, coeff in self.items()]

    def __len__(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------------------
# Smoothing
# ---------------------------------------------------------------------------

# (crossing index, strand, True for the cut point after the crossing)
Endpoint = Tuple[int, Strand, bool]


@dataclass(frozen=True)
class _Arc:
    start: Optional[Endpoint]
    end: Optional[Endpoint]
    points: Tuple[Point, ...]
    dots: Tuple[int, ...]
    arrows: int


@dataclass(frozen=True)
class _Curve:
    key: Tuple[Tuple[int, bool], ...]
    points: Tuple[Point, ...]
    arrows: int                          # along the traversal direction


class SmoothingPlan:
    """
    Arcs of a diagram between the cut points of a set of crossings.

    Each cut crossing is cut at parameter distance ``smoothing_radius`` on
    both strands; a marker then decides how the four cut points are joined.
    Curve classifications and containments are cached per plan, keyed by
    the arcs a curve runs through.
    """

    def __init__(self, diagram: ValidatedDiagram, cut: Optional[Iterable[int]] = None):
        self.diagram = diagram
        self.cut = frozenset(range(diagram.crossing_count) if cut is None else cut)
        self.arcs: List[_Arc] = []
        self.owner: Dict[Endpoint, Tuple[int, bool]] = {}
        self._kinds: Dict[tuple, Tuple[LetterKind, int]] = {}
        self._inside: Dict[Tuple[tuple, tuple], bool] = {}
        for component in range(len(diagram.diagram.components)):
            self._build_arcs(component)

    def _build_arcs(self, component: int) -> None:
        source = self.diagram.diagram
        vertices = source.components[component]
        n = len(vertices)
        events = self.diagram.component_events(component)
        passes = [i for i, e in enumerate(events) if e.crossing in self.cut]
        if not passes:
            dots = tuple(e.dot for e in events if e.dot is not None)
            arrows = sum(source.dots[d].direction.sign for d in dots)
            self.arcs.append(_Arc(None, None, tuple(vertices), dots, arrows))
            return

        delta = self.diagram.smoothing_radius
        for j, here in enumerate(passes):
            there = passes[(j + 1) % len(passes)]
            p, q = events[here], events[there]
            points = [lerp(*source.segment((component, p.segment)), p.t + delta)]
            steps = (q.segment - p.segment) % n
            if steps == 0 and not q.t > p.t:
                steps = n
            points.extend(vertices[(p.segment + i) % n] for i in range(1, steps + 1))
            points.append(lerp(*source.segment((component, q.segment)), q.t - delta))

            dots = []
            i = (here + 1) % len(events)
            while i != there:
                if events[i].dot is not None:
                    dots.append(events[i].dot)
                i = (i + 1) % len(events)
            arrows = sum(source.dots[d].direction.sign for d in dots)
            start = (p.crossing, p.strand, True)
            end = (q.crossing, q.strand, False)
            self.owner[start] = (len(self.arcs), True)
            self.owner[end] = (len(self.arcs), False)
            self.arcs.append(_Arc(start, end, tuple(points), tuple(dots), arrows))

    def partners(self, markers: Dict[int, Marker]) -> Dict[Endpoint, Endpoint]:
        """
        Join the cut points of every cut crossing.

        The positive marker joins each over half-edge to its clockwise
        neighbour; the negative marker to its counterclockwise neighbour.
        """
        joined: Dict[Endpoint, Endpoint] = {}
        for index in self.cut:
            data = self.diagram.crossing_data[index]
            under = data.crossing.under
            over = Strand.B if under is Strand.A else Strand.A
            oriented = data.sign * (1 if markers[index] is Marker.POSITIVE else -1) > 0
            o_out, o_in = (index, over, True), (index, over, False)
            u_out, u_in = (index, under, True), (index, under, False)
            pairs = [(o_out, u_in), (o_in, u_out)] if oriented else [(o_out, u_out), (o_in, u_in)]
            for first, second in pairs:
                joined[first] = second
                joined[second] = first
        return joined

    def curves(self, markers: Dict[int, Marker]) -> List[_Curve]:
        """Closed curves after joining, each traversed from its lowest arc."""
        joined = self.partners(markers)
        used = set()
        result = []
        for first, arc in enumerate(self.arcs):
            if first in used:
                continue
            key, points, arrows = [], [], 0
            current, forward = first, True
            while True:
                used.add(current)
                arc = self.arcs[current]
                key.append((current, forward))
                points.extend(arc.points if forward else reversed(arc.points))
                arrows += arc.arrows if forward else -arc.arrows
                if arc.start is None:
                    break
                current, forward = self.owner[joined[arc.end if forward else arc.start]]
                if current == first:
                    break
            result.append(_Curve(tuple(key), tuple(points), arrows))
        return result

    def _classify(self, curve: _Curve) -> Tuple[LetterKind, int]:
        if curve.key not in self._kinds:
            inside = tuple(point_in_polygon(p, curve.points) for p in self.diagram.punctures)
            kind = _kind_from_enclosure(inside)
            orientation = 1 if signed_area(curve.points) > 0 else -1
            if kind is LetterKind.T:
                orientation = -orientation
            self._kinds[curve.key] = (kind, orientation)
        kind, orientation = self._kinds[curve.key]
        return kind, orientation * curve.arrows

    def _contains(self, outer: _Curve, inner: _Curve) -> bool:
        key = (outer.key, inner.key)
        if key not in self._inside:
            self._inside[key] = point_in_polygon(inner.points[0], outer.points)
        return self._inside[key]

    def _markers(self, state: State) -> Dict[int, Marker]:
        if len(state.markers) != self.diagram.crossing_count:
            raise ValueError(
                f"state has {len(state.markers)} markers for "
                f"{self.diagram.crossing_count} crossings"
            )
        return {index: state.markers[index] for index in self.cut}

    def classify(self, state: State) -> List[ClassifiedComponent]:
        result = []
        for curve in self.curves(self._markers(state)):
            kind, arrows = self._classify(curve)
            result.append(ClassifiedComponent(kind, arrows, curve.points))
        return result

    def smooth(self, state: State) -> Tuple[ConfigForest, StateSummary]:
        curves = self.curves(self._markers(state))
        labels = [self._classify(curve) for curve in curves]
        count = len(curves)
        containers = [
            [j for j in range(count) if j != i and self._contains(curves[j], curves[i])]
            for i in range(count)
        ]
        depth = [len(c) for c in containers]
        children: List[List[int]] = [[] for _ in range(count)]
        roots = []
        for i in range(count):
            if containers[i]:
                parent = max(containers[i], key=lambda j: depth[j])
                children[parent].append(i)
            else:
                roots.append(i)

        trivial = 0

        def silent(i: int) -> bool:
            return labels[i][1] == 0 and all(silent(c) for c in children[i])

        def build(i: int) -> Optional[ForestNode]:
            nonlocal trivial
            kind, arrows = labels[i]
            if kind is LetterKind.X and silent(i):
                trivial += sum(1 for _ in _subtree(i, children))
                return None
            nodes = [build(c) for c in children[i]]
            return ForestNode(kind, arrows, tuple(node for node in nodes if node is not None))

        nodes = [build(i) for i in roots]
        forest = ConfigForest(tuple(node for node in nodes if node is not None))
        return forest, StateSummary(state.positive, state.negative, trivial)


def _subtree(i: int, children: Sequence[Sequence[int]]) -> Iterator[int]:
    yield i
    for c in children[i]:
        yield from _subtree(c, children)


def _kind_from_enclosure(inside: Tuple[bool, ...]) -> LetterKind:
    if len(inside) == 1:
        return LetterKind.Y if inside[0] else LetterKind.X
    if len(inside) == 2:
        return {
            (False, False): LetterKind.X,
            (True, False): LetterKind.Y,
            (False, True): LetterKind.Z,
            (True, True): LetterKind.T,
        }[inside]
    return LetterKind.X


def smooth(diagram: ValidatedDiagram, state: State) -> Tuple[ConfigForest, StateSummary]:
    """Smooth every crossing according to ``state``."""
    return SmoothingPlan(diagram).smooth(state)


def classify_components(diagram: ValidatedDiagram, state: State) -> List[ClassifiedComponent]:
    """All curves of a state, trivial ones included."""
    return SmoothingPlan(diagram).classify(state)


def state_count(diagram: ValidatedDiagram) -> int:
    return 2 ** diagram.crossing_count


def bracket_raw(diagram: ValidatedDiagram) -> BracketTable:
    """Sum A^(p-n) (-A^2-A^-2)^|s| over all states, grouped by forest."""
    plan = SmoothingPlan(diagram)
    table = BracketTable()
    for state in State.all_states(diagram.crossing_count):
        forest, summary = plan.smooth(state)
        LOG.debug("STATE %s p=%d n=%d trivial=%d forest=%s",
                  state, summary.p, summary.n, summary.trivial_count, forest)
        table.add(forest, summary.coefficient)
        table.states_visited += 1
    LOG.info("state sum: %d states, %d forests", table.states_visited, len(table))
    return table


# ---------------------------------------------------------------------------
# Refinement
# ---------------------------------------------------------------------------

def _collapse(node: ForestNode) -> XPoly:
    """An x-type subtree as a polynomial in x."""
    inner = XPoly.constant(ONE)
    for child in node.children:
        inner = inner * _collapse(child)
    return encircle(node.arrows, inner)


def _region(node: Optional[ForestNode], roots: Sequence[ForestNode]) -> XPoly:
    members = roots if node is None else node.children
    result = XPoly.constant(ONE)
    for member in members:
        if member.kind is LetterKind.X:
            result = result * _collapse(member)
    return result


def _chain(forest: ConfigForest, kind: LetterKind) -> List[ForestNode]:
    """Nodes of one kind ordered from the outermost inwards."""
    found: List[Tuple[int, ForestNode]] = []

    def visit(node: ForestNode, depth: int) -> None:
        if node.kind is kind:
            found.append((depth, node))
        for child in node.children:
            visit(child, depth + 1)

    for root in forest.roots:
        visit(root, 0)
    return [node for _, node in sorted(found, key=lambda item: item[0])]


def refine(forest: ConfigForest) -> SkeinElement:
    """
    Replace x-type subtrees by P_n and P_{n,k} and read off the words.

    The x content of each region is attached to the letter on its
    puncture side; the region inside the innermost t (or the outside when
    there is no t) is the central run.
    """
    ys = _chain(forest, LetterKind.Y)[::-1]
    zs = _chain(forest, LetterKind.Z)[::-1]
    ts = _chain(forest, LetterKind.T)

    runs = [_region(node, forest.roots) for node in ys + zs]
    if ts:
        runs.append(_region(None, forest.roots))
        runs.extend(_region(node, forest.roots) for node in ts)
    else:
        runs.append(_region(None, forest.roots))

    expansions: List[Tuple[LaurentPoly, Tuple[int, ...]]] = [(ONE, ())]
    for run in runs:
        expansions = [
            (coeff * part, degrees + (k,))
            for coeff, degrees in expansions
            for k, part in run
        ]

    totals: Dict = {}
    arrows = [node.arrows for node in ys + zs + ts]
    ny, nz = len(ys), len(zs)
    for coeff, degrees in expansions:
        pairs = tuple(zip(degrees[:len(arrows)], arrows))
        chains = Chains(y=pairs[:ny], z=pairs[ny:ny + nz], t=pairs[ny + nz:],
                        central=degrees[len(arrows)])
        word = from_chains(chains)
        totals[word] = totals.get(word, LaurentPoly()) + coeff
    return SkeinElement.from_mapping(totals)


# ---------------------------------------------------------------------------
# Single-crossing smoothing
# ---------------------------------------------------------------------------

def _find_segment(components: Sequence[Sequence[Point]], p: Point,
                  along: Optional[Tuple[Point, Point]] = None) -> Tuple[int, int]:
    for c, vertices in enumerate(components):
        n = len(vertices)
        for s in range(n):
            a, b = vertices[s], vertices[(s + 1) % n]
            if not point_on_segment(p, a, b):
                continue
            if along is not None and (orient(along[0], along[1], a) != 0
                                      or orient(along[0], along[1], b) != 0):
                continue
            return c, s
    raise ValueError(f"no segment through ({p[0]}, {p[1]})")


def smooth_crossing(diagram: ValidatedDiagram, index: int, marker: Marker) -> ArrowDiagram:
    """
    Smooth one crossing geometrically.

    The other crossings and all dots are carried over to the new
    polylines; the result has one crossing fewer.
    """
    plan = SmoothingPlan(diagram, cut=[index])
    curves = plan.curves({index: marker})
    components = tuple(curve.points for curve in curves)
    source = diagram.diagram

    crossings = []
    for data in diagram.crossing_data:
        if data.index == index:
            continue
        refs = []
        for strand in (Strand.A, Strand.B):
            refs.append(_find_segment(components, data.point,
                                      along=source.segment(data.crossing.ref(strand))))
        (ca, sa), (cb, sb) = refs
        crossings.append(Crossing(ca, sa, cb, sb, data.crossing.under))

    dots = []
    for dot in source.dots:
        p = source.dot_point(dot)
        c, s = _find_segment(components, p)
        vertices = components[c]
        a, b = vertices[s], vertices[(s + 1) % len(vertices)]
        old_a, old_b = source.segment(dot.ref)
        new_dir, old_dir = sub(b, a), sub(old_b, old_a)
        same = new_dir[0] * old_dir[0] + new_dir[1] * old_dir[1] > 0
        direction = dot.direction if same else (
            DotDirection.AGAINST if dot.direction is DotDirection.ALONG else DotDirection.ALONG
        )
        dots.append(Dot(c, s, segment_param(p, a, b), direction))

    return ArrowDiagram(
        surface=source.surface,
        components=components,
        crossings=tuple(crossings),
        dots=tuple(dots),
    )
