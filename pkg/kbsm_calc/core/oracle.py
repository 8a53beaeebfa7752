"""
Independent checks of the bracket.

bracket_recursive() applies the skein relation one crossing at a time and
only uses the state sum on crossingless diagrams. check_invariance()
splices random moves into random diagrams and compares both sides.

独立校验：逐个交叉点递归展开，以及 Reidemeister 移动不变性测试。
"""

import logging
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .config import Config
from .diagram import ValidatedDiagram, validate
from .enums import Marker, MoveKind, Surface
from .generator import random_diagram
from .moves import (
    HELPER_FLAT,
    SpliceError,
    add_component,
    find_interval_site,
    framing_factor,
    make_move_pair,
    random_move_spec,
)
from .reduction import kbsm_bracket
from .ring import LaurentPoly, loop_value
from .state_sum import smooth_crossing
from .words import SkeinElement

LOG = logging.getLogger(__name__)

__all__ = [
    "TrialRecord", "InvarianceReport", "bracket_recursive", "check_invariance",
    "check_trivial_circle", "framing_factor",
]


def bracket_recursive(diagram: ValidatedDiagram, config: Optional[Config] = None,
                      highest_first: bool = False) -> SkeinElement:
    """
    Expand L = A L0 + A^-1 Linf crossing by crossing.

    The lowest-index crossing is smoothed first unless ``highest_first``.
    """
    config = config or Config.default()
    if diagram.crossing_count == 0:
        return kbsm_bracket(diagram, config)
    index = diagram.crossing_count - 1 if highest_first else 0
    total = SkeinElement.zero()
    for marker, exponent in ((Marker.POSITIVE, 1), (Marker.NEGATIVE, -1)):
        smoothed = validate(smooth_crossing(diagram, index, marker), config)
        part = bracket_recursive(smoothed, config, highest_first)
        total = total + part.scale(LaurentPoly.monomial(exponent))
    return total


@dataclass
class TrialRecord:
    """One move comparison."""
    number: int
    seed: int
    move: str
    surface: Surface
    equal: bool
    before: Optional[SkeinElement] = None
    after: Optional[SkeinElement] = None
    note: str = ""

    def format_lines(self) -> List[str]:
        result = "OK" if self.equal else "FAIL"
        lines = [f"TRIAL {self.number} seed={self.seed} move={self.move} result={result}"]
        if not self.equal:
            if self.note:
                lines.append(self.note)
            if self.before is not None and self.after is not None:
                lines.append(str(self.before))
                lines.append(str(self.after))
        return lines


@dataclass
class InvarianceReport:
    """Trial records in trial order."""
    surface: Surface
    trials: List[TrialRecord] = field(default_factory=list)

    @property
    def failures(self) -> List[TrialRecord]:
        return [trial for trial in self.trials if not trial.equal]

    @property
    def all_ok(self) -> bool:
        return not self.failures

    def format_lines(self) -> List[str]:
        lines = []
        for trial in self.trials:
            lines.extend(trial.format_lines())
        return lines


def _run_trial(number: int, seed: int, kind: MoveKind, surface: Surface,
               config: Config) -> TrialRecord:
    rng = random.Random(seed)
    spec = random_move_spec(kind, rng)
    for attempt in range(config.splice_attempts):
        base = random_diagram(surface, config.base_max_crossings, config.base_max_dots,
                              seed + attempt, config)
        try:
            pair = make_move_pair(base, spec, seed + attempt, config)
            break
        except SpliceError as error:
            LOG.debug("trial %d: %s", number, error)
    else:
        return TrialRecord(number, seed, str(spec), surface, False,
                           note="no admissible splice site")

    try:
        before = kbsm_bracket(validate(pair.before, config), config)
        after = kbsm_bracket(validate(pair.after, config), config)
    except (ValueError, RuntimeError) as error:
        LOG.warning("trial %d seed=%d %s: reduction failed: %s", number, seed, spec, error)
        return TrialRecord(number, seed, str(spec), surface, False,
                           note=f"reduction failed: {error}")
    equal = after == before.scale(framing_factor(spec))
    if not equal:
        LOG.warning("trial %d seed=%d %s: sides differ", number, seed, spec)
    return TrialRecord(number, seed, str(spec), surface, equal, before, after)


def check_invariance(surface: Surface, moves: Sequence[MoveKind], trials: int, seed: int,
                     config: Optional[Config] = None) -> InvarianceReport:
    """
    Compare both sides of random move splices.

    Moves are used round-robin; omega1 sides are compared after the
    framing factor. Failures are recorded, not raised.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not moves:
        raise ValueError("no moves selected")
    config = config or Config.default()
    rng = random.Random(seed)
    report = InvarianceReport(surface)
    for number in range(1, trials + 1):
        trial_seed = rng.randrange(2 ** 31)
        kind = moves[(number - 1) % len(moves)]
        report.trials.append(_run_trial(number, trial_seed, kind, surface, config))
    LOG.info("%s: %d trials, %d failures", surface.value, trials, len(report.failures))
    return report


def check_trivial_circle(diagram: ValidatedDiagram, config: Optional[Config] = None,
                         seed: int = 0) -> bool:
    """Adding a small disjoint arrowless circle multiplies the bracket by -A^2-A^-2."""
    config = config or Config.default()
    site = find_interval_site(diagram, random.Random(seed), config)
    grown, _ = add_component(diagram.diagram, site, HELPER_FLAT)
    with_circle = kbsm_bracket(validate(grown, config), config)
    return with_circle == kbsm_bracket(diagram, config).scale(loop_value())
