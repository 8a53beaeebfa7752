"""
Integration tests for the independent checks of the bracket.

Tests the crossing-by-crossing expansion and the invariance harness.
"""

from pathlib import Path

import pytest

from kbsm_calc.core.config import Config
from kbsm_calc.core.diagram import ArrowDiagram, Crossing, load_diagram, validate
from kbsm_calc.core.enums import MoveKind, Strand, Surface
from kbsm_calc.core.generator import random_diagram
from kbsm_calc.core.geometry import point
from kbsm_calc.core.oracle import (
    InvarianceReport, TrialRecord, bracket_recursive, check_invariance, check_trivial_circle,
)
from kbsm_calc.core.reduction import kbsm_bracket
from kbsm_calc.core.words import parse_element

ASSETS = Path(__file__).resolve().parents[2] / "assets"


def sample(name):
    return load_diagram((ASSETS / name).read_text())


def two_bars(surface):
    tall = (point(-1, -3), point(1, -3), point(1, 3), point(-1, 3))
    wide = (point(-3, -1), point(3, -1), point(3, 1), point(-3, 1))
    return validate(ArrowDiagram(surface, (tall, wide), (
        Crossing(0, 1, 1, 0, Strand.A), Crossing(0, 1, 1, 2, Strand.B),
        Crossing(0, 3, 1, 0, Strand.B), Crossing(0, 3, 1, 2, Strand.A),
    )))


def hash_seed(surface, kind):
    return 10 * list(Surface).index(surface) + list(MoveKind).index(kind)


def dotted_y_and_t():
    """A y' circle around the left puncture next to a t' circle around both."""
    return load_diagram(
        "surface pants\n"
        "component\n-3/2 -1/2\n-1/2 -1/2\n-1/2 1/2\n-3/2 1/2\n"
        "component\n-2 -2\n2 -2\n2 2\n-2 2\n"
        "dot 0 1 1/2 dir=+\n"
        "dot 1 1 1/2 dir=-\n"
    )


def with_qf5(variant):
    config = Config.default()
    config.qf5_variant = variant
    return config


class TestSampleBrackets:
    """Test cases for the brackets of the sample diagrams."""

    @pytest.mark.parametrize("name, surface, expected", [
        ("unknot.kbd", Surface.DISK, "(-A^2-A^-2) * 1"),
        ("kink_positive.kbd", Surface.DISK, "(A^5+A) * 1"),
        ("kink_negative.kbd", Surface.DISK, "(A^-1+A^-5) * 1"),
        ("reversed_arrow.kbd", Surface.DISK, "A^-6 * x"),
        ("annulus_y2.kbd", Surface.ANNULUS, "(-A^-2) * y' x + (-A^2) * y"),
        ("pants_y_dot.kbd", Surface.PANTS, "y'"),
        ("pants_yzt.kbd", Surface.PANTS, "y z t"),
    ])
    def test_sample(self, name, surface, expected):
        """Test the bracket printed for each sample file."""
        result = kbsm_bracket(sample(name))
        assert str(result) == expected
        assert result == parse_element(expected, surface)


class TestRecursiveExpansion:
    """Test cases for the skein-relation oracle."""

    @pytest.mark.parametrize("surface", list(Surface))
    def test_two_bars(self, surface):
        """Test that both expansions agree with the state sum."""
        vd = two_bars(surface)
        expected = kbsm_bracket(vd)
        assert bracket_recursive(vd) == expected
        assert bracket_recursive(vd, highest_first=True) == expected

    def test_kink(self):
        """Test the recursive expansion of a kink."""
        vd = sample("kink_positive.kbd")
        assert bracket_recursive(vd) == kbsm_bracket(vd)

    @pytest.mark.parametrize("surface", list(Surface))
    @pytest.mark.parametrize("seed", range(6))
    def test_random_diagrams(self, surface, seed):
        """Test agreement on random diagrams in both crossing orders."""
        vd = random_diagram(surface, 4, 3, seed)
        expected = kbsm_bracket(vd)
        assert bracket_recursive(vd) == expected
        assert bracket_recursive(vd, highest_first=True) == expected

    def test_trivial_circle(self):
        """Test that a disjoint circle multiplies by -A^2-A^-2."""
        assert check_trivial_circle(sample("pants_y_dot.kbd"))
        assert check_trivial_circle(two_bars(Surface.ANNULUS), seed=3)


class TestInvarianceHarness:
    """Test cases for check_invariance."""

    def test_regular_moves(self):
        """Test a short run over the regular moves."""
        moves = [MoveKind.OMEGA2, MoveKind.OMEGA3, MoveKind.OMEGA4, MoveKind.OMEGA5]
        report = check_invariance(Surface.PANTS, moves, trials=4, seed=1)
        assert len(report.trials) == 4
        assert [trial.move.split(":")[0] for trial in report.trials] == [m.value for m in moves]
        assert report.all_ok

    def test_framing_moves(self):
        """Test that omega1 trials compare after the framing factor."""
        moves = [MoveKind.OMEGA1_POS, MoveKind.OMEGA1_NEG]
        report = check_invariance(Surface.ANNULUS, moves, trials=2, seed=2)
        assert report.all_ok

    @pytest.mark.parametrize("surface", list(Surface))
    @pytest.mark.parametrize("kind", list(MoveKind))
    def test_every_move_cell(self, surface, kind):
        """Test ten trials of each move on each surface."""
        report = check_invariance(surface, [kind], trials=10, seed=hash_seed(surface, kind))
        assert len(report.trials) == 10
        assert report.all_ok, "\n".join(report.format_lines())

    def test_reproducible(self):
        """Test that the same seed gives the same report."""
        first = check_invariance(Surface.DISK, [MoveKind.OMEGA4], trials=2, seed=9)
        second = check_invariance(Surface.DISK, [MoveKind.OMEGA4], trials=2, seed=9)
        assert first.format_lines() == second.format_lines()

    def test_verbatim_qf5_is_reported(self, monkeypatch):
        """Test that the printed QF.5 form fails trials instead of raising."""
        base = dotted_y_and_t()
        monkeypatch.setattr("kbsm_calc.core.oracle.random_diagram", lambda *args: base)
        moves = [MoveKind.OMEGA2, MoveKind.OMEGA4]
        verbatim = check_invariance(Surface.PANTS, moves, trials=4, seed=5,
                                    config=with_qf5("verbatim"))
        assert len(verbatim.trials) == 4
        assert verbatim.failures
        assert any(t.note.startswith("reduction failed") for t in verbatim.failures)
        corrected = check_invariance(Surface.PANTS, moves, trials=4, seed=5,
                                     config=with_qf5("corrected"))
        assert corrected.all_ok

    @pytest.mark.parametrize("seed", range(5))
    def test_variants_on_random_pants(self, seed):
        """Test that the corrected QF.5 passes where the printed form may not."""
        moves = [MoveKind.OMEGA2, MoveKind.OMEGA3, MoveKind.OMEGA4, MoveKind.OMEGA5]
        report = check_invariance(Surface.PANTS, moves, trials=4, seed=seed,
                                  config=with_qf5("verbatim"))
        assert len(report.trials) == 4
        assert check_invariance(Surface.PANTS, moves, trials=4, seed=seed,
                                config=with_qf5("corrected")).all_ok

    def test_arguments(self):
        """Test rejection of empty runs."""
        with pytest.raises(ValueError):
            check_invariance(Surface.DISK, [MoveKind.OMEGA2], trials=0, seed=0)
        with pytest.raises(ValueError):
            check_invariance(Surface.DISK, [], trials=1, seed=0)


class TestReportFormat:
    """Test cases for trial and report lines."""

    def test_ok_line(self):
        """Test a passing trial line."""
        record = TrialRecord(1, 42, "omega2:over", Surface.PANTS, True)
        assert record.format_lines() == ["TRIAL 1 seed=42 move=omega2:over result=OK"]

    def test_fail_lines(self):
        """Test that a failing trial prints both sides."""
        before = parse_element("y", Surface.PANTS)
        after = parse_element("A * y", Surface.PANTS)
        record = TrialRecord(2, 7, "omega4:+", Surface.PANTS, False, before, after, note="sides differ")
        assert record.format_lines() == [
            "TRIAL 2 seed=7 move=omega4:+ result=FAIL", "sides differ", "y", "A * y",
        ]

    def test_failures(self):
        """Test the failure list of a report."""
        report = InvarianceReport(Surface.DISK, [
            TrialRecord(1, 0, "omega2:over", Surface.DISK, True),
            TrialRecord(2, 0, "omega3:over", Surface.DISK, False),
        ])
        assert [trial.number for trial in report.failures] == [2]
        assert not report.all_ok
