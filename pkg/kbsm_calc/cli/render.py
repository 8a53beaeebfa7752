"""
Text rendering for the KBSM CLI.

Every function returns a string; printing happens in app.py.
CLI 文本渲染。
"""

from typing import List

from ..core.diagram import ArrowDiagram, ValidatedDiagram, write_diagram
from ..core.events import RewriteTrace
from ..core.oracle import InvarianceReport
from ..core.ring import XPoly
from ..core.state_sum import BracketTable, writhe
from ..core.words import SkeinElement


def render_element(element: SkeinElement) -> str:
    return str(element)


def render_xpoly(poly: XPoly) -> str:
    return str(poly)


def render_trace(trace: RewriteTrace) -> str:
    """
    Render rewrite steps, one ``RULE`` line each.

    渲染重写轨迹。
    """
    return "\n".join(trace.format_lines())


def render_bracket_table(table: BracketTable) -> str:
    """State-sum table, one ``<coeff> : <forest>`` line per forest."""
    return "\n".join(table.format_lines())


def render_report(report: InvarianceReport) -> str:
    lines: List[str] = report.format_lines()
    lines.append(
        f"SUMMARY surface={report.surface.value} trials={len(report.trials)} "
        f"failures={len(report.failures)}"
    )
    return "\n".join(lines)


def render_diagram(diagram: ArrowDiagram) -> str:
    return write_diagram(diagram).rstrip("\n")


def render_diagram_summary(diagram: ValidatedDiagram) -> str:
    """One-line description used by verbose runs."""
    source = diagram.diagram
    return (
        f"{source.surface.value}: {len(source.components)} components, "
        f"{diagram.crossing_count} crossings (writhe {writhe(diagram)}), "
        f"{len(source.dots)} dots"
    )
