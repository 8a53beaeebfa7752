"""
Input parsing and validation for the KBSM CLI.

This module turns command-line arguments into library values.
输入解析和验证：把命令行参数转换为库中的对象。
"""

import difflib
from dataclasses import replace
from typing import List, Optional

from ..core.config import Config
from ..core.diagram import ValidatedDiagram, read_diagram, validate
from ..core.enums import MoveKind, Stage, Surface
from ..core.words import SkeinElement, parse_element


class InputParseError(Exception):
    """Exception raised when an argument cannot be parsed."""
    pass


SURFACE_ALIASES = {
    "disk": Surface.DISK, "d": Surface.DISK, "圆盘": Surface.DISK,
    "annulus": Surface.ANNULUS, "a": Surface.ANNULUS, "环": Surface.ANNULUS,
    "pants": Surface.PANTS, "p": Surface.PANTS, "裤子": Surface.PANTS,
}

MOVE_GROUPS = {
    "omega1": [MoveKind.OMEGA1_POS, MoveKind.OMEGA1_NEG],
    "regular": [MoveKind.OMEGA2, MoveKind.OMEGA3, MoveKind.OMEGA4, MoveKind.OMEGA5],
    "all": list(MoveKind),
}

STAGE_NAMES = {stage.value.lower(): stage for stage in Stage}


def parse_surface(text: str) -> Surface:
    """
    Parse a surface name.

    解析曲面名称。
    """
    key = text.strip().lower()
    if key not in SURFACE_ALIASES:
        raise InputParseError(f"unknown surface: {text}")
    return SURFACE_ALIASES[key]


def parse_moves(text: str) -> List[MoveKind]:
    """
    Parse a comma-separated move list.

    ``omega1`` stands for both kink signs; ``regular`` for omega2..omega5.

    Raises:
        InputParseError: on an unknown move name
    """
    moves: List[MoveKind] = []
    for name in (part.strip().lower() for part in text.split(",")):
        if not name:
            continue
        if name in MOVE_GROUPS:
            chosen = MOVE_GROUPS[name]
        else:
            try:
                chosen = [MoveKind(name)]
            except ValueError:
                hints = suggest_corrections(name)
                hint = f" (did you mean {', '.join(hints)}?)" if hints else ""
                raise InputParseError(f"unknown move: {name}{hint}")
        moves.extend(m for m in chosen if m not in moves)
    if not moves:
        raise InputParseError("no moves given")
    return moves


def parse_positive(value: int, name: str) -> int:
    if value < 1:
        raise InputParseError(f"{name} must be at least 1, got {value}")
    return value


def parse_non_negative(value: int, name: str) -> int:
    if value < 0:
        raise InputParseError(f"{name} must not be negative, got {value}")
    return value


def parse_stage(text: str) -> Stage:
    key = text.strip().lower()
    if key not in STAGE_NAMES:
        raise InputParseError(f"unknown stage: {text}")
    return STAGE_NAMES[key]


def parse_word_input(text: str, surface: Surface) -> SkeinElement:
    """A word or a linear combination in the element grammar."""
    return parse_element(text, surface)


def load_diagram_file(path: str, config: Config,
                      surface: Optional[Surface] = None) -> ValidatedDiagram:
    """
    Read and validate a diagram file.

    ``surface`` overrides the file's header.

    Raises:
        InputParseError: if the file cannot be read
        DiagramError: on syntax or geometry problems
    """
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as error:
        raise InputParseError(f"cannot read {path}: {error.strerror}")
    diagram = read_diagram(text)
    if surface is not None:
        diagram = replace(diagram, surface=surface)
    return validate(diagram, config)


def suggest_corrections(invalid_name: str) -> List[str]:
    """Suggest move names close to a misspelt one."""
    known = [m.value for m in MoveKind] + list(MOVE_GROUPS)
    return difflib.get_close_matches(invalid_name, known, n=3)
