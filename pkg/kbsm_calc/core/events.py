"""
Rewrite trace for the reduction engine.

Each rule application is recorded as a RewriteStep; the trace can be
filtered, printed and replayed.
重写轨迹：记录、过滤、打印与回放。
"""

from dataclasses import dataclass
from typing import Dict, List

from .enums import RuleId, Stage
from .words import GeneralWord, SkeinElement


@dataclass(frozen=True)
class RewriteStep:
    """
    One rule application: ``word`` was replaced by ``result``.

    一次重写：word 被替换为 result（未继续归约）。
    """
    rule: RuleId
    word: GeneralWord
    result: SkeinElement


def create_rewrite_step(rule: RuleId, word: GeneralWord, result: SkeinElement) -> RewriteStep:
    return RewriteStep(rule=rule, word=word, result=result)


class RewriteTrace:
    """
    Ordered record of rewrite steps.

    用于管理和过滤重写步骤的工具类。
    """

    def __init__(self):
        self.steps: List[RewriteStep] = []

    def add_step(self, step: RewriteStep) -> None:
        """Add a step to the trace."""
        self.steps.append(step)

    def add_steps(self, steps: List[RewriteStep]) -> None:
        self.steps.extend(steps)

    def get_steps_by_rule(self, rule: RuleId) -> List[RewriteStep]:
        """Get all steps of a specific rule."""
        return [step for step in self.steps if step.rule == rule]

    def get_steps_by_stage(self, stage: Stage) -> List[RewriteStep]:
        """Get all steps belonging to a reduction stage."""
        return [step for step in self.steps if step.rule.stage == stage]

    def clear(self) -> None:
        self.steps.clear()

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, word: GeneralWord) -> SkeinElement:
        """
        Re-derive the normal form of ``word`` from the recorded steps alone.

        Words without a recorded step are taken as already normal.
        仅用已记录的步骤重新推导 word 的标准形。
        """
        table: Dict[GeneralWord, SkeinElement] = {}
        for step in self.steps:
            table.setdefault(step.word, step.result)
        memo: Dict[GeneralWord, SkeinElement] = {}

        def expand(current: GeneralWord) -> SkeinElement:
            if current in memo:
                return memo[current]
            if current not in table:
                value = SkeinElement.from_word(current)
            else:
                value = table[current].map_words(expand)
            memo[current] = value
            return value

        return expand(word)

    def format_lines(self) -> List[str]:
        return [format_step(step) for step in self.steps]


def format_step(step: RewriteStep) -> str:
    """Format a step as ``RULE <id> : <word> => <element>``."""
    return f"RULE {step.rule.value} : {step.word} => {step.result}"
