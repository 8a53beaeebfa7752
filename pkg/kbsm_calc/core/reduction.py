"""
Rewriting engine from general words to the free basis.

Four stages are applied in order: semi-reduced (srr), reduced (rr),
quasi-final (qf) and final (f). Every word has at most one applicable
stage, the first whose predicate it fails, so a single step function
drives all of them and a stage limit stops the recursion early.

y, z and t chains are rewritten independently; t chains mirror y chains
with the outer boundary in the role of the puncture.

四阶段重写引擎：srr → rr → qf → f。
"""

import logging
import threading
from dataclasses import dataclass
from itertools import chain as _concat
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .config import Config
from .enums import LetterKind, RuleId, Stage, Surface
from .events import RewriteTrace, create_rewrite_step
from .ring import LaurentPoly
from .words import (
    X_LETTER,
    Chains,
    ChainPairs,
    GeneralWord,
    Letter,
    SkeinElement,
    from_chains,
    is_final,
    is_quasi_final,
    to_chains,
)

LOG = logging.getLogger(__name__)

STAGE_ORDER = (Stage.SRR, Stage.RR, Stage.QF, Stage.F)
_CHAIN_KINDS = (LetterKind.Y, LetterKind.Z, LetterKind.T)

_A2 = LaurentPoly.monomial(2)
_A_2 = LaurentPoly.monomial(-2)
_TWO = LaurentPoly.constant(2)


class TerminationError(RuntimeError):
    """A rewrite step failed to decrease its stage's termination measure."""


def stage_rank(stage: Stage) -> int:
    return STAGE_ORDER.index(stage)


# ---------------------------------------------------------------------------
# Semi-reduced stage
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SrrSite:
    """Where an srr rule applies: letter ``index`` of the ``kind`` chain."""
    rule: RuleId
    kind: LetterKind
    index: int


def _place_after(chains: Chains, kind: LetterKind, index: int, count: int) -> Chains:
    """Put ``count`` x's right after letter ``index``: next run of the chain, or central."""
    pairs = list(chains.chain(kind))
    if index + 1 < len(pairs):
        before, arrows = pairs[index + 1]
        pairs[index + 1] = (before + count, arrows)
        return chains.with_chain(kind, tuple(pairs))
    return Chains(y=chains.y, z=chains.z, t=chains.t, central=chains.central + count)


def _set_letter(chains: Chains, kind: LetterKind, index: int,
                before: int, arrows: int) -> Chains:
    pairs = list(chains.chain(kind))
    pairs[index] = (before, arrows)
    return chains.with_chain(kind, tuple(pairs))


def srr_sites(chains: Chains) -> List[SrrSite]:
    """
    All admissible srr sites in strategy order.

    Negative arrows first, then arrows above one, then x-pushes; leftmost
    first within each class.
    """
    negatives, excess, pushes = [], [], []
    for kind in _CHAIN_KINDS:
        for index, (before, arrows) in enumerate(chains.chain(kind)):
            if arrows < 0:
                negatives.append(SrrSite(RuleId.SRR_4, kind, index))
            elif arrows > 1:
                excess.append(SrrSite(RuleId.SRR_3, kind, index))
            if before > 0:
                pushes.append(SrrSite(RuleId.SRR_2, kind, index))
    return negatives + excess + pushes


def rewrite_sites(word: GeneralWord) -> List[SrrSite]:
    return srr_sites(to_chains(word))


def apply_srr(chains: Chains, site: SrrSite) -> SkeinElement:
    """Apply one srr rule at ``site``."""
    before, arrows = chains.chain(site.kind)[site.index]
    kind, index = site.kind, site.index
    if site.rule is RuleId.SRR_2:
        if before < 1:
            raise ValueError(f"no x before letter {index} of the {kind.value} chain")
        first = _set_letter(chains, kind, index, before - 1, arrows + 1)
        second = _place_after(_set_letter(chains, kind, index, before - 1, arrows),
                              kind, index, 1)
        return _combine([(LaurentPoly.from_dict({4: -1, 0: 1}), first), (_A_2, second)])
    if site.rule is RuleId.SRR_3:
        first = _place_after(_set_letter(chains, kind, index, before, arrows - 1),
                             kind, index, 1)
        second = _set_letter(chains, kind, index, before, arrows - 2)
        return _combine([(LaurentPoly.monomial(-2, -1), first),
                         (LaurentPoly.monomial(2, -1), second)])
    if site.rule is RuleId.SRR_4:
        first = _place_after(_set_letter(chains, kind, index, before, arrows + 1),
                             kind, index, 1)
        second = _set_letter(chains, kind, index, before, arrows + 2)
        return _combine([(LaurentPoly.monomial(-4, -1), first),
                         (LaurentPoly.monomial(-2, -1), second)])
    raise ValueError(f"{site.rule.value} is not an srr rule")


def _combine(terms: Sequence[Tuple[LaurentPoly, Chains]]) -> SkeinElement:
    return SkeinElement(tuple((from_chains(c), coeff) for coeff, c in terms))


def srr_measure(word: GeneralWord) -> int:
    """
    Potential that every srr rule strictly lowers.

    An x in the run of a letter with r letters still to pass weighs 3^r;
    each unit of arrow excess outside {0, 1} weighs 2*3^(r-1).
    """
    chains = to_chains(word)
    total = 0
    for kind in _CHAIN_KINDS:
        pairs = chains.chain(kind)
        for index, (before, arrows) in enumerate(pairs):
            remaining = len(pairs) - index
            excess = arrows - 1 if arrows > 1 else (-arrows if arrows < 0 else 0)
            total += before * 3 ** remaining + 2 * excess * 3 ** (remaining - 1)
    return total


# ---------------------------------------------------------------------------
# Reduced stage
# ---------------------------------------------------------------------------

def _rr_site(chains: Chains) -> Optional[Tuple[RuleId, LetterKind, int]]:
    for kind in _CHAIN_KINDS:
        pairs = chains.chain(kind)
        for index in range(len(pairs) - 1):
            if pairs[index][1] == 1:
                rule = RuleId.RR_PRIME_PLAIN if pairs[index + 1][1] == 0 else RuleId.RR_PRIME_PRIME
                return rule, kind, index
    return None


def _drop_two(chains: Chains, kind: LetterKind, index: int, x_count: int) -> Chains:
    """Remove letters index, index+1 and leave ``x_count`` x's in their place."""
    pairs = chains.chain(kind)
    kept = pairs[:index] + pairs[index + 2:]
    dropped = chains.with_chain(kind, kept)
    if x_count == 0:
        return dropped
    if index < len(kept):
        before, arrows = kept[index]
        return dropped.with_chain(kind, kept[:index] + ((before + x_count, arrows),) + kept[index + 1:])
    return Chains(y=dropped.y, z=dropped.z, t=dropped.t, central=dropped.central + x_count)


def _replace_two(chains: Chains, kind: LetterKind, index: int,
                 first: int, second: int) -> Chains:
    pairs = chains.chain(kind)
    new_pairs = pairs[:index] + ((0, first), (0, second)) + pairs[index + 2:]
    return chains.with_chain(kind, new_pairs)


def apply_rr(chains: Chains, rule: RuleId, kind: LetterKind, index: int) -> SkeinElement:
    """Apply an rr rule to the prime at ``index`` and the letter after it."""
    if rule is RuleId.RR_PRIME_PLAIN:
        return _combine([
            (LaurentPoly.from_dict({-4: -1, 0: 1}), _drop_two(chains, kind, index, 1)),
            (_A2, _replace_two(chains, kind, index, 0, 1)),
        ])
    if rule is RuleId.RR_PRIME_PRIME:
        return _combine([
            (LaurentPoly.monomial(-2, -1), _drop_two(chains, kind, index, 2)),
            (LaurentPoly.from_dict({4: 2, 0: 2}), _drop_two(chains, kind, index, 0)),
            (_A2, _replace_two(chains, kind, index, 0, 2)),
        ])
    raise ValueError(f"{rule.value} is not an rr rule")


def _letter_count(word: GeneralWord) -> int:
    return sum(1 for letter in word.tokens if not letter.is_x)


def rr_measure(word: GeneralWord) -> Tuple[int, int]:
    """(y/z/t letters, sum of 2^(letters after it) over primes)."""
    chains = to_chains(word)
    weight = 0
    for kind in _CHAIN_KINDS:
        pairs = chains.chain(kind)
        for index, (_, arrows) in enumerate(pairs):
            if arrows == 1:
                weight += 2 ** (len(pairs) - 1 - index)
    return _letter_count(word), weight


# ---------------------------------------------------------------------------
# Quasi-final and final stages
# ---------------------------------------------------------------------------

def _rep(kind: LetterKind, count: int, arrows: int = 0) -> Tuple[Letter, ...]:
    if count < 0:
        raise ValueError(f"negative letter power for {kind.value}")
    return (Letter(kind, arrows),) * count


def _xs(count: int) -> Tuple[Letter, ...]:
    return (X_LETTER,) * count


def _word(*groups: Sequence[Letter]) -> GeneralWord:
    return GeneralWord(tuple(_concat.from_iterable(groups)))


def _Y(count, arrows=0):
    return _rep(LetterKind.Y, count, arrows)


def _Z(count, arrows=0):
    return _rep(LetterKind.Z, count, arrows)


def _T(count, arrows=0):
    return _rep(LetterKind.T, count, arrows)


@dataclass(frozen=True)
class ReducedShape:
    """Exponents of a reduced word y^a y'^a1 z^b z'^b1 t^c t'^c1 x^d."""
    a: int
    a1: int
    b: int
    b1: int
    c: int
    c1: int
    d: int


def reduced_shape(word: GeneralWord) -> ReducedShape:
    chains = to_chains(word)

    def split(pairs: ChainPairs) -> Tuple[int, int]:
        if pairs and pairs[-1][1] == 1:
            return len(pairs) - 1, 1
        return len(pairs), 0

    a, a1 = split(chains.y)
    b, b1 = split(chains.z)
    c, c1 = split(chains.t)
    return ReducedShape(a, a1, b, b1, c, c1, chains.central)


def _abc(p: GeneralWord, q: GeneralWord, r: GeneralWord) -> SkeinElement:
    """A^2 P + 2 Q + A^-2 R."""
    return SkeinElement(((p, _A2), (q, _TWO), (r, _A_2)))


def qf_rule(word: GeneralWord, qf5_variant: str = "corrected") -> Tuple[RuleId, SkeinElement]:
    """
    One quasi-final step for a reduced, non-quasi-final word.

    Raises:
        ValueError: if the word is not of a rewritable shape
    """
    s = reduced_shape(word)
    a, b, c, d = s.a, s.b, s.c, s.d
    tail_t = _T(c) + _T(s.c1, 1)
    if s.a1 and s.b1:
        return RuleId.QF_3, _abc(
            _word(_Y(a + 1), _Z(b + 1), tail_t, _xs(d)),
            _word(_Y(a), _Z(b), tail_t, _xs(d), _T(1)),
            _word(_Y(a), _Z(b), tail_t, _xs(d), _T(1, -1), _xs(1)),
        )
    if s.a1 and b > 0:
        return RuleId.QF_2, _abc(
            _word(_Y(a + 1), _Z(b - 1), _Z(1, -1), tail_t, _xs(d)),
            _word(_Y(a), _Z(b - 1), tail_t, _xs(d), _T(1, 1)),
            _word(_Y(a), _Z(b - 1), tail_t, _xs(d), _T(1), _xs(1)),
        )
    if s.a1 and s.c1:
        if qf5_variant == "verbatim":
            if c < 1:
                raise ValueError("the verbatim form of QF.5 needs at least one plain t")
            kept = c - 1
        else:
            kept = c
        return RuleId.QF_5, _abc(
            _word(_Y(a + 1), _T(c + 1), _xs(d)),
            _word(_Y(a), _xs(d), _Z(1), _T(kept)),
            _word(_Y(a), _xs(d), _Z(1, -1), _T(kept), _xs(1)),
        )
    if s.a1 and c > 0:
        return RuleId.QF_4, _abc(
            _word(_Y(a + 1), _T(c - 1), _T(1, -1), _xs(d)),
            _word(_Y(a), _xs(d), _Z(1, 1), _T(c - 1)),
            _word(_Y(a), _xs(d), _Z(1), _T(c - 1), _xs(1)),
        )
    if s.b1 and s.c1:
        return RuleId.QF_7, _abc(
            _word(_Y(a), _Z(b + 1), _T(c + 1), _xs(d)),
            _word(_Y(a), _xs(d), _Y(1), _Z(b), _T(c)),
            _word(_Y(a), _xs(d), _Y(1, -1), _Z(b), _T(c), _xs(1)),
        )
    if s.b1 and c > 0:
        return RuleId.QF_6, _abc(
            _word(_Y(a), _Z(b + 1), _T(c - 1), _T(1, -1), _xs(d)),
            _word(_Y(a), _xs(d), _Y(1, 1), _Z(b), _T(c - 1)),
            _word(_Y(a), _xs(d), _Y(1), _Z(b), _T(c - 1), _xs(1)),
        )
    raise ValueError(f"no quasi-final rule applies to {word}")


def f_rule(word: GeneralWord) -> Tuple[RuleId, SkeinElement]:
    """
    One final step for a quasi-final word containing all four letter types.

    Raises:
        ValueError: if the word is not of a rewritable shape
    """
    s = reduced_shape(word)
    if s.a1 or s.b1 or not (s.a and s.b and (s.c or s.c1) and s.d):
        raise ValueError(f"no final rule applies to {word}")
    a, b, c, d = s.a, s.b, s.c, s.d - 1
    two_a2 = LaurentPoly.monomial(2, 2)
    one = LaurentPoly.constant(1)
    if not s.c1:
        terms = (
            (_word(_Y(a), _Z(b), _T(c - 1), _T(1, 1), _xs(d)), LaurentPoly.monomial(2, -2)),
            (_word(_Y(a - 1), _Z(b), _xs(d), _Z(1, 1), _T(c - 1)), two_a2),
            (_word(_Y(a - 1), _Z(b), _xs(d), _Z(1), _T(c - 1), _xs(1)), one),
            (_word(_Y(a), _xs(d), _Y(1, 1), _Z(b - 1), _T(c - 1)), two_a2),
            (_word(_Y(a), _xs(d), _Y(1), _Z(b - 1), _T(c - 1), _xs(1)), one),
            (_word(_Y(a - 1), _Z(b - 1), _T(c), _xs(d), _T(1, 1)), -two_a2),
            (_word(_Y(a - 1), _Z(b - 1), _T(c), _xs(d), _T(1), _xs(1)), -one),
        )
        return RuleId.F_2, SkeinElement(terms)
    terms = (
        (_word(_Y(a), _Z(b), _T(c + 1), _xs(d)), LaurentPoly.monomial(4, -2)),
        (_word(_Y(a), _xs(d), _Y(1), _Z(b - 1), _T(c)), -two_a2),
        (_word(_Y(a), _xs(d), _Y(1, -1), _Z(b - 1), _T(c), _xs(1)), -one),
        (_word(_Y(a - 1), _Z(b - 1), _T(c), _T(1, 1), _xs(d), _T(1, 1)), two_a2),
        (_word(_Y(a - 1), _Z(b - 1), _T(c), _T(1, 1), _xs(d), _T(1), _xs(1)), one),
        (_word(_Y(a - 1), _Z(b), _xs(d), _Z(1), _T(c)), -two_a2),
        (_word(_Y(a - 1), _Z(b), _xs(d), _Z(1, -1), _T(c), _xs(1)), -one),
    )
    return RuleId.F_3, SkeinElement(terms)


def qf_measure(word: GeneralWord) -> Tuple[int, int]:
    """(y/z/t letters, sum of 3 - chain rank over primes)."""
    chains = to_chains(word)
    weight = 0
    for kind in _CHAIN_KINDS:
        weight += sum(3 - kind.chain_rank for _, arrows in chains.chain(kind) if arrows == 1)
    return _letter_count(word), weight


def f_measure(word: GeneralWord) -> Tuple[int, int]:
    """(y/z/t letters, x letters)."""
    return _letter_count(word), word.x_count


# ---------------------------------------------------------------------------
# Single step dispatch
# ---------------------------------------------------------------------------

def rewrite_step(word: GeneralWord,
                 qf5_variant: str = "corrected") -> Optional[Tuple[RuleId, SkeinElement]]:
    """
    The strategy's rewrite of ``word``, or None if it is final.

    决定下一步重写：先 srr，再 rr，再 qf，最后 f。
    """
    chains = to_chains(word)
    sites = srr_sites(chains)
    if sites:
        return sites[0].rule, apply_srr(chains, sites[0])
    rr = _rr_site(chains)
    if rr is not None:
        rule, kind, index = rr
        return rule, apply_rr(chains, rule, kind, index)
    if not is_quasi_final(word):
        return qf_rule(word, qf5_variant)
    if not is_final(word):
        return f_rule(word)
    return None


def apply_rule(word: GeneralWord, site: SrrSite) -> SkeinElement:
    """Apply an srr rule at an explicit site, whatever the strategy would pick."""
    return apply_srr(to_chains(word), site)


_MEASURES = {
    Stage.SRR: srr_measure,
    Stage.RR: rr_measure,
    Stage.QF: qf_measure,
    Stage.F: f_measure,
}


class Reducer:
    """
    Memoised normal-form engine.

    The cache maps (stage limit, word) to the reduced element; single
    rewrite steps are memoised per word. Both tables are guarded by a lock;
    concurrent callers may compute the same entry twice but always store
    identical values. Traces are per call: the derivation is replayed from
    the step table, so a traced call reuses everything already cached.
    """

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config.default()
        self.config.validate()
        self._cache: Dict[Tuple[Stage, GeneralWord], SkeinElement] = {}
        self._steps: Dict[GeneralWord, Optional[Tuple[RuleId, SkeinElement]]] = {}
        self._lock = threading.Lock()

    def cache_size(self) -> int:
        with self._lock:
            return len(self._cache)

    def _step(self, word: GeneralWord) -> Optional[Tuple[RuleId, SkeinElement]]:
        with self._lock:
            if word in self._steps:
                return self._steps[word]
        step = rewrite_step(word, self.config.qf5_variant)
        with self._lock:
            self._steps.setdefault(word, step)
        return step

    def _step_within(self, word: GeneralWord,
                     limit: Stage) -> Optional[Tuple[RuleId, SkeinElement]]:
        step = self._step(word)
        if step is None or stage_rank(step[0].stage) > stage_rank(limit):
            return None
        return step

    def reduce_word(self, word: GeneralWord, limit: Stage = Stage.F) -> SkeinElement:
        key = (limit, word)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        step = self._step_within(word, limit)
        if step is None:
            result = SkeinElement.from_word(word)
        else:
            rule, image = step
            LOG.debug("%s : %s => %s", rule.value, word, image)
            if self.config.check_termination:
                self._check_measure(rule, word, image)
            result = image.map_words(lambda w: self.reduce_word(w, limit))
        with self._lock:
            self._cache.setdefault(key, result)
        return result

    def reduce(self, element: SkeinElement, limit: Stage = Stage.F,
               trace: Optional[RewriteTrace] = None) -> SkeinElement:
        result = element.map_words(lambda w: self.reduce_word(w, limit))
        if trace is not None:
            seen: Set[GeneralWord] = set()
            for word in element.words():
                self._record(word, limit, trace, seen)
        return result

    def _record(self, word: GeneralWord, limit: Stage, trace: RewriteTrace,
                seen: Set[GeneralWord]) -> None:
        """Add the first application of a rule to each word of the derivation."""
        if word in seen:
            return
        seen.add(word)
        step = self._step_within(word, limit)
        if step is None:
            return
        rule, image = step
        trace.add_step(create_rewrite_step(rule, word, image))
        for successor in image.words():
            self._record(successor, limit, trace, seen)

    def _check_measure(self, rule: RuleId, word: GeneralWord, image: SkeinElement) -> None:
        stage = rule.stage
        measure = _MEASURES[stage]
        bound = measure(word)
        if stage is Stage.SRR:
            successors = image.words()
        else:
            lower = STAGE_ORDER[stage_rank(stage) - 1]
            successors = self.reduce(image, lower).words()
        for successor in successors:
            if not measure(successor) < bound:
                raise TerminationError(
                    f"{rule.value} on {word} produced {successor} "
                    f"with measure {measure(successor)} >= {bound}"
                )

    def reduce_srr(self, element: SkeinElement,
                   trace: Optional[RewriteTrace] = None) -> SkeinElement:
        return self.reduce(element, Stage.SRR, trace)

    def reduce_rr(self, element: SkeinElement,
                  trace: Optional[RewriteTrace] = None) -> SkeinElement:
        return self.reduce(element, Stage.RR, trace)

    def reduce_qf(self, element: SkeinElement,
                  trace: Optional[RewriteTrace] = None) -> SkeinElement:
        return self.reduce(element, Stage.QF, trace)

    def reduce_f(self, element: SkeinElement,
                 trace: Optional[RewriteTrace] = None) -> SkeinElement:
        return self.reduce(element, Stage.F, trace)

    def normal_form(self, element: SkeinElement, surface: Surface,
                    trace: Optional[RewriteTrace] = None) -> SkeinElement:
        """
        Normal form over the surface's basis.

        Raises:
            AlphabetError: if a word uses letters unavailable on ``surface``
        """
        for word in element.words():
            word.check_alphabet(surface)
        return self.reduce(element, Stage.F, trace)


_DEFAULT_REDUCER: Optional[Reducer] = None
_DEFAULT_LOCK = threading.Lock()


def default_reducer() -> Reducer:
    global _DEFAULT_REDUCER
    with _DEFAULT_LOCK:
        if _DEFAULT_REDUCER is None:
            _DEFAULT_REDUCER = Reducer()
        return _DEFAULT_REDUCER


_SHARED: Dict[Tuple[str, bool], Reducer] = {}


def shared_reducer(config: Optional[Config] = None) -> Reducer:
    """The process-wide reducer for the settings of ``config``."""
    if config is None:
        return default_reducer()
    # reduction only depends on these two settings
    key = (config.qf5_variant, config.check_termination)
    with _DEFAULT_LOCK:
        if key not in _SHARED:
            _SHARED[key] = Reducer(config)
        return _SHARED[key]


def _as_element(value) -> SkeinElement:
    if isinstance(value, GeneralWord):
        return SkeinElement.from_word(value)
    return value


def reduce_srr(value, config: Optional[Config] = None,
               trace: Optional[RewriteTrace] = None) -> SkeinElement:
    return shared_reducer(config).reduce_srr(_as_element(value), trace)


def reduce_rr(value, config: Optional[Config] = None,
              trace: Optional[RewriteTrace] = None) -> SkeinElement:
    return shared_reducer(config).reduce_rr(_as_element(value), trace)


def reduce_qf(value, config: Optional[Config] = None,
              trace: Optional[RewriteTrace] = None) -> SkeinElement:
    return shared_reducer(config).reduce_qf(_as_element(value), trace)


def reduce_f(value, config: Optional[Config] = None,
             trace: Optional[RewriteTrace] = None) -> SkeinElement:
    return shared_reducer(config).reduce_f(_as_element(value), trace)


def normal_form(value, surface: Surface, config: Optional[Config] = None,
                trace: Optional[RewriteTrace] = None) -> SkeinElement:
    """Normal form of a word or element in the basis of ``surface``."""
    return shared_reducer(config).normal_form(_as_element(value), surface, trace)


def kbsm_bracket(diagram, config: Optional[Config] = None,
                 trace: Optional[RewriteTrace] = None) -> SkeinElement:
    """
    The full invariant: state sum, refinement, then normal form.

    ``diagram`` is a ValidatedDiagram.
    """
    from .state_sum import bracket_raw, refine

    table = bracket_raw(diagram)
    element = SkeinElement.zero()
    for forest, coeff in table.items():
        element = element + refine(forest).scale(coeff)
    return normal_form(element, diagram.surface, config, trace)
