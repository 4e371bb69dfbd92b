"""Search for complete order-reversing derivations of an R-word."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import InputError
from .words import (
    OpLetter,
    OpWord,
    Rule,
    RWord,
    SpaceLabel,
    apply_rule,
    canonical_q_form,
    format_opword,
    format_rword,
    match_rules,
)


@dataclass(frozen=True)
class Step:
    position: int
    rule: Rule
    letter: OpLetter


@dataclass(frozen=True)
class Derivation:
    start: RWord
    steps: tuple[Step, ...]
    end: RWord

    @property
    def word(self) -> OpWord:
        """Composed multiplier, letters in application order."""
        return tuple(s.letter for s in self.steps)

    @property
    def canonical_word(self) -> OpWord:
        return canonical_q_form(self.word)

    @property
    def triple_count(self) -> int:
        return sum(1 for s in self.steps if s.rule is not Rule.Q)

    def replay(self) -> RWord:
        w = self.start
        for s in self.steps:
            w, letter = apply_rule(w, s.position, s.rule)
            if letter != s.letter:
                raise AssertionError(f"replay emitted {letter}, recorded {s.letter}")
        return w

    def first_triple(self) -> OpLetter | None:
        for s in self.steps:
            if s.rule is not Rule.Q:
                return s.letter
        return None

    def __str__(self) -> str:
        return f"{format_rword(self.start)} => {format_opword(self.word)}"


def _validate(start: Sequence[SpaceLabel]) -> RWord:
    start = tuple(start)
    sets = [lab.points for lab in start]
    if len(set(sets)) != len(sets):
        raise InputError(f"repeated space in {format_rword(start)}")
    return start


def _raw_paths(start: RWord) -> list[tuple[Step, ...]]:
    """All reduced paths start -> reverse(start).

    State is the permutation of original factor indices.  A rule may only
    fire on a window whose original indices are still increasing, so every
    pair of factors is exchanged at most once; reaching the full reversal
    therefore inverts each pair exactly once.
    """
    n = len(start)
    target = tuple(range(n - 1, -1, -1))

    @lru_cache(maxsize=None)
    def paths(state: tuple[int, ...]) -> tuple[tuple[Step, ...], ...]:
        if state == target:
            return ((),)
        word = tuple(start[i] for i in state)
        out = []
        for pos, rule in match_rules(word):
            width = 2 if rule is Rule.Q else 3
            window = state[pos : pos + width]
            if any(a > b for a, b in zip(window, window[1:])):
                continue
            _, letter = apply_rule(word, pos, rule)
            nxt = state[:pos] + window[::-1] + state[pos + width :]
            for tail in paths(nxt):
                out.append((Step(pos, rule, letter),) + tail)
        return tuple(out)

    return list(paths(tuple(range(n))))


def derive_all(start: Sequence[SpaceLabel]) -> list[Derivation]:
    """Complete derivations of ``start`` into its reversal, one per distinct
    composed operator word after Q-run canonicalization.

    Order: by first appearance in the depth-first search (which tries rules
    left to right, S/S~ before Q at the same position).
    """
    start = _validate(start)
    end = start[::-1]
    seen: dict[OpWord, Derivation] = {}
    for steps in _raw_paths(start):
        d = Derivation(start, steps, end)
        seen.setdefault(d.canonical_word, d)
    return list(seen.values())


def count_raw_paths(start: Sequence[SpaceLabel]) -> int:
    return len(_raw_paths(_validate(start)))
