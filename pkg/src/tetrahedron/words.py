"""Words of R-factors, operator letters, and the three reversal rules.

An R-word is a tuple of :class:`SpaceLabel`.  Rewriting never changes the
orientation of a label, only its position.  Each rewrite emits an operator
letter; a derivation composes them left to right in application order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError, PreconditionError


@dataclass(frozen=True, order=True)
class SpaceLabel:
    first: int
    second: int

    def __post_init__(self):
        if self.first == self.second:
            raise InputError(f"degenerate label ({self.first}{self.second})")

    @classmethod
    def parse(cls, text: str) -> "SpaceLabel":
        text = text.strip().strip("()R{}")
        if len(text) != 2 or not text.isdigit():
            raise InputError(f"bad space label {text!r}")
        return cls(int(text[0]), int(text[1]))

    @property
    def points(self) -> frozenset[int]:
        return frozenset((self.first, self.second))

    def normalized(self) -> "SpaceLabel":
        return self if self.first < self.second else SpaceLabel(self.second, self.first)

    def is_normalized(self) -> bool:
        return self.first < self.second

    def relabel(self, perm: Mapping[int, int]) -> "SpaceLabel":
        return SpaceLabel(perm[self.first], perm[self.second])

    def __str__(self) -> str:
        return f"{self.first}{self.second}"


RWord = tuple[SpaceLabel, ...]


def rword(text: str) -> RWord:
    """Parse ``"12 13 23 14 24 34"`` (separators: spaces, dots, commas)."""
    parts = [p for p in re.split(r"[\s.,·]+", text.strip()) if p]
    return tuple(SpaceLabel.parse(p) for p in parts)


def format_rword(word: Iterable[SpaceLabel]) -> str:
    return " ".join(f"R{lab}" for lab in word)


class Kind(str, enum.Enum):
    S = "S"
    STILDE = "S~"
    Q = "Q"


def is_s_pattern(a: SpaceLabel, b: SpaceLabel, c: SpaceLabel) -> bool:
    """(ij)(ik)(jk) on three distinct points."""
    i, j = a.first, a.second
    return b.first == i and c.first == j and b.second == c.second and b.second not in (i, j)


def is_stilde_pattern(a: SpaceLabel, b: SpaceLabel, c: SpaceLabel) -> bool:
    """(jk)(ik)(ij) on three distinct points."""
    j, k = a.first, a.second
    return b.second == k and c.second == j and b.first == c.first and b.first not in (j, k)


def is_q_pattern(a: SpaceLabel, b: SpaceLabel) -> bool:
    return not (a.points & b.points)


@dataclass(frozen=True)
class OpLetter:
    kind: Kind
    labels: tuple[SpaceLabel, ...]
    inverted: bool = False

    def __post_init__(self):
        n = 2 if self.kind is Kind.Q else 3
        if len(self.labels) != n:
            raise InputError(f"{self.kind.value} letter needs {n} labels, got {len(self.labels)}")
        ok = {
            Kind.S: lambda: is_s_pattern(*self.labels),
            Kind.STILDE: lambda: is_stilde_pattern(*self.labels),
            Kind.Q: lambda: is_q_pattern(*self.labels),
        }[self.kind]()
        if not ok:
            raise InputError(f"labels {self.labels_str()} do not fit a {self.kind.value} letter")

    @classmethod
    def parse(cls, text: str) -> "OpLetter":
        m = re.fullmatch(r"\s*(S~|S|Q)((?:\(\d\d\))+)(\^-1)?\s*", text)
        if not m:
            raise InputError(f"bad operator letter {text!r}")
        labels = tuple(SpaceLabel.parse(x) for x in re.findall(r"\((\d\d)\)", m.group(2)))
        return cls(Kind(m.group(1)), labels, m.group(3) is not None)

    @property
    def spaces(self) -> frozenset[SpaceLabel]:
        """Normalized labels of the spaces the letter acts on."""
        return frozenset(lab.normalized() for lab in self.labels)

    @property
    def points(self) -> frozenset[int]:
        return frozenset().union(*(lab.points for lab in self.labels))

    def inverse(self) -> "OpLetter":
        return OpLetter(self.kind, self.labels, not self.inverted)

    def relabel(self, perm: Mapping[int, int]) -> "OpLetter":
        return OpLetter(self.kind, tuple(lab.relabel(perm) for lab in self.labels), self.inverted)

    def labels_str(self) -> str:
        return "".join(f"({lab})" for lab in self.labels)

    def __str__(self) -> str:
        return f"{self.kind.value}{self.labels_str()}{'^-1' if self.inverted else ''}"


OpWord = tuple[OpLetter, ...]


def opword(text: str) -> OpWord:
    return tuple(OpLetter.parse(t) for t in text.split())


def format_opword(word: Iterable[OpLetter]) -> str:
    return " ".join(str(x) for x in word)


class Rule(str, enum.Enum):
    S = "S"
    STILDE = "S~"
    Q = "Q"


def match_rules(word: Sequence[SpaceLabel]) -> list[tuple[int, Rule]]:
    """Every (position, rule) applicable to ``word``."""
    out = []
    for p in range(len(word) - 1):
        if p + 2 < len(word):
            a, b, c = word[p : p + 3]
            if is_s_pattern(a, b, c):
                out.append((p, Rule.S))
            elif is_stilde_pattern(a, b, c):
                out.append((p, Rule.STILDE))
        if is_q_pattern(word[p], word[p + 1]):
            out.append((p, Rule.Q))
    return out


def apply_rule(word: Sequence[SpaceLabel], position: int, rule: Rule) -> tuple[RWord, OpLetter]:
    word = tuple(word)
    width = 2 if rule is Rule.Q else 3
    window = word[position : position + width]
    if position < 0 or len(window) != width:
        raise PreconditionError(f"position {position} out of range for rule {rule.value}")
    check = {
        Rule.S: is_s_pattern,
        Rule.STILDE: is_stilde_pattern,
        Rule.Q: is_q_pattern,
    }[rule]
    if not check(*window):
        raise PreconditionError(
            f"rule {rule.value} does not apply at {position} of {format_rword(word)}"
        )
    letter = OpLetter(Kind(rule.value), window)
    new = word[:position] + window[::-1] + word[position + width :]
    return new, letter


# -- Q runs ---------------------------------------------------------------


def _q_key(letter: OpLetter) -> tuple:
    return tuple(sorted((lab.normalized().first, lab.normalized().second) for lab in letter.labels))


def _trace_normal_form(run: list[OpLetter]) -> list[OpLetter]:
    """Lexicographically least word reachable by swapping adjacent disjoint letters."""
    rest = list(run)
    out = []
    while rest:
        # a letter can move to the front iff it commutes with everything before it
        free = [i for i, x in enumerate(rest) if all(not (x.spaces & y.spaces) for y in rest[:i])]
        best = min(free, key=lambda i: _q_key(rest[i]))
        out.append(rest.pop(best))
    return out


def canonical_q_form(word: Iterable[OpLetter]) -> OpWord:
    """Normal form of each maximal stretch of Q letters.

    Q letters commute when they act on disjoint sets of spaces.  Two words
    that differ only by such swaps inside a Q stretch map to the same output,
    and the map is idempotent.
    """
    out: list[OpLetter] = []
    run: list[OpLetter] = []
    for letter in word:
        if letter.kind is Kind.Q:
            run.append(letter)
            continue
        out.extend(_trace_normal_form(run))
        run.clear()
        out.append(letter)
    out.extend(_trace_normal_form(run))
    return tuple(out)


def relabel(word: Iterable[OpLetter], perm: Mapping[int, int]) -> OpWord:
    """Replace every point index via ``perm`` (a bijection given as a mapping)."""
    perm = dict(perm)
    if sorted(perm) != sorted(perm.values()):
        raise InputError(f"not a bijection: {perm}")
    return tuple(letter.relabel(perm) for letter in word)


def relabel_rword(word: Iterable[SpaceLabel], perm: Mapping[int, int]) -> RWord:
    return tuple(lab.relabel(perm) for lab in word)


def cycle_perm(text: str, points: Iterable[int] = (1, 2, 3, 4)) -> dict[int, int]:
    """Cycle notation, e.g. ``"(1324)"`` maps 1->3, 3->2, 2->4, 4->1.

    ``"none"`` or ``""`` is the identity; several cycles may be juxtaposed.
    """
    perm = {p: p for p in points}
    text = text.strip()
    if text in ("", "none", "()"):
        return perm
    cycles = re.findall(r"\(([^)]*)\)", text)
    if not cycles or "".join(f"({c})" for c in cycles) != text.replace(" ", ""):
        raise InputError(f"bad cycle notation {text!r}")
    for cyc in cycles:
        items = [int(ch) for ch in cyc if ch.isdigit()]
        for a, b in zip(items, items[1:] + items[:1]):
            perm[a] = b
    return perm
