"""Starting configurations, the eight tetrahedron equations, and their
shorthand, geometric and classic renderings."""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .derive import Derivation, derive_all
from .errors import InputError, InternalError, PreconditionError
from .words import (
    Kind,
    OpLetter,
    OpWord,
    RWord,
    SpaceLabel,
    canonical_q_form,
    cycle_perm,
    format_opword,
    relabel,
    relabel_rword,
    rword,
)

log = logging.getLogger(__name__)

POINTS = (1, 2, 3, 4)
ALL_PERMS = [dict(zip(POINTS, p)) for p in itertools.permutations(POINTS)]

# Conventional order of the eight equations in double-index form.
EQUATION_NAMES = ("1,6", "2,8r", "3,4r", "4,3r", "5,7r", "1r,6r", "7,5r", "8,2r")
# Conventional order of the shorthand lines.
SHORTHAND_ORDER = ("1,6", "7,5r", "4,3r", "2,8r", "1r,6r", "5,7r", "3,4r", "8,2r")

# Renumbering that puts every bracket in increasing order, keyed by the
# first configuration in the equation name.
SHORTHAND_RENUMBERING = {
    "1": "none", "2": "(1234)", "3": "(34)", "4": "(234)",
    "5": "none", "1r": "none", "7": "(34)", "8": "(234)",
}
SHORTHAND_SIDE_EXCHANGE = frozenset({"3", "5", "8"})

# Renumbering (and side exchange) giving every S the point sets of case 1.
GEOMETRIC_RENUMBERING = {
    "1,6": ("none", False), "2,8r": ("none", False),
    "3,4r": ("(1324)", True), "4,3r": ("(132)", False),
    "5,7r": ("(1234)", True), "1r,6r": ("none", False),
    "7,5r": ("(123)", False), "8,2r": ("(14)", True),
}

# Single-index translation table of the classic equation.
CLASSIC_TABLE = {1: (1, 2), 2: (1, 3), 3: (2, 3), 4: (1, 4), 5: (2, 4), 6: (3, 4)}
CLASSIC_INDEX = {SpaceLabel(*v): k for k, v in CLASSIC_TABLE.items()}


# -- starting configurations ------------------------------------------------


@dataclass(frozen=True)
class StartingConfig:
    """A named starting word; braced factors have undetermined orientation."""

    name: str
    factors: RWord
    braced: tuple[bool, ...]
    reversed: bool = False

    @property
    def primed(self) -> bool:
        return "'" in self.name

    @property
    def number(self) -> int:
        return int(self.name[0])

    def orientations(self) -> list[RWord]:
        """Every RWord obtained by orienting the braced factors both ways."""
        choices = [
            (lab, SpaceLabel(lab.second, lab.first)) if b else (lab,)
            for lab, b in zip(self.factors, self.braced)
        ]
        words = [tuple(c) for c in itertools.product(*choices)]
        return [w[::-1] for w in words] if self.reversed else words

    def reversed_variant(self) -> "StartingConfig":
        return StartingConfig(self.name + "r", self.factors, self.braced, not self.reversed)

    def __str__(self) -> str:
        parts = [f"R{{{lab}}}" if b else f"R{lab}" for lab, b in zip(self.factors, self.braced)]
        if self.reversed:
            parts = parts[::-1]
        return " ".join(parts)


_CONFIG_TABLE = [
    ("1", "12 13 23 14 24 {34}"),
    ("1'", "12 13 23 42 41 {34}"),
    ("2'", "12 13 23 {34} 14 24"),
    ("2", "12 13 23 {34} 42 41"),
    ("3", "{34} 12 13 23 14 24"),
    ("3'", "{34} 12 13 23 42 41"),
    ("4", "42 43 12 13 23 {14}"),
    ("4'", "34 24 12 13 23 {14}"),
    ("5'", "42 43 {14} 12 13 23"),
    ("5", "34 24 {14} 12 13 23"),
    ("6", "{14} 42 43 12 13 23"),
    ("6'", "{14} 34 24 12 13 23"),
    ("7", "{24} 14 12 13 23 43"),
    ("8", "14 12 13 23 43 {24}"),
]


def _config(name: str, text: str) -> StartingConfig:
    tokens = text.split()
    braced = tuple(t.startswith("{") for t in tokens)
    return StartingConfig(name, rword(" ".join(t.strip("{}") for t in tokens)), braced)


def starting_configs(include_reversed: bool = True) -> list[StartingConfig]:
    """The 14 named configurations, followed by their reversed-start variants."""
    base = [_config(n, t) for n, t in _CONFIG_TABLE]
    if not include_reversed:
        return base
    return base + [c.reversed_variant() for c in base]


@dataclass
class ConfigResult:
    config: StartingConfig
    words: dict[RWord, list[Derivation]]

    @property
    def successful(self) -> dict[RWord, list[Derivation]]:
        return {w: ds for w, ds in self.words.items() if ds}

    @property
    def ok(self) -> bool:
        return bool(self.successful)


def analyze_config(config: StartingConfig) -> ConfigResult:
    return ConfigResult(config, {w: derive_all(w) for w in config.orientations()})


# -- equations ----------------------------------------------------------------


@dataclass(frozen=True)
class TetraEquation:
    name: str
    lhs: OpWord
    rhs: OpWord
    source: RWord | None = field(default=None, compare=False)

    def canonical(self) -> "TetraEquation":
        return TetraEquation(self.name, canonical_q_form(self.lhs), canonical_q_form(self.rhs), self.source)

    def relabel(self, perm: Mapping[int, int]) -> "TetraEquation":
        return TetraEquation(self.name, relabel(self.lhs, perm), relabel(self.rhs, perm), self.source)

    def swapped(self) -> "TetraEquation":
        return TetraEquation(self.name, self.rhs, self.lhs, self.source)

    def drop_q(self) -> "TetraEquation":
        keep = lambda w: tuple(x for x in w if x.kind is not Kind.Q)  # noqa: E731
        return TetraEquation(self.name, keep(self.lhs), keep(self.rhs), self.source)

    def same_letters(self, other: "TetraEquation") -> bool:
        a, b = self.canonical(), other.canonical()
        return a.lhs == b.lhs and a.rhs == b.rhs

    def render(self) -> str:
        return f"{format_opword(self.lhs)} = {format_opword(self.rhs)}"

    def space_multiset(self) -> tuple[list, list]:
        def ms(w):
            return sorted(sorted(str(s) for s in x.spaces) for x in w)
        return ms(self.lhs), ms(self.rhs)


def _without_q(word: OpWord) -> OpWord:
    return tuple(x for x in word if x.kind is not Kind.Q)


def equivalence_key(lhs: OpWord, rhs: OpWord) -> tuple[str, str]:
    """Canonical form under point relabeling and exchange of the two sides.

    Q letters are ignored: two starting words that differ by a swap of
    commuting factors yield equations that differ only by Q conjugation.
    """
    lhs, rhs = _without_q(lhs), _without_q(rhs)
    best = None
    for perm in ALL_PERMS:
        a = format_opword(relabel(lhs, perm))
        b = format_opword(relabel(rhs, perm))
        for cand in ((a, b), (b, a)):
            if best is None or cand < best:
                best = cand
    return best


def orient_sides(derivs: list[Derivation]) -> tuple[Derivation, Derivation]:
    """lhs = the derivation whose first triple reversal acts on points {1,2,3}."""
    if len(derivs) != 2:
        raise InternalError(f"expected 2 derivations, got {len(derivs)}")
    first = [d.first_triple() for d in derivs]
    hits = [i for i, f in enumerate(first) if f is not None and f.points == {1, 2, 3}]
    if len(hits) != 1:
        raise InternalError(f"cannot orient sides: first triples {[str(f) for f in first]}")
    i = hits[0]
    return derivs[i], derivs[1 - i]


def _config_sort_key(name: str) -> tuple[bool, int]:
    return (name.endswith("r"), int(name[0]))


@dataclass
class GenerationReport:
    configs: list[ConfigResult]
    equations: list[TetraEquation]
    groups: dict[str, list[str]]


def generate(configs: Iterable[StartingConfig] | None = None) -> GenerationReport:
    configs = list(starting_configs() if configs is None else configs)
    results = [analyze_config(c) for c in configs]

    candidates: dict[str, TetraEquation] = {}
    for res in results:
        good = res.successful
        if not good:
            continue
        if len(good) != 1:
            raise InternalError(f"config {res.config.name}: {len(good)} orientations succeed")
        (word, derivs), = good.items()
        left, right = orient_sides(derivs)
        candidates[res.config.name] = TetraEquation(res.config.name, left.word, right.word, word)

    groups: dict[tuple, list[str]] = defaultdict(list)
    for name, eq in candidates.items():
        groups[equivalence_key(eq.lhs, eq.rhs)].append(name)

    equations = []
    named_groups = {}
    for members in groups.values():
        members.sort(key=_config_sort_key)
        name = ",".join(members)
        named_groups[name] = members
        rep = candidates[members[0]]
        equations.append(TetraEquation(name, rep.lhs, rep.rhs, rep.source).canonical())

    order = {n: i for i, n in enumerate(EQUATION_NAMES)}
    if sorted(named_groups) != sorted(EQUATION_NAMES):
        raise InternalError(f"derived equation classes {sorted(named_groups)} differ from the eight expected")
    equations.sort(key=lambda e: order[e.name])
    return GenerationReport(results, equations, named_groups)


def generate_equations() -> list[TetraEquation]:
    """The eight tetrahedron equations, Q runs canonicalized, in conventional order."""
    eqs = generate().equations
    if len(eqs) != 8:
        raise InternalError(f"expected 8 equations, got {len(eqs)}")
    return eqs


# -- shorthand ------------------------------------------------------------------


def _first_config(name: str) -> str:
    return name.split(",")[0]


def shorthand_symbol(letter: OpLetter) -> str:
    """``S4``, ``S~4^-1``, ``Q3`` ... for a letter already in canonical labels."""
    pts = sorted(letter.points)
    inv = "^-1" if letter.inverted else ""
    if letter.kind is Kind.Q:
        a, b = letter.labels
        if not (a.is_normalized() and b.is_normalized()) or 1 not in a.points:
            raise InternalError(f"{letter} is not of the form Q(1i)(jk)")
        return f"Q{a.second}{inv}"
    (l,) = set(POINTS) - set(pts)
    i, j, k = pts
    want = (SpaceLabel(i, j), SpaceLabel(i, k), SpaceLabel(j, k))
    if letter.kind is Kind.S and letter.labels == want:
        return f"S{l}{inv}"
    if letter.kind is Kind.STILDE and letter.labels == want[::-1]:
        return f"S~{l}{inv}"
    raise InternalError(f"{letter} is not a shorthand letter")


def shorthand_letter(symbol: str) -> OpLetter:
    sym = symbol.strip()
    inverted = sym.endswith("^-1")
    core = sym[:-3] if inverted else sym
    try:
        idx = int(core[-1])
    except ValueError as exc:
        raise InputError(f"bad shorthand symbol {symbol!r}") from exc
    head = core[:-1]
    if head == "Q":
        if idx not in (2, 3, 4):
            raise InputError(f"bad shorthand symbol {symbol!r}")
        j, k = sorted(set((2, 3, 4)) - {idx})
        return OpLetter(Kind.Q, (SpaceLabel(1, idx), SpaceLabel(j, k)), inverted)
    if head not in ("S", "S~") or idx not in POINTS:
        raise InputError(f"bad shorthand symbol {symbol!r}")
    i, j, k = sorted(set(POINTS) - {idx})
    labs = (SpaceLabel(i, j), SpaceLabel(i, k), SpaceLabel(j, k))
    if head == "S":
        return OpLetter(Kind.S, labs, inverted)
    return OpLetter(Kind.STILDE, labs[::-1], inverted)


def format_shorthand(word: Iterable[OpLetter]) -> str:
    return " ".join(shorthand_symbol(x) for x in word)


def parse_shorthand(text: str) -> OpWord:
    return tuple(shorthand_letter(t) for t in text.split())


def render_shorthand(eq: TetraEquation) -> str:
    return f"{format_shorthand(eq.lhs)} = {format_shorthand(eq.rhs)}"


def _undesired(letter: OpLetter) -> bool:
    """Letters the shorthand form must not contain: S^-1, S~, Q^-1."""
    if letter.kind is Kind.STILDE:
        return not letter.inverted
    return letter.inverted


def apply_q_inversion_law(letter: OpLetter) -> OpLetter:
    """Q(jk)(1i) -> Q(1i)(jk)^-1, by Q(12)(34) Q(34)(12) = 1."""
    if letter.kind is Kind.Q and 1 in letter.labels[1].points:
        return OpLetter(Kind.Q, letter.labels[::-1], not letter.inverted)
    return letter


@dataclass
class Normalization:
    equation: TetraEquation
    moves: list[str]


class _Audited:
    """lhs = rhs with moves that multiply both sides by the inverse of a boundary letter."""

    def __init__(self, eq: TetraEquation):
        self.lhs = list(eq.lhs)
        self.rhs = list(eq.rhs)
        self.name = eq.name
        self.moves: list[str] = []

    def _check(self, letter: OpLetter):
        if letter.kind is Kind.S:
            raise InternalError(f"{self.name}: refusing to move {letter}; only S~ and Q letters may cross")

    def move_left_end(self, side: str) -> None:
        src, dst = (self.lhs, self.rhs) if side == "lhs" else (self.rhs, self.lhs)
        letter = src.pop(0)
        self._check(letter)
        dst.insert(0, letter.inverse())
        self.moves.append(f"left-multiply by {shorthand_symbol(letter.inverse())}")

    def move_right_end(self, side: str) -> None:
        src, dst = (self.lhs, self.rhs) if side == "lhs" else (self.rhs, self.lhs)
        letter = src.pop()
        self._check(letter)
        dst.append(letter.inverse())
        self.moves.append(f"right-multiply by {shorthand_symbol(letter.inverse())}")

    def clear(self, side: str) -> None:
        src = self.lhs if side == "lhs" else self.rhs
        while src and _undesired(src[0]):
            self.move_left_end(side)
        while src and _undesired(src[-1]):
            self.move_right_end(side)


def normalize_one(eq: TetraEquation) -> Normalization:
    first = _first_config(eq.name)
    if first not in SHORTHAND_RENUMBERING:
        raise PreconditionError(f"no shorthand renumbering for equation {eq.name!r}")
    perm = cycle_perm(SHORTHAND_RENUMBERING[first])
    eq = eq.relabel(perm)
    for x in eq.lhs + eq.rhs:
        if x.kind is not Kind.Q and not all(lab.is_normalized() for lab in x.labels):
            raise InternalError(f"{eq.name}: renumbering left an unordered bracket in {x}")
    eq = TetraEquation(
        eq.name,
        tuple(apply_q_inversion_law(x) for x in eq.lhs),
        tuple(apply_q_inversion_law(x) for x in eq.rhs),
        eq.source,
    )
    for x in eq.lhs + eq.rhs:
        shorthand_symbol(x)  # raises if outside the alphabet
    state = _Audited(eq)
    state.clear("lhs")
    state.clear("rhs")
    if any(_undesired(x) for x in state.lhs + state.rhs):
        raise InternalError(f"{eq.name}: letters to eliminate remain inside a side")
    out = TetraEquation(eq.name, tuple(state.lhs), tuple(state.rhs), eq.source)
    if first in SHORTHAND_SIDE_EXCHANGE:
        out = out.swapped()
        state.moves.append("exchange sides")
    return Normalization(out.canonical(), state.moves)


def normalize_to_shorthand(eqs: list[TetraEquation]) -> list[TetraEquation]:
    """Shorthand lines in published order."""
    by_name = {e.name: normalize_one(e).equation for e in eqs}
    if set(by_name) != set(SHORTHAND_ORDER):
        raise PreconditionError(f"need the eight equations, got {sorted(by_name)}")
    return [by_name[n] for n in SHORTHAND_ORDER]


def collapse(eq: TetraEquation) -> TetraEquation:
    """Substitute S~_l^-1 -> S_l (valid under unitarity)."""

    def sub(x: OpLetter) -> OpLetter:
        if x.kind is Kind.STILDE and x.inverted:
            return OpLetter(Kind.S, x.labels[::-1])
        return x

    return TetraEquation(eq.name, tuple(map(sub, eq.lhs)), tuple(map(sub, eq.rhs)), eq.source)


# -- geometric and classic forms ------------------------------------------------


def geometric_form(eq: TetraEquation) -> TetraEquation:
    if eq.name not in GEOMETRIC_RENUMBERING:
        raise PreconditionError(f"unknown equation {eq.name!r}")
    cyc, exchange = GEOMETRIC_RENUMBERING[eq.name]
    out = eq.relabel(cycle_perm(cyc)).drop_q()
    return out.swapped() if exchange else out


@dataclass(frozen=True)
class ClassicEquation:
    lhs: tuple[tuple[int, int, int], ...]
    rhs: tuple[tuple[int, int, int], ...]

    def render(self) -> str:
        f = lambda w: " ".join("S" + "".join(map(str, t)) for t in w)  # noqa: E731
        return f"{f(self.lhs)} = {f(self.rhs)}"


def classic_form(eq1: TetraEquation) -> ClassicEquation:
    if eq1.name != "1,6":
        raise PreconditionError(f"classic form is defined for equation 1,6, not {eq1.name!r}")

    def conv(word):
        out = []
        for x in word:
            if x.kind is Kind.Q:
                continue
            if x.kind is not Kind.S or x.inverted:
                raise PreconditionError(f"unexpected letter {x} in equation 1,6")
            out.append(tuple(CLASSIC_INDEX[lab] for lab in x.labels))
        return tuple(out)

    return ClassicEquation(conv(eq1.lhs), conv(eq1.rhs))


def parse_classic(text: str) -> ClassicEquation:
    lhs, rhs = text.split("=")
    conv = lambda s: tuple(tuple(int(c) for c in t[1:]) for t in s.split())  # noqa: E731
    return ClassicEquation(conv(lhs), conv(rhs))


# -- exhaustive scan ------------------------------------------------------------------


@dataclass
class ScanReport:
    words_scanned: int
    words_with_derivations: int
    derivation_histogram: dict[int, int]
    groups: dict[tuple, list[RWord]]

    @property
    def group_count(self) -> int:
        return len(self.groups)

    def group_of(self, word: RWord) -> tuple | None:
        for key, members in self.groups.items():
            if word in members:
                return key
        return None


def all_words() -> Iterator[RWord]:
    """All 720 orderings x 64 orientations of the six factors."""
    base = [SpaceLabel(a, b) for a, b in itertools.combinations(POINTS, 2)]
    for order in itertools.permutations(base):
        for flips in itertools.product((False, True), repeat=6):
            yield tuple(SpaceLabel(l.second, l.first) if f else l for l, f in zip(order, flips))


def derivation_key(derivs: list[Derivation]) -> tuple:
    """Canonical form of a word's set of derivations under point relabeling.

    Same notion as :func:`equivalence_key`: Q letters ignored, order of the
    derivations (i.e. the sides) irrelevant.
    """
    best = None
    for perm in ALL_PERMS:
        cand = tuple(sorted(format_opword(relabel(_without_q(d.word), perm)) for d in derivs))
        if best is None or cand < best:
            best = cand
    return best


def exhaustive_scan(min_derivations: int = 2) -> ScanReport:
    hist: dict[int, int] = defaultdict(int)
    groups: dict[tuple, list[RWord]] = defaultdict(list)
    total = 0
    nonzero = 0
    for word in all_words():
        total += 1
        derivs = derive_all(word)
        hist[len(derivs)] += 1
        if derivs:
            nonzero += 1
        if len(derivs) >= min_derivations:
            groups[derivation_key(derivs)].append(word)
    log.info("scanned %d words, %d groups", total, len(groups))
    return ScanReport(total, nonzero, dict(sorted(hist.items())), dict(sorted(groups.items())))


def relabel_group_members(word: RWord) -> list[RWord]:
    return [relabel_rword(word, p) for p in ALL_PERMS]
