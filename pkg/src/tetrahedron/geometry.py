"""Four-line arrangements, sweep orders and the triangle orientation rule.

Directions are angles of the sweep *motion*: a line perpendicular to
``(cos t, sin t)`` moves along that vector, so it hits vertices in order
of increasing projection.  The y axis points up.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .bruhat import AdmissibleOrder, BruhatClass, bruhat_classes, class_of, is_admissible
from .errors import DegeneracyError, InputError, InternalError, PreconditionError, TieError
from .words import Kind, OpLetter, SpaceLabel

ANGLE_EPS = 1e-9
GEOM_EPS = 1e-9
TRIANGLES = ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))


@dataclass(frozen=True)
class Line:
    """``a x + b y = c``."""

    id: int
    a: float
    b: float
    c: float

    def __post_init__(self):
        if math.hypot(self.a, self.b) < GEOM_EPS:
            raise DegeneracyError(f"line {self.id} has a zero normal")

    @classmethod
    def through(cls, id: int, p: tuple[float, float], q: tuple[float, float]) -> "Line":
        a, b = q[1] - p[1], p[0] - q[0]
        return cls(id, a, b, a * p[0] + b * p[1])


@dataclass(frozen=True)
class Vertex:
    pair: SpaceLabel
    x: float
    y: float

    @property
    def complement(self) -> SpaceLabel:
        a, b = sorted({1, 2, 3, 4} - self.pair.points)
        return SpaceLabel(a, b)


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[Line, ...]

    def __post_init__(self):
        if sorted(l.id for l in self.lines) != [1, 2, 3, 4]:
            raise InputError("an arrangement needs lines with ids 1, 2, 3, 4")
        object.__setattr__(self, "lines", tuple(sorted(self.lines, key=lambda l: l.id)))

    def line(self, i: int) -> Line:
        return self.lines[i - 1]


@dataclass(frozen=True)
class SweepOrder:
    direction: float
    order: tuple[SpaceLabel, ...]

    def complement_chain(self) -> tuple[tuple[int, int], ...]:
        out = []
        for p in self.order:
            a, b = sorted({1, 2, 3, 4} - p.points)
            out.append((a, b))
        return tuple(out)


def _intersect(l1: Line, l2: Line) -> tuple[float, float]:
    det = l1.a * l2.b - l1.b * l2.a
    scale = math.hypot(l1.a, l1.b) * math.hypot(l2.a, l2.b)
    if abs(det) <= GEOM_EPS * scale:
        raise DegeneracyError(f"lines {l1.id} and {l2.id} are parallel")
    x = (l1.c * l2.b - l1.b * l2.c) / det
    y = (l1.a * l2.c - l1.c * l2.a) / det
    return x, y


def vertices(arr: Arrangement) -> list[Vertex]:
    """The six pairwise intersections, ordered (12), (13), ..., (34)."""
    out = []
    for i, j in itertools.combinations(range(1, 5), 2):
        x, y = _intersect(arr.line(i), arr.line(j))
        out.append(Vertex(SpaceLabel(i, j), x, y))
    for line in arr.lines:
        on = [v for v in out if line.id in v.pair.points]
        norm = math.hypot(line.a, line.b)
        for v in out:
            if v in on:
                continue
            if abs(line.a * v.x + line.b * v.y - line.c) / norm <= GEOM_EPS * max(1.0, abs(v.x), abs(v.y)):
                raise DegeneracyError(f"three lines meet at vertex ({v.pair}) and line {line.id}")
    pts = {(round(v.x, 12), round(v.y, 12)) for v in out}
    if len(pts) != 6:
        raise DegeneracyError("coincident vertices")
    return out


def _norm_angle(t: float) -> float:
    return t % (2 * math.pi)


def critical_angles(arr: Arrangement) -> list[float]:
    """Angles in [0, pi) at which two vertices have equal projection."""
    vs = vertices(arr)
    raw = []
    for v, w in itertools.combinations(vs, 2):
        dx, dy = w.x - v.x, w.y - v.y
        # projection ties when the direction is perpendicular to w - v
        raw.append((math.atan2(dy, dx) + math.pi / 2) % math.pi)
    # vertices sharing a line give the same angle up to rounding; merge those
    out: list[float] = []
    for t in sorted(raw):
        if out and t - out[-1] < ANGLE_EPS:
            continue
        out.append(t)
    if len(out) > 1 and out[0] + math.pi - out[-1] < ANGLE_EPS:
        out.pop()
    return out


def _is_critical(arr: Arrangement, theta: float) -> bool:
    t = theta % math.pi
    for c in critical_angles(arr):
        d = abs(t - c)
        if min(d, math.pi - d) < ANGLE_EPS:
            return True
    return False


def sweep_order(arr: Arrangement, theta: float) -> SweepOrder:
    if _is_critical(arr, theta):
        raise TieError(f"direction {theta!r} is critical: two vertices tie")
    u = (math.cos(theta), math.sin(theta))
    vs = vertices(arr)
    order = sorted(vs, key=lambda v: v.x * u[0] + v.y * u[1])
    return SweepOrder(_norm_angle(theta), tuple(v.pair for v in order))


def sectors(arr: Arrangement) -> list[tuple[float, float]]:
    """Intervals of [0, 2 pi) with constant sweep order, by start angle."""
    crit = critical_angles(arr)
    full = sorted(crit + [c + math.pi for c in crit])
    return [(full[i], full[(i + 1) % len(full)] + (2 * math.pi if i == len(full) - 1 else 0.0))
            for i in range(len(full))]


def sector_midpoints(arr: Arrangement) -> list[float]:
    return [_norm_angle((a + b) / 2) for a, b in sectors(arr)]


def _crossing_order(arr: Arrangement, d: int, pos: dict) -> list[int]:
    """Ids of the other lines in the order they cross line ``d``."""
    l = arr.line(d)
    ux, uy = -l.b, l.a
    others = [j for j in range(1, 5) if j != d]
    return sorted(others, key=lambda j: pos[SpaceLabel(*sorted((d, j)))][0] * ux
                  + pos[SpaceLabel(*sorted((d, j)))][1] * uy)


def unordered_lines(arr: Arrangement) -> list[int]:
    """Lines whose three crossings are not met in increasing or decreasing id order.

    Under complement labels the packet of a triple is the set of vertices on
    the fourth line, so a sweep chain is admissible exactly when this list is
    empty.  The property depends on the labeling, not on the geometry alone.
    """
    pos = {v.pair: (v.x, v.y) for v in vertices(arr)}
    bad = []
    for d in range(1, 5):
        seq = _crossing_order(arr, d, pos)
        if seq != sorted(seq) and seq != sorted(seq, reverse=True):
            bad.append(d)
    return bad


def relabeled(arr: Arrangement, perm: dict[int, int]) -> Arrangement:
    return Arrangement(tuple(Line(perm[l.id], l.a, l.b, l.c) for l in arr.lines))


def standard_labeling(arr: Arrangement) -> tuple[Arrangement, dict[int, int]]:
    """First relabeling (in permutation order) whose sweep chains are admissible.

    For four lines in general position exactly two of the 24 labelings
    qualify; the map returned sends old ids to new ids.
    """
    for p in itertools.permutations(range(1, 5)):
        perm = dict(zip(range(1, 5), p))
        cand = relabeled(arr, perm)
        if not unordered_lines(cand):
            return cand, perm
    raise InternalError("no labeling gives admissible sweep chains")


@dataclass(frozen=True)
class SectorReport:
    interval: tuple[float, float]
    order: SweepOrder
    chain: tuple[tuple[int, int], ...]
    bruhat_class: BruhatClass
    letters: tuple[OpLetter, ...]


def classify_orders(arr: Arrangement) -> list[SectorReport]:
    bad = unordered_lines(arr)
    if bad:
        raise PreconditionError(
            f"line(s) {bad} cross the others out of id order, so sweep chains cannot be "
            "admissible; relabel the lines (see standard_labeling)"
        )
    classes = bruhat_classes(4, 2)
    out = []
    for (a, b), mid in zip(sectors(arr), sector_midpoints(arr)):
        so = sweep_order(arr, mid)
        chain = so.complement_chain()
        if not is_admissible(chain, 4, 2):
            raise InternalError(f"sweep order at {mid:.6f} is not admissible: {chain}")
        out.append(SectorReport((a, b), so, chain, class_of(chain, classes),
                                tuple(equation_from_direction(arr, mid))))
    return out


def classes_hit(arr: Arrangement) -> list[AdmissibleOrder]:
    reps = {r.bruhat_class.representative for r in classify_orders(arr)}
    return sorted(reps)


def letter_for(kind: Kind, hit: list[SpaceLabel]) -> OpLetter:
    """Orient the three hit labels to fit the pattern of ``kind``."""
    a, b, _ = (x.points for x in hit)
    (shared,) = a & b
    (p,) = a - {shared}
    (q,) = b - {shared}
    if kind is Kind.S:
        # (ij)(ik)(jk) with i shared
        labels = (SpaceLabel(shared, p), SpaceLabel(shared, q), SpaceLabel(p, q))
    else:
        # (jk)(ik)(ij) with k shared
        labels = (SpaceLabel(p, shared), SpaceLabel(q, shared), SpaceLabel(q, p))
    return OpLetter(kind, labels)


def equation_from_direction(arr: Arrangement, theta: float) -> list[OpLetter]:
    """One letter per triangle (123, 124, 134, 234): corners in hit order,
    S for a clockwise traversal, S~ for counterclockwise."""
    so = sweep_order(arr, theta)
    rank = {p: i for i, p in enumerate(so.order)}
    pos = {v.pair: (v.x, v.y) for v in vertices(arr)}
    out = []
    for tri in TRIANGLES:
        corners = [SpaceLabel(a, b) for a, b in itertools.combinations(tri, 2)]
        hit = sorted(corners, key=rank.__getitem__)
        (x1, y1), (x2, y2), (x3, y3) = (pos[c] for c in hit)
        cross = (x2 - x1) * (y3 - y2) - (y2 - y1) * (x3 - x2)
        if abs(cross) < GEOM_EPS:
            raise DegeneracyError(f"triangle {tri} is degenerate")
        out.append(letter_for(Kind.S if cross < 0 else Kind.STILDE, hit))
    return out


def direction_angle(vec: tuple[float, float]) -> float:
    return _norm_angle(math.atan2(vec[1], vec[0]))
