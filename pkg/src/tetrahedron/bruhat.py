"""Higher Bruhat orders B(n, k) for small n, k.

Tuples are plain 1-based ``tuple[int, ...]`` in increasing order.  A chain is a
tuple of such tuples; ``(1, 2)`` prints as ``12`` and a chain prints as
``12.13.14.23.24.34``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Iterable, NamedTuple

from .errors import DomainError, InputError, ResourceError

Tup = tuple[int, ...]
Chain = tuple[Tup, ...]

DEFAULT_GUARD = 8


class Packet(NamedTuple):
    parent: Tup
    facets: tuple[Tup, ...]


@dataclass(frozen=True, order=True)
class AdmissibleOrder:
    n: int
    k: int
    chain: Chain

    def __str__(self) -> str:
        return format_chain(self.chain)

    def reversed(self) -> "AdmissibleOrder":
        return AdmissibleOrder(self.n, self.k, self.chain[::-1])


@dataclass(frozen=True)
class BruhatClass:
    representative: AdmissibleOrder
    members: frozenset[AdmissibleOrder] = field(repr=False)

    def __contains__(self, chain) -> bool:
        if isinstance(chain, AdmissibleOrder):
            return chain in self.members
        return any(m.chain == tuple(chain) for m in self.members)

    def __len__(self) -> int:
        return len(self.members)


def format_tuple(t: Tup) -> str:
    return "".join(str(i) for i in t)


def format_chain(chain: Iterable[Tup]) -> str:
    return ".".join(format_tuple(t) for t in chain)


def parse_chain(text: str) -> Chain:
    """Inverse of :func:`format_chain` (single-digit indices only)."""
    try:
        return tuple(tuple(int(ch) for ch in part) for part in text.strip().split("."))
    except ValueError as exc:
        raise InputError(f"cannot parse chain {text!r}") from exc


def _check_nk(n: int, k: int) -> None:
    if not (1 <= k <= n):
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")


def subsets(n: int, k: int) -> list[Tup]:
    """C(n, k) in lexicographic order."""
    _check_nk(n, k)
    return list(combinations(range(1, n + 1), k))


def hat(d: Tup, j: int) -> Tup:
    """Remove the j-th (1-based) entry of ``d``."""
    return d[: j - 1] + d[j:]


def packets(n: int, k: int) -> list[Packet]:
    if not (1 <= k <= n - 1):
        raise DomainError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    return [
        Packet(d, tuple(hat(d, j) for j in range(1, k + 2))) for d in subsets(n, k + 1)
    ]


def _positions(chain: Chain, n: int, k: int) -> dict[Tup, int]:
    pos = {c: i for i, c in enumerate(chain)}
    if len(pos) != len(chain) or set(pos) != set(subsets(n, k)):
        raise InputError(f"chain {format_chain(chain)} is not a permutation of C({n},{k})")
    return pos


def _monotone(seq: list[int]) -> bool:
    up = all(a < b for a, b in zip(seq, seq[1:]))
    down = all(a > b for a, b in zip(seq, seq[1:]))
    return up or down


def is_admissible(chain: Iterable[Tup], n: int, k: int) -> bool:
    chain = tuple(tuple(c) for c in chain)
    pos = _positions(chain, n, k)
    if k == n:
        return True
    return all(_monotone([pos[f] for f in p.facets]) for p in packets(n, k))


def _guard(n: int, k: int, max_size: int) -> None:
    _check_nk(n, k)
    if comb(n, k) > max_size:
        raise ResourceError(
            f"|C({n},{k})| = {comb(n, k)} exceeds the enumeration guard {max_size}"
        )


def enumerate_admissible(n: int, k: int, max_size: int = DEFAULT_GUARD) -> list[AdmissibleOrder]:
    """All of A(n, k) in lexicographic order of chains.

    Backtracking over chain prefixes.  For every packet we keep the hat
    indices of the facets placed so far; a new facet may only be appended if
    the sequence stays strictly monotone.
    """
    _guard(n, k, max_size)
    elems = subsets(n, k)
    if k == n:
        return [AdmissibleOrder(n, k, tuple(elems))]

    # facet -> list of (packet index, hat index)
    memberships: dict[Tup, list[tuple[int, int]]] = {c: [] for c in elems}
    pk = packets(n, k)
    for pi, p in enumerate(pk):
        for j, f in enumerate(p.facets):
            memberships[f].append((pi, j))

    placed: list[list[int]] = [[] for _ in pk]
    used = [False] * len(elems)
    prefix: list[Tup] = []
    out: list[AdmissibleOrder] = []

    def fits(c: Tup) -> bool:
        for pi, j in memberships[c]:
            seq = placed[pi]
            if len(seq) >= 2:
                if (seq[1] > seq[0]) != (j > seq[-1]):
                    return False
            # a packet can never repeat a facet, so j != seq[-1]
        return True

    def backtrack() -> None:
        if len(prefix) == len(elems):
            out.append(AdmissibleOrder(n, k, tuple(prefix)))
            return
        for idx, c in enumerate(elems):
            if used[idx] or not fits(c):
                continue
            used[idx] = True
            prefix.append(c)
            for pi, j in memberships[c]:
                placed[pi].append(j)
            backtrack()
            for pi, _ in memberships[c]:
                placed[pi].pop()
            prefix.pop()
            used[idx] = False

    backtrack()
    return out


def enumerate_admissible_bruteforce(n: int, k: int, max_size: int = DEFAULT_GUARD) -> list[AdmissibleOrder]:
    """Filter every permutation of C(n, k) through :func:`is_admissible`."""
    _guard(n, k, max_size)
    return [
        AdmissibleOrder(n, k, chain)
        for chain in permutations(subsets(n, k))
        if is_admissible(chain, n, k)
    ]


def inversion_set(a: AdmissibleOrder, convention: str = "ascending") -> frozenset[Tup]:
    """Elements d of C(n, k+1) whose facets appear as d^_1 < d^_2 < ... in ``a``.

    ``convention="descending"`` selects the packets read the other way round.
    """
    if convention not in ("ascending", "descending"):
        raise ValueError(f"unknown convention {convention!r}")
    if a.k == a.n:
        return frozenset()
    pos = _positions(a.chain, a.n, a.k)
    out = set()
    for p in packets(a.n, a.k):
        seq = [pos[f] for f in p.facets]
        ascending = all(x < y for x, y in zip(seq, seq[1:]))
        if ascending == (convention == "ascending"):
            out.add(p.parent)
    return frozenset(out)


def elementary_swaps(a: AdmissibleOrder) -> list[int]:
    """Positions j where chain[j], chain[j+1] may be exchanged (union >= k+2)."""
    ch = a.chain
    return [
        j for j in range(len(ch) - 1) if len(set(ch[j]) | set(ch[j + 1])) >= a.k + 2
    ]


def swap(a: AdmissibleOrder, j: int) -> AdmissibleOrder:
    ch = list(a.chain)
    ch[j], ch[j + 1] = ch[j + 1], ch[j]
    return AdmissibleOrder(a.n, a.k, tuple(ch))


def bruhat_classes(n: int, k: int, max_size: int = DEFAULT_GUARD) -> list[BruhatClass]:
    """Partition A(n, k) into classes; each class keyed by its lexicographically least member."""
    remaining = set(enumerate_admissible(n, k, max_size))
    classes = []
    while remaining:
        seed = min(remaining)
        seen = {seed}
        frontier = [seed]
        while frontier:
            a = frontier.pop()
            for j in elementary_swaps(a):
                b = swap(a, j)
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        remaining -= seen
        classes.append(BruhatClass(min(seen), frozenset(seen)))
    classes.sort(key=lambda c: c.representative)
    return classes


def class_of(chain: Iterable[Tup], classes: list[BruhatClass]) -> BruhatClass:
    chain = tuple(tuple(c) for c in chain)
    for cl in classes:
        if chain in cl:
            return cl
    raise InputError(f"chain {format_chain(chain)} is not in any class")


def swap_path(a: AdmissibleOrder, b: AdmissibleOrder) -> list[int] | None:
    """Shortest sequence of swap positions turning ``a`` into ``b`` (BFS), or None."""
    if a == b:
        return []
    parent: dict[AdmissibleOrder, tuple[AdmissibleOrder, int]] = {a: (a, -1)}
    frontier = [a]
    while frontier:
        nxt = []
        for x in frontier:
            for j in elementary_swaps(x):
                y = swap(x, j)
                if y in parent:
                    continue
                parent[y] = (x, j)
                if y == b:
                    path = []
                    while y != a:
                        y, step = parent[y]
                        path.append(step)
                    return path[::-1]
                nxt.append(y)
        frontier = nxt
    return None


def c_notation(chain: Chain, n: int, k: int) -> str:
    """Render a chain as ``c1c2...`` with c_i the i-th element of C(n, k)."""
    index = {c: i + 1 for i, c in enumerate(subsets(n, k))}
    return "".join(f"c{index[c]}" for c in chain)


def parse_c_notation(text: str, n: int, k: int) -> Chain:
    elems = subsets(n, k)
    parts = [p for p in text.replace(" ", "").split("c") if p]
    try:
        return tuple(elems[int(p) - 1] for p in parts)
    except (ValueError, IndexError) as exc:
        raise InputError(f"cannot parse {text!r}") from exc
