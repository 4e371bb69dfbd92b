"""Brute-force index sums, kept deliberately independent of the
Kronecker-product embedding used everywhere else.

Nothing here touches numpy reshapes or axis permutations: entries are read
one at a time and summed over explicit loops.
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence


def _get(mat, row: int, col: int) -> complex:
    return complex(mat[row][col])


def _index(digits: Sequence[int], base: int) -> int:
    out = 0
    for x in digits:
        out = out * base + x
    return out


def ybe_longhand(r, d: int) -> tuple[list[list[complex]], list[list[complex]]]:
    """Both sides of the long-hand Yang-Baxter relation as d^3 x d^3 tables.

    lhs[j1 j2 j3][l1 l2 l3] = sum_k R[j1 j2][k1 k2] R[k1 j3][l1 k3] R[k2 k3][l2 l3]
    rhs[j1 j2 j3][l1 l2 l3] = sum_k R[j2 j3][k2 k3] R[j1 k3][k1 l3] R[k1 k2][l1 l2]
    """
    def R(a, b, c, e):
        return _get(r, a * d + b, c * d + e)

    n = d**3
    lhs = [[0j] * n for _ in range(n)]
    rhs = [[0j] * n for _ in range(n)]
    rng = range(d)
    for j1, j2, j3, l1, l2, l3 in itertools.product(rng, repeat=6):
        a = b = 0j
        for k1, k2, k3 in itertools.product(rng, repeat=3):
            a += R(j1, j2, k1, k2) * R(k1, j3, l1, k3) * R(k2, k3, l2, l3)
            b += R(j2, j3, k2, k3) * R(j1, k3, k1, l3) * R(k1, k2, l1, l2)
        row, col = _index((j1, j2, j3), d), _index((l1, l2, l3), d)
        lhs[row][col] = a
        rhs[row][col] = b
    return lhs, rhs


def propagate(word: Sequence[tuple[object, Sequence[int]]], m: int, slots: int) -> list[list[complex]]:
    """Matrix of a product of operators, each acting on the listed slots.

    ``word`` holds ``(matrix, slots_it_acts_on)`` pairs, applied left to
    right.  For every input basis state the amplitude distribution over
    states is pushed through the letters one at a time.
    """
    states = list(itertools.product(range(m), repeat=slots))
    pos = {s: i for i, s in enumerate(states)}
    out = [[0j] * len(states) for _ in states]
    for start in states:
        amp = {start: 1 + 0j}
        for mat, legs in word:
            nxt: dict = {}
            r = len(legs)
            for state, a in amp.items():
                row = _index([state[p] for p in legs], m)
                for outs in itertools.product(range(m), repeat=r):
                    c = _get(mat, row, _index(outs, m))
                    if c == 0:
                        continue
                    new = list(state)
                    for p, v in zip(legs, outs):
                        new[p] = v
                    key = tuple(new)
                    nxt[key] = nxt.get(key, 0j) + a * c
            amp = nxt
        for state, a in amp.items():
            out[pos[start]][pos[state]] = a
    return out


CLASSIC_WORD = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))


def classic_longhand(s, m: int) -> tuple[list[list[complex]], list[list[complex]]]:
    """Both sides of S123 S145 S246 S356 = S356 S246 S145 S123, six slots
    in single-index order."""
    lhs_word = [(s, [i - 1 for i in t]) for t in CLASSIC_WORD]
    return propagate(lhs_word, m, 6), propagate(lhs_word[::-1], m, 6)


def max_entry_gap(a, b) -> float:
    return max(abs(complex(x) - complex(y)) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def entrywise(fn: Callable[[int, int], complex], n: int) -> list[list[complex]]:
    return [[fn(i, j) for j in range(n)] for i in range(n)]
