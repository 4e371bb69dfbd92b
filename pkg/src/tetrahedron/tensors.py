"""Dense complex tensors, letter embedding and word evaluation.

Matrix convention: ``M[row, col]`` with the row multi-index the *input*
(lower indices) and the column multi-index the *output* (upper indices).
With this convention the ordinary matrix product ``A @ B`` contracts the
outputs of ``A`` with the inputs of ``B``, so an operator word evaluates
as the plain product of its letters, leftmost letter leftmost.

A letter acts on the tensor product of its spaces in subscript order:
leg 0 of ``S(12)(13)(23)`` is space (12), while leg 0 of
``S~(23)(13)(12)`` is space (23).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, NumericError, PreconditionError
from .words import Kind, OpLetter, SpaceLabel

DEFAULT_TOL = 1e-10
COND_LIMIT = 1e12
MAX_M = 4

STILDE_FROM_UNITARITY = "from-unitarity"
Q_IDENTITY = "identity"


@dataclass(frozen=True, eq=False)
class ComplexTensor:
    """Square operator on ``legs`` spaces of dimension ``m`` each."""

    m: int
    legs: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.m < 1 or self.legs < 1:
            raise InputError(f"bad tensor shape m={self.m}, legs={self.legs}")
        size = self.m**self.legs
        arr = np.array(self.data, dtype=complex)
        if arr.shape != (size, size):
            raise InputError(f"expected a {size}x{size} matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputError("tensor has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def size(self) -> int:
        return self.m**self.legs

    @classmethod
    def identity(cls, m: int, legs: int) -> "ComplexTensor":
        return cls(m, legs, np.eye(m**legs))

    @classmethod
    def transposition(cls, m: int) -> "ComplexTensor":
        """The flip ``x (x) y -> y (x) x`` on two legs."""
        return cls(m, 2, leg_permutation(m, (1, 0)))

    def entry(self, ins: Sequence[int], outs: Sequence[int]) -> complex:
        return complex(self.data[_flat(ins, self.m), _flat(outs, self.m)])

    def inverse(self) -> "ComplexTensor":
        return ComplexTensor(self.m, self.legs, checked_inverse(self.data))

    def scaled(self, lam: complex) -> "ComplexTensor":
        return ComplexTensor(self.m, self.legs, lam * self.data)


def _flat(idx: Sequence[int], m: int) -> int:
    out = 0
    for i in idx:
        if not 0 <= i < m:
            raise InputError(f"index {i} out of range 0..{m - 1}")
        out = out * m + i
    return out


def checked_inverse(a: np.ndarray) -> np.ndarray:
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise NumericError(f"matrix is singular or ill-conditioned (cond = {cond:.3g})")
    return np.linalg.inv(a)


@lru_cache(maxsize=None)
def _leg_permutation(m: int, perm: tuple[int, ...]) -> np.ndarray:
    r = len(perm)
    out = np.zeros((m**r, m**r))
    for ins in itertools.product(range(m), repeat=r):
        outs = [ins[perm[q]] for q in range(r)]
        out[_flat(ins, m), _flat(outs, m)] = 1.0
    out.setflags(write=False)
    return out


def leg_permutation(m: int, perm: Sequence[int]) -> np.ndarray:
    """Permutation matrix sending leg ``perm[q]`` of the input to leg ``q`` of the output."""
    perm = tuple(perm)
    if sorted(perm) != list(range(len(perm))):
        raise InputError(f"not a permutation: {perm}")
    return _leg_permutation(m, perm)


def embed_matrix(op: np.ndarray, positions: Sequence[int], m: int, total: int) -> np.ndarray:
    """Place ``op`` (acting on legs at ``positions``, in that order) into a
    ``total``-leg space, identity on the remaining legs."""
    positions = list(positions)
    r = len(positions)
    if len(set(positions)) != r or not all(0 <= p < total for p in positions):
        raise InputError(f"bad leg positions {positions} for {total} legs")
    rest = [p for p in range(total) if p not in positions]
    big = np.kron(op, np.eye(m ** len(rest))).reshape((m,) * (2 * total))
    order = positions + rest
    axes = [order.index(q) for q in range(total)]
    axes += [total + a for a in axes]
    return np.transpose(big, axes).reshape(m**total, m**total)


@dataclass(frozen=True)
class GlobalSpaceBasis:
    """Ordered list of spaces, each of dimension ``m``."""

    labels: tuple[SpaceLabel, ...]
    m: int

    @classmethod
    def lexicographic(cls, m: int) -> "GlobalSpaceBasis":
        return cls(tuple(SpaceLabel(a, b) for a in range(1, 5) for b in range(a + 1, 5)), m)

    @property
    def dim(self) -> int:
        return self.m ** len(self.labels)

    def position(self, label: SpaceLabel) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"space ({label}) is not in the basis") from None

    def permutation_to(self, other: "GlobalSpaceBasis") -> np.ndarray:
        """``P`` with ``P.T @ A @ P`` re-expressing a matrix on ``self`` over ``other``."""
        if sorted(self.labels) != sorted(other.labels) or self.m != other.m:
            raise InputError("bases hold different spaces")
        perm = [self.labels.index(lab) for lab in other.labels]
        return leg_permutation(self.m, perm)


@dataclass(eq=False)
class ModelBundle:
    """Tensors for the three letter kinds.

    ``stilde`` may be the string ``"from-unitarity"`` and ``q`` the string
    ``"identity"``; both are resolved lazily.
    """

    m: int
    s: ComplexTensor
    stilde: ComplexTensor | str = STILDE_FROM_UNITARITY
    q: ComplexTensor | str = Q_IDENTITY
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not 1 <= self.m <= MAX_M:
            raise InputError(f"m = {self.m} outside 1..{MAX_M}")
        _expect(self.s, self.m, 3, "S")
        if isinstance(self.stilde, str):
            if self.stilde != STILDE_FROM_UNITARITY:
                raise InputError(f"unknown S~ rule {self.stilde!r}")
        else:
            _expect(self.stilde, self.m, 3, "S~")
        if isinstance(self.q, str):
            if self.q != Q_IDENTITY:
                raise InputError(f"unknown Q rule {self.q!r}")
        else:
            _expect(self.q, self.m, 2, "Q")

    @classmethod
    def identity(cls, m: int) -> "ModelBundle":
        return cls(m, ComplexTensor.identity(m, 3), ComplexTensor.identity(m, 3), ComplexTensor.identity(m, 2))

    def tensor(self, kind: Kind) -> ComplexTensor:
        if kind is Kind.S:
            return self.s
        if kind is Kind.STILDE:
            if isinstance(self.stilde, str):
                if "stilde" not in self._cache:
                    self._cache["stilde"] = stilde_from_unitarity(self.s, self.m)
                return self._cache["stilde"]
            return self.stilde
        if isinstance(self.q, str):
            return ComplexTensor.identity(self.m, 2)
        return self.q

    def matrix(self, kind: Kind, inverted: bool) -> np.ndarray:
        key = (kind, inverted)
        if key not in self._cache:
            t = self.tensor(kind)
            self._cache[key] = checked_inverse(t.data) if inverted else t.data
        return self._cache[key]


def _expect(t: ComplexTensor, m: int, legs: int, name: str) -> None:
    if not isinstance(t, ComplexTensor) or t.m != m or t.legs != legs:
        raise InputError(f"{name} tensor must have m={m} and {legs} legs")


def stilde_from_unitarity(s: ComplexTensor, m: int | None = None) -> ComplexTensor:
    """S~ with S~(23)(13)(12) S(12)(13)(23) = 1, i.e. P S^-1 P with P the leg reversal."""
    m = s.m if m is None else m
    if s.m != m or s.legs != 3:
        raise InputError("S must be a three-leg tensor of matching m")
    p = leg_permutation(m, (2, 1, 0))
    return ComplexTensor(m, 3, p @ checked_inverse(s.data) @ p)


def embed(letter: OpLetter, bundle: ModelBundle, basis: GlobalSpaceBasis | None = None) -> np.ndarray:
    basis = basis or GlobalSpaceBasis.lexicographic(bundle.m)
    if basis.m != bundle.m:
        raise InputError("basis and bundle disagree on m")
    for lab in letter.labels:
        if not lab.is_normalized():
            raise PreconditionError(
                f"letter {letter}: label ({lab}) is orientation-reversed; only normalized labels embed"
            )
    positions = [basis.position(lab) for lab in letter.labels]
    op = bundle.matrix(letter.kind, letter.inverted)
    return embed_matrix(op, positions, basis.m, len(basis.labels))


def evaluate(word: Iterable[OpLetter], bundle: ModelBundle, basis: GlobalSpaceBasis | None = None) -> np.ndarray:
    basis = basis or GlobalSpaceBasis.lexicographic(bundle.m)
    out = np.eye(basis.dim, dtype=complex)
    for letter in word:
        out = out @ embed(letter, bundle, basis)
    return out


def difference(lhs: Iterable[OpLetter], rhs: Iterable[OpLetter], bundle: ModelBundle,
               basis: GlobalSpaceBasis | None = None) -> np.ndarray:
    return evaluate(lhs, bundle, basis) - evaluate(rhs, bundle, basis)


def residual(eq, bundle: ModelBundle, basis: GlobalSpaceBasis | None = None) -> float:
    """Largest absolute entry of evaluate(lhs) - evaluate(rhs)."""
    d = difference(eq.lhs, eq.rhs, bundle, basis)
    return float(np.max(np.abs(d))) if d.size else 0.0


def random_tensor(rng: np.random.Generator, m: int, legs: int, scale: float = 1.0) -> ComplexTensor:
    """Gaussian complex entries plus the identity, which keeps it well conditioned."""
    n = m**legs
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return ComplexTensor(m, legs, np.eye(n) + scale * a / np.sqrt(2 * n))
