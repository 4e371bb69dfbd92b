"""Numeric checks: the eight equations, the classic form, Yang-Baxter,
obstruction relations, unitarity laws, the Lawrence construction and the
unitarity collapse."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .equations import (
    CLASSIC_TABLE,
    TetraEquation,
    collapse,
    generate_equations,
    normalize_to_shorthand,
    render_shorthand,
    shorthand_letter,
)
from .errors import InputError, InternalError, PreconditionError
from .tensors import (
    DEFAULT_TOL,
    ComplexTensor,
    GlobalSpaceBasis,
    ModelBundle,
    difference,
    embed,
    embed_matrix,
    leg_permutation,
    stilde_from_unitarity,
)
from .words import Kind, SpaceLabel, opword


@dataclass(frozen=True)
class CheckResult:
    check: str
    residual: float
    tolerance: float
    seconds: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_dict(self) -> dict:
        d = {
            "check": self.check,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "seconds": round(self.seconds, 6),
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerifyReport:
    results: list[CheckResult] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.results), default=0.0)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.check == name:
                return r
        raise KeyError(name)

    def extend(self, other: "VerifyReport") -> "VerifyReport":
        self.results.extend(other.results)
        self.flags.extend(f for f in other.flags if f not in self.flags)
        return self


@contextmanager
def _timer() -> Iterator[list[float]]:
    box = [0.0]
    t0 = time.perf_counter()
    yield box
    box[0] = time.perf_counter() - t0


def _maxabs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


# -- input families -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RepFamily:
    """``d`` complex ``n x n`` matrices acting on a common space."""

    d: int
    n: int
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(np.array(x, dtype=complex) for x in self.matrices)
        if self.d < 1 or len(mats) != self.d or any(x.shape != (self.n, self.n) for x in mats):
            raise InputError(f"family needs {self.d} matrices of shape {self.n}x{self.n}")
        object.__setattr__(self, "matrices", mats)


@dataclass(frozen=True, eq=False)
class YbeMatrix:
    """``d^2 x d^2`` matrix, rows (j1 j2) in, columns (k1 k2) out."""

    d: int
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.shape != (self.d**2, self.d**2):
            raise InputError(f"R must be {self.d**2}x{self.d**2}, got {arr.shape}")
        object.__setattr__(self, "entries", arr)

    def coeff(self, j1: int, j2: int, k1: int, k2: int) -> complex:
        return self.entries[j1 * self.d + j2, k1 * self.d + k2]


@dataclass(frozen=True, eq=False)
class PairwiseR:
    """For each of the spaces (12), (13), (23): ``m`` matrices on ``V_i (x) V_j``."""

    m: int
    n: int
    tensors: dict

    def __post_init__(self):
        fixed = {}
        for key in ("12", "13", "23"):
            mats = self.tensors.get(key)
            if mats is None or len(mats) != self.m:
                raise InputError(f"pair {key} needs {self.m} matrices")
            arrs = tuple(np.array(x, dtype=complex) for x in mats)
            if any(a.shape != (self.n**2, self.n**2) for a in arrs):
                raise InputError(f"pair {key}: matrices must be {self.n**2}x{self.n**2}")
            fixed[key] = arrs
        object.__setattr__(self, "tensors", fixed)

    @classmethod
    def uniform(cls, m: int, n: int, mats) -> "PairwiseR":
        return cls(m, n, {k: list(mats) for k in ("12", "13", "23")})

    def placed(self, pair: str, alpha: int) -> np.ndarray:
        pos = [int(pair[0]) - 1, int(pair[1]) - 1]
        return embed_matrix(self.tensors[pair][alpha], pos, self.n, 3)


# -- the eight equations ------------------------------------------------------


@lru_cache(maxsize=1)
def shorthand_equations() -> tuple[TetraEquation, ...]:
    return tuple(normalize_to_shorthand(generate_equations()))


def residual_matrices(bundle: ModelBundle) -> dict[str, np.ndarray]:
    return {eq.name: difference(eq.lhs, eq.rhs, bundle) for eq in shorthand_equations()}


def verify_eight(bundle: ModelBundle, tol: float = DEFAULT_TOL) -> VerifyReport:
    rep = VerifyReport()
    for eq in shorthand_equations():
        with _timer() as t:
            r = _maxabs(difference(eq.lhs, eq.rhs, bundle))
        rep.results.append(CheckResult(f"eight[{eq.name}]", r, tol, t[0]))
    return rep


def classic_basis(m: int) -> GlobalSpaceBasis:
    """Spaces in single-index order 1..6."""
    return GlobalSpaceBasis(tuple(SpaceLabel(*CLASSIC_TABLE[i]) for i in range(1, 7)), m)


CLASSIC_LHS = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))


def classic_difference(s: ComplexTensor) -> np.ndarray:
    """S123 S145 S246 S356 - S356 S246 S145 S123 on six legs in single-index order."""
    m = s.m
    mats = [embed_matrix(s.data, [i - 1 for i in t], m, 6) for t in CLASSIC_LHS]
    lhs = mats[0] @ mats[1] @ mats[2] @ mats[3]
    rhs = mats[3] @ mats[2] @ mats[1] @ mats[0]
    return lhs - rhs


def verify_classic(s: ComplexTensor, m: int | None = None, tol: float = DEFAULT_TOL) -> VerifyReport:
    if m is not None and s.m != m:
        raise InputError("S does not match m")
    if s.legs != 3:
        raise InputError("S must have three legs")
    with _timer() as t:
        r = _maxabs(classic_difference(s))
    return VerifyReport([CheckResult("classic", r, tol, t[0])])


def classic_to_lexicographic(a: np.ndarray, m: int) -> np.ndarray:
    """Re-express a matrix on the single-index basis over the lexicographic one."""
    p = classic_basis(m).permutation_to(GlobalSpaceBasis.lexicographic(m))
    return p.T @ a @ p


# -- Yang-Baxter level ----------------------------------------------------------


def ybe_sides(r: YbeMatrix) -> tuple[np.ndarray, np.ndarray]:
    d = r.d
    r12 = embed_matrix(r.entries, [0, 1], d, 3)
    r13 = embed_matrix(r.entries, [0, 2], d, 3)
    r23 = embed_matrix(r.entries, [1, 2], d, 3)
    return r12 @ r13 @ r23, r23 @ r13 @ r12


def verify_ybe(r: YbeMatrix, tol: float = DEFAULT_TOL) -> VerifyReport:
    with _timer() as t:
        lhs, rhs = ybe_sides(r)
        res = _maxabs(lhs - rhs)
    return VerifyReport([CheckResult("ybe", res, tol, t[0])])


def verify_obstruction_yb(fam: RepFamily, r: YbeMatrix, tol: float = DEFAULT_TOL) -> VerifyReport:
    """M_j1 M_j2 = sum_k R_{j1 j2}^{k1 k2} M_k2 M_k1 for all j1, j2."""
    if fam.d != r.d:
        raise InputError(f"family has d={fam.d}, R has d={r.d}")
    d = r.d
    with _timer() as t:
        worst = 0.0
        for j1 in range(d):
            for j2 in range(d):
                lhs = fam.matrices[j1] @ fam.matrices[j2]
                rhs = sum(
                    r.coeff(j1, j2, k1, k2) * (fam.matrices[k2] @ fam.matrices[k1])
                    for k1 in range(d)
                    for k2 in range(d)
                )
                worst = max(worst, _maxabs(lhs - rhs))
    return VerifyReport([CheckResult("obstruction-yb", worst, tol, t[0])])


def verify_obstruction_tetra(pr: PairwiseR, s: ComplexTensor, tol: float = DEFAULT_TOL,
                             stilde: ComplexTensor | None = None) -> VerifyReport:
    """R12 R13 R23 = S . R23 R13 R12 at the level of indexed families; with
    ``stilde`` also the mirrored relation for the reversed triple."""
    m = pr.m
    if s.m != m or s.legs != 3:
        raise InputError(f"S must be a three-leg tensor with m={m}")
    idx = [(a, b, c) for a in range(m) for b in range(m) for c in range(m)]

    def flat(t):
        return (t[0] * m + t[1]) * m + t[2]

    def run(name, first, second, coeffs):
        with _timer() as t:
            worst = 0.0
            for alpha in idx:
                lhs = np.eye(pr.n**3, dtype=complex)
                for pair, a in zip(first, alpha):
                    lhs = lhs @ pr.placed(pair, a)
                rhs = np.zeros_like(lhs)
                for beta in idx:
                    c = coeffs[flat(alpha), flat(beta)]
                    if c == 0:
                        continue
                    # beta is indexed in the same leg order as alpha
                    prod = np.eye(pr.n**3, dtype=complex)
                    for pair in second:
                        prod = prod @ pr.placed(pair, beta[first.index(pair)])
                    rhs = rhs + c * prod
                worst = max(worst, _maxabs(lhs - rhs))
        return CheckResult(name, worst, tol, t[0])

    rep = VerifyReport()
    rep.results.append(run("obstruction-tetra", ("12", "13", "23"), ("23", "13", "12"), s.data))
    if stilde is not None:
        if stilde.m != m or stilde.legs != 3:
            raise InputError(f"S~ must be a three-leg tensor with m={m}")
        rep.results.append(
            run("obstruction-tetra-mirror", ("23", "13", "12"), ("12", "13", "23"), stilde.data)
        )
    return rep


# -- unitarity -------------------------------------------------------------------


def unitarity_r(r: YbeMatrix, tol: float = DEFAULT_TOL) -> CheckResult:
    """R12 R21 = 1 with R21 the slot-swapped conjugate P R P."""
    with _timer() as t:
        p = leg_permutation(r.d, (1, 0))
        res = _maxabs(r.entries @ (p @ r.entries @ p) - np.eye(r.d**2))
    return CheckResult("unitarity-R", res, tol, t[0])


def unitarity_s(bundle: ModelBundle, tol: float = DEFAULT_TOL) -> CheckResult:
    """S~(23)(13)(12) S(12)(13)(23) = 1 on the triple space."""
    with _timer() as t:
        basis = GlobalSpaceBasis(tuple(SpaceLabel(*x) for x in ((1, 2), (1, 3), (2, 3))), bundle.m)
        w = opword("S~(23)(13)(12) S(12)(13)(23)")
        prod = embed(w[0], bundle, basis) @ embed(w[1], bundle, basis)
        res = _maxabs(prod - np.eye(basis.dim))
    return CheckResult("unitarity-S", res, tol, t[0])


def unitarity_q(bundle: ModelBundle, tol: float = DEFAULT_TOL) -> CheckResult:
    """Q(12)(34) Q(34)(12) = 1."""
    with _timer() as t:
        basis = GlobalSpaceBasis((SpaceLabel(1, 2), SpaceLabel(3, 4)), bundle.m)
        w = opword("Q(12)(34) Q(34)(12)")
        prod = embed(w[0], bundle, basis) @ embed(w[1], bundle, basis)
        res = _maxabs(prod - np.eye(basis.dim))
    return CheckResult("unitarity-Q", res, tol, t[0])


def verify_unitarity(kind: str, operand, tol: float = DEFAULT_TOL) -> VerifyReport:
    """``kind`` is ``"R"`` (operand a YbeMatrix), ``"S"`` or ``"Q"`` (operand a ModelBundle)."""
    fn = {"R": unitarity_r, "S": unitarity_s, "Q": unitarity_q}.get(kind)
    if fn is None:
        raise InputError(f"unknown unitarity level {kind!r}")
    return VerifyReport([fn(operand, tol)])


# -- Lawrence construction and collapse -------------------------------------------


def lawrence_s(qy: ComplexTensor) -> ComplexTensor:
    """Q_(12)(13) Q_(12)(23) Q_(13)(23) on the triple space (12),(13),(23)."""
    m = qy.m
    a = embed_matrix(qy.data, [0, 1], m, 3)
    b = embed_matrix(qy.data, [0, 2], m, 3)
    c = embed_matrix(qy.data, [1, 2], m, 3)
    return ComplexTensor(m, 3, a @ b @ c)


def lawrence_construct(qy: ComplexTensor, m: int | None = None, tol: float = 1e-12) -> ModelBundle:
    m = qy.m if m is None else m
    if qy.m != m or qy.legs != 2:
        raise InputError(f"Qy must be a two-leg tensor with m={m}")
    check = verify_ybe(YbeMatrix(m, qy.data), tol)
    if not check.passed:
        raise PreconditionError(f"Qy does not solve Yang-Baxter (residual {check.max_residual:.3g})")
    s = lawrence_s(qy)
    return ModelBundle(m, s, stilde_from_unitarity(s), qy)


def collapse_check(s: ComplexTensor, m: int | None = None, tol: float = DEFAULT_TOL,
                   stilde: ComplexTensor | None = None) -> VerifyReport:
    """Letter level: embedded S~_l^-1 against embedded S_l for l = 1..4.
    Word level: the collapsed shorthand lines coincide."""
    m = s.m if m is None else m
    bundle = ModelBundle(m, s, stilde if stilde is not None else "from-unitarity")
    rep = VerifyReport()
    for l in range(1, 5):
        with _timer() as t:
            a = embed(shorthand_letter(f"S~{l}^-1"), bundle)
            b = embed(shorthand_letter(f"S{l}"), bundle)
            res = _maxabs(a - b)
        rep.results.append(CheckResult(f"collapse-letter[{l}]", res, tol, t[0]))
    with _timer() as t:
        lines = {render_shorthand(collapse(eq)) for eq in shorthand_equations()}
    rep.results.append(
        CheckResult("collapse-words", 0.0 if len(lines) == 1 else float(len(lines) - 1), 0.0, t[0],
                    note=f"{len(lines)} distinct line(s)")
    )
    if rep.passed:
        rep.flags.append("system collapses")
    return rep


def scaling_degree(eq: TetraEquation, kind: Kind = Kind.S) -> int:
    """Non-inverted letters of ``kind`` on one side (both sides agree)."""
    counts = {sum(1 for x in side if x.kind is kind and not x.inverted) for side in (eq.lhs, eq.rhs)}
    if len(counts) != 1:
        raise InternalError(f"{eq.name}: sides have different {kind.value} counts")
    return counts.pop()


__all__ = [
    "CheckResult", "VerifyReport", "RepFamily", "YbeMatrix", "PairwiseR",
    "shorthand_equations", "residual_matrices", "verify_eight", "verify_classic",
    "classic_difference", "classic_to_lexicographic", "classic_basis", "verify_ybe",
    "ybe_sides", "verify_obstruction_yb", "verify_obstruction_tetra", "verify_unitarity",
    "unitarity_r", "unitarity_s", "unitarity_q", "lawrence_s", "lawrence_construct",
    "collapse_check", "scaling_degree",
]
