"""Line-oriented text formats: tensors, arrangements, golden equation files,
and run reports (text and JSON).

Every file opens with ``format <name>/<version>``.  Blank lines and lines
starting with ``#`` are ignored.

Tensor file::

    format tetra-tensor/1
    kind S            # S | Stilde | Q | R | M | Rset
    m 2               # S, Stilde, Q, Rset: external dimension
    d 2               # R, M: family size
    n 2               # M, Rset: dimension of the matrix space
    entry 0,1,0 1,1,0 0.5 -0.25     # in  out  re  im  (0-based)

Input/output index lists per kind:

* S, Stilde: three in, three out, each 0..m-1.
* Q: two in, two out, each 0..m-1.
* R: two in, two out, each 0..d-1.
* M: in = (member, row), out = (col,).
* Rset: in = (pair, alpha, a, b), out = (c, e); pair 0, 1, 2 stands for
  (12), (13), (23).

Omitted entries are zero.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import InputError
from .geometry import Arrangement, Line

TENSOR_FORMAT = "tetra-tensor/1"
ARRANGEMENT_FORMAT = "tetra-arrangement/1"
GOLDEN_FORMAT = "tetra-golden/1"
REPORT_FORMAT = "tetra-report/1"

KINDS = ("S", "Stilde", "Q", "R", "M", "Rset")
PAIR_NAMES = ("12", "13", "23")


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _header(rows: list[tuple[int, list[str]]], expected: str, what: str) -> list[tuple[int, list[str]]]:
    if not rows or rows[0][1][0] != "format" or len(rows[0][1]) != 2:
        raise InputError(f"{what}: first line must be 'format {expected}'")
    if rows[0][1][1] != expected:
        raise InputError(f"{what}: unsupported format {rows[0][1][1]!r} (expected {expected})")
    return rows[1:]


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {no}: expected an integer, got {tok!r}") from None


def _float(tok: str, no: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise InputError(f"line {no}: expected a number, got {tok!r}") from None
    if not math.isfinite(v):
        raise InputError(f"line {no}: non-finite value {tok!r}")
    return v


def _indices(tok: str, no: int) -> tuple[int, ...]:
    return tuple(_int(t, no) for t in tok.split(",") if t != "")


# -- tensors ---------------------------------------------------------------------------


@dataclass
class TensorFile:
    kind: str
    params: dict[str, int]
    entries: list[tuple[tuple[int, ...], tuple[int, ...], complex]] = field(default_factory=list)

    # shapes of (in, out) index lists and their ranges
    def _layout(self) -> tuple[list[int], list[int]]:
        p = self.params
        k = self.kind
        if k in ("S", "Stilde"):
            return [p["m"]] * 3, [p["m"]] * 3
        if k == "Q":
            return [p["m"]] * 2, [p["m"]] * 2
        if k == "R":
            return [p["d"]] * 2, [p["d"]] * 2
        if k == "M":
            return [p["d"], p["n"]], [p["n"]]
        return [3, p["m"], p["n"], p["n"]], [p["n"], p["n"]]

    def required(self) -> tuple[str, ...]:
        return {"S": ("m",), "Stilde": ("m",), "Q": ("m",), "R": ("d",),
                "M": ("d", "n"), "Rset": ("m", "n")}[self.kind]


def parse_tensor(text: str, what: str = "tensor file") -> TensorFile:
    rows = _header(_lines(text), TENSOR_FORMAT, what)
    kind = None
    params: dict[str, int] = {}
    raw_entries = []
    for no, toks in rows:
        key = toks[0]
        if key == "kind":
            if len(toks) != 2 or toks[1] not in KINDS:
                raise InputError(f"{what} line {no}: kind must be one of {', '.join(KINDS)}")
            kind = toks[1]
        elif key in ("m", "d", "n"):
            if len(toks) != 2:
                raise InputError(f"{what} line {no}: '{key}' takes one value")
            v = _int(toks[1], no)
            if v < 1:
                raise InputError(f"{what} line {no}: '{key}' must be positive")
            params[key] = v
        elif key == "entry":
            if len(toks) != 5:
                raise InputError(f"{what} line {no}: entry needs 'in out re im'")
            raw_entries.append((no, _indices(toks[1], no), _indices(toks[2], no),
                                complex(_float(toks[3], no), _float(toks[4], no))))
        else:
            raise InputError(f"{what} line {no}: unknown keyword {key!r}")
    if kind is None:
        raise InputError(f"{what}: missing 'kind'")
    tf = TensorFile(kind, params)
    missing = [k for k in tf.required() if k not in params]
    if missing:
        raise InputError(f"{what}: kind {kind} needs {', '.join(missing)}")
    ins, outs = tf._layout()
    seen = set()
    for no, i, o, v in raw_entries:
        if len(i) != len(ins) or len(o) != len(outs):
            raise InputError(f"{what} line {no}: expected {len(ins)} in and {len(outs)} out indices")
        for idx, bound in zip(i + o, ins + outs):
            if not 0 <= idx < bound:
                raise InputError(f"{what} line {no}: index {idx} out of range 0..{bound - 1}")
        if (i, o) in seen:
            raise InputError(f"{what} line {no}: duplicate entry")
        seen.add((i, o))
        tf.entries.append((i, o, v))
    return tf


def _flat(idx: Iterable[int], base: int) -> int:
    out = 0
    for x in idx:
        out = out * base + x
    return out


def _dense(tf: TensorFile, base: int, legs: int) -> np.ndarray:
    size = base**legs
    a = np.zeros((size, size), dtype=complex)
    for i, o, v in tf.entries:
        a[_flat(i, base), _flat(o, base)] = v
    return a


def tensor_to_object(tf: TensorFile):
    """Build the library object a tensor file describes."""
    from .tensors import ComplexTensor
    from .verify import PairwiseR, RepFamily, YbeMatrix

    p = tf.params
    if tf.kind in ("S", "Stilde"):
        return ComplexTensor(p["m"], 3, _dense(tf, p["m"], 3))
    if tf.kind == "Q":
        return ComplexTensor(p["m"], 2, _dense(tf, p["m"], 2))
    if tf.kind == "R":
        return YbeMatrix(p["d"], _dense(tf, p["d"], 2))
    if tf.kind == "M":
        mats = [np.zeros((p["n"], p["n"]), dtype=complex) for _ in range(p["d"])]
        for (j, row), (col,), v in tf.entries:
            mats[j][row, col] = v
        return RepFamily(p["d"], p["n"], tuple(mats))
    mats = {name: [np.zeros((p["n"] ** 2,) * 2, dtype=complex) for _ in range(p["m"])] for name in PAIR_NAMES}
    for (pair, alpha, a, b), (c, e), v in tf.entries:
        mats[PAIR_NAMES[pair]][alpha][a * p["n"] + b, c * p["n"] + e] = v
    return PairwiseR(p["m"], p["n"], mats)


def read_tensor(path: str | Path, expect: Iterable[str] | None = None):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    tf = parse_tensor(text, str(path))
    if expect is not None and tf.kind not in tuple(expect):
        raise InputError(f"{path}: expected kind {' or '.join(expect)}, got {tf.kind}")
    return tensor_to_object(tf)


def _fmt_num(x: float) -> str:
    return repr(float(x))


def format_tensor(kind: str, matrix: np.ndarray, **params: int) -> str:
    """Serialize a dense matrix for kinds S, Stilde, Q or R (zeros omitted)."""
    if kind not in ("S", "Stilde", "Q", "R"):
        raise InputError(f"format_tensor handles S, Stilde, Q, R; got {kind}")
    base = params["d"] if kind == "R" else params["m"]
    legs = 3 if kind in ("S", "Stilde") else 2
    a = np.asarray(matrix, dtype=complex)
    if a.shape != (base**legs, base**legs):
        raise InputError(f"matrix shape {a.shape} does not fit kind {kind}")
    lines = [f"format {TENSOR_FORMAT}", f"kind {kind}"]
    lines += [f"{k} {v}" for k, v in params.items()]

    def digits(x):
        return ",".join(str((x // base ** (legs - 1 - i)) % base) for i in range(legs))

    for r in range(a.shape[0]):
        for c in range(a.shape[1]):
            v = a[r, c]
            if v != 0:
                lines.append(f"entry {digits(r)} {digits(c)} {_fmt_num(v.real)} {_fmt_num(v.imag)}")
    return "\n".join(lines) + "\n"


# -- arrangements ------------------------------------------------------------------


@dataclass
class ArrangementFile:
    arrangement: Arrangement
    directions: dict[str, tuple[float, float]]


def parse_arrangement(text: str, what: str = "arrangement file") -> ArrangementFile:
    """``line <id> <a> <b> <c>`` four times; optional ``direction <name> <dx> <dy>``."""
    rows = _header(_lines(text), ARRANGEMENT_FORMAT, what)
    lines = []
    dirs: dict[str, tuple[float, float]] = {}
    for no, toks in rows:
        if toks[0] == "line" and len(toks) == 5:
            lines.append(Line(_int(toks[1], no), *(_float(t, no) for t in toks[2:])))
        elif toks[0] == "direction" and len(toks) == 4:
            dirs[toks[1]] = (_float(toks[2], no), _float(toks[3], no))
        else:
            raise InputError(f"{what} line {no}: expected 'line id a b c' or 'direction name dx dy'")
    if len(lines) != 4:
        raise InputError(f"{what}: need exactly four lines, got {len(lines)}")
    return ArrangementFile(Arrangement(tuple(lines)), dirs)


def read_arrangement(path: str | Path) -> ArrangementFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_arrangement(text, str(path))


def format_arrangement(arr: Arrangement, directions: dict[str, tuple[float, float]] | None = None) -> str:
    out = [f"format {ARRANGEMENT_FORMAT}"]
    out += [f"line {l.id} {_fmt_num(l.a)} {_fmt_num(l.b)} {_fmt_num(l.c)}" for l in arr.lines]
    for name, (dx, dy) in (directions or {}).items():
        out.append(f"direction {name} {_fmt_num(dx)} {_fmt_num(dy)}")
    return "\n".join(out) + "\n"


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("tetrahedron") / "golden" / name))


# -- golden equation files ----------------------------------------------------------


GOLDEN_FILES = ("eight_equations.txt", "shorthand.txt", "geometric.txt", "classic.txt")
_GOLDEN_LINE = re.compile(r"^\s*([0-9r,]+)\s*:\s*(.+?)\s*=\s*(.+?)\s*$")


def parse_golden(text: str, what: str = "golden file") -> dict[str, tuple[str, str]]:
    rows = text.splitlines()
    body = [(i, r) for i, r in enumerate(rows, 1) if r.strip() and not r.lstrip().startswith("#")]
    header = [r for r in rows if r.strip()]
    if not header or header[0].strip() != f"# format {GOLDEN_FORMAT}":
        raise InputError(f"{what}: missing '# format {GOLDEN_FORMAT}' header")
    out = {}
    for no, r in body:
        m = _GOLDEN_LINE.match(r)
        if not m:
            raise InputError(f"{what} line {no}: expected 'name : lhs = rhs'")
        if m.group(1) in out:
            raise InputError(f"{what} line {no}: duplicate name {m.group(1)}")
        out[m.group(1)] = (m.group(2), m.group(3))
    return out


def load_golden(name: str, directory: str | Path | None = None) -> dict[str, tuple[str, str]]:
    path = Path(directory) / name if directory is not None else fixture_path(name)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read golden file {path}: {exc.strerror}") from None
    return parse_golden(text, str(path))


# -- reports -------------------------------------------------------------------------


@dataclass
class RunReport:
    command: str
    version: str
    results: list[dict] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.get("pass", True) for r in self.results)

    def add(self, check: str, passed: bool, **extra) -> None:
        self.results.append({"check": check, **extra, "pass": bool(passed)})

    def to_json(self) -> str:
        doc = {
            "format": REPORT_FORMAT,
            "command": self.command,
            "version": self.version,
            "info": self.info,
            "results": self.results,
            "pass": self.passed,
        }
        return json.dumps(doc, indent=2, default=_json_default)

    def to_text(self) -> str:
        out = [f"# {self.command}  (tetrahedron {self.version})"]
        out += [f"# {k}: {v}" for k, v in self.info.items()]
        out += self.lines
        for r in self.results:
            tag = "PASS" if r["pass"] else "FAIL"
            extra = "  ".join(
                f"{k}={_short(v)}" for k, v in r.items() if k not in ("check", "pass")
            )
            out.append(f"{tag}  {r['check']}" + (f"  {extra}" if extra else ""))
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(out) + "\n"


def _short(v) -> str:
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not serializable: {type(o).__name__}")
