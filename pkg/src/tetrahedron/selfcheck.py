"""Golden-file comparison and the self-check battery behind ``tetrahedron selfcheck``."""

from __future__ import annotations

import time
from pathlib import Path

import numpy as np

from . import __version__
from .bruhat import bruhat_classes, class_of, enumerate_admissible, is_admissible, parse_c_notation, subsets
from .equations import (
    TetraEquation,
    analyze_config,
    classic_form,
    collapse,
    exhaustive_scan,
    generate_equations,
    geometric_form,
    normalize_to_shorthand,
    parse_shorthand,
    render_shorthand,
    shorthand_letter,
    starting_configs,
)
from .errors import InputError, TetraError
from .formats import RunReport, fixture_path, load_golden, read_arrangement
from .geometry import classify_orders, direction_angle, equation_from_direction
from .oracles import classic_longhand, max_entry_gap, ybe_longhand
from .tensors import ComplexTensor, ModelBundle, embed, random_tensor
from .verify import (
    YbeMatrix,
    classic_difference,
    classic_to_lexicographic,
    lawrence_construct,
    residual_matrices,
    unitarity_q,
    unitarity_r,
    unitarity_s,
    verify_classic,
    verify_eight,
    verify_ybe,
    ybe_sides,
)
from .words import Kind, canonical_q_form, opword

# Reference chains for B(4,2), keyed by the sweep direction that produces them.
B42_LISTED = {
    "1r": "c1c2c3c4c5c6", "1": "c6c5c4c3c2c1", "2r": "c4c2c1c3c5c6", "5r": "c1c2c3c6c5c4",
    "5": "c4c5c6c3c2c1", "2": "c6c5c3c1c2c4", "3": "c6c1c3c2c5c4", "3r": "c4c5c2c3c1c6",
}
# Sweep direction -> equation whose geometric-form lhs it reproduces.
DIRECTION_EQUATION = {
    "1": "1,6", "1r": "1r,6r", "2": "2,8r", "2r": "8,2r",
    "3": "3,4r", "3r": "4,3r", "5": "5,7r", "5r": "7,5r",
}


def _words_equal(a, b) -> bool:
    return canonical_q_form(a) == canonical_q_form(b)


def golden_mismatches(golden_dir: str | Path | None = None,
                      equations: list[TetraEquation] | None = None) -> list[str]:
    """Names of golden files (with the offending line) that disagree with the library output."""
    eqs = equations if equations is not None else generate_equations()
    by_name = {e.name: e for e in eqs}
    bad: list[str] = []

    def load(name):
        try:
            return load_golden(name, golden_dir)
        except InputError as exc:
            bad.append(f"{name}: {exc}")
            return None

    g = load("eight_equations.txt")
    if g is not None:
        if set(g) != set(by_name):
            bad.append(f"eight_equations.txt: names {sorted(g)}")
        for name, (lhs, rhs) in g.items():
            e = by_name.get(name)
            try:
                ok = e is not None and _words_equal(opword(lhs), e.lhs) and _words_equal(opword(rhs), e.rhs)
            except TetraError:
                ok = False
            if not ok:
                bad.append(f"eight_equations.txt: line {name}")

    g = load("shorthand.txt")
    if g is not None:
        short = normalize_to_shorthand(eqs)
        if list(g) != [e.name for e in short]:
            bad.append(f"shorthand.txt: order {list(g)}")
        sd = {e.name: e for e in short}
        for name, (lhs, rhs) in g.items():
            e = sd.get(name)
            try:
                ok = e is not None and _words_equal(parse_shorthand(lhs), e.lhs) and _words_equal(parse_shorthand(rhs), e.rhs)
            except TetraError:
                ok = False
            if not ok:
                bad.append(f"shorthand.txt: line {name}")

    g = load("geometric.txt")
    if g is not None:
        for name, (lhs, rhs) in g.items():
            e = by_name.get(name)
            try:
                geo = geometric_form(e) if e is not None else None
                ok = geo is not None and opword(lhs) == geo.lhs and opword(rhs) == geo.rhs
            except TetraError:
                ok = False
            if not ok:
                bad.append(f"geometric.txt: line {name}")

    g = load("classic.txt")
    if g is not None:
        want = g.get("1,6")
        got = classic_form(by_name["1,6"]).render() if "1,6" in by_name else None
        if want is None or got != f"{want[0]} = {want[1]}":
            bad.append("classic.txt: line 1,6")
    return bad


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def run_selfcheck(seed: int = 0, golden_dir: str | Path | None = None, scan: bool = True) -> RunReport:
    rep = RunReport("selfcheck", __version__, info={"seed": seed, "m": 2, "d": 2})
    rng = np.random.default_rng(seed)

    def guarded(name, fn):
        try:
            fn()
        except TetraError as exc:
            rep.add(name, False, error=str(exc))

    # combinatorics
    def bruhat():
        classes = bruhat_classes(4, 2)
        listed = [parse_c_notation(t, 4, 2) for t in B42_LISTED.values()]
        hit = {class_of(c, classes).representative for c in listed}
        rep.add("bruhat B(4,2)", len(subsets(4, 2)) == 6 and len(subsets(4, 3)) == 4
                and len(classes) == 8 and len(hit) == 8, classes=len(classes))
        admissible = enumerate_admissible(4, 2)
        rep.add("bruhat reversal closure", all(is_admissible(a.chain[::-1], 4, 2) for a in admissible),
                chains=len(admissible))
    guarded("bruhat", bruhat)

    # derivations and golden files
    def derive():
        counts = {c.name: sum(len(d) for d in analyze_config(c).successful.values())
                  for c in starting_configs(include_reversed=False)}
        ok = all((n == 0) if "'" in name else (n == 2) for name, n in counts.items())
        rep.add("derive 14 starting configurations", ok and len(counts) == 14)
        bad = golden_mismatches(golden_dir)
        rep.add("golden files", not bad, **({"mismatch": "; ".join(bad)} if bad else {}))
        short = normalize_to_shorthand(generate_equations())
        collapsed = {render_shorthand(collapse(e)) for e in short}
        rep.add("shorthand collapse", len(collapsed) == 1, distinct=len(collapsed))
    guarded("derive", derive)

    if scan:
        def do_scan():
            r, secs = _timed(exhaustive_scan)
            rep.add("exhaustive scan", r.group_count == 8 and r.words_scanned == 46080,
                    groups=r.group_count, seconds=round(secs, 3))
        guarded("exhaustive scan", do_scan)

    # numerics
    def numerics():
        ident = ModelBundle.identity(2)
        r8 = verify_eight(ident, 0.0)
        rep.add("identity: eight equations", r8.passed, residual=r8.max_residual)
        rc = verify_classic(ComplexTensor.identity(2, 3), 2, 0.0)
        rep.add("identity: classic", rc.passed, residual=rc.max_residual)
        ry = verify_ybe(YbeMatrix(2, np.eye(4)), 0.0)
        rep.add("identity: Yang-Baxter", ry.passed, residual=ry.max_residual)
        uni = [unitarity_r(YbeMatrix(2, np.eye(4)), 0.0), unitarity_s(ident, 0.0), unitarity_q(ident, 0.0)]
        rep.add("identity: unitarity", all(u.passed for u in uni), residual=max(u.residual for u in uni))

        s = random_tensor(rng, 2, 3)
        mats = list(residual_matrices(ModelBundle(2, s)).values())
        spread = max(float(np.max(np.abs(a - mats[0]))) for a in mats)
        b = ModelBundle(2, s)
        letter_gap = max(float(np.max(np.abs(embed(shorthand_letter(f"S~{l}^-1"), b) - embed(shorthand_letter(f"S{l}"), b))))
                         for l in range(1, 5))
        rep.add("collapse: residual matrices coincide", spread <= 1e-10 and letter_gap <= 1e-10,
                spread=spread, letter=letter_gap)

        qy = ComplexTensor(2, 2, np.diag([1.0, 2.0, 3.0, 5.0]))
        law = verify_eight(lawrence_construct(qy), 1e-10)
        rep.add("Lawrence construction", law.passed, residual=law.max_residual)

        s2 = random_tensor(rng, 2, 3)
        d_classic = classic_to_lexicographic(classic_difference(s2), 2)
        d_eight = residual_matrices(ModelBundle(2, s2))["1,6"]
        gap = float(np.max(np.abs(d_classic - d_eight)))
        rep.add("classic vs line 1,6", gap <= 1e-12, gap=gap)

        r = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        lhs, rhs = ybe_longhand(r, 2)
        a, bb = ybe_sides(YbeMatrix(2, r))
        l2, r2 = classic_longhand(s2.data, 2)
        lhs_c = np.array(l2) - np.array(r2)
        g = max(max_entry_gap(lhs, a), max_entry_gap(rhs, bb),
                float(np.max(np.abs(lhs_c - classic_difference(s2)))))
        rep.add("oracle agreement", g <= 1e-12, gap=g)
    guarded("numerics", numerics)

    def geometry():
        af = read_arrangement(fixture_path("four_lines.arr"))
        reports = classify_orders(af.arrangement)
        reps = {r.bruhat_class.representative for r in reports}
        eqs = {e.name: geometric_form(e) for e in generate_equations()}
        letters_ok = all(
            tuple(equation_from_direction(af.arrangement, direction_angle(v))) == eqs[DIRECTION_EQUATION[n]].lhs
            for n, v in af.directions.items()
        )
        rr = equation_from_direction(af.arrangement, direction_angle(af.directions["1r"]))
        rep.add("sweep geometry", len(reps) == 8 and letters_ok and all(x.kind is Kind.STILDE for x in rr),
                classes=len(reps), sectors=len(reports))
    guarded("geometry", geometry)
    return rep
