import math

import numpy as np
import pytest

from tetrahedron.bruhat import bruhat_classes, c_notation, class_of, is_admissible, parse_c_notation
from tetrahedron.equations import generate_equations, geometric_form
from tetrahedron.errors import DegeneracyError, InputError, PreconditionError, TieError
from tetrahedron.formats import fixture_path, read_arrangement
from tetrahedron.geometry import (
    Arrangement,
    Line,
    classes_hit,
    classify_orders,
    critical_angles,
    direction_angle,
    equation_from_direction,
    relabeled,
    standard_labeling,
    unordered_lines,
    sector_midpoints,
    sectors,
    sweep_order,
    vertices,
)
from tetrahedron.selfcheck import DIRECTION_EQUATION
from tetrahedron.words import Kind


@pytest.fixture(scope="module")
def fig():
    return read_arrangement(fixture_path("four_lines.arr"))


def random_arrangement(rng):
    lines = []
    for i in range(1, 5):
        t = rng.uniform(0, math.pi)
        lines.append(Line(i, math.cos(t), math.sin(t), rng.normal()))
    return Arrangement(tuple(lines))


def sweeps_golden():
    out = {}
    for row in fixture_path("four_lines_sweeps.txt").read_text().splitlines():
        if row.strip() and not row.startswith("#"):
            name, chain, rep = (x.strip() for x in row.split(":"))
            out[name] = (chain, rep)
    return out


def test_fixture_vertices(fig):
    vs = vertices(fig.arrangement)
    assert [str(v.pair) for v in vs] == ["12", "13", "14", "23", "24", "34"]
    for v in vs:
        for i in v.pair.points:
            l = fig.arrangement.line(i)
            assert abs(l.a * v.x + l.b * v.y - l.c) < 1e-6


def test_fixture_sectors(fig):
    s = sectors(fig.arrangement)
    assert len(s) == 2 * len(critical_angles(fig.arrangement)) == 14
    assert len(classes_hit(fig.arrangement)) == 8


def test_named_directions_match_golden(fig):
    gold = sweeps_golden()
    classes = bruhat_classes(4, 2)
    assert sorted(gold) == sorted(fig.directions)
    for name, vec in fig.directions.items():
        chain = sweep_order(fig.arrangement, direction_angle(vec)).complement_chain()
        assert c_notation(chain, 4, 2) == gold[name][0]
        rep = class_of(chain, classes).representative
        assert c_notation(rep.chain, 4, 2) == gold[name][1]


def test_named_directions_give_geometric_forms(fig):
    geo = {e.name: geometric_form(e) for e in generate_equations()}
    for name, vec in fig.directions.items():
        letters = equation_from_direction(fig.arrangement, direction_angle(vec))
        assert tuple(letters) == geo[DIRECTION_EQUATION[name]].lhs


def test_direction_1r_all_stilde_and_1_all_s(fig):
    for name, kind in (("1r", Kind.STILDE), ("1", Kind.S)):
        letters = equation_from_direction(fig.arrangement, direction_angle(fig.directions[name]))
        assert all(x.kind is kind for x in letters)


def test_antipodal_reversal(fig):
    for t in sector_midpoints(fig.arrangement):
        a = sweep_order(fig.arrangement, t).order
        b = sweep_order(fig.arrangement, t + math.pi).order
        assert a == b[::-1]


def test_antipodal_flips_chirality(fig):
    for t in sector_midpoints(fig.arrangement):
        a = equation_from_direction(fig.arrangement, t)
        b = equation_from_direction(fig.arrangement, t + math.pi)
        assert all((x.kind is Kind.S) != (y.kind is Kind.S) for x, y in zip(a, b))


def test_perturbing_a_line_moves_three_vertices(fig):
    arr = fig.arrangement
    l = arr.line(2)
    moved = Arrangement(tuple(Line(x.id, x.a, x.b, x.c + 5.0) if x.id == 2 else x for x in arr.lines))
    before = {v.pair: (v.x, v.y) for v in vertices(arr)}
    after = {v.pair: (v.x, v.y) for v in vertices(moved)}
    changed = {p for p in before if not np.allclose(before[p], after[p])}
    assert len(changed) == 3 and all(l.id in p.points for p in changed)


def test_degenerate_arrangements():
    def arr(*lines):
        return Arrangement(tuple(Line(i + 1, *abc) for i, abc in enumerate(lines)))

    with pytest.raises(DegeneracyError):
        vertices(arr((1, 0, 0), (1, 0, 1), (0, 1, 0), (1, 1, 5)))  # parallel
    with pytest.raises(DegeneracyError):
        vertices(arr((1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -2, 7)))  # concurrent
    with pytest.raises(DegeneracyError):
        Line(1, 0.0, 0.0, 1.0)
    with pytest.raises(InputError):
        Arrangement((Line(1, 1, 0, 0), Line(2, 0, 1, 0)))


def test_tie_direction(fig):
    with pytest.raises(TieError):
        sweep_order(fig.arrangement, critical_angles(fig.arrangement)[0])
    with pytest.raises(TieError):
        sweep_order(fig.arrangement, critical_angles(fig.arrangement)[0] + math.pi)


@pytest.mark.parametrize("seed", range(60))
def test_random_arrangements_admissible(seed):
    raw = random_arrangement(np.random.default_rng(seed))
    arr, perm = standard_labeling(raw)
    assert sorted(perm.values()) == [1, 2, 3, 4]
    reports = classify_orders(arr)
    assert len({r.bruhat_class.representative for r in reports}) == 8
    assert all(is_admissible(r.chain, 4, 2) for r in reports)
    # a full turn visits each order and its reverse
    reps = {r.bruhat_class.representative for r in reports}
    assert all(class_of(r.reversed().chain, bruhat_classes(4, 2)).representative in reps for r in reps)


def test_listed_chain_class(fig):
    # direction 5r lands exactly on its listed chain
    chain = sweep_order(fig.arrangement, direction_angle(fig.directions["5r"])).complement_chain()
    assert chain == parse_c_notation("c1c2c3c6c5c4", 4, 2)


@pytest.mark.parametrize("seed", range(10))
def test_exactly_two_good_labelings(seed):
    import itertools

    raw = random_arrangement(np.random.default_rng(100 + seed))
    good = [p for p in itertools.permutations(range(1, 5))
            if not unordered_lines(relabeled(raw, dict(zip(range(1, 5), p))))]
    assert len(good) == 2


def test_bad_labeling_is_a_precondition_error(fig):
    swapped = relabeled(fig.arrangement, {1: 2, 2: 1, 3: 3, 4: 4})
    assert unordered_lines(swapped)
    with pytest.raises(PreconditionError):
        classify_orders(swapped)
    assert unordered_lines(fig.arrangement) == []


def test_inadmissible_chain_iff_unordered_line():
    # every sector chain fails exactly when some line is out of order
    from tetrahedron.geometry import sweep_order as so

    raw = random_arrangement(np.random.default_rng(3))
    for perm in [dict(zip(range(1, 5), p)) for p in [(1, 2, 3, 4), (2, 1, 3, 4), (4, 3, 2, 1)]]:
        arr = relabeled(raw, perm)
        ok = not unordered_lines(arr)
        for t in sector_midpoints(arr):
            assert is_admissible(so(arr, t).complement_chain(), 4, 2) == ok


def test_critical_angles_are_separated():
    for seed in range(200):
        arr, _ = standard_labeling(random_arrangement(np.random.default_rng(seed)))
        crit = critical_angles(arr)
        gaps = [b - a for a, b in zip(crit, crit[1:])] + [crit[0] + math.pi - crit[-1]]
        assert min(gaps) > 1e-9
        # three vertices per line: 4 shared angles plus 3 from the opposite pairs
        assert len(crit) == 7
