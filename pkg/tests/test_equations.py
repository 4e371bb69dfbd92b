import pytest

from tetrahedron.equations import (
    EQUATION_NAMES,
    SHORTHAND_ORDER,
    analyze_config,
    classic_form,
    collapse,
    equivalence_key,
    exhaustive_scan,
    generate,
    generate_equations,
    geometric_form,
    normalize_to_shorthand,
    parse_classic,
    parse_shorthand,
    render_shorthand,
    shorthand_letter,
    shorthand_symbol,
    starting_configs,
)
from tetrahedron.errors import InputError, PreconditionError
from tetrahedron.formats import GOLDEN_FILES, load_golden
from tetrahedron.selfcheck import golden_mismatches
from tetrahedron.words import Kind, canonical_q_form, cycle_perm, opword, relabel, rword


@pytest.fixture(scope="module")
def eqs():
    return generate_equations()


@pytest.fixture(scope="module")
def scan():
    return exhaustive_scan()


def test_fourteen_configs_and_reversals():
    base = starting_configs(include_reversed=False)
    assert len(base) == 14
    assert len(starting_configs()) == 28
    assert sum("'" in c.name for c in base) == 6


@pytest.mark.parametrize("cfg", starting_configs(include_reversed=False), ids=lambda c: c.name)
def test_config_derivation_count(cfg):
    res = analyze_config(cfg)
    n = sum(len(v) for v in res.successful.values())
    assert n == (0 if cfg.primed else 2)


def test_grouping(eqs):
    rep = generate()
    assert sorted(rep.groups) == sorted(EQUATION_NAMES)
    assert [e.name for e in eqs] == list(EQUATION_NAMES)
    # 1 pairs with 6, and 1r with 6r
    assert rep.groups["1,6"] == ["1", "6"]
    assert rep.groups["1r,6r"] == ["1r", "6r"]


def test_equations_are_balanced(eqs):
    for e in eqs:
        assert len(e.lhs) == len(e.rhs) == 7
        assert sum(x.kind is not Kind.Q for x in e.lhs) == 4
        # each side is the other read backwards
        assert canonical_q_form(e.rhs) == canonical_q_form(e.lhs[::-1])


def test_equivalence_key_invariant(eqs):
    e = eqs[2]
    k = equivalence_key(e.lhs, e.rhs)
    assert equivalence_key(e.rhs, e.lhs) == k
    p = cycle_perm("(1234)")
    assert equivalence_key(relabel(e.lhs, p), relabel(e.rhs, p)) == k
    assert len({equivalence_key(x.lhs, x.rhs) for x in eqs}) == 8


def test_golden_files_match(eqs):
    assert golden_mismatches(equations=eqs) == []
    for name in GOLDEN_FILES:
        assert load_golden(name)


def test_golden_eight_words(eqs):
    g = load_golden("eight_equations.txt")
    for e in eqs:
        assert canonical_q_form(opword(g[e.name][0])) == e.lhs
        assert canonical_q_form(opword(g[e.name][1])) == e.rhs


def test_shorthand(eqs):
    short = normalize_to_shorthand(eqs)
    assert [e.name for e in short] == list(SHORTHAND_ORDER)
    g = load_golden("shorthand.txt")
    for e in short:
        assert canonical_q_form(parse_shorthand(g[e.name][0])) == e.lhs
        assert canonical_q_form(parse_shorthand(g[e.name][1])) == e.rhs
    # no S^-1, uninverted S~ or Q^-1 remain
    for e in short:
        for x in e.lhs + e.rhs:
            assert not (x.kind is Kind.S and x.inverted)
            assert not (x.kind is Kind.STILDE and not x.inverted)
            assert not (x.kind is Kind.Q and x.inverted)


def test_collapse_makes_one_equation(eqs):
    short = normalize_to_shorthand(eqs)
    out = {render_shorthand(collapse(e)) for e in short}
    assert len(out) == 1
    c = collapse(short[3])
    assert c.lhs == canonical_q_form(parse_shorthand("Q4 S4 S3 Q3 Q2 S2 S1"))
    assert c.rhs == canonical_q_form(parse_shorthand("S1 S2 Q2 Q3 S3 S4 Q4"))


def test_shorthand_symbols():
    for sym in ["S1", "S4", "S~2^-1", "Q3", "Q4"]:
        assert shorthand_symbol(shorthand_letter(sym)) == sym
    assert str(shorthand_letter("S4")) == "S(12)(13)(23)"
    assert str(shorthand_letter("S~1^-1")) == "S~(34)(24)(23)^-1"
    assert str(shorthand_letter("Q2")) == "Q(12)(34)"
    for bad in ["Q1", "S5", "T2", "Sx"]:
        with pytest.raises(InputError):
            shorthand_letter(bad)


def test_normalize_needs_all_eight(eqs):
    with pytest.raises(PreconditionError):
        normalize_to_shorthand(eqs[:7])


def test_geometric_forms(eqs):
    g = load_golden("geometric.txt")
    for e in eqs:
        geo = geometric_form(e)
        assert geo.lhs == opword(g[e.name][0])
        assert all(x.kind is not Kind.Q for x in geo.lhs)
        assert [sorted(x.points) for x in geo.lhs] == [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]


def test_classic_form(eqs):
    c = classic_form(eqs[0])
    assert c.render() == "S123 S145 S246 S356 = S356 S246 S145 S123"
    assert parse_classic(c.render()) == c
    with pytest.raises(PreconditionError):
        classic_form(eqs[1])


def test_scan_totals(scan):
    assert scan.words_scanned == 720 * 64
    assert scan.derivation_histogram == {0: 45696, 2: 384}
    assert scan.group_count == 8
    assert sorted(len(v) for v in scan.groups.values()) == [24, 24, 24, 24, 48, 48, 96, 96]


def test_scan_groups_agree_with_named_equations(scan):
    rep = generate()
    by_config = {}
    for res in rep.configs:
        for word in res.successful:
            by_config[res.config.name] = scan.group_of(word)
    for members in rep.groups.values():
        assert len({by_config[m] for m in members}) == 1
    assert len(set(by_config.values())) == 8
    assert scan.group_of(rword("12 23 13 14 24 34")) is None
