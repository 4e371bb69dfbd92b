from math import comb

import pytest

from tetrahedron.bruhat import (
    AdmissibleOrder,
    bruhat_classes,
    c_notation,
    class_of,
    elementary_swaps,
    enumerate_admissible,
    enumerate_admissible_bruteforce,
    format_chain,
    hat,
    inversion_set,
    is_admissible,
    packets,
    parse_c_notation,
    parse_chain,
    subsets,
    swap,
    swap_path,
)
from tetrahedron.errors import DomainError, InputError, ResourceError

LEX_42 = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (4, 3), (5, 2), (5, 3)])
def test_subset_counts(n, k):
    s = subsets(n, k)
    assert len(s) == comb(n, k)
    assert s == sorted(s)


def test_hat_and_packets():
    assert hat((1, 2, 3), 2) == (1, 3)
    ps = packets(4, 2)
    assert len(ps) == 4
    assert ps[0].parent == (1, 2, 3)
    assert ps[0].facets == ((2, 3), (1, 3), (1, 2)) or set(ps[0].facets) == {(1, 2), (1, 3), (2, 3)}


def test_lex_and_reverse_admissible():
    assert is_admissible(LEX_42, 4, 2)
    assert is_admissible(LEX_42[::-1], 4, 2)


def test_non_admissible_chain():
    # 13 before 12 and 23 after both: packet 123 is neither ascending nor descending
    assert not is_admissible(((1, 3), (1, 2), (2, 3), (1, 4), (2, 4), (3, 4)), 4, 2)


@pytest.mark.parametrize("n,k,size", [(3, 1, 6), (3, 2, 2), (4, 3, 2), (4, 2, 16)])
def test_enumeration_sizes(n, k, size):
    assert len(enumerate_admissible(n, k)) == size


def test_backtracking_matches_bruteforce():
    assert enumerate_admissible(4, 2) == enumerate_admissible_bruteforce(4, 2)


def test_b42_has_eight_classes_partitioning_a42():
    classes = bruhat_classes(4, 2)
    assert len(classes) == 8
    all_members = set().union(*(c.members for c in classes))
    assert all_members == set(enumerate_admissible(4, 2))
    assert sum(len(c) for c in classes) == 16


def test_class_reps_are_lex_least():
    for c in bruhat_classes(4, 2):
        assert c.representative == min(c.members)


def test_classes_closed_under_reversal():
    classes = bruhat_classes(4, 2)
    for c in classes:
        rev = class_of(c.representative.reversed().chain, classes)
        assert all(m.reversed() in rev for m in c.members)


def test_inversion_set_constant_on_class():
    for c in bruhat_classes(4, 2):
        sets = {inversion_set(m) for m in c.members}
        assert len(sets) == 1


def test_inversion_set_conventions_complement():
    a = AdmissibleOrder(4, 2, LEX_42)
    asc, desc = inversion_set(a), inversion_set(a, "descending")
    assert asc | desc == frozenset(subsets(4, 3))
    assert not asc & desc
    with pytest.raises(ValueError):
        inversion_set(a, "sideways")


def test_swaps_need_disjointness():
    a = AdmissibleOrder(4, 2, LEX_42)
    # only 14,23 share no point among the adjacent pairs
    assert elementary_swaps(a) == [2]
    b = swap(a, 2)
    assert b.chain[2:4] == ((2, 3), (1, 4))
    assert is_admissible(b.chain, 4, 2)


def test_swap_path():
    classes = bruhat_classes(4, 2)
    big = max(classes, key=len)
    a, b = sorted(big.members)[0], sorted(big.members)[-1]
    path = swap_path(a, b)
    x = a
    for j in path:
        x = swap(x, j)
    assert x == b
    other = next(c for c in classes if c is not big)
    assert swap_path(a, other.representative) is None


def test_c_notation_round_trip():
    text = "c4c2c1c3c5c6"
    chain = parse_c_notation(text, 4, 2)
    assert c_notation(chain, 4, 2) == text
    assert parse_chain(format_chain(chain)) == chain
    with pytest.raises(InputError):
        parse_c_notation("c9c1", 4, 2)


def test_domain_and_guard_errors():
    with pytest.raises(DomainError):
        subsets(3, 4)
    with pytest.raises(ResourceError):
        enumerate_admissible(9, 2)
