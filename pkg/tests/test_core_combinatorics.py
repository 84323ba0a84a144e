from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from bruhatcup import bits
from bruhatcup.bits import Segment, fmt, packet, parse, vset

vertex_sets = st.frozensets(st.integers(0, 12), max_size=8)


@given(vertex_sets)
def test_vset_elements_roundtrip(s):
    m = vset(s)
    assert bits.elements(m) == tuple(sorted(s))
    assert bits.size(m) == len(s)
    assert bits.vset(bits.to_json(m)) == m


def test_vset_rejects_bad_input():
    with pytest.raises(ValueError):
        vset([-1])
    with pytest.raises(ValueError):
        vset([63])


@given(vertex_sets, vertex_sets)
def test_lex_key_is_lexicographic_on_sorted_tuples(a, b):
    ka, kb = bits.lex_key(vset(a)), bits.lex_key(vset(b))
    assert (ka < kb) == (tuple(sorted(a)) < tuple(sorted(b)))


@pytest.mark.parametrize(
    "K, expected",
    [
        ("0123", ["012", "013", "023", "123"]),
        ("024", ["02", "04", "24"]),
    ],
)
def test_packet_examples(K, expected):
    pk = packet(parse(K))
    assert [fmt(x) for x in pk.members] == expected


def test_packet_of_singleton():
    pk = packet(vset([5]))
    assert pk.members == (0,)


@given(st.frozensets(st.integers(0, 10), min_size=1, max_size=7))
def test_packet_is_lex_sorted_removal_rule(s):
    K = vset(s)
    members = packet(K).members
    ks = sorted(s)
    m = len(ks)
    assert list(members) == [K & ~(1 << ks[m - 1 - j]) for j in range(m)]
    # the removal rule and lexicographic sorting agree
    assert list(members) == sorted(members, key=bits.lex_key)


@pytest.mark.parametrize("a, expected", [(2, 1), (0, 2), (4, 0)])
def test_count_greater_examples(a, expected):
    L = parse("13")
    assert bits.count_greater(L, a) == expected
    assert bits.is_even_gap(L, a) == (expected % 2 == 0)


@given(vertex_sets, st.integers(0, 12))
def test_count_greater_matches_filter(L, a):
    assert bits.count_greater(vset(L), a) == sum(1 for x in L if x > a)
    assert bits.count_less(vset(L), a) == sum(1 for x in L if x < a)


def test_is_segment_examples():
    pk = packet(parse("0123"))
    assert bits.is_segment([parse("012"), parse("013")], pk) == Segment.BEGINNING
    assert bits.is_segment([], pk) == Segment.BEGINNING
    assert bits.is_segment([parse("012"), parse("123")], pk) == Segment.NEITHER


@given(st.lists(st.booleans(), max_size=8))
def test_segment_pattern_against_brute_force(flags):
    m = len(flags)
    prefixes = {tuple([True] * k + [False] * (m - k)) for k in range(m + 1)}
    suffixes = {tuple([False] * (m - k) + [True] * k) for k in range(m + 1)}
    pat = bits.segment_pattern(flags)
    t = tuple(flags)
    assert (pat == Segment.NEITHER) == (t not in prefixes and t not in suffixes)
    if pat == Segment.BEGINNING:
        assert t in prefixes
    if pat == Segment.ENDING:
        assert t in suffixes and t not in prefixes


@given(st.integers(0, 9), st.integers(0, 4))
def test_subsets_of_size_matches_itertools(n, k):
    got = bits.subsets_of_size(bits.full(n), k)
    expected = [vset(c) for c in combinations(range(n + 1), k)]
    assert got == expected


@pytest.mark.parametrize("text", ["012", "0", "357"])
def test_fmt_parse_roundtrip(text):
    assert fmt(parse(text)) == text


def test_fmt_empty():
    assert fmt(0) == "∅"
