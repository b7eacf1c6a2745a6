import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from freemetric.errors import AlphabetMismatch, DomainExceeded, LimitExceeded
from freemetric.lengths import (
    LengthFn,
    LinearForm,
    SQRT2_FORM,
    Weights,
    cyc_length,
    edit_distance,
    fg_distance,
    induced_distance,
    is_valid_matching,
    lcs,
    matching_deficiency,
    pullback_length,
    pullback_length_fn,
    wc_length,
    wc_length_codes,
    wc_length_oracle,
    wc_value,
    word_length,
)
from freemetric.oracles import edit_bfs, edit_bfs_distances, edit_dijkstra
from freemetric.words import (
    Alphabet,
    MonoidWord,
    commutator,
    conjugate,
    enumerate_ball,
    enumerate_monoid,
    invert,
    multiply,
    parse,
    parse_monoid,
    power,
    random_words,
)

from conftest import F2, monoid_words, words

P, M = parse, parse_monoid
W15 = Weights((1.0, 5.0))


def test_weights_parse():
    assert Weights.parse("a=1,b=5", F2) == W15
    assert Weights.parse("", F2) == Weights.unit(2)
    with pytest.raises(ValueError):
        Weights.parse("c=2", F2)
    with pytest.raises(ValueError):
        Weights((1.0, 0.0))
    with pytest.raises(AlphabetMismatch):
        word_length(P("a"), Weights((1.0,)))


def test_word_and_cyclic_lengths():
    assert word_length(P("abAB")) == 4
    assert word_length(P("abAB"), W15) == 12
    assert cyc_length(P("baB")) == 1
    assert cyc_length(P("BaabAb")) == 2


def test_wc_known_values():
    a, b = P("a"), P("b")
    assert wc_value(P("abAB")) == 2
    assert wc_value(power(commutator(a, b), 3)) == 4
    assert wc_value(commutator(power(a, 2), power(b, 3))) == 4
    assert wc_value(commutator(power(a, 2), power(b, 3)), W15) == 4
    assert wc_value(P("")) == 0
    assert wc_value(P("aa")) == 2


def test_wc_witness_is_valid():
    x = P("abAB")
    res = wc_length(x)
    assert is_valid_matching(x.codes, res.pairs)
    assert matching_deficiency(x.codes, res.pairs, Weights.unit()) == res.deficiency
    # ties resolve to the lowest pairing index
    assert wc_length_codes((1, -1), Weights.unit()).pairs == ((0, 1),)


def test_matching_axioms():
    codes = P("abAB").codes
    assert is_valid_matching(codes, [(0, 2)])
    assert not is_valid_matching(codes, [(0, 2), (1, 3)])  # crossing
    assert not is_valid_matching(codes, [(0, 1)])  # not inverse letters
    assert not is_valid_matching((1, -1, -1), [(0, 1), (0, 2)])  # not disjoint


def test_wc_limits():
    with pytest.raises(LimitExceeded):
        wc_length(P("ab" * 10), limit=8)
    with pytest.raises(LimitExceeded):
        wc_length_oracle(P("ab" * 7))


def test_wc_matches_oracle_on_ball8():
    for x in enumerate_ball(8):
        assert wc_value(x) == wc_length_oracle(x), str(x)


@pytest.mark.parametrize("w", [None, W15])
def test_wc_matches_oracle_random(w):
    rng = np.random.default_rng(7)
    for x in random_words(500, 12, F2, rng):
        assert wc_value(x, w) == pytest.approx(wc_length_oracle(x, w), abs=1e-9), str(x)


@given(words(max_size=8), st.integers(0, 8), st.sampled_from([1, -1, 2, -2]))
def test_wc_invariant_under_cancelling_insertion(x, pos, c):
    pos = min(pos, len(x))
    codes = x.codes[:pos] + (c, -c) + x.codes[pos:]
    value = wc_length_codes(codes, Weights.unit()).deficiency
    assert value == wc_value(x)
    assert value == wc_length_oracle(codes)


@given(words(), words())
def test_wc_axioms(x, y):
    v = wc_value(x)
    assert v == wc_value(invert(x))
    assert wc_value(multiply(x, y)) <= v + wc_value(y)
    assert v % 2 == len(x) % 2
    assert v <= cyc_length(x) <= len(x)


@given(words(), words())
def test_wc_conjugation_invariant(g, x):
    assert wc_value(conjugate(g, x)) == wc_value(x)
    assert wc_value(conjugate(g, x), W15) == pytest.approx(wc_value(x, W15))


# --- edit distance ------------------------------------------------------------


def test_edit_examples():
    assert edit_distance(M("ab"), M("ba")) == 2
    assert lcs(M("abba"), M("bab")) == 2
    assert edit_distance(M(""), M("aab")) == 3
    assert edit_distance(M("ab"), M("ba"), W15) == 2
    assert edit_distance(M("ab"), M("aa"), W15) == 6


def test_edit_matches_bfs_exhaustively():
    monoid = enumerate_monoid(5)
    assert len(monoid) == 63
    for u in monoid:
        dist = edit_bfs_distances(u.codes, 2, 10)
        for v in monoid:
            assert edit_distance(u, v) == dist[v.codes]


def test_edit_matches_dijkstra_weighted():
    rng = np.random.default_rng(3)
    for _ in range(60):
        u, v = (MonoidWord(tuple(rng.integers(1, 3, size=rng.integers(0, 5))), F2) for _ in range(2))
        assert edit_distance(u, v, W15) == pytest.approx(edit_dijkstra(u, v, W15))
        assert edit_distance(u, v) == edit_bfs(u, v)


@given(monoid_words(), monoid_words(), monoid_words(), monoid_words())
def test_edit_bi_invariance(u, v, s, t):
    for w in (None, W15):
        d = edit_distance(u, v, w)
        assert edit_distance(s + u + t, s + v + t, w) == pytest.approx(d)
        assert edit_distance(v, u, w) == pytest.approx(d)


@given(monoid_words(6), monoid_words(6))
def test_embedding_of_monoid_in_group(u, v):
    for w in (None, W15):
        assert fg_distance(u.to_word(), v.to_word(), w) == pytest.approx(edit_distance(u, v, w))


def test_embedding_exhaustive_short():
    monoid = enumerate_monoid(4)
    for u, v in itertools.product(monoid, repeat=2):
        assert fg_distance(u.to_word(), v.to_word()) == edit_distance(u, v)


def test_monoid_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        edit_distance(M("a"), parse_monoid("a", Alphabet(3)))


# --- cyclic length and pullbacks ----------------------------------------------


def test_cyc_is_homogeneous_but_not_subadditive():
    rng = np.random.default_rng(11)
    for x in random_words(200, 10, F2, rng):
        for n in (2, 3, 5):
            assert cyc_length(power(x, n)) == n * cyc_length(x)
    x, y = P("baB"), P("abA")
    assert cyc_length(multiply(x, y)) - cyc_length(x) - cyc_length(y) == 4


def test_pullback_values():
    assert pullback_length(P("b"), SQRT2_FORM) == pytest.approx(math.sqrt(2))
    assert pullback_length(P("ab"), SQRT2_FORM) == pytest.approx(1 + math.sqrt(2))
    assert pullback_length(P("aB"), SQRT2_FORM) == pytest.approx(math.sqrt(2) - 1)
    assert pullback_length(P("abAB"), SQRT2_FORM) == 0
    with pytest.raises(AlphabetMismatch):
        LinearForm((1.0, 2.0, 3.0)).value((1, 2))


@given(words(), words(), st.integers(-5, 5))
def test_pullback_axioms(x, y, n):
    ell = pullback_length_fn(SQRT2_FORM)
    assert ell(multiply(x, y)) <= ell(x) + ell(y) + 1e-9
    assert ell(power(x, n)) == pytest.approx(abs(n) * ell(x), abs=1e-9)
    assert ell(invert(x)) == pytest.approx(ell(x))


def test_induced_distance_and_domain():
    ell = pullback_length_fn(SQRT2_FORM)
    assert induced_distance(ell, P("a"), P("b")) == pytest.approx(math.sqrt(2) - 1)
    local = LengthFn(lambda x: float(len(x)), domain_radius=2)
    assert local(P("ab")) == 2 and local.in_domain(P("ab"))
    assert not local.in_domain(P("aba"))
    with pytest.raises(DomainExceeded):
        local(P("aba"))
