import numpy as np
import pytest
from hypothesis import given, strategies as st

from freemetric.config import Limits, set_limits
from freemetric.errors import AlphabetMismatch, LimitExceeded, NegativeLetterInMonoid, UnknownSymbol
from freemetric.oracles import ball_count, rotation_minimal_cyclic_length, rotations_of
from freemetric.words import (
    Alphabet,
    Letter,
    abelianize,
    ball_size,
    commutator,
    conjugate,
    cyclic_reduce,
    enumerate_ball,
    identity,
    invert,
    is_conjugate,
    multiply,
    parse,
    parse_monoid,
    power,
    random_word,
    random_words,
)

from conftest import F2, words

P = parse
e = identity()


def test_parse_reduces():
    assert P("aAb") == P("b")
    assert str(P("aAb")) == "b"
    assert len(P("abAB")) == 4
    assert P("") == e and P("e") == e


def test_parse_unknown_symbol_position():
    with pytest.raises(UnknownSymbol) as info:
        P("ab!")
    assert info.value.position == 2
    with pytest.raises(UnknownSymbol):
        P("abc")


def test_letters():
    assert P("aB").letters == (Letter(0, 1), Letter(1, -1))
    assert Letter(1, -1).code == -2


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(0)
    with pytest.raises(ValueError):
        Alphabet(2, ("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(2, ("a", "B"))
    custom = Alphabet(2, ("x", "y"))
    assert str(parse("xyXY", custom)) == "xyXY"


@pytest.mark.parametrize(
    "x, y, expected",
    [("ab", "BA", ""), ("a", "b", "ab"), ("abA", "abA", "abbA"), ("", "ba", "ba")],
)
def test_multiply(x, y, expected):
    assert str(multiply(P(x), P(y))) == expected


def test_multiply_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        multiply(P("a"), parse("a", Alphabet(3)))


@pytest.mark.parametrize("x, expected", [("ab", "BA"), ("", ""), ("aBa", "AbA")])
def test_invert(x, expected):
    assert str(invert(P(x))) == expected


def test_power():
    x = power(P("baB"), 3)
    assert str(x) == "baaaB" and len(x) == 5
    assert str(power(P("a"), -2)) == "AA"
    assert power(e, 7) == e
    assert power(P("ab"), 0) == e


def test_conjugate_and_commutator():
    assert str(conjugate(P("b"), P("a"))) == "baB"
    assert conjugate(e, P("a")) == P("a")
    assert conjugate(P("a"), P("a")) == P("a")
    assert str(commutator(P("a"), P("b"))) == "abAB"
    assert commutator(P("a"), P("a")) == e
    assert len(commutator(P("aa"), P("bbb"))) == 10


def test_cyclic_reduce():
    assert str(cyclic_reduce(P("baB"))) == "a"
    assert str(cyclic_reduce(P("abAB"))) == "abAB"
    x = P("BaabAb")
    assert len(cyclic_reduce(x)) == rotation_minimal_cyclic_length(x) == 2
    assert str(cyclic_reduce(x)) == "ab"


def test_is_conjugate():
    assert is_conjugate(P("baB"), P("a"))
    assert not is_conjugate(P("a"), P("b"))
    assert "bABa" in rotations_of(P("abAB"))
    assert is_conjugate(P("abAB"), P("bABa"))
    assert not is_conjugate(P("abAB"), P("aBAb"))  # [a,B] is not conjugate to [a,b]
    assert not is_conjugate(P("abAB"), P("baBA"))  # nor to its inverse


def test_abelianize():
    assert abelianize(P("abAB")).exponents == (0, 0)
    assert abelianize(P("aab")).exponents == (2, 1)
    assert abelianize(power(P("ab"), 3)).exponents == (3, 3)


def test_enumerate_ball_sizes():
    assert enumerate_ball(0) == [e]
    assert len(enumerate_ball(1)) == 5
    assert len(enumerate_ball(2)) == 17
    for r in range(6):
        ball = enumerate_ball(r)
        assert len(ball) == ball_count(r, 2) == ball_size(r, 2)
        assert len(set(ball)) == len(ball)
    assert len(enumerate_ball(3, Alphabet(3))) == ball_count(3, 3)


def test_enumerate_ball_order():
    ball = enumerate_ball(2)
    assert [str(w) for w in ball[:5]] == ["", "a", "A", "b", "B"]
    assert [len(w) for w in ball] == sorted(len(w) for w in ball)


def test_enumerate_ball_limit():
    with pytest.raises(LimitExceeded):
        enumerate_ball(13)
    previous = set_limits(Limits(ball_radius=3))
    try:
        with pytest.raises(LimitExceeded):
            enumerate_ball(4)
        with pytest.raises(LimitExceeded):
            enumerate_ball(3, Alphabet(3))
    finally:
        set_limits(previous)


def test_random_word_contract():
    assert random_word(0, F2, 5) == e
    for s in range(20):
        assert len(random_word(5, F2, s)) == 5
    assert random_word(9, F2, 123) == random_word(9, F2, 123)
    assert random_words(5, 8, F2, 1) == random_words(5, 8, F2, 1)


def test_random_word_uniform_on_sphere():
    # 36 reduced words of length 2 in F2; each should appear about 1/36 of the time
    rng = np.random.default_rng(0)
    counts = {}
    for _ in range(36_000):
        w = str(random_word(2, F2, rng))
        counts[w] = counts.get(w, 0) + 1
    assert len(counts) == 12
    assert max(counts.values()) < 3300 and min(counts.values()) > 2700


def test_monoid_words():
    u = parse_monoid("abba")
    assert len(u) == 4 and str(u) == "abba"
    assert str(parse_monoid("ab") + parse_monoid("ba")) == "abba"
    with pytest.raises(NegativeLetterInMonoid):
        parse_monoid("aB")


# --- properties -------------------------------------------------------------


@given(words(), words(), words())
def test_group_axioms(x, y, z):
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert multiply(x, e) == x == multiply(e, x)
    assert multiply(x, invert(x)) == e


def test_associativity_exhaustive_ball3():
    ball = enumerate_ball(3)
    for x in ball:
        for y in ball:
            xy = multiply(x, y)
            for z in ball:
                assert multiply(xy, z) == multiply(x, multiply(y, z))


def test_identity_inverse_exhaustive_ball3():
    for x in enumerate_ball(3):
        assert multiply(x, invert(x)) == e == multiply(invert(x), x)


def test_random_triples_associative():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        x, y, z = random_words(3, 10, F2, rng)
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@given(words())
def test_print_parse_roundtrip(x):
    assert parse(str(x)) == x


@given(words(), words(), st.integers(-6, 6))
def test_length_bounds(x, y, n):
    assert len(multiply(x, y)) <= len(x) + len(y)
    assert len(power(x, n)) <= abs(n) * len(x)
    assert power(x, -n) == invert(power(x, n))


@given(words(), st.integers(0, 6))
def test_power_matches_repeated_product(x, n):
    p = e
    for _ in range(n):
        p = multiply(p, x)
    assert power(x, n) == p


@given(words())
def test_cyclic_reduce_properties(x):
    c = cyclic_reduce(x)
    if len(c) >= 2:
        assert c.codes[0] != -c.codes[-1]
    assert len(c) == rotation_minimal_cyclic_length(x)


@given(words(), words(), words())
def test_conjugation_preserves_class(g, x, y):
    assert is_conjugate(conjugate(g, x), x)
    brute = any(str(cyclic_reduce(y)) == r for r in rotations_of(cyclic_reduce(x))) or (
        cyclic_reduce(x) == e == cyclic_reduce(y)
    )
    assert is_conjugate(x, y) == brute


@given(words(), words())
def test_abelianize_homomorphism(x, y):
    assert abelianize(multiply(x, y)) == abelianize(x) + abelianize(y)
    assert abelianize(commutator(x, y)).is_zero()
