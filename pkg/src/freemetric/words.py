"""Reduced words in free groups and free monoids.

Letters are stored as signed integer codes: generator ``i`` (0-based) is
``i + 1`` and its inverse is ``-(i + 1)``.  In text, a lowercase name is a
generator and its uppercase form is the inverse, so ``"abAB"`` spells the
commutator ``a b a^-1 b^-1``.
"""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .config import get_limits
from .errors import AlphabetMismatch, LimitExceeded, NegativeLetterInMonoid, UnknownSymbol


@dataclass(frozen=True)
class Alphabet:
    rank: int = 2
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rank < 1 or self.rank > 26:
            raise ValueError(f"rank must be between 1 and 26, got {self.rank}")
        names = tuple(self.names) or tuple(string.ascii_lowercase[: self.rank])
        if len(names) != self.rank:
            raise ValueError(f"expected {self.rank} generator names, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be distinct: {names}")
        for name in names:
            if len(name) != 1 or name not in string.ascii_lowercase:
                raise ValueError(f"generator names must be single lowercase letters: {name!r}")
        object.__setattr__(self, "names", names)

    def symbol(self, code: int) -> str:
        name = self.names[abs(code) - 1]
        return name if code > 0 else name.upper()

    def code(self, symbol: str) -> int | None:
        lower = symbol.lower()
        if lower not in self.names:
            return None
        index = self.names.index(lower) + 1
        return index if symbol == lower else -index

    @property
    def codes(self) -> tuple[int, ...]:
        """All letter codes in canonical order ``a, A, b, B, ...``."""
        return tuple(c for i in range(1, self.rank + 1) for c in (i, -i))


DEFAULT_ALPHABET = Alphabet(2)


class Letter(NamedTuple):
    generator_index: int
    sign: int

    @property
    def code(self) -> int:
        return self.sign * (self.generator_index + 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(abs(code) - 1, 1 if code > 0 else -1)


def free_reduce(codes: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for c in codes:
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """An element of the free group, stored in freely reduced form."""

    codes: tuple[int, ...] = ()
    alphabet: Alphabet = field(default=DEFAULT_ALPHABET, compare=True)

    def __post_init__(self):
        rank = self.alphabet.rank
        for c in self.codes:
            if c == 0 or abs(c) > rank:
                raise ValueError(f"letter code {c} out of range for rank {rank}")
        object.__setattr__(self, "codes", free_reduce(self.codes))

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_code(c) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __str__(self):
        return "".join(self.alphabet.symbol(c) for c in self.codes)

    def __repr__(self):
        return f"Word({str(self)!r})" if self.codes else "Word(e)"

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def is_identity(self) -> bool:
        return not self.codes


@dataclass(frozen=True)
class MonoidWord:
    """A positive word in the free monoid; never reduced."""

    codes: tuple[int, ...] = ()
    alphabet: Alphabet = DEFAULT_ALPHABET

    def __post_init__(self):
        object.__setattr__(self, "codes", tuple(self.codes))
        for i, c in enumerate(self.codes):
            if c < 0:
                raise NegativeLetterInMonoid(i, self.alphabet.symbol(c))
            if c == 0 or c > self.alphabet.rank:
                raise ValueError(f"letter code {c} out of range for rank {self.alphabet.rank}")

    def __len__(self):
        return len(self.codes)

    def __str__(self):
        return "".join(self.alphabet.symbol(c) for c in self.codes)

    def __repr__(self):
        return f"MonoidWord({str(self)!r})"

    def __add__(self, other: "MonoidWord") -> "MonoidWord":
        _check_same(self.alphabet, other.alphabet)
        return MonoidWord(self.codes + other.codes, self.alphabet)

    def to_word(self) -> Word:
        """Image under the embedding of the free monoid into the free group."""
        return Word(self.codes, self.alphabet)


@dataclass(frozen=True)
class AbelianImage:
    exponents: tuple[int, ...]

    def __add__(self, other: "AbelianImage") -> "AbelianImage":
        if len(self.exponents) != len(other.exponents):
            raise AlphabetMismatch("abelian images of different rank")
        return AbelianImage(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __neg__(self) -> "AbelianImage":
        return AbelianImage(tuple(-a for a in self.exponents))

    def is_zero(self) -> bool:
        return not any(self.exponents)


def _check_same(a: Alphabet, b: Alphabet) -> None:
    if a != b:
        raise AlphabetMismatch(f"alphabets differ: {a.names} vs {b.names}")


def _codes_from_text(text: str, alphabet: Alphabet) -> list[int]:
    codes = []
    for i, ch in enumerate(text):
        code = alphabet.code(ch)
        if code is None:
            raise UnknownSymbol(i, ch)
        codes.append(code)
    return codes


def parse(text: str, alphabet: Alphabet = DEFAULT_ALPHABET) -> Word:
    """Parse ``text`` into a reduced word; ``""`` (or ``"e"`` when ``e`` is not a generator) is the identity."""
    if text == "e" and "e" not in alphabet.names:
        return Word((), alphabet)
    return Word(tuple(_codes_from_text(text, alphabet)), alphabet)


def parse_monoid(text: str, alphabet: Alphabet = DEFAULT_ALPHABET) -> MonoidWord:
    return MonoidWord(tuple(_codes_from_text(text, alphabet)), alphabet)


def identity(alphabet: Alphabet = DEFAULT_ALPHABET) -> Word:
    return Word((), alphabet)


def generators(alphabet: Alphabet = DEFAULT_ALPHABET) -> tuple[Word, ...]:
    return tuple(Word((i,), alphabet) for i in range(1, alphabet.rank + 1))


def multiply(x: Word, y: Word) -> Word:
    _check_same(x.alphabet, y.alphabet)
    a, b = x.codes, y.codes
    # both factors are reduced, so cancellation only happens at the seam
    k = 0
    while k < len(a) and k < len(b) and a[len(a) - 1 - k] == -b[k]:
        k += 1
    return Word(a[: len(a) - k] + b[k:], x.alphabet)


def invert(x: Word) -> Word:
    return Word(tuple(-c for c in reversed(x.codes)), x.alphabet)


def power(x: Word, n: int) -> Word:
    if n < 0:
        return power(invert(x), -n)
    if n == 0 or not x.codes:
        return Word((), x.alphabet)
    # x = u c u^-1 with c cyclically reduced, so x^n = u c^n u^-1 spelled directly
    k = _cyclic_cut(x.codes)
    u, core = x.codes[:k], x.codes[k : len(x.codes) - k]
    return Word(u + core * n + tuple(-c for c in reversed(u)), x.alphabet)


def conjugate(g: Word, x: Word) -> Word:
    """Return ``g x g^-1``."""
    return multiply(multiply(g, x), invert(g))


def commutator(x: Word, y: Word) -> Word:
    """Return ``[x, y] = x y x^-1 y^-1``."""
    return multiply(multiply(x, y), multiply(invert(x), invert(y)))


def _cyclic_cut(codes: Sequence[int]) -> int:
    k, n = 0, len(codes)
    while 2 * k + 1 < n and codes[k] == -codes[n - 1 - k]:
        k += 1
    return k


def cyclic_reduce(x: Word) -> Word:
    k = _cyclic_cut(x.codes)
    return Word(x.codes[k : len(x.codes) - k], x.alphabet)


def cyclic_conjugator(x: Word) -> tuple[Word, Word]:
    """Split ``x = u c u^-1`` with ``c`` cyclically reduced; returns ``(u, c)``."""
    k = _cyclic_cut(x.codes)
    return Word(x.codes[:k], x.alphabet), Word(x.codes[k : len(x.codes) - k], x.alphabet)


def is_conjugate(x: Word, y: Word) -> bool:
    _check_same(x.alphabet, y.alphabet)
    a, b = str(cyclic_reduce(x)), str(cyclic_reduce(y))
    return len(a) == len(b) and b in a + a


def abelianize(x: Word) -> AbelianImage:
    exps = [0] * x.alphabet.rank
    for c in x.codes:
        exps[abs(c) - 1] += 1 if c > 0 else -1
    return AbelianImage(tuple(exps))


def ball_size(radius: int, rank: int = 2) -> int:
    """Number of reduced words of length at most ``radius``."""
    if radius <= 0:
        return 1
    m = 2 * rank
    return 1 + sum(m * (m - 1) ** (r - 1) for r in range(1, radius + 1))


def _letter_order(code: int) -> int:
    return 2 * (abs(code) - 1) + (code < 0)


def check_ball_limit(radius: int, rank: int, limit: int | None = None) -> None:
    limit = get_limits().ball_radius if limit is None else limit
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if ball_size(radius, rank) > ball_size(limit, 2):
        raise LimitExceeded(
            f"ball of radius {radius} in rank {rank} exceeds the configured limit "
            f"(radius {limit} in rank 2)"
        )


def enumerate_ball(
    radius: int, alphabet: Alphabet = DEFAULT_ALPHABET, limit: int | None = None
) -> list[Word]:
    """All reduced words of length <= ``radius``, length-then-lexicographic.

    Letters are ordered ``a < A < b < B < ...``.
    """
    check_ball_limit(radius, alphabet.rank, limit)
    letters = sorted(alphabet.codes, key=_letter_order)
    layer: list[tuple[int, ...]] = [()]
    out = [Word((), alphabet)]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for c in letters:
                if w and w[-1] == -c:
                    continue
                nxt.append(w + (c,))
        out.extend(Word(w, alphabet) for w in nxt)
        layer = nxt
    return out


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_word(length: int, alphabet: Alphabet = DEFAULT_ALPHABET, seed=0) -> Word:
    """Uniform reduced word of exactly ``length`` letters (non-backtracking walk).

    ``seed`` may be an integer or an existing ``numpy.random.Generator``.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    rng = _rng(seed)
    letters = alphabet.codes
    codes: list[int] = []
    for _ in range(length):
        if codes:
            choices = [c for c in letters if c != -codes[-1]]
        else:
            choices = letters
        codes.append(choices[int(rng.integers(len(choices)))])
    return Word(tuple(codes), alphabet)


def random_words(
    count: int, max_length: int, alphabet: Alphabet = DEFAULT_ALPHABET, seed=0, min_length: int = 0
) -> list[Word]:
    """``count`` random words with lengths drawn uniformly from ``[min_length, max_length]``."""
    rng = _rng(seed)
    return [
        random_word(int(rng.integers(min_length, max_length + 1)), alphabet, rng)
        for _ in range(count)
    ]


def random_monoid_word(length: int, alphabet: Alphabet = DEFAULT_ALPHABET, seed=0) -> MonoidWord:
    rng = _rng(seed)
    codes = tuple(int(c) + 1 for c in rng.integers(alphabet.rank, size=length))
    return MonoidWord(codes, alphabet)


def enumerate_monoid(max_length: int, alphabet: Alphabet = DEFAULT_ALPHABET) -> list[MonoidWord]:
    """All positive words of length <= ``max_length`` in length-then-lexicographic order."""
    out = [MonoidWord((), alphabet)]
    layer: list[tuple[int, ...]] = [()]
    for _ in range(max_length):
        layer = [w + (c,) for w in layer for c in range(1, alphabet.rank + 1)]
        out.extend(MonoidWord(w, alphabet) for w in layer)
    return out
