"""Length functions and metrics on free groups and free monoids.

All functions accept optional :class:`Weights`; a letter and its inverse
always carry the same weight.  With unit weights every value here is an
integer-valued float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .config import get_limits
from .errors import AlphabetMismatch, DomainExceeded, LimitExceeded
from .words import Alphabet, MonoidWord, Word, abelianize, cyclic_reduce, invert, multiply


@dataclass(frozen=True)
class Weights:
    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values or any(not (v > 0) or math.isinf(v) for v in values):
            raise ValueError(f"weights must be positive and finite, got {values}")
        object.__setattr__(self, "values", values)

    @classmethod
    def unit(cls, rank: int = 2) -> "Weights":
        return cls((1.0,) * rank)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "Weights":
        """Parse ``"a=1,b=5"``; unnamed generators default to weight 1."""
        values = [1.0] * alphabet.rank
        for item in filter(None, (s.strip() for s in text.split(","))):
            name, sep, value = item.partition("=")
            name = name.strip()
            if not sep or name not in alphabet.names:
                raise ValueError(f"bad weight specification {item!r}")
            values[alphabet.names.index(name)] = float(value)
        return cls(tuple(values))

    def of(self, code: int) -> float:
        return self.values[abs(code) - 1]

    def total(self, codes: Sequence[int]) -> float:
        return math.fsum(self.values[abs(c) - 1] for c in codes)


def _weights(w: Weights | None, alphabet: Alphabet) -> Weights:
    if w is None:
        return Weights.unit(alphabet.rank)
    if len(w.values) != alphabet.rank:
        raise AlphabetMismatch(f"{len(w.values)} weights for rank {alphabet.rank}")
    return w


@dataclass(frozen=True)
class Flags:
    """Axioms a length function claims; tests treat these as claims, not facts."""

    symmetric: bool = False
    triangle: bool = False
    triangle_defect_k: float = 0.0
    conjugation_invariant: bool = False
    homogeneous: bool = False
    homogeneity_c: float | None = None


@dataclass(frozen=True)
class LengthFn:
    """A real-valued function on words, optionally restricted to a ball."""

    evaluator: Callable[[Word], float]
    name: str = "length"
    flags: Flags = field(default_factory=Flags)
    domain_radius: int | None = None

    def __call__(self, x: Word) -> float:
        if self.domain_radius is not None and len(x) > self.domain_radius:
            raise DomainExceeded(
                f"{self.name}: word of length {len(x)} outside B({self.domain_radius})"
            )
        return self.evaluator(x)

    def in_domain(self, x: Word) -> bool:
        return self.domain_radius is None or len(x) <= self.domain_radius


@dataclass(frozen=True)
class MatchingResult:
    deficiency: float
    pairs: tuple[tuple[int, int], ...]

    @property
    def matched(self) -> frozenset[int]:
        return frozenset(i for p in self.pairs for i in p)


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    def value(self, exponents: Sequence[int]) -> float:
        if len(exponents) != len(self.coefficients):
            raise AlphabetMismatch(
                f"form of rank {len(self.coefficients)} applied to vector of rank {len(exponents)}"
            )
        return math.fsum(a * e for a, e in zip(self.coefficients, exponents))


# --- word and cyclic length ---------------------------------------------


def word_length(x: Word, w: Weights | None = None) -> float:
    return _weights(w, x.alphabet).total(x.codes)


def cyc_length(x: Word, w: Weights | None = None) -> float:
    return word_length(cyclic_reduce(x), w)


# --- free monoid: LCS and edit distance --------------------------------


def _check_monoid_pair(u: MonoidWord, v: MonoidWord) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {u.alphabet.names} vs {v.alphabet.names}")


def weighted_lcs(u: MonoidWord, v: MonoidWord, w: Weights | None = None) -> float:
    """Maximum total weight of a common subsequence of ``u`` and ``v``."""
    _check_monoid_pair(u, v)
    w = _weights(w, u.alphabet)
    a, b = u.codes, v.codes
    prev = [0.0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0.0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + w.of(a[i - 1])
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def lcs(u: MonoidWord, v: MonoidWord) -> int:
    """Length of a longest common (not necessarily contiguous) subsequence."""
    return int(weighted_lcs(u, v, None))


def edit_distance(u: MonoidWord, v: MonoidWord, w: Weights | None = None) -> float:
    """Weighted insert/delete distance: ``|u| + |v| - 2 * weighted_lcs(u, v)``."""
    _check_monoid_pair(u, v)
    ww = _weights(w, u.alphabet)
    return ww.total(u.codes) + ww.total(v.codes) - 2.0 * weighted_lcs(u, v, ww)


# --- Watson-Crick length --------------------------------------------------


def wc_length_codes(codes: Sequence[int], w: Weights, limit: int | None = None) -> MatchingResult:
    """Minimum-deficiency non-crossing matching of an arbitrary spelling.

    ``best[i][j]`` is the optimum on the half-open interval ``[i, j)``: either
    the last letter stays unmatched, or it pairs with an inverse letter at
    ``k``, splitting off ``[i, k)`` and ``(k, j-1)``.  Ties go to the lowest
    ``k``; leaving the letter unmatched wins only when strictly better.
    """
    n = len(codes)
    limit = get_limits().dp_length if limit is None else limit
    if n > limit:
        raise LimitExceeded(f"word of length {n} exceeds DP limit {limit}")
    wt = [w.of(c) for c in codes]
    positions: dict[int, list[int]] = {}
    for idx, c in enumerate(codes):
        positions.setdefault(c, []).append(idx)

    best = [[0.0] * (n + 1) for _ in range(n + 1)]
    # choice[i][j]: -1 for unmatched last letter, else pairing index k
    choice = [[-1] * (n + 1) for _ in range(n + 1)]
    for span in range(1, n + 1):
        for i in range(0, n - span + 1):
            j = i + span
            last = j - 1
            row_i = best[i]
            top, arg = math.inf, -1
            for k in positions.get(-codes[last], ()):
                if k < i:
                    continue
                if k >= last:
                    break
                val = row_i[k] + best[k + 1][last]
                if val < top:
                    top, arg = val, k
            unmatched = row_i[last] + wt[last]
            if unmatched < top:
                top, arg = unmatched, -1
            row_i[j] = top
            choice[i][j] = arg

    pairs = []
    stack = [(0, n)]
    while stack:
        i, j = stack.pop()
        while j > i:
            k = choice[i][j]
            if k < 0:
                j -= 1
            else:
                pairs.append((k, j - 1))
                stack.append((k + 1, j - 1))
                j = k
    return MatchingResult(best[0][n], tuple(sorted(pairs)))


def wc_length(x: Word, w: Weights | None = None, limit: int | None = None) -> MatchingResult:
    """Watson-Crick length of ``x`` together with an optimal witness matching."""
    return wc_length_codes(x.codes, _weights(w, x.alphabet), limit)


def wc_value(x: Word, w: Weights | None = None) -> float:
    return wc_length(x, w).deficiency


def wc_length_oracle(x, w: Weights | None = None, alphabet: Alphabet | None = None) -> float:
    """Brute-force Watson-Crick length over every matching of the given spelling.

    ``x`` may be a :class:`Word` or a raw sequence of letter codes (in which
    case it is *not* reduced first).
    """
    if isinstance(x, Word):
        codes, alphabet = x.codes, x.alphabet
    else:
        codes = tuple(x)
        alphabet = alphabet or Alphabet(max([2] + [abs(c) for c in codes]))
    limit = get_limits().oracle_length
    if len(codes) > limit:
        raise LimitExceeded(f"oracle limited to {limit} letters, got {len(codes)}")
    w = _weights(w, alphabet)
    n = len(codes)
    total = w.total(codes)
    best = total

    # enumerate every set of disjoint inverse pairs, then filter by the axioms
    def extend(pos: int, used: frozenset, pairs: list):
        nonlocal best
        if pos == n:
            if is_valid_matching(codes, pairs):
                best = min(best, total - 2.0 * math.fsum(w.of(codes[i]) for i, _ in pairs))
            return
        extend(pos + 1, used, pairs)
        if pos in used:
            return
        for j in range(pos + 1, n):
            if j not in used and codes[j] == -codes[pos]:
                pairs.append((pos, j))
                extend(pos + 1, used | {pos, j}, pairs)
                pairs.pop()

    extend(0, frozenset(), [])
    return best


def is_valid_matching(codes: Sequence[int], pairs) -> bool:
    """Check the three matching axioms: inverse letters, disjointness, non-crossing."""
    pairs = list(pairs)
    seen: set[int] = set()
    for i, j in pairs:
        if not (0 <= i < j < len(codes)) or codes[j] != -codes[i]:
            return False
        if i in seen or j in seen:
            return False
        seen.update((i, j))
    for i, j in pairs:
        for k, l in pairs:
            if i < k < j < l:
                return False
    return True


def matching_deficiency(codes: Sequence[int], pairs, w: Weights) -> float:
    matched = {i for p in pairs for i in p}
    return math.fsum(w.of(c) for i, c in enumerate(codes) if i not in matched)


def fg_distance(u: Word, v: Word, w: Weights | None = None) -> float:
    """Free-group distance ``wc(u^-1 v)``."""
    return wc_length(multiply(invert(u), v), w).deficiency


# --- abelian pullbacks ------------------------------------------------------


def pullback_length(x: Word, form: LinearForm) -> float:
    return abs(form.value(abelianize(x).exponents))


def induced_distance(ell: LengthFn, x: Word, y: Word) -> float:
    """Left-invariant distance ``ell(x^-1 y)``."""
    return ell(multiply(invert(x), y))


# --- LengthFn factories ------------------------------------------------------


def word_length_fn(w: Weights | None = None) -> LengthFn:
    return LengthFn(
        lambda x: word_length(x, w),
        name="word",
        flags=Flags(symmetric=True, triangle=True),
    )


def cyc_length_fn(w: Weights | None = None) -> LengthFn:
    return LengthFn(
        lambda x: cyc_length(x, w),
        name="cyc",
        flags=Flags(symmetric=True, conjugation_invariant=True, homogeneous=True),
    )


def wc_length_fn(w: Weights | None = None) -> LengthFn:
    return LengthFn(
        lambda x: wc_length(x, w).deficiency,
        name="wc",
        flags=Flags(symmetric=True, triangle=True, conjugation_invariant=True),
    )


def pullback_length_fn(form: LinearForm) -> LengthFn:
    return LengthFn(
        lambda x: pullback_length(x, form),
        name="pullback",
        flags=Flags(
            symmetric=True,
            triangle=True,
            conjugation_invariant=True,
            homogeneous=True,
            homogeneity_c=0.0,
        ),
    )


SQRT2_FORM = LinearForm((1.0, math.sqrt(2.0)))
