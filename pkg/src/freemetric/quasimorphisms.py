"""Brooks counting quasimorphisms, defect sampling and homogenization."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .config import derive_seed
from .errors import NegativeDefect
from .lengths import Flags, LengthFn, LinearForm
from .report import Row
from .words import Alphabet, Word, abelianize, commutator, invert, multiply, power, random_words


@dataclass(frozen=True)
class Quasimorphism:
    """A function on words together with an optional defect bound.

    ``provenance`` records where ``defect_bound`` came from: ``"asserted"``
    (a user-supplied upper bound) or ``"sampled"`` (a lower bound found by
    :func:`defect_sample`).  The two are never interchangeable.
    """

    evaluator: Callable[[Word], float]
    name: str = "f"
    defect_bound: float | None = None
    provenance: str | None = None

    def __post_init__(self):
        if self.defect_bound is not None:
            if self.defect_bound < 0:
                raise NegativeDefect(f"defect bound {self.defect_bound} is negative")
            if self.provenance not in ("asserted", "sampled"):
                raise ValueError("a defect bound needs provenance 'asserted' or 'sampled'")

    def __call__(self, x: Word) -> float:
        return self.evaluator(x)

    def with_defect(self, bound: float, provenance: str) -> "Quasimorphism":
        return Quasimorphism(self.evaluator, self.name, bound, provenance)


@dataclass(frozen=True)
class BrooksPattern:
    pattern: Word

    def __post_init__(self):
        if not self.pattern.codes:
            raise ValueError("Brooks pattern must be a non-trivial word")


def _as_pattern(w) -> Word:
    return w.pattern if isinstance(w, BrooksPattern) else w


def count_nonoverlap(w, g: Word) -> int:
    """Maximum number of disjoint occurrences of ``w`` in ``g`` (greedy leftmost)."""
    p, s = _as_pattern(w).codes, g.codes
    m = len(p)
    if m == 0:
        raise ValueError("empty pattern")
    count = i = 0
    while i + m <= len(s):
        if s[i : i + m] == p:
            count += 1
            i += m
        else:
            i += 1
    return count


def brooks(w, g: Word) -> int:
    p = _as_pattern(w)
    return count_nonoverlap(p, g) - count_nonoverlap(invert(p), g)


def brooks_qm(w, defect_bound: float | None = None, provenance: str | None = None) -> Quasimorphism:
    p = _as_pattern(w)
    BrooksPattern(p)
    return Quasimorphism(lambda g: float(brooks(p, g)), f"brooks:{p}", defect_bound, provenance)


def linear_qm(form: LinearForm) -> Quasimorphism:
    """A homomorphism to the reals through the abelianization; its defect is 0."""
    return Quasimorphism(
        lambda g: form.value(abelianize(g).exponents), "linear", 0.0, "asserted"
    )


@dataclass(frozen=True)
class DefectSample:
    lower_bound: float
    witness: tuple[Word, Word] | None
    pair_count: int
    max_len: int
    seed: int


def sample_pair(index: int, max_len: int, alphabet: Alphabet, seed: int) -> tuple[Word, Word]:
    x, y = random_words(2, max_len, alphabet, derive_seed(seed, "pair", index))
    return x, y


def defect_sample(
    f: Quasimorphism,
    pair_count: int,
    max_len: int,
    seed: int = 0,
    alphabet: Alphabet | None = None,
    include: Sequence[tuple[Word, Word]] = (),
) -> DefectSample:
    """Lower bound on the defect ``sup |f(xy) - f(x) - f(y)|`` from sampled pairs.

    Pair ``i`` depends only on ``(seed, i)``, so growing ``pair_count``
    only adds pairs.  Pairs in ``include`` are evaluated first.
    """
    alphabet = alphabet or Alphabet(2)
    best, witness = 0.0, None
    pairs = list(include) + [sample_pair(i, max_len, alphabet, seed) for i in range(pair_count)]
    for x, y in pairs:
        d = abs(f(multiply(x, y)) - f(x) - f(y))
        if d > best:
            best, witness = d, (x, y)
    return DefectSample(best, witness, pair_count, max_len, seed)


def _check_power_of_two(N: int, minimum: int = 2) -> None:
    if N < minimum or N & (N - 1):
        raise ValueError(f"N must be a power of two >= {minimum}, got {N}")


@dataclass(frozen=True)
class HomogenizedValue:
    estimate: float
    half_width: float | None


def qm_homogenize(f: Quasimorphism, x: Word, N: int) -> HomogenizedValue:
    """``f(x^N) / N``, with bracket half-width ``D (1 - 1/N)`` when a defect bound is known."""
    _check_power_of_two(N)
    est = f(power(x, N)) / N
    hw = None if f.defect_bound is None else f.defect_bound * (1.0 - 1.0 / N)
    return HomogenizedValue(est, hw)


def induced_pseudolength(f: Quasimorphism, D: float) -> LengthFn:
    """``x -> |f(x)| + D``; satisfies the triangle inequality once ``D`` bounds the defect."""
    if D < 0:
        raise NegativeDefect(f"defect {D} is negative")
    return LengthFn(
        lambda x: abs(f(x)) + D,
        name=f"|{f.name}|+{D:g}",
        flags=Flags(symmetric=False, triangle=True, homogeneity_c=2.0 * D),
    )


def qm_commutator_report(
    f: Quasimorphism, D: float, pairs: Sequence[tuple[Word, Word]], N: int, provenance: str = "asserted"
) -> list[Row]:
    """Compare homogenized ``f([x, y])`` with ``3 D`` for each pair."""
    _check_power_of_two(N)
    rows = []
    for i, (x, y) in enumerate(pairs):
        value = qm_homogenize(f, commutator(x, y), N).estimate
        bound = 3.0 * D
        ok = abs(value) <= bound + 1e-9
        rows.append(
            Row(
                id=f"qm-commutator[{i}]",
                anchor="homogeneous quasimorphism commutator bound 3D",
                status="pass" if ok else ("fail" if provenance == "asserted" else "warn"),
                value=value,
                bound=bound,
                margin=bound - abs(value),
                witness=[str(x), str(y)],
                note="consistent" if ok else "defect-underestimated",
                hard=provenance == "asserted",
            )
        )
    return rows
