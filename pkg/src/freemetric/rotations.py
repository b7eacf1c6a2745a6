"""Local length functions on balls of F_n from rotation representations.

Each generator is sent to a rotation by a small angle about a random axis;
the length of a word is the rotation angle of its image.  Rotations are
unit quaternions, renormalized after every product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import derive_seed
from .errors import EpsilonTooLarge, LimitExceeded, NotNormalized
from .lengths import Flags, LengthFn
from .report import Row, check_row
from .words import Alphabet, Word, check_ball_limit, commutator, enumerate_ball, generators, power

NORM_TOL = 1e-12


@dataclass(frozen=True)
class UnitQuaternion:
    scalar: float = 1.0
    vector: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @classmethod
    def from_axis_angle(cls, axis: Sequence[float], angle: float) -> "UnitQuaternion":
        ax = np.asarray(axis, dtype=float)
        n = float(np.linalg.norm(ax))
        if n == 0.0:
            raise ValueError("rotation axis must be non-zero")
        s = math.sin(angle / 2.0) / n
        return cls(math.cos(angle / 2.0), (ax[0] * s, ax[1] * s, ax[2] * s)).normalized()

    def norm(self) -> float:
        x, y, z = self.vector
        return math.sqrt(self.scalar * self.scalar + x * x + y * y + z * z)

    def normalized(self) -> "UnitQuaternion":
        n = self.norm()
        x, y, z = self.vector
        return UnitQuaternion(self.scalar / n, (float(x) / n, float(y) / n, float(z) / n))

    def conjugate(self) -> "UnitQuaternion":
        x, y, z = self.vector
        return UnitQuaternion(self.scalar, (-x, -y, -z))

    def __mul__(self, other: "UnitQuaternion") -> "UnitQuaternion":
        a, (b, c, d) = self.scalar, self.vector
        e, (f, g, h) = other.scalar, other.vector
        return UnitQuaternion(
            a * e - b * f - c * g - d * h,
            (
                a * f + b * e + c * h - d * g,
                a * g - b * h + c * e + d * f,
                a * h + b * g - c * f + d * e,
            ),
        ).normalized()

    def as_array(self) -> np.ndarray:
        return np.array([self.scalar, *self.vector])


IDENTITY = UnitQuaternion()


def quat_angle(q: UnitQuaternion) -> float:
    """Rotation angle in ``[0, pi]`` of the rotation represented by ``q``."""
    if abs(q.norm() - 1.0) > NORM_TOL:
        raise NotNormalized(f"quaternion norm {q.norm()!r} is not 1")
    x, y, z = q.vector
    return 2.0 * math.atan2(math.sqrt(x * x + y * y + z * z), abs(q.scalar))


@dataclass(frozen=True)
class RotationRep:
    generator_images: tuple[UnitQuaternion, ...]
    radius: int
    epsilon: float
    axes: tuple[tuple[float, float, float], ...] = ()
    seed: int | None = None

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(len(self.generator_images))


def represent(rep: RotationRep, x: Word) -> UnitQuaternion:
    """Image of ``x``: left-to-right product, inverse letters use the conjugate."""
    q = IDENTITY
    for c in x.codes:
        g = rep.generator_images[abs(c) - 1]
        q = q * (g if c > 0 else g.conjugate())
    return q


def random_axis(rng: np.random.Generator) -> tuple[float, float, float]:
    while True:
        v = rng.standard_normal(3)
        n = float(np.linalg.norm(v))
        if n > 1e-9:
            return tuple(float(t) for t in v / n)


def make_rep(
    R: int, epsilon="auto", seed: int = 0, rank: int = 2, axes=None, safe: bool = True
) -> RotationRep:
    if R < 1:
        raise ValueError("radius must be positive")
    eps = math.pi / (2 * R) if epsilon in ("auto", "AUTO", None) else float(epsilon)
    if not (0.0 < eps <= math.pi / 2):
        raise EpsilonTooLarge(f"epsilon must lie in (0, pi/2], got {eps}")
    if safe and R * eps > math.pi / 2 + 1e-12:
        raise EpsilonTooLarge(f"R * epsilon = {R * eps} exceeds pi/2")
    if axes is None:
        rng = np.random.default_rng(derive_seed(seed, "so3-axes", rank))
        axes = tuple(random_axis(rng) for _ in range(rank))
    else:
        axes = tuple(tuple(float(t) for t in a) for a in axes)
        if len(axes) != rank:
            raise ValueError(f"need {rank} axes, got {len(axes)}")
    images = tuple(UnitQuaternion.from_axis_angle(a, eps) for a in axes)
    return RotationRep(images, R, eps, axes, seed)


@dataclass(frozen=True)
class LocalLengthFn(LengthFn):
    rep: RotationRep | None = None


def local_length_from_rep(rep: RotationRep) -> LocalLengthFn:
    return LocalLengthFn(
        lambda x: quat_angle(represent(rep, x)),
        name=f"so3:{rep.radius}:{rep.epsilon:.6g}:{rep.seed}",
        flags=Flags(symmetric=True, triangle=True, conjugation_invariant=True),
        domain_radius=rep.radius,
        rep=rep,
    )


def make_local_length(
    R: int, epsilon="auto", seed: int = 0, rank: int = 2, axes=None, safe: bool = True
) -> LocalLengthFn:
    """Angle length on ``B(R)``; ``epsilon="auto"`` uses ``pi / (2R)``."""
    return local_length_from_rep(make_rep(R, epsilon, seed, rank, axes, safe))


@dataclass
class BallCheckReport:
    radius: int
    epsilon: float
    n_words: int
    n_triangle_pairs: int
    triangle_violations: int
    max_triangle_excess: float
    triangle_witness: tuple[str, str] | None
    doubling_checked: int
    doubling_violations: int
    max_doubling_error: float
    doubling_witness: str | None
    positivity_threshold: float
    positivity_failures: list[str] = field(default_factory=list)
    min_nontrivial_angle: float = math.inf
    max_angle: float = 0.0
    tol: float = 1e-9

    @property
    def positive(self) -> bool:
        return not self.positivity_failures

    def rows(self, prefix: str = "so3") -> list[Row]:
        out = [
            Row(f"{prefix}.triangle", "local triangle inequality on B(R)",
                "pass" if self.triangle_violations == 0 else "fail",
                self.triangle_violations, 0, -self.triangle_violations,
                list(self.triangle_witness) if self.triangle_violations else None,
                note=f"{self.n_triangle_pairs} pairs, max excess {self.max_triangle_excess:.3g}"),
            Row(f"{prefix}.doubling", "equality when x=y",
                "pass" if self.doubling_violations == 0 else "fail",
                self.doubling_violations, 0, -self.doubling_violations,
                self.doubling_witness if self.doubling_violations else None,
                note=f"{self.doubling_checked} words, max error {self.max_doubling_error:.3g}"),
            check_row(f"{prefix}.max_angle", "theta_x <= pi/2 on B(R)",
                      self.max_angle, math.pi / 2, tol=self.tol),
            # faithfulness is generic, not guaranteed: report only
            Row(f"{prefix}.positivity", "faithful representation (generic choice)",
                "pass" if self.positive else "warn",
                self.min_nontrivial_angle, self.positivity_threshold,
                self.min_nontrivial_angle - self.positivity_threshold,
                self.positivity_failures[:5] or None,
                note=f"{len(self.positivity_failures)} failures", hard=False),
        ]
        return out


def _ball_quaternions(rep: RotationRep, words: list[Word]) -> list[UnitQuaternion]:
    # words arrive length-then-lex, so every proper prefix is already computed
    index = {w.codes: i for i, w in enumerate(words)}
    qs: list[UnitQuaternion] = []
    for w in words:
        if not w.codes:
            qs.append(IDENTITY)
            continue
        c = w.codes[-1]
        g = rep.generator_images[abs(c) - 1]
        qs.append(qs[index[w.codes[:-1]]] * (g if c > 0 else g.conjugate()))
    return qs


def ball_check(
    fn: LocalLengthFn, positivity_threshold: float = 1e-6, tol: float = 1e-9
) -> BallCheckReport:
    """Exhaustive triangle, doubling and positivity checks on ``B(R)``."""
    rep = fn.rep
    R = rep.radius
    alphabet = rep.alphabet
    check_ball_limit(R, alphabet.rank)
    words = enumerate_ball(R, alphabet)
    n = len(words)
    theta = np.array([quat_angle(q) for q in _ball_quaternions(rep, words)])
    lengths = np.array([len(w) for w in words])

    # integer encoding of words: digit per letter in base 2*rank+1
    base = 2 * alphabet.rank + 1
    digit = {c: i + 1 for i, c in enumerate(alphabet.codes)}
    padded = np.zeros((n, R), dtype=np.int64)
    for i, w in enumerate(words):
        padded[i, : len(w)] = w.codes
    pw = base ** np.arange(R + 1, dtype=np.int64)
    dig = np.zeros((n, R), dtype=np.int64)
    for i, w in enumerate(words):
        dig[i, : len(w)] = [digit[c] for c in w.codes]
    prefix_enc = np.zeros((n, R + 1), dtype=np.int64)
    prefix_enc[:, 1:] = np.cumsum(dig * pw[:R], axis=1)
    # suffix_enc[i, t] encodes words[i][t:]
    suffix_enc = np.zeros((n, R + 1), dtype=np.int64)
    for t in range(R):
        shifted = np.zeros((n, R), dtype=np.int64)
        shifted[:, : R - t] = dig[:, t:]
        suffix_enc[:, t] = shifted @ pw[:R]
    enc = prefix_enc[np.arange(n), lengths]
    order = np.argsort(enc)
    sorted_enc = enc[order]

    violations = 0
    pairs = 0
    worst, witness = -math.inf, None
    for xi, x in enumerate(words):
        lx = len(x)
        # cancellation length between the tail of x and the head of each y
        t = np.zeros(n, dtype=np.int64)
        alive = np.ones(n, dtype=bool)
        for k in range(min(lx, R)):
            alive &= (lengths > k) & (padded[:, k] == -x.codes[lx - 1 - k])
            t += alive
        plen = lx + lengths - 2 * t
        ok = plen <= R
        if not ok.any():
            continue
        ys = np.nonzero(ok)[0]
        tt = t[ys]
        code = prefix_enc[xi, lx - tt] + pw[lx - tt] * suffix_enc[ys, tt]
        pos = order[np.searchsorted(sorted_enc, code)]
        excess = theta[pos] - theta[xi] - theta[ys]
        pairs += len(ys)
        bad = excess > tol
        violations += int(bad.sum())
        j = int(np.argmax(excess))
        if excess[j] > worst:
            worst, witness = float(excess[j]), (str(x), str(words[ys[j]]))

    dbl_checked = dbl_bad = 0
    dbl_err, dbl_witness = 0.0, None
    index = {w.codes: i for i, w in enumerate(words)}
    for i, x in enumerate(words):
        sq = power(x, 2)
        if len(sq) > R or theta[i] > math.pi / 2:
            continue
        dbl_checked += 1
        err = abs(theta[index[sq.codes]] - 2 * theta[i])
        if err > dbl_err:
            dbl_err, dbl_witness = float(err), str(x)
        if err > tol:
            dbl_bad += 1

    nontrivial = theta[1:]
    failures = [str(words[i + 1]) for i in np.nonzero(nontrivial <= positivity_threshold)[0]]
    return BallCheckReport(
        radius=R,
        epsilon=rep.epsilon,
        n_words=n,
        n_triangle_pairs=pairs,
        triangle_violations=violations,
        max_triangle_excess=worst,
        triangle_witness=witness,
        doubling_checked=dbl_checked,
        doubling_violations=dbl_bad,
        max_doubling_error=dbl_err,
        doubling_witness=dbl_witness,
        positivity_threshold=positivity_threshold,
        positivity_failures=failures,
        min_nontrivial_angle=float(nontrivial.min()) if len(nontrivial) else math.inf,
        max_angle=float(theta.max()),
        tol=tol,
    )


def commutator_ratio(epsilon: float, seed: int = 0, axes=None) -> float:
    """``theta([a, b]) / (theta(a) + theta(b))`` for generators rotated by ``epsilon``."""
    if not (0.0 < epsilon <= math.pi / 4):
        raise ValueError(f"epsilon must lie in (0, pi/4], got {epsilon}")
    rep = make_rep(4, epsilon, seed, rank=2, axes=axes, safe=False)
    a, b = generators(Alphabet(2))
    qa, qb = represent(rep, a), represent(rep, b)
    return quat_angle(represent(rep, commutator(a, b))) / (quat_angle(qa) + quat_angle(qb))


SWEEP_COLUMNS = ("epsilon", "seed", "ratio", "max_angle", "violations")


def so3_sweep(epsilons: Sequence[float], seeds: Sequence[int] = (0,), radius: int = 4) -> list[tuple]:
    """One row ``(epsilon, seed, ratio, max_angle, violations)`` per parameter point.

    ``max_angle`` and ``violations`` come from an exhaustive check of
    ``B(r)`` with ``r = min(radius, floor(pi / (2 epsilon)))``.
    """
    rows = []
    for eps in epsilons:
        r = max(1, min(radius, int(math.floor(math.pi / (2 * eps) + 1e-9))))
        for s in seeds:
            fn = make_local_length(r, eps, s)
            rep = ball_check(fn)
            rows.append((eps, s, commutator_ratio(eps, s), rep.max_angle,
                         rep.triangle_violations + rep.doubling_violations))
    return rows


def max_radius_for(epsilon: float) -> int:
    if epsilon <= 0:
        raise LimitExceeded("epsilon must be positive")
    return int(math.floor(math.pi / (2 * epsilon) + 1e-9))
