"""Verification suites behind ``freemetric verify``.

Each suite maps a :class:`RunConfig` to a list of report rows.  Every
random draw is seeded from ``(config.seed, suite, row label)``, so a suite
produces the same rows regardless of which thread runs it.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .analysis import (
    ball_defect,
    cl_bound_check,
    commutator_report,
    fmk_table,
    form_base,
    homogeneity_defect,
    homogenize,
    power_bounds_check,
    RationalSeminorm,
    triangle_defect,
    walk_demo,
)
from .config import Limits, derive_seed, get_limits
from .lengths import (
    SQRT2_FORM,
    Weights,
    cyc_length,
    edit_distance,
    fg_distance,
    is_valid_matching,
    matching_deficiency,
    pullback_length_fn,
    wc_length,
    wc_length_fn,
    wc_length_oracle,
    word_length,
    word_length_fn,
)
from .oracles import edit_bfs_distances, nonoverlap_exhaustive
from .quasimorphisms import brooks, brooks_qm, count_nonoverlap, defect_sample, induced_pseudolength
from .report import Report, Row, check_row, equal_row
from .rotations import ball_check, commutator_ratio, make_local_length
from .words import (
    Alphabet,
    Word,
    commutator,
    conjugate,
    enumerate_ball,
    enumerate_monoid,
    generators,
    invert,
    multiply,
    parse,
    power,
    random_monoid_word,
    random_word,
    random_words,
)

SUITES = ("axioms", "oracles", "paper-values", "embedding", "defects", "walk", "so3")


@dataclass(frozen=True)
class RunConfig:
    rank: int = 2
    weights: tuple[float, ...] = (1.0, 5.0)
    seed: int = 42
    limits: Limits = field(default_factory=get_limits)
    walk_n: int = 512
    walk_exact_n: int = 2
    exact: bool = False
    trials: int = 100_000
    so3_radius: int = 6
    so3_seeds: int = 20

    def __post_init__(self):
        if self.rank != 2:
            # the suites encode rank-2 facts such as [a^k, b^m]
            raise ValueError("verification suites are defined for rank 2")
        if len(self.weights) != self.rank:
            raise ValueError("need one weight per generator")
        Weights(self.weights)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.rank)

    def echo(self) -> dict:
        return {
            "rank": self.rank,
            "weights": list(self.weights),
            "seed": self.seed,
            "limits": {
                "ball_radius": self.limits.ball_radius,
                "dp_length": self.limits.dp_length,
                "oracle_length": self.limits.oracle_length,
                "walk_exact": self.limits.walk_exact,
            },
            "walk_n": self.walk_n,
            "walk_exact_n": self.walk_exact_n,
            "exact": self.exact,
            "trials": self.trials,
            "so3_radius": self.so3_radius,
            "so3_seeds": self.so3_seeds,
        }

    def rng(self, *keys) -> np.random.Generator:
        return np.random.default_rng(derive_seed(self.seed, *keys))


def _count_row(id, anchor, failures, checked, witness=None, hard=True) -> Row:
    return Row(id, anchor, "pass" if failures == 0 else "fail", failures, 0, -failures,
               witness if failures else None, f"{checked} checked", hard)


def _ab(cfg):
    return generators(cfg.alphabet)


# --- suites -----------------------------------------------------------------


def suite_axioms(cfg: RunConfig) -> list[Row]:
    A = cfg.alphabet
    e = Word((), A)
    rows = []
    ball3 = enumerate_ball(3, A)
    bad = [str(x) for x in ball3 if multiply(x, e) != x or multiply(e, x) != x
           or multiply(x, invert(x)) != e or multiply(invert(x), x) != e]
    rows.append(_count_row("group.identity_inverse", "group axioms", len(bad), len(ball3), bad[:1]))

    bad = []
    for x in ball3:
        for y in ball3:
            xy = multiply(x, y)
            for z in ball3:
                if multiply(xy, z) != multiply(x, multiply(y, z)):
                    bad.append([str(x), str(y), str(z)])
    rng = cfg.rng("axioms", "assoc")
    for _ in range(1000):
        x, y, z = random_words(3, 10, A, rng)
        if multiply(multiply(x, y), z) != multiply(x, multiply(y, z)):
            bad.append([str(x), str(y), str(z)])
    rows.append(_count_row("group.associativity", "group axioms", len(bad),
                           len(ball3) ** 3 + 1000, bad[:1]))

    wc = wc_length_fn()
    rng = cfg.rng("axioms", "wc")
    sym_bad, tri_bad, par_bad, tested = [], [], [], 0
    for _ in range(1000):
        x, y = random_words(2, 12, A, rng)
        vx, vy, vxy = wc(x), wc(y), wc(multiply(x, y))
        tested += 3
        if wc(invert(x)) != vx:
            sym_bad.append(str(x))
        if vxy > vx + vy:
            tri_bad.append([str(x), str(y)])
        for word, val in ((x, vx), (y, vy), (multiply(x, y), vxy)):
            if int(val) % 2 != len(word) % 2:
                par_bad.append(str(word))
    rows.append(_count_row("wc.symmetry", "matchings invert", len(sym_bad), 1000, sym_bad[:1]))
    rows.append(_count_row("wc.triangle", "Eq. ng", len(tri_bad), 1000, tri_bad[:1]))
    rows.append(_count_row("wc.parity", "deficiency parity", len(par_bad), tested, par_bad[:1]))

    rng = cfg.rng("axioms", "wc-conj")
    conj_bad = []
    for _ in range(500):
        g, x = random_words(2, 10, A, rng)
        if wc(conjugate(g, x)) != wc(x):
            conj_bad.append([str(g), str(x)])
    rows.append(_count_row("wc.conjugation_invariance", "conjugacy invariant length function",
                           len(conj_bad), 500, conj_bad[:1]))

    rng = cfg.rng("axioms", "edit-biinv")
    W = Weights(cfg.weights)
    bi_bad = []
    for _ in range(1000):
        g, h, x, y = (random_monoid_word(int(rng.integers(0, 7)), A, rng) for _ in range(4))
        for w in (None, W):
            if edit_distance(g + x + h, g + y + h, w) != edit_distance(x, y, w):
                bi_bad.append([str(g), str(h), str(x), str(y)])
    rows.append(_count_row("edit.bi_invariance", "d(gxh,gyh) = d(x,y)", len(bi_bad), 2000, bi_bad[:1]))

    pb = pullback_length_fn(SQRT2_FORM)
    rng = cfg.rng("axioms", "pullback")
    worst = 0.0
    for _ in range(1000):
        x, y = random_words(2, 12, A, rng)
        n = int(rng.integers(1, 7))
        worst = max(worst, abs(pb(power(x, n)) - n * pb(x)), pb(commutator(x, y)))
    rows.append(check_row("pullback.homogeneous", "Eq. linear-growth", worst, 0.0, tol=1e-12))
    return rows


def suite_oracles(cfg: RunConfig) -> list[Row]:
    A = cfg.alphabet
    rows = []
    mism = []
    words = enumerate_ball(8, A)
    for x in words:
        res = wc_length(x)
        if res.deficiency != wc_length_oracle(x):
            mism.append(str(x))
        elif not is_valid_matching(x.codes, res.pairs) or \
                matching_deficiency(x.codes, res.pairs, Weights.unit(2)) != res.deficiency:
            mism.append(str(x))
    rows.append(_count_row("oracle.wc_exhaustive_B8", "non-crossing matching DP", len(mism), len(words), mism[:1]))

    rng = cfg.rng("oracles", "wc-random")
    W = Weights(cfg.weights)
    mism = []
    for _ in range(500):
        x = random_word(int(rng.integers(0, 13)), A, rng)
        for w in (None, W):
            if abs(wc_length(x, w).deficiency - wc_length_oracle(x, w)) > 1e-9:
                mism.append(str(x))
    rows.append(_count_row("oracle.wc_random_12", "non-crossing matching DP", len(mism), 1000, mism[:1]))

    monoid = enumerate_monoid(5, A)
    mism = []
    for u in monoid:
        dist = edit_bfs_distances(u.codes, A.rank, len(u) + 5)
        for v in monoid:
            if edit_distance(u, v) != dist[v.codes]:
                mism.append([str(u), str(v)])
    rows.append(_count_row("oracle.edit_bfs_5", "edit distance via LCS", len(mism), len(monoid) ** 2, mism[:1]))

    rows.append(_nonoverlap_row(cfg))
    return rows


def nonoverlap_cases(cfg: RunConfig) -> list[tuple[Word, Word]]:
    """Pattern/text pairs with ``|g| <= 14``, biased toward self-overlapping patterns."""
    A = cfg.alphabet
    patterns = [w for w in enumerate_ball(3, A) if w.codes]
    patterns += [parse(s, A) for s in ("abab", "abAB", "aaa", "abaB", "aba")]
    rng = cfg.rng("oracles", "nonoverlap")
    cases = []
    for p in patterns:
        for n in range(1, 15 // len(p) + 1):
            cases.append((p, power(p, n)))
        for _ in range(20):
            g = random_word(int(rng.integers(0, 15)), A, rng)
            cases.append((p, g))
        for _ in range(10):
            # glue copies of the pattern with short random fillers
            parts = []
            for _ in range(int(rng.integers(1, 5))):
                parts.append(p)
                parts.append(random_word(int(rng.integers(0, 3)), A, rng))
            g = Word((), A)
            for q in parts:
                g = multiply(g, q)
            if len(g) <= 14:
                cases.append((p, g))
    return cases


def _nonoverlap_row(cfg: RunConfig) -> Row:
    cases = nonoverlap_cases(cfg)
    mism = [[str(p), str(g)] for p, g in cases if count_nonoverlap(p, g) != nonoverlap_exhaustive(p, g)]
    return _count_row("oracle.nonoverlap_14", "occurs in g without overlaps", len(mism), len(cases), mism[:1])


def suite_paper_values(cfg: RunConfig) -> list[Row]:
    A = cfg.alphabet
    a, b = _ab(cfg)
    W = Weights(cfg.weights)
    com = commutator(a, b)
    rows = [
        equal_row("wc([a,b])", "||[a,b]|| = 2", wc_length(com).deficiency, 2.0),
        equal_row("wc([a,b]^3)", "||[a,b]^3|| = 4", wc_length(power(com, 3)).deficiency, 4.0),
    ]
    bad_u, bad_w = [], []
    for k in range(1, 7):
        for m in range(1, 7):
            x = commutator(power(a, k), power(b, m))
            if wc_length(x).deficiency != 2 * min(k, m):
                bad_u.append([k, m])
            if abs(wc_length(x, W).deficiency - 2 * min(k * W.values[0], m * W.values[1])) > 1e-9:
                bad_w.append([k, m])
    rows.append(_count_row("wc([a^k,b^m])", "2 min(|k| ||a||, |m| ||b||)", len(bad_u), 36, bad_u[:1]))
    rows.append(_count_row("wc_weighted([a^k,b^m])", "2 min(|k| ||a||, |m| ||b||)", len(bad_w), 36, bad_w[:1]))
    for k in range(1, 6):
        x = commutator(power(a, k), power(b, k))
        rows.append(equal_row(f"wc([a^{k},b^{k}])", "||[a^k,b^k]|| = 2|k|", wc_length(x).deficiency, 2.0 * k))
        rows.append(check_row(f"wc([a^{k},b^{k}]^3)", "||[a^k,b^k]^3|| <= 4|k|",
                              wc_length(power(x, 3)).deficiency, 4.0 * k, tol=0.0))
    bad_c, bad_w = [], []
    for k in range(1, 7):
        for m in range(1, 7):
            x = commutator(power(a, k), power(b, m))
            if cyc_length(x) != 2 * (k + m):
                bad_c.append([k, m])
            if word_length(x) != 2 * (k + m):
                bad_w.append([k, m])
    rows.append(_count_row("cyc([a^k,b^m])", "l_cyc([a^k, b^m]) = 2(|k| + |m|)", len(bad_c), 36, bad_c[:1]))
    rows.append(_count_row("word([a^k,b^m])", "word metric 2(|k| + |m|)", len(bad_w), 36, bad_w[:1]))
    bad = [n for n in range(0, 51) if word_length(power(parse("baB", A), n)) != (n + 2 if n else 0)]
    rows.append(_count_row("word((baB)^n)", "word length of ba^n b^-1 is n+2", len(bad), 51, bad[:1]))
    return rows


def suite_embedding(cfg: RunConfig) -> list[Row]:
    A = cfg.alphabet
    rows = []
    monoid = enumerate_monoid(6, A)
    rng = cfg.rng("embedding", "random")
    randoms = [(random_monoid_word(int(rng.integers(0, 13)), A, rng),
                random_monoid_word(int(rng.integers(0, 13)), A, rng)) for _ in range(200)]
    for label, w in (("unit", Weights.unit(2)), ("weighted", Weights(cfg.weights))):
        mism = []
        for u in monoid:
            uw = u.to_word()
            for v in monoid:
                if fg_distance(uw, v.to_word(), w) != edit_distance(u, v, w):
                    mism.append([str(u), str(v)])
        rows.append(_count_row(f"embedding.exhaustive6.{label}", "d_FG = d_FM on FMon(X)",
                               len(mism), len(monoid) ** 2, mism[:1]))
        mism = [[str(u), str(v)] for u, v in randoms
                if fg_distance(u.to_word(), v.to_word(), w) != edit_distance(u, v, w)]
        rows.append(_count_row(f"embedding.random12.{label}", "d_FG = d_FM on FMon(X)",
                               len(mism), len(randoms), mism[:1]))
    return rows


def suite_defects(cfg: RunConfig) -> list[Row]:
    A = cfg.alphabet
    a, b = _ab(cfg)
    word = word_length_fn()
    rows = []
    bad = []
    for k in range(1, 11):
        z = conjugate(power(a, k), b)
        if 2 * word(z) - word(power(z, 2)) != 2 * k:
            bad.append(k)
    rows.append(_count_row("defect.word_conjugates", "2||x|| - ||x^2|| is unbounded", len(bad), 10, bad[:1]))

    cyc = lambda x: cyc_length(x)
    x, y = parse("baB", A), parse("BAb", A)
    excess = cyc(multiply(x, y)) - cyc(x) - cyc(y)
    rows.append(Row("defect.cyc_triangle_violation", "l_cyc is not a semi-length function",
                    "pass" if excess == 4 else "fail", excess, 4.0, 0.0, ["baB", "BAb"]))

    pb = pullback_length_fn(SQRT2_FORM)
    sample = random_words(1000, 12, A, cfg.rng("defects", "pb-sample"))
    rep = homogeneity_defect(pb, sample)
    rows.append(check_row("pullback.homogeneity_defect", "Eq. double with c = 0", rep.c_hat, 0.0, tol=1e-12))
    rng = cfg.rng("defects", "pb-commutators")
    pairs = [tuple(random_words(2, 10, A, rng)) for _ in range(500)]
    worst = max(pb(commutator(p, q)) for p, q in pairs)
    rows.append(check_row("pullback.commutators", "Eq. xyc at c = 0", worst, 0.0, tol=1e-12))
    fmk = fmk_table(pb, 0.0, a, b, 3, 3)
    rows += [Row("pullback." + r.id, r.anchor, r.status, r.value, r.bound, r.margin, r.witness, r.note)
             for r in fmk.rows()]
    cl_rows = cl_bound_check(pb, 0.0, 2, derive_seed(cfg.seed, "cl"), 20)
    failed = [r for r in cl_rows if r.status == "fail"]
    rows.append(_count_row("pullback.cl_bound", "Prop. commutatorbound", len(failed), len(cl_rows),
                           failed[0].witness if failed else None))

    wc = wc_length_fn()
    chat = ball_defect(wc, 4, A)
    rows.append(Row("wc.defect_B4", "Eq. 9bound", "info", chat.c_hat, None, None, str(chat.witness),
                    "sampled lower bound on c", hard=False))
    for r in commutator_report(wc, chat, [(power(a, 2), power(b, 2)), (a, b)]):
        r.id = "wc." + r.id
        rows.append(r)

    # quasimorphism-induced length with an asserted defect bound
    com = commutator(a, b)
    f = brooks_qm(com)
    bad = [n for n in range(0, 11) if brooks(com, power(com, n)) != n]
    rows.append(_count_row("brooks.power_linearity", "f_w(w^n) = n f_w(w)", len(bad), 11, bad[:1]))
    rng = cfg.rng("defects", "brooks-antisym")
    bad = []
    for _ in range(500):
        w = random_word(int(rng.integers(1, 5)), A, rng)
        g = random_word(int(rng.integers(0, 21)), A, rng)
        if brooks(w, invert(g)) != -brooks(w, g):
            bad.append([str(w), str(g)])
    rows.append(_count_row("brooks.antisymmetry", "occurrences of w in g^-1 biject with w^-1 in g",
                           len(bad), 500, bad[:1]))
    sampled = defect_sample(f, 400, 8, derive_seed(cfg.seed, "brooks-defect"), A)
    D = 3.0
    rows.append(check_row("brooks.defect_sample", "D(f) sampled lower bound vs asserted D", sampled.lower_bound,
                          D, witness=[str(v) for v in sampled.witness] if sampled.witness else None,
                          note="asserted D = 3"))
    ell = induced_pseudolength(f, D)
    bad = [n for n in range(0, 11) if ell(power(com, n)) != n + D]
    rows.append(_count_row("brooks.linear_growth", "grow linearly on the powers", len(bad), 11, bad[:1]))
    pairs = [tuple(random_words(2, 6, A, cfg.rng("defects", "brooks-pairs", i))) for i in range(50)]
    kk, wit = triangle_defect(ell, pairs)
    rows.append(check_row("brooks.triangle", "Eq. ng for |f| + D", kk, 0.0,
                          witness=[str(v) for v in wit] if wit else None))
    for r in commutator_report(ell, 2 * D, pairs[:10]):
        r.id = "brooks." + r.id
        rows.append(r)

    rows += power_bounds_check(word, 2.0, parse("baB", A), 8)
    hom = homogenize(word, parse("baB", A), 256, 2.0)
    lo, hi = hom.bracket
    rows.append(Row("homogenize.word(baB)", "homogenization bracket", "pass" if lo - 1e-12 <= 1.0 <= hi else "fail",
                    hom.estimate, [lo, hi], None, "baB"))

    rs = RationalSeminorm(form_base(SQRT2_FORM))
    rows.append(equal_row("seminorm(1/2,1/2)", "||(1/n) x||_Q := (1/n)||x||",
                          rs((Fraction(1, 2), Fraction(1, 2))), (1 + math.sqrt(2)) / 2, tol=1e-12))
    rng = cfg.rng("defects", "seminorm")
    worst = 0.0
    for _ in range(1000):
        p = [Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 13))) for _ in range(2)]
        q = [Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 13))) for _ in range(2)]
        lam = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10)))
        s = [pi + qi for pi, qi in zip(p, q)]
        worst = max(worst, rs(s) - rs(p) - rs(q),
                    abs(rs([lam * t for t in p]) - abs(float(lam)) * rs(p)))
    rows.append(check_row("seminorm.axioms", "is indeed a seminorm", worst, 0.0, tol=1e-9))
    return rows


def suite_walk(cfg: RunConfig) -> list[Row]:
    rows = []
    ex = walk_demo(cfg.walk_exact_n, exact=True)
    rows.append(check_row(f"walk.exact[2n={2 * ex.n}]", "E|Y_1+...+Y_2n| <= sqrt(2n)", ex.mean_abs, ex.bound,
                          note=f"E = {ex.mean_abs_fraction}", tol=0.0))
    if not cfg.exact:
        mc = walk_demo(cfg.walk_n, cfg.trials, cfg.seed)
        if mc.passed is None:
            rows.append(Row(f"walk.mc[n={mc.n}]", "= sqrt(2n)", "warn", mc.mean_abs, mc.bound, None,
                            note=mc.warning, hard=False))
        else:
            rows.append(check_row(f"walk.mc[n={mc.n}]", "= sqrt(2n)", mc.mean_abs + 3 * mc.stderr, mc.bound,
                                  note=f"mean {mc.mean_abs:.4f} +- {mc.stderr:.4f}"))
    return rows


def suite_so3(cfg: RunConfig) -> list[Row]:
    rows = []
    R = cfg.so3_radius
    positive = 0
    tri = dbl = 0
    max_angle = 0.0
    for s in range(cfg.so3_seeds):
        rep = ball_check(make_local_length(R, "auto", derive_seed(cfg.seed, "so3", s)))
        tri += rep.triangle_violations
        dbl += rep.doubling_violations
        max_angle = max(max_angle, rep.max_angle)
        positive += rep.positive
    n = cfg.so3_seeds
    rows.append(_count_row(f"so3.triangle[R={R}]", "Eq. tri", tri, n))
    rows.append(_count_row(f"so3.doubling[R={R}]", "equality when x=y", dbl, n))
    rows.append(check_row(f"so3.max_angle[R={R}]", "theta_x <= pi/2", max_angle, math.pi / 2))
    frac = positive / n if n else 1.0
    rows.append(Row("so3.positivity", "faithful for generic choice", "pass" if frac >= 0.99 else "warn",
                    frac, 0.99, frac - 0.99, None, f"{positive}/{n} seeds positive", hard=False))
    ratio = commutator_ratio(0.1, cfg.seed) / commutator_ratio(0.01, cfg.seed)
    rows.append(Row("so3.ratio_decay", "converge to zero pointwise", "pass" if abs(ratio - 10) <= 2 else "fail",
                    ratio, 10.0, 2 - abs(ratio - 10), None, "ratio(0.1)/ratio(0.01), tolerance 20%"))
    return rows


SUITE_FUNCS = {
    "axioms": suite_axioms,
    "oracles": suite_oracles,
    "paper-values": suite_paper_values,
    "embedding": suite_embedding,
    "defects": suite_defects,
    "walk": suite_walk,
    "so3": suite_so3,
}


def run_suites(names, cfg: RunConfig, jobs: int = 1) -> list[Row]:
    names = list(SUITES) if "all" in names else list(names)
    for n in names:
        if n not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {n!r}")

    def run(name):
        rows = SUITE_FUNCS[name](cfg)
        for r in rows:
            r.id = f"{name}/{r.id}"
        return rows

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, names))
    else:
        results = [run(n) for n in names]
    return [r for rows in results for r in rows]


def build_report(suite: str, cfg: RunConfig, jobs: int = 1) -> Report:
    rows = run_suites([suite], cfg, jobs)
    return Report(__version__, {"suite": suite, **cfg.echo()}, rows)
