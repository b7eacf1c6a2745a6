"""
Commutators against the homogeneity defect
==========================================

"""

# %%
from freemetric import (
    SQRT2_FORM, ball_defect, commutator_report, fmk_table, homogenize, parse, pullback_length_fn,
    walk_demo, wc_length_fn, word_length_fn,
)

a, b = parse("a"), parse("b")

# %% [markdown]
# The defect c measures how far 2 l(z) - l(z^2) can get.  For word length it
# is unbounded: z = a^k b a^-k gives 2k.

# %%
word = word_length_fn()
for k in (1, 3, 6):
    z = parse("a" * k + "b" + "A" * k)
    print(k, 2 * word(z) - word(z * z))

# %% [markdown]
# For Watson-Crick length the sampled defect on a ball is small, and
# commutators stay under 5c.

# %%
wc = wc_length_fn()
rep = ball_defect(wc, 4)
print("c_hat on B(4) =", rep.c_hat)
for row in commutator_report(wc, rep, [(a, b), (a * a, b * b * b)]):
    print(row.id, row.status, row.value, "<=", row.bound, row.note)

# %% [markdown]
# A pullback of a linear form is homogeneous, so c = 0 and every commutator
# has length zero.  The f(m, k) grid inequality then holds with no slack.

# %%
pb = pullback_length_fn(SQRT2_FORM)
print(pb(a), pb(b), pb(a * b * ~a * ~b))
print(fmk_table(pb, 0.0, a, b, 3, 3).violations)

# %% [markdown]
# Homogenization converges from above; the bracket shrinks like c/N.

# %%
for N in (1, 4, 16, 64):
    h = homogenize(word, parse("baB"), N, 2.0)
    print(N, h.estimate, h.bracket)

# %% [markdown]
# The averaging step rests on E|Y_1 + ... + Y_2n| <= sqrt(2n) for fair signs.

# %%
print(walk_demo(2, exact=True).mean_abs_fraction)
s = walk_demo(512, trials=100_000, seed=42)
print(round(s.mean_abs, 3), "+-", round(s.stderr, 3), "bound", s.bound)
