"""
Counting quasimorphisms
=======================

"""

# %%
from freemetric import brooks_qm, commutator, defect_sample, induced_pseudolength, parse, power, qm_homogenize

# %% [markdown]
# A Brooks function counts disjoint copies of a pattern minus disjoint copies
# of its inverse.  It is not a homomorphism, but its defect is bounded.

# %%
w = commutator(parse("a"), parse("b"))
f = brooks_qm(w, 3.0, "asserted")
print([f(power(w, n)) for n in range(1, 8)])

s = defect_sample(f, 5000, 10, seed=1)
print("largest sampled defect:", s.lower_bound, "at", [str(t) for t in s.witness])

# %% [markdown]
# Sampled defects are lower bounds; the asserted bound above must dominate them.
# Homogenizing averages over powers and comes with a bracket of half-width
# D (1 - 1/N).

# %%
for N in (2, 8, 32):
    h = qm_homogenize(f, parse("abABab"), N)
    print(N, h.estimate, h.half_width)

# %% [markdown]
# Adding the defect to |f| gives a pseudo-length that is subadditive and grows
# linearly on powers of the pattern.

# %%
ell = induced_pseudolength(f, 3.0)
print([ell(power(w, n)) for n in range(1, 6)])
