"""
Local length functions from small rotations
===========================================

"""

# %%
import math

from freemetric import ball_check, commutator_ratio, make_local_length, parse

# %% [markdown]
# Send a and b to rotations by a small angle about random axes and measure a
# word by the rotation angle of its image.  With epsilon = pi / (2R) every
# word of length at most R rotates by at most pi/2.

# %%
ell = make_local_length(6, "auto", seed=0)
print(ell.rep.epsilon, math.pi / 12)
for s in ("a", "ab", "abAB", "aaa"):
    print(s, ell(parse(s)))

# %% [markdown]
# On the whole ball B(6) the angle is subadditive, doubles on squares and is
# positive off the identity.

# %%
rep = ball_check(ell)
for row in rep.rows():
    print(row.id, row.status, row.value, row.note)

# %% [markdown]
# Commutators of small rotations are second order: the ratio
# angle([a,b]) / (angle(a) + angle(b)) shrinks linearly with epsilon.

# %%
for eps in (0.2, 0.1, 0.05, 0.01):
    print(eps, commutator_ratio(eps, seed=0))
