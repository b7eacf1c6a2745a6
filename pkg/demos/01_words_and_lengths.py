"""
Words in a free group and three ways to measure them
====================================================

"""

# %% [markdown]
# Words are typed as strings: lowercase letters are generators, uppercase
# letters their inverses.  Everything is freely reduced on construction.

# %%
from freemetric import (
    commutator, cyc_length, cyclic_reduce, enumerate_ball, parse, power, wc_length, word_length,
)

x = parse("aAbab")
print(x, len(x))

a, b = parse("a"), parse("b")
print("[a,b] =", commutator(a, b))
print("(baB)^5 =", power(parse("baB"), 5))

# %% [markdown]
# Word length grows like n + 2 on powers of baB, while the cyclic length only
# sees the conjugacy class and grows like n.

# %%
for n in (1, 2, 5, 10):
    z = power(parse("baB"), n)
    print(n, word_length(z), cyc_length(z), cyclic_reduce(z))

# %% [markdown]
# The ball of radius r has 1 + 4 (3^r - 1) / 2 elements in rank two.

# %%
print([len(enumerate_ball(r)) for r in range(6)])

# %% [markdown]
# The Watson-Crick length pairs inverse letters without crossings and counts
# what is left over.  It is much smaller than word length on commutators.

# %%
for k in range(1, 5):
    z = commutator(power(a, k), power(b, k))
    print(f"k={k}  word={word_length(z):>3g}  cyc={cyc_length(z):>3g}  wc={wc_length(z).deficiency:g}")
