"""
Non-crossing matchings, edit distance and the monoid embedding
==============================================================

"""

# %%
import itertools

from freemetric import (
    Weights, edit_distance, enumerate_ball, fg_distance, parse, parse_monoid, wc_length, wc_length_oracle,
)
from freemetric.words import enumerate_monoid

# %% [markdown]
# The optimal matching is returned with the value.  Pairs are positions in
# the reduced word.

# %%
res = wc_length(parse("abABabAB"))
print(res.deficiency, res.pairs)

# %% [markdown]
# The interval DP is cubic; the brute-force oracle tries every matching.
# They agree on the whole ball of radius 6.

# %%
ball = enumerate_ball(6)
print(all(wc_length(x).deficiency == wc_length_oracle(x) for x in ball), len(ball), "words")

# %% [markdown]
# Weights change the cost of leaving a letter unmatched.

# %%
w = Weights.parse("a=1,b=5", parse("a").alphabet)
print(wc_length(parse("abAB"), w).deficiency, wc_length(parse("aabbbAABBB"), w).deficiency)

# %% [markdown]
# On positive words the free-group distance wc(u^-1 v) is exactly the
# insert/delete edit distance.

# %%
monoid = enumerate_monoid(4)
ok = all(
    fg_distance(u.to_word(), v.to_word()) == edit_distance(u, v)
    for u, v in itertools.product(monoid, repeat=2)
)
print(ok, len(monoid) ** 2, "pairs")
print(edit_distance(parse_monoid("abba"), parse_monoid("baab")))
