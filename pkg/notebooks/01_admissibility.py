"""
Which progressions can hold k primes
====================================

A triple (p1, r, d) generates p1*r**j + j*d. Before any search we can say a
lot about it from parity and a couple of gcds.
"""

# %%
from gapk import GapTriple, admissible, verify_gap

t = GapTriple(5, 5, 114)
rep = admissible(t)
print(t, rep.admissible, rep.max_order)

# %% [markdown]
# The order bound comes from the terms at j = p1 and j = spf(r), which are
# always divisible by those primes. With p1 = 5 nothing longer than 5 terms
# is possible, and indeed the sixth term is 5 * 3239.

# %%
print(verify_gap(t, 5).terms)
fail = verify_gap(t, 6)
print(fail.failed_index, fail.value, fail.reason)

# %% [markdown]
# A composite ratio is bounded by its smallest prime factor.

# %%
for r in (15, 21, 25, 35):
    print(r, admissible(GapTriple(7, r, 2)).max_order)

# %% [markdown]
# Start 1 is allowed, but the leading term 1 is not prime, so the window has
# to start at j = 1.

# %%
t = GapTriple(1, 7, 720)
print(admissible(t).special_case, admissible(t).max_order)
print(verify_gap(t, 5, start_j=0).reason)
print(verify_gap(t, 5, start_j=1).terms)

# %% [markdown]
# Two terms only need gcd(p1*r, d) = 1, so odd d and even starts are fine.

# %%
print(admissible(GapTriple(2, 2, 1), k=2).admissible, verify_gap(GapTriple(2, 2, 1), 2).terms)
