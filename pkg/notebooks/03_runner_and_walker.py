"""
Scanning d, and scanning j
==========================

runner sweeps d over a range for fixed (p1, r, k). walker and
shifted_search fix the triple and move along j instead.
"""

# %%
from gapk import GapTriple, SearchSpec, runner
from gapk.search import search_summary, shifted_search, walker

res = runner(SearchSpec(5, 5, 5, 0, 1000))
print(res.differences)
print(search_summary(res))

# %% [markdown]
# The stride is the certificate (6 here), so only a sixth of the range is
# looked at. A stride of 1 gives the same list.

# %%
print(runner(SearchSpec(5, 5, 5, 0, 1000, stride=1)).differences == res.differences)

# %%
for inst in walker(GapTriple(5, 5, 114), 5, 0, 20):
    print(inst.start_j, inst.terms)

# %% [markdown]
# Runs of primes need not start at j = 0.

# %%
for inst in shifted_search(GapTriple(5, 5, 4), 9, min_order=3):
    print(inst.start_j, inst.terms)

d = 156497 * 2310
for inst in shifted_search(GapTriple(13, 13, d), 5, min_order=10):
    print(inst.start_j, inst.k, inst.terms[0], inst.terms[-1])
