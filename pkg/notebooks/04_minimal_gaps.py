"""
Least d for the minimal progressions
====================================

p1 = r = p, the smallest prime >= k. The search steps through multiples of
the certificate and stops at the first d giving k primes.
"""

# %%
import time

from gapk import GapTriple, minimal_gap
from gapk.search import tail_scan

for k in range(2, 12):
    t0 = time.perf_counter()
    found = minimal_gap(k, 10**9)
    print(f"k={k:<3} {found.triple}  stride={found.stride:<6} {time.perf_counter() - t0:6.2f}s")

# %% [markdown]
# Past the first k terms the same sequences seem to avoid runs of three or
# more primes. A short scan:

# %%
for k, p, d in [(5, 5, 84), (6, 7, 144), (8, 11, 62610)]:
    rep = tail_scan(GapTriple(p, p, d), k, 300)
    print(k, rep.max_order_found, rep.windows)
