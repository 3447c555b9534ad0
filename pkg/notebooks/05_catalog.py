"""
Difference sequences as b-files
===============================

All admissible d for one (k, p1, r) form an integer sequence. For k = 2 with
p1 = r = 2 it is p - 4 over the primes p >= 5.
"""

# %%
from gapk.catalog import compare, difference_sequence, export_bfile, fetch_reference, parse_bfile

seq = difference_sequence(2, count=100)
print(seq.terms[:12])

ref = fetch_reference("A172367", offline=True)
print(compare(seq, ref).summary())

# %%
text = export_bfile(difference_sequence(5, count=8))
print(text)
print(parse_bfile(text).values)

# %% [markdown]
# JSON keeps the big integers as strings.

# %%
print(difference_sequence(3, bound=30).to_json())
