"""
Residues and the common factor of d
===================================

Mod a small prime q each term is c + b*d. Every form with b != 0 rules out
one residue of d. If the ruled-out set is all of 1..q-1, q divides d.
"""

# %%
from gapk import analyze_modulus, common_factor, residue_forms

print([str(f) for f in residue_forms(5, 5, 5, 3)])
print(analyze_modulus(5, 5, 5, 3).report())

# %% [markdown]
# For the 7-term case mod 5 the residue 4 stays open, so 5 is not forced.

# %%
a = analyze_modulus(7, 7, 7, 5)
print(a.report())
print("open:", sorted(a.allowed))

# %% [markdown]
# Collecting the forced primes up to 200 gives the certificate. For the
# minimal progressions (p1 = r = smallest prime >= k):

# %%
from gapk.arith import smallest_prime_geq

for k in (5, 8, 12, 19, 32, 55, 72):
    p = smallest_prime_geq(k)
    cert = common_factor(p, p, k)
    print(f"k={k:<3} p={p:<3} {cert.label:>12}  = {cert.common_factor}")

# %% [markdown]
# Some pairs are ruled out entirely: with p1 = r = 3 and four terms, the
# j = 3 term is a multiple of 3 larger than 3.

# %%
cert = common_factor(3, 3, 4)
print(cert.impossible, cert.impossible_moduli)
