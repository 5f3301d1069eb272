"""
Spectral accuracy over ten periods
==================================

With s = 50 the collocation polynomial resolves the orbit to rounding even
with very few steps per period, so the error stays near 1e-12 at every
period end.
"""

# %%
from chebspec import kepler
from chebspec.diagnostics import long_run_study

ns = [3, 6, 9, 12, 15]
reports = {n: long_run_study(kepler(), 50, n, 10) for n in ns}

# %%
print("period " + "".join(f"  n={n:<7d}" for n in ns))
for p in range(10):
    print(f"{p + 1:6d} " + "".join(f"  {reports[n].rows[p][1]:.2e}" for n in ns))
