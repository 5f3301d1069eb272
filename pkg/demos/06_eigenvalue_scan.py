"""
Eigenvalues of the integration factor
=====================================

A-stability of the whole family follows once every eigenvalue of X_s has a
positive real part. There is no proof of this, so it is checked numerically.
The test suite stops at s = 500; this script runs the full range up to
s = 1000, which takes a few minutes.
"""

# %%
import sys
import time

import numpy as np

from chebspec import min_eig_realpart

s_max = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
t0 = time.perf_counter()
vals = np.array([min_eig_realpart(s) for s in range(1, s_max + 1)])
print(f"s = 1..{s_max}: all positive = {bool(np.all(vals > 0))}, "
      f"smallest {vals.min():.3e} at s = {vals.argmin() + 1} "
      f"({time.perf_counter() - t0:.0f}s)")

# %%
# The minimum shrinks steadily with s but stays clear of zero.
for s in (1, 2, 10, 100, 250, 500, 750, 1000):
    if s <= s_max:
        print(f"{s:5d} {vals[s - 1]:.3e}")
