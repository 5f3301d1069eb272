"""
Endpoint order on the Kepler problem
====================================

One period of the eccentric (e = 0.6) Kepler orbit with ``h = 2 pi / n``.
The endpoint order is 2 ceil(s/2): s = 1, 2 give order 2, s = 3, 4 order 4,
since the methods are symmetric.
"""

# %%
import numpy as np

from chebspec import kepler
from chebspec.diagnostics import convergence_study

n_list = [50, 100, 200, 400, 800, 1600]
rep = convergence_study(kepler(), [1, 2, 3, 4], n_list)

# %%
# Same layout as a classic order table: error and observed rate per method.
header = "   n " + "".join(f"| err s={s}   rate " for s in range(1, 5))
print(header)
for row in rep.rows:
    cells = "".join(f"| {e:9.2e} {r:5.1f} " if np.isfinite(r) else f"| {e:9.2e}   --- "
                    for e, r in zip(row[1::2], row[2::2]))
    print(f"{row[0]:5d} {cells}")
print(f"wall time {rep.metadata['wall_time']:.1f}s")

# %%
# The report serializes to CSV with its configuration as comment lines, so a
# saved table can be re-run with ``chebspec.diagnostics.rerun``.
print(rep.to_csv().splitlines()[:4])
