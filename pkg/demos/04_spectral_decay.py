"""
Decay of the Fourier coefficients
=================================

In the first step of CCM(30), the coefficients of the vector field along
the Chebyshev basis decay geometrically. The decay base grows roughly like
1/h, so halving the step roughly squares the accuracy gained per extra
stage. Once the tail reaches rounding level it stops decreasing.
"""

# %%
import numpy as np

from chebspec import kepler
from chebspec.diagnostics import spectral_decay

ns = [5, 10, 15, 20]
rep = spectral_decay(kepler(), 30, [2 * np.pi / n for n in ns])

# %%
for n, row in zip(ns, rep.rows):
    g = np.array(row[4:])
    print(f"h=2pi/{n:<3d} rho_hat={row[1]:.2f} fit on {row[2]:2d} coefficients, "
          f"|g_29|/|g_0| = {g[-1] / g[0]:.1e}")
rho = rep.column("rho_hat")
print("rho(2pi/20) / rho(2pi/10) =", rho[3] / rho[1])

# %%
# Plot on a log scale if matplotlib is available.
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for n, row in zip(ns, rep.rows):
        ax.semilogy(np.array(row[4:]), "o-", ms=3, label=f"h = 2pi/{n}")
    ax.set_xlabel("j")
    ax.set_ylabel("|gamma_j|")
    ax.legend()
    fig.savefig("spectral_decay.png", dpi=120, bbox_inches="tight")
    print("wrote spectral_decay.png")
