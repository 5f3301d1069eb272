"""
The Chebyshev collocation tableau
=================================

Every coefficient of the s-stage method is available in closed form: the
abscissae are shifted Chebyshev points, the weights a short cosine sum, and
the Butcher matrix a similarity transform of a sparse integration matrix.
"""

# %%
# The one-stage method is the implicit midpoint rule.
import numpy as np

from chebspec import build_tableau, symmetry_certificate

np.set_printoptions(precision=6, suppress=True, linewidth=100)
t1 = build_tableau(1)
print("s=1:", t1.A, t1.b, t1.c)

# %%
# Three stages. The nodes run from right to left and the weights are
# palindromic.
t3 = build_tableau(3)
print("c =", t3.c)
print("b =", t3.b, " sum =", t3.b.sum())
print("A =\n", t3.A)

# %%
# The sparse factor X carries the Chebyshev integration; only its first row
# is dense.
print(t3.X.toarray())
print(build_tableau(8).X.toarray())

# %%
# Row sums of A reproduce the abscissae, and the flip symmetry
# ``Pi A Pi = 1 b^T - A`` holds to rounding.
for s in (4, 16, 64):
    t = build_tableau(s)
    print(s, np.abs(t.A.sum(axis=1) - t.c).max(), symmetry_certificate(t))

# %%
# With more quadrature points than stages (k > s) the matrix is k x k but
# has rank at most s+1.
g = build_tableau(3, 6)
print(g.A.shape, np.linalg.matrix_rank(g.A), g.b)

# %%
# JSON export, as written by ``chebspec tableau --s 2``.
print(build_tableau(2).to_json(indent=1))
