"""Shifted and scaled Chebyshev polynomials of the first kind on [0, 1].

The basis is orthonormal for the weight ``1 / (pi * sqrt(c * (1 - c)))``::

    P_0(c) = 1,    P_j(c) = sqrt(2) * T_j(2c - 1),   j >= 1

Nodes are the Gauss-Chebyshev points mapped to [0, 1], listed in
decreasing order, with the constant quadrature weight ``1 / s``.
"""

from dataclasses import dataclass

import numpy as np

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class NodeSet:
    """Gauss-Chebyshev abscissae on [0, 1].

    ``theta`` is kept next to ``c`` because cosine-matrix entries
    ``cos(j * theta_i)`` are more accurate from the angle than from
    ``arccos(2c - 1)``.
    """

    s: int
    theta: np.ndarray
    c: np.ndarray

    @property
    def weight(self) -> float:
        return 1.0 / self.s


def nodes(s: int) -> NodeSet:
    """Return the ``s`` Chebyshev abscissae ``c_i = (1 + cos theta_i) / 2``.

    ``theta_i = (2i - 1) pi / (2s)`` for ``i = 1..s``, so the abscissae are
    strictly decreasing.

    >>> nodes(3).c.round(10).tolist()
    [0.9330127019, 0.5, 0.0669872981]
    """
    s = int(s)
    if s < 1:
        raise ValueError(f"node count must be positive, got {s}")
    i = np.arange(1, s + 1)
    theta = (2 * i - 1) * np.pi / (2 * s)
    # cos(pi/2) is ~6e-17 in floating point; pin the middle node
    c = 0.5 * (1.0 + np.cos(theta))
    if s % 2 == 1:
        c[s // 2] = 0.5
    theta.setflags(write=False)
    c.setflags(write=False)
    return NodeSet(s, theta, c)


def _check_unit(c):
    c = np.asarray(c, dtype=float)
    if np.any(c < 0.0) or np.any(c > 1.0):
        raise ValueError("abscissa must lie in [0, 1]")
    return c


def _chebyshev_T(jmax, x):
    """Rows T_0..T_jmax evaluated at ``x`` via the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    out = np.empty((jmax + 1,) + x.shape)
    out[0] = 1.0
    if jmax >= 1:
        out[1] = x
    for j in range(1, jmax):
        out[j + 1] = 2.0 * x * out[j] - out[j - 1]
    return out


def eval_all(jmax: int, c) -> np.ndarray:
    """Evaluate ``P_0..P_jmax`` at ``c``; result has shape ``(jmax+1,) + c.shape``."""
    c = _check_unit(c)
    if jmax < 0:
        raise ValueError("degree must be nonnegative")
    T = _chebyshev_T(jmax, 2.0 * c - 1.0)
    T[1:] *= SQRT2
    return T


def eval_P(j: int, c):
    """Evaluate the basis polynomial ``P_j`` at ``c`` (scalar or array)."""
    if j < 0:
        raise ValueError("degree must be nonnegative")
    return eval_all(j, c)[j]


def integral_P(j: int, c):
    """Antiderivative ``int_0^c P_j(x) dx``.

    Uses the closed forms that express the integral through ``P_{j-1}``,
    ``P_{j+1}`` and ``P_0``; the ``j = 0`` case reduces to ``c``.
    """
    if j < 0:
        raise ValueError("degree must be nonnegative")
    P = eval_all(j + 1, c)
    if j == 0:
        return 0.5 * (P[1] / SQRT2 + P[0])
    if j == 1:
        return 0.125 * (P[2] - SQRT2 * P[0])
    sign = -1.0 if j % 2 else 1.0
    out = 0.25 * (P[j + 1] / (j + 1) - P[j - 1] / (j - 1)
                  - sign * 2.0 * SQRT2 * P[0] / (j * j - 1))
    # the three terms cancel at c = 0 only up to rounding
    return np.where(np.asarray(c) == 0.0, 0.0, out)[()]


def integral_all(jmax: int, c) -> np.ndarray:
    """Stack of ``integral_P(j, c)`` for ``j = 0..jmax``."""
    c = np.asarray(c, dtype=float)
    return np.stack([np.asarray(integral_P(j, c)) for j in range(jmax + 1)])


def integral_P_at_one(j: int) -> float:
    """``int_0^1 P_j``: 1 for ``j = 0``, 0 for odd ``j``, ``sqrt(2)/(1-j^2)`` otherwise."""
    if j < 0:
        raise ValueError("degree must be nonnegative")
    if j == 0:
        return 1.0
    if j % 2:
        return 0.0
    return SQRT2 / (1.0 - j * j)


def integrals_at_one(s: int) -> np.ndarray:
    """Vector of ``integral_P_at_one(j)`` for ``j = 0..s-1``."""
    return np.array([integral_P_at_one(j) for j in range(s)])
