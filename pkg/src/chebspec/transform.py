"""Orthonormal DCT-II / DCT-III pair matched to the cosine matrix.

``dct_forward(V) = P^T V / sqrt(s)`` and ``dct_inverse(Z) = P Z / sqrt(s)``
where ``P`` is the square cosine matrix. The fast mode delegates to
``scipy.fft`` (pocketfft, mixed radix, any length); the reference mode
multiplies by the dense matrix and serves as its oracle.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from .tableau import SpectralFactor, cosine_matrix

MODES = ("reference", "fast")


@dataclass
class TransformPlan:
    s: int
    mode: str = "fast"
    workspace: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("transform length must be positive")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "reference":
            self.workspace["M"] = cosine_matrix(self.s, self.s) / np.sqrt(self.s)

    def clone(self):
        return TransformPlan(self.s, self.mode, dict(self.workspace))

    def _check(self, V):
        V = np.asarray(V)
        if V.ndim == 0 or V.shape[0] != self.s:
            raise ValueError(f"expected leading dimension {self.s}, got shape {V.shape}")
        return V


def dct_forward(plan: TransformPlan, V) -> np.ndarray:
    """Column-wise orthonormal DCT-II: row ``j`` is ``w_j sum_i cos(j theta_i) V_i``."""
    V = plan._check(V)
    if plan.mode == "reference":
        return plan.workspace["M"].T @ V
    return scipy.fft.dct(V, type=2, norm="ortho", axis=0)


def dct_inverse(plan: TransformPlan, Z) -> np.ndarray:
    """Column-wise orthonormal DCT-III, the exact inverse of :func:`dct_forward`."""
    Z = plan._check(Z)
    if plan.mode == "reference":
        return plan.workspace["M"] @ Z
    return scipy.fft.idct(Z, type=2, norm="ortho", axis=0)


def _folded_factor(X: SpectralFactor) -> SpectralFactor:
    """``X`` conjugated by the sqrt(2) column scaling of the cosine matrix.

    In plain ``T_j`` coefficients every entry is rational, so the orthonormal
    scalings and their rounding drop out of the fast product.
    """
    s, beta = X.s, X.beta
    first = np.zeros(s)
    first[0] = 0.5
    if s >= 2:
        first[1] = -2.0 * beta[1]
    j = np.arange(3, s + 1)
    first[2:] = np.where(j % 2 == 0, 16.0, -16.0) * beta[j - 1] * beta[j - 3]
    sub = beta[: s - 1].copy()
    return SpectralFactor(s, False, first, sub, X.sup, beta, X.alpha)


def apply_butcher_fast(plan: TransformPlan, X: SpectralFactor, W) -> np.ndarray:
    """``A @ W`` for the square tableau, evaluated as ``idct(X dct(W))``.

    The fast mode runs the unnormalized DCT-II/III pair around the folded
    factor and divides by ``2s`` once; this is the same product with fewer
    roundings (and no bias in the energy of Hamiltonian runs).
    """
    W = plan._check(W)
    if X.extended or X.s != plan.s:
        raise ValueError("fast application needs the square factor of matching size")
    if plan.mode == "reference":
        return dct_inverse(plan, X.matmul(dct_forward(plan, W)))
    # the square factor is unique per length, so one cache slot per plan
    Xf = plan.workspace.get("folded")
    if Xf is None:
        Xf = plan.workspace["folded"] = _folded_factor(X)
    D = scipy.fft.dct(W, type=2, axis=0)
    return scipy.fft.dct(Xf.matmul(D), type=3, axis=0) / (2 * plan.s)
