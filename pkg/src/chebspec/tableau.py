"""Closed-form Butcher tableaus of the Chebyshev collocation methods.

The s-stage method has coefficient matrix ``A = P X P^T / s`` where ``P`` is
the cosine matrix of basis values at the nodes and ``X`` is a sparse factor
that performs Chebyshev integration in coefficient space. With ``k > s``
quadrature nodes the rectangular variant ``A = P_ext Xhat P^T / k`` is used.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import basis
from .basis import SQRT2
from .errors import TableauError


@dataclass(frozen=True)
class SpectralFactor:
    """Sparse Chebyshev integration matrix.

    Stored by its nonzero pieces: the dense first row, the subdiagonal
    ``sub[i] = X[i+1, i]``, the superdiagonal ``sup[i] = X[i, i+1]`` for
    rows ``i >= 1``, and, when ``extended``, the trailing ``beta_s`` of the
    extra last row.
    """

    s: int
    extended: bool
    first_row: np.ndarray
    sub: np.ndarray
    sup: np.ndarray
    beta: np.ndarray
    alpha: np.ndarray

    @property
    def shape(self):
        return (self.s + int(self.extended), self.s)

    def triplets(self):
        """Nonzero entries as ``(row, col, value)`` with 0-based indices."""
        out = []
        for j, v in enumerate(self.first_row):
            if v != 0.0:
                out.append((0, j, float(v)))
        for i, v in enumerate(self.sub):
            out.append((i + 1, i, float(v)))
        for i, v in enumerate(self.sup):
            out.append((i + 1, i + 2, float(v)))
        if self.extended:
            out.append((self.s, self.s - 1, float(self.beta[-1])))
        return out

    def toarray(self) -> np.ndarray:
        X = np.zeros(self.shape)
        for i, j, v in self.triplets():
            X[i, j] = v
        return X

    def matmul(self, Z: np.ndarray) -> np.ndarray:
        """Apply the factor to the rows of ``Z`` (shape ``(s, m)`` or ``(s,)``)."""
        Z = np.asarray(Z)
        if Z.shape[0] != self.s:
            raise ValueError(f"expected {self.s} rows, got {Z.shape[0]}")
        s = self.s
        out = np.zeros((self.shape[0],) + Z.shape[1:], dtype=np.result_type(Z, float))
        out[0] = self.first_row @ Z
        if s > 1:
            col = (slice(None),) + (None,) * (Z.ndim - 1)
            out[1:s] = self.sub[col] * Z[:-1]
            out[1:s - 1] += self.sup[col] * Z[2:]
        if self.extended:
            out[s] = self.beta[-1] * Z[s - 1]
        return out


def build_spectral_factor(s: int, extended: bool = False) -> SpectralFactor:
    """Build the sparse factor ``X_s`` (or the ``(s+1) x s`` variant).

    With ``beta_j = 1/(4j)`` and ``alpha_j = (-1)^j 8 sqrt(2) beta_j beta_{j-2}``,
    the first row is ``[1/2, -sqrt(2) beta_2, alpha_3, ..., alpha_s]``, the
    subdiagonal is ``[sqrt(2) beta_1, beta_2, ..., beta_{s-1}]`` and the
    superdiagonal below the first row is ``[-beta_1, ..., -beta_{s-2}]``.
    """
    s = int(s)
    if s < 1:
        raise ValueError(f"stage count must be positive, got {s}")
    beta = 1.0 / (4.0 * np.arange(1, s + 1))
    j = np.arange(3, s + 1)
    # beta_{j-2} indexes beta[j-3]
    alpha = np.where(j % 2 == 0, 1.0, -1.0) * 8.0 * SQRT2 * beta[j - 1] * beta[j - 3]
    first = np.zeros(s)
    first[0] = 0.5
    if s >= 2:
        first[1] = -SQRT2 * beta[1]
    first[2:] = alpha
    sub = beta[: s - 1].copy()
    if s >= 2:
        sub[0] = SQRT2 * beta[0]
    sup = -beta[: max(s - 2, 0)]
    for a in (beta, alpha, first, sub, sup):
        a.setflags(write=False)
    return SpectralFactor(s, bool(extended), first, sub, sup, beta, alpha)


def cosine_matrix(k: int, cols: int, node_set=None) -> np.ndarray:
    """Basis values ``P_{j-1}(c_i)`` at the ``k`` nodes, built from the angles.

    Entry ``(i, j)`` is ``cos((j-1) theta_i)`` scaled by ``sqrt(2)`` except in
    the first column, which is all ones.
    """
    if cols > k + 1:
        raise ValueError(f"at most k+1={k + 1} columns, got {cols}")
    ns = node_set if node_set is not None else basis.nodes(k)
    if ns.s != k:
        raise ValueError("node set does not match k")
    # j*theta_i = j(2i-1) pi/(2k); reduce the integer numerator mod 4k so the
    # cosine argument stays in [0, 2pi) without rounding
    n = np.outer(2 * np.arange(1, k + 1) - 1, np.arange(cols)) % (4 * k)
    M = np.cos(n * (np.pi / (2 * k)))
    M[:, 1:] *= SQRT2
    return M


def weights(s: int, k: int = None) -> np.ndarray:
    """Quadrature weights ``b_i`` for ``k`` nodes and polynomial degree ``s``.

    ``b_i = (1/k) [1 - 2 sum_{j=1}^{ceil(s/2)-1} cos((2i-1) j pi / k) / (4j^2 - 1)]``
    """
    k = s if k is None else k
    if s < 1 or k < s:
        raise ValueError(f"need k >= s >= 1, got s={s}, k={k}")
    i = np.arange(1, k + 1)[:, None]
    j = np.arange(1, (s + 1) // 2)[None, :]
    terms = np.cos((2 * i - 1) * j * np.pi / k) / (4.0 * j * j - 1.0)
    return (1.0 - 2.0 * terms.sum(axis=1)) / k


def integration_matrix(s: int, k: int = None) -> np.ndarray:
    """``int_0^{c_i} P_{j-1}`` evaluated directly from the basis antiderivatives.

    Not used for stepping; it is the independent check on ``P X``.
    """
    k = s if k is None else k
    c = basis.nodes(k).c
    return basis.integral_all(s - 1, c).T


@dataclass(frozen=True)
class ButcherTableau:
    s: int
    k: int
    c: np.ndarray
    b: np.ndarray
    A: np.ndarray
    P: np.ndarray
    X: SpectralFactor
    P_ext: np.ndarray = field(default=None)

    @property
    def square(self) -> bool:
        return self.k == self.s

    def to_dict(self):
        return {
            "s": self.s,
            "k": self.k,
            "c": self.c.tolist(),
            "b": self.b.tolist(),
            "A": self.A.tolist(),
            "X": {
                "shape": list(self.X.shape),
                "triplets": [[i, j, v] for i, j, v in self.X.triplets()],
            },
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_csv(self) -> str:
        head = ["i", "c", "b"] + [f"A{j + 1}" for j in range(self.k)]
        lines = [",".join(head)]
        for i in range(self.k):
            row = [str(i + 1), repr(float(self.c[i])), repr(float(self.b[i]))]
            row += [repr(float(v)) for v in self.A[i]]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _certify(t: ButcherTableau):
    k = t.k
    checks = [
        ("sum(b) == 1", abs(t.b.sum() - 1.0), 1e-14),
        ("A 1 == c", np.max(np.abs(t.A.sum(axis=1) - t.c)), 1e-13),
    ]
    for name, defect, tol in checks:
        if not defect <= tol:
            raise TableauError(f"{name} violated: defect {defect:.3e} > {tol:.1e}")
    if np.min(t.b) < 1.0 / k**2:
        raise TableauError("weights fall below 1/k^2")


def build_tableau(s: int, k: int = None) -> ButcherTableau:
    """Assemble the CCM(s) tableau, or its ``k > s`` generalization.

    Examples
    --------
    >>> t = build_tableau(1)
    >>> t.A, t.b, t.c
    (array([[0.5]]), array([1.]), array([0.5]))
    """
    s = int(s)
    k = s if k is None else int(k)
    if s < 1:
        raise ValueError(f"stage count must be positive, got {s}")
    if k < s:
        raise ValueError(f"need k >= s, got s={s}, k={k}")
    ns = basis.nodes(k)
    P = cosine_matrix(k, s, ns)
    if k == s:
        X = build_spectral_factor(s)
        P_ext = None
        A = P @ X.toarray() @ P.T / k
    else:
        X = build_spectral_factor(s, extended=True)
        P_ext = cosine_matrix(k, s + 1, ns)
        A = P_ext @ X.toarray() @ P.T / k
    for a in (A, P) + ((P_ext,) if P_ext is not None else ()):
        a.setflags(write=False)
    b = weights(s, k)
    b.setflags(write=False)
    t = ButcherTableau(s=s, k=k, c=ns.c, b=b, A=A, P=P, X=X, P_ext=P_ext)
    _certify(t)
    return t


def symmetry_certificate(t: ButcherTableau) -> dict:
    """Defects of the two symmetry identities ``Pi b = b`` and
    ``Pi A Pi = 1 b^T - A`` (``Pi`` the flip permutation)."""
    if not t.square:
        raise ValueError("symmetry certificate needs a square tableau")
    flipA = t.A[::-1, ::-1]
    return {
        "max_defect_b": float(np.max(np.abs(t.b[::-1] - t.b))),
        "max_defect_A": float(np.max(np.abs(flipA - (np.outer(np.ones(t.k), t.b) - t.A)))),
    }


def stability_function(t: ButcherTableau, z) -> complex:
    """``R(z) = 1 + z b^T (I - zA)^{-1} 1``.

    Raises ``numpy.linalg.LinAlgError`` when ``1/z`` is an eigenvalue of A.
    """
    z = complex(z)
    M = np.eye(t.k) - z * t.A
    w = np.linalg.solve(M, np.ones(t.k, dtype=complex))
    R = 1.0 + z * (t.b @ w)
    if not np.isfinite(R):
        raise np.linalg.LinAlgError("singular stage matrix")
    return complex(R)


def min_eig_realpart(s: int) -> float:
    """Smallest real part in the spectrum of the dense square factor ``X_s``."""
    X = build_spectral_factor(s).toarray()
    ev = np.linalg.eigvals(X)
    return float(ev.real.min())
