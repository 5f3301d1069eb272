"""Test problems: Kepler two-body, Dahlquist linear test, harmonic oscillator.

Right-hand sides act on the last axis, so a stack of stage values of shape
``(k, m)`` is evaluated in one call.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import NonFiniteState


@dataclass(frozen=True)
class Problem:
    name: str
    m: int
    rhs: Callable[[np.ndarray], np.ndarray]
    y0: np.ndarray
    hamiltonian: Optional[Callable[[np.ndarray], float]] = None
    invariants: dict = field(default_factory=dict)
    reference: Optional[Callable[[float, np.ndarray], np.ndarray]] = None
    period: Optional[float] = None
    params: dict = field(default_factory=dict)

    def __call__(self, y):
        return self.rhs(y)


# -- Kepler -------------------------------------------------------------------

def _kepler_rhs(y):
    y = np.asarray(y, dtype=float)
    q = y[..., :2]
    r2 = q[..., 0] ** 2 + q[..., 1] ** 2
    if np.any(r2 == 0.0):
        raise NonFiniteState("Kepler vector field evaluated at the collision q = 0")
    out = np.empty_like(y)
    out[..., :2] = y[..., 2:]
    out[..., 2:] = -q / (r2 * np.sqrt(r2))[..., None]
    return out


def _kepler_H(y):
    y = np.asarray(y, dtype=float)
    return 0.5 * (y[..., 2] ** 2 + y[..., 3] ** 2) - 1.0 / np.hypot(y[..., 0], y[..., 1])


def _angular_momentum(y):
    y = np.asarray(y, dtype=float)
    return y[..., 0] * y[..., 3] - y[..., 1] * y[..., 2]


def _solve_kepler_equation(M, e):
    """Eccentric anomaly E with ``E - e sin E = M`` by Newton's method."""
    E = M + e * np.sin(M) if e < 0.8 else np.pi * np.sign(np.sin(M)) + M - np.sin(M)
    for _ in range(100):
        dE = (E - e * np.sin(E) - M) / (1.0 - e * np.cos(E))
        E -= dE
        if abs(dE) <= 4e-16 * max(1.0, abs(E)):
            break
    return E


def kepler_reference(t, y0):
    """Exact two-body state at time ``t`` (unit gravitational parameter).

    Propagates the bound orbit through y0 with Lagrange's f and g functions
    expressed in the change of eccentric anomaly.
    """
    y0 = np.asarray(y0, dtype=float)
    q0, p0 = y0[:2], y0[2:]
    r0 = np.hypot(*q0)
    energy = 0.5 * p0 @ p0 - 1.0 / r0
    if energy >= 0.0:
        raise ValueError("reference solution needs a bound (elliptic) orbit")
    a = -0.5 / energy
    n = a ** -1.5
    sigma = q0 @ p0
    ecosE = 1.0 - r0 / a
    esinE = sigma / np.sqrt(a)
    e = np.hypot(ecosE, esinE)
    if e < 1e-14:
        dE = n * t
    else:
        E0 = np.arctan2(esinE, ecosE)
        M0 = E0 - e * np.sin(E0)
        # solve on the reduced mean anomaly, then restore whole turns
        M = M0 + n * t
        turns = np.floor((M + np.pi) / (2 * np.pi))
        Mred = M - 2 * np.pi * turns
        dE = _solve_kepler_equation(Mred, e) + 2 * np.pi * turns - E0
    r = a + (r0 - a) * np.cos(dE) + sigma * np.sqrt(a) * np.sin(dE)
    f = 1.0 - a / r0 * (1.0 - np.cos(dE))
    g = t - (dE - np.sin(dE)) / n
    fdot = -np.sqrt(a) / (r * r0) * np.sin(dE)
    gdot = 1.0 - a / r * (1.0 - np.cos(dE))
    return np.concatenate([f * q0 + g * p0, fdot * q0 + gdot * p0])


def kepler(y0=None) -> Problem:
    """Planar two-body problem, state ``(q1, q2, p1, p2)``.

    The default orbit starts at ``(0.4, 0, 0, 2)``: eccentricity 0.6,
    semi-major axis 1, period ``2 pi``.
    """
    y0 = np.array([0.4, 0.0, 0.0, 2.0] if y0 is None else y0, dtype=float)
    return Problem(
        name="kepler",
        m=4,
        rhs=_kepler_rhs,
        y0=y0,
        hamiltonian=_kepler_H,
        invariants={"hamiltonian": _kepler_H, "angular_momentum": _angular_momentum},
        reference=kepler_reference,
        period=2.0 * np.pi,
        params={"y0": y0.tolist()},
    )


# -- linear test equation -----------------------------------------------------

def linear_test(lam=-1.0, y0=None) -> Problem:
    """Dahlquist equation ``y' = lam y``.

    A real ``lam`` gives a scalar problem; a complex one is realified as the
    2x2 block ``[[Re, -Im], [Im, Re]]`` acting on ``(Re y, Im y)``.
    """
    lam = complex(lam)
    if lam.imag == 0.0:
        mu = lam.real
        m = 1
        y0 = np.array([1.0] if y0 is None else y0, dtype=float).reshape(1)

        def rhs(y):
            return mu * np.asarray(y, dtype=float)

        def reference(t, y0):
            return np.exp(mu * t) * np.asarray(y0, dtype=float)
        params = {"lam": mu}
    else:
        a, b = lam.real, lam.imag
        m = 2
        y0 = np.array([1.0, 0.0] if y0 is None else y0, dtype=float).reshape(2)
        L = np.array([[a, -b], [b, a]])

        def rhs(y):
            return np.asarray(y, dtype=float) @ L.T

        def reference(t, y0):
            z = complex(y0[0], y0[1]) * np.exp(lam * t)
            return np.array([z.real, z.imag])
        params = {"lam": [a, b]}
    return Problem(name="linear", m=m, rhs=rhs, y0=y0, reference=reference,
                   params=params)


# -- harmonic oscillator ------------------------------------------------------

def harmonic_oscillator(omega=1.0, y0=None) -> Problem:
    omega = float(omega)
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    y0 = np.array([1.0, 0.0] if y0 is None else y0, dtype=float)
    w2 = omega * omega

    def rhs(y):
        y = np.asarray(y, dtype=float)
        out = np.empty_like(y)
        out[..., 0] = y[..., 1]
        out[..., 1] = -w2 * y[..., 0]
        return out

    def H(y):
        y = np.asarray(y, dtype=float)
        return 0.5 * (y[..., 1] ** 2 + w2 * y[..., 0] ** 2)

    def reference(t, y0):
        q0, p0 = y0
        cs, sn = np.cos(omega * t), np.sin(omega * t)
        return np.array([q0 * cs + p0 / omega * sn, -q0 * omega * sn + p0 * cs])

    return Problem(
        name="harmonic",
        m=2,
        rhs=rhs,
        y0=y0,
        hamiltonian=H,
        invariants={"hamiltonian": H},
        reference=reference,
        period=2.0 * np.pi / omega,
        params={"omega": omega},
    )


PROBLEMS = {
    "kepler": kepler,
    "linear": linear_test,
    "harmonic": harmonic_oscillator,
}


def get_problem(name: str, **params) -> Problem:
    try:
        factory = PROBLEMS[name]
    except KeyError:
        raise ValueError(f"unknown problem {name!r}; choose from {sorted(PROBLEMS)}") from None
    return factory(**params)
