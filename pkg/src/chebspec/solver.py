"""Fixed-point stepping for the Chebyshev collocation methods.

Each step iterates ``Y <- 1 (x) y0 + h A f(Y)`` from the constant predictor
``Y = 1 (x) y0``. On the fast path ``A f(Y)`` is evaluated as
``idct(X dct(f(Y)))``. After convergence the approximate Fourier
coefficients ``gamma_hat = P^T f(Y) / k`` define the collocation polynomial

    u(ch) = y0 + h * sum_j int_0^c P_j(x) dx * gamma_hat_j

which gives both the step endpoint (``c = 1``) and dense output.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import basis
from .errors import FixedPointDiverged, NonFiniteState, SolverError
from .tableau import ButcherTableau, build_tableau
from .transform import TransformPlan, apply_butcher_fast


@dataclass(frozen=True)
class SolverConfig:
    s: int
    h: float
    k: Optional[int] = None
    fp_tol: float = 1e-14
    fp_max_iter: int = 100
    path: str = "fast"
    dense_output: bool = True

    def __post_init__(self):
        if self.k is None:
            object.__setattr__(self, "k", self.s)
        if not self.k >= self.s >= 1:
            raise ValueError(f"need k >= s >= 1, got s={self.s}, k={self.k}")
        if not self.h > 0:
            raise ValueError(f"timestep must be positive, got {self.h}")
        if not self.fp_tol > 0:
            raise ValueError("fp_tol must be positive")
        if self.path not in ("fast", "dense"):
            raise ValueError(f"path must be 'fast' or 'dense', got {self.path!r}")
        if self.path == "fast" and self.k != self.s:
            raise ValueError("the fast path requires k == s")

    def tableau(self) -> ButcherTableau:
        return build_tableau(self.s, self.k)

    def plan(self) -> Optional[TransformPlan]:
        return TransformPlan(self.s, "fast") if self.path == "fast" else None


@dataclass
class StepResult:
    y0: np.ndarray
    y1: np.ndarray
    gamma_hat: Optional[np.ndarray]
    iterations: int
    defect: float
    h: float


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    steps: List[StepResult] = field(default_factory=list)

    @property
    def iterations(self) -> np.ndarray:
        return np.array([r.iterations for r in self.steps])


def _apply_A(tableau, plan, W):
    if plan is not None:
        return apply_butcher_fast(plan, tableau.X, W)
    return tableau.A @ W


def _eval_rhs(problem, Y):
    F = np.asarray(problem.rhs(Y), dtype=float)
    if F.shape != Y.shape:
        raise ValueError(f"rhs returned shape {F.shape}, expected {Y.shape}")
    if not np.all(np.isfinite(F)):
        raise NonFiniteState("vector field returned a non-finite value")
    return F


def step(problem, y0, cfg: SolverConfig, tableau: ButcherTableau = None,
         plan: TransformPlan = None) -> StepResult:
    """Advance one step of size ``cfg.h`` from ``y0``.

    Raises
    ------
    FixedPointDiverged
        The iteration cap was hit, or the increment grew more than tenfold on
        three consecutive sweeps.
    NonFiniteState
        The vector field produced inf/nan.
    """
    if tableau is None:
        tableau = cfg.tableau()
    if tableau.s != cfg.s or tableau.k != cfg.k:
        raise ValueError("tableau does not match the solver configuration")
    if cfg.path == "fast" and plan is None:
        plan = cfg.plan()
    if cfg.path == "dense":
        plan = None

    y0 = np.asarray(y0, dtype=float)
    if not np.all(np.isfinite(y0)):
        raise NonFiniteState("initial state is not finite")
    h = cfg.h
    k = tableau.k
    Y = np.broadcast_to(y0, (k, y0.size)).copy()
    F = _eval_rhs(problem, Y)

    prev = np.inf
    growth = 0
    for it in range(1, cfg.fp_max_iter + 1):
        Ynew = y0 + h * _apply_A(tableau, plan, F)
        defect = np.max(np.abs(Ynew - Y))
        Y = Ynew
        F = _eval_rhs(problem, Y)
        if defect <= cfg.fp_tol * (1.0 + np.max(np.abs(Y))):
            break
        growth = growth + 1 if defect > 10.0 * prev else 0
        if growth >= 3 or not np.isfinite(defect):
            raise FixedPointDiverged(
                f"stage iteration diverged after {it} sweeps (increment {defect:.3e})")
        prev = defect
    else:
        raise FixedPointDiverged(
            f"stage iteration did not converge in {cfg.fp_max_iter} sweeps "
            f"(increment {defect:.3e})")

    gamma_hat = tableau.P.T @ F / k
    y1 = y0 + h * (basis.integrals_at_one(cfg.s) @ gamma_hat)
    return StepResult(y0=y0, y1=y1, gamma_hat=gamma_hat, iterations=it,
                      defect=float(defect), h=h)


def dense_eval(r: StepResult, c):
    """Evaluate the collocation polynomial of a step at ``t0 + c h``."""
    if r.gamma_hat is None:
        raise ValueError("step was taken without dense output")
    if not 0.0 <= c <= 1.0:
        raise ValueError("c must lie in [0, 1]")
    s = r.gamma_hat.shape[0]
    w = basis.integral_all(s - 1, c)
    return r.y0 + r.h * (w @ r.gamma_hat)


def dense_derivative(r: StepResult, c):
    """Derivative of the collocation polynomial, ``sum_j P_j(c) gamma_hat_j``."""
    s = r.gamma_hat.shape[0]
    return basis.eval_all(s - 1, c) @ r.gamma_hat


def integrate(problem, y0, t_end: float, cfg: SolverConfig) -> Trajectory:
    """Take ``round(t_end / h)`` uniform steps; partial steps are not supported."""
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    n = int(round(t_end / cfg.h))
    if not 1 <= n <= 10**7:
        raise ValueError(f"t_end/h = {t_end / cfg.h:.3g} outside [1, 1e7]")
    if abs(n * cfg.h - t_end) > 1e-9 * t_end:
        raise ValueError("t_end is not an integer multiple of h")

    tableau = cfg.tableau()
    plan = cfg.plan()
    y = np.asarray(y0, dtype=float).copy()
    states = np.empty((n + 1, y.size))
    states[0] = y
    steps = []
    for i in range(n):
        try:
            r = step(problem, y, cfg, tableau, plan)
        except SolverError as exc:
            exc.step_index = i
            raise
        if not cfg.dense_output:
            r.gamma_hat = None
        steps.append(r)
        y = r.y1
        states[i + 1] = y
    return Trajectory(times=cfg.h * np.arange(n + 1), states=states, steps=steps)
