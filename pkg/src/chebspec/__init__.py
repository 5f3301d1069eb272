"""Chebyshev collocation Runge-Kutta methods for ODE initial-value problems."""

from .basis import eval_P, integral_P, integral_P_at_one, nodes
from .errors import (ChebspecError, FixedPointDiverged, NonFiniteState,
                     SolverError, TableauError)
from .problems import Problem, get_problem, harmonic_oscillator, kepler, linear_test
from .solver import SolverConfig, StepResult, Trajectory, dense_eval, integrate, step
from .tableau import (ButcherTableau, SpectralFactor, build_spectral_factor,
                      build_tableau, min_eig_realpart, stability_function,
                      symmetry_certificate)
from .transform import TransformPlan, apply_butcher_fast, dct_forward, dct_inverse

__version__ = "0.1.0"
