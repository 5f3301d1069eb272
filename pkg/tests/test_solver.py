import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebspec.basis import eval_all, nodes
from chebspec.errors import FixedPointDiverged, NonFiniteState
from chebspec.problems import Problem, harmonic_oscillator, kepler, linear_test
from chebspec.solver import (SolverConfig, dense_derivative, dense_eval, integrate,
                             step)
from chebspec.tableau import build_tableau, stability_function

TWO_PI = 2 * np.pi


def tanh_problem(seed=3, m=5):
    r = np.random.default_rng(seed)
    M = 0.5 * r.standard_normal((m, m))
    v = r.standard_normal(m)
    return Problem("tanh", m, lambda y: np.tanh(np.asarray(y) @ M.T) + v, r.standard_normal(m))


def flip(y):
    return np.array([y[0], y[1], -y[2], -y[3]])


class TestConfig:
    def test_defaults(self):
        cfg = SolverConfig(s=4, h=0.1)
        assert (cfg.k, cfg.fp_tol, cfg.fp_max_iter, cfg.path) == (4, 1e-14, 100, "fast")

    @pytest.mark.parametrize("kw", [dict(s=0, h=0.1), dict(s=3, h=0.1, k=2),
                                    dict(s=3, h=0.0), dict(s=3, h=0.1, fp_tol=0),
                                    dict(s=3, h=0.1, path="gpu"),
                                    dict(s=3, h=0.1, k=5, path="fast")])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            SolverConfig(**kw)

    def test_generalized_on_dense_path(self):
        cfg = SolverConfig(s=3, h=0.1, k=6, path="dense")
        assert cfg.plan() is None and cfg.tableau().A.shape == (6, 6)


class TestStep:
    def test_zero_field(self):
        r = step(linear_test(0.0), np.array([2.5]), SolverConfig(s=5, h=0.3))
        assert r.y1.tolist() == [2.5] and np.all(r.gamma_hat == 0) and r.iterations == 1

    @pytest.mark.parametrize("path", ["fast", "dense"])
    def test_linear_matches_stability_function(self, path):
        cfg = SolverConfig(s=4, h=0.1, path=path)
        r = step(linear_test(-1.0), np.array([1.0]), cfg)
        R = stability_function(build_tableau(4), -0.1)
        assert abs(r.y1[0] - R.real) <= 1e-12

    def test_generalized_linear(self):
        cfg = SolverConfig(s=3, k=6, h=0.2, path="dense")
        t = cfg.tableau()
        r = step(linear_test(-2.0), np.array([1.0]), cfg)
        assert abs(r.y1[0] - stability_function(t, -0.4).real) <= 1e-12

    def test_kepler_local_order(self):
        # local error of an order-4 method shrinks like h^5
        k = kepler()
        errs = []
        for n in (400, 800):
            r = step(k, k.y0, SolverConfig(s=3, h=TWO_PI / n))
            errs.append(np.max(np.abs(r.y1 - k.reference(TWO_PI / n, k.y0))))
        assert 4.5 <= np.log2(errs[0] / errs[1]) <= 5.5

    @pytest.mark.parametrize("s", [1, 2, 5, 12])
    def test_endpoint_from_closed_form(self, s):
        k = kepler()
        r = step(k, k.y0, SolverConfig(s=s, h=0.05))
        g = r.gamma_hat
        acc = g[0].copy()
        for j in range(2, s, 2):
            acc += np.sqrt(2) / (1 - j * j) * g[j]
        assert np.max(np.abs(r.y1 - (r.y0 + r.h * acc))) <= 1e-14 * max(1, np.max(np.abs(r.y1)))

    @pytest.mark.parametrize("s", [3, 8, 20])
    def test_collocation_residual(self, s):
        k = kepler()
        cfg = SolverConfig(s=s, h=0.2)
        r = step(k, k.y0, cfg)
        c = nodes(s).c
        U = np.array([dense_eval(r, ci) for ci in c])
        dU = eval_all(s - 1, c).T @ r.gamma_hat
        F = k.rhs(U)
        assert np.max(np.abs(dU - F)) <= 10 * cfg.fp_tol * np.max(np.abs(F))

    def test_gamma_matches_forward_transform(self):
        from chebspec.transform import TransformPlan, dct_forward
        k = kepler()
        s = 9
        r = step(k, k.y0, SolverConfig(s=s, h=0.1))
        U = np.array([dense_eval(r, ci) for ci in nodes(s).c])
        expected = dct_forward(TransformPlan(s), k.rhs(U)) / np.sqrt(s)
        np.testing.assert_allclose(r.gamma_hat, expected, atol=1e-13)

    @pytest.mark.parametrize("s", [2, 8, 31])
    @pytest.mark.parametrize("make", [tanh_problem, kepler])
    def test_fast_equals_dense(self, s, make):
        p = make()
        h = 0.3 if p.name == "tanh" else 0.2
        a = step(p, p.y0, SolverConfig(s=s, h=h, path="fast"))
        b = step(p, p.y0, SolverConfig(s=s, h=h, path="dense"))
        assert np.max(np.abs(a.y1 - b.y1)) <= 1e-12

    @pytest.mark.parametrize("s", [1, 2, 4, 8, 15])
    def test_time_reversal_round_trip(self, s):
        k = kepler()
        cfg = SolverConfig(s=s, h=TWO_PI / 50)
        y1 = step(k, k.y0, cfg).y1
        back = flip(step(k, flip(y1), cfg).y1)
        assert np.max(np.abs(back - k.y0)) <= 10 * cfg.fp_tol

    def test_iterations_nonincreasing(self):
        k = kepler()
        its = [step(k, k.y0, SolverConfig(s=10, h=h)).iterations
               for h in (1.0, 0.5, 0.2, 0.1, 0.05, 0.01, 0.001)]
        assert all(a >= b for a, b in zip(its, its[1:]))

    def test_divergence(self):
        with pytest.raises(FixedPointDiverged):
            step(linear_test(-10.0), np.array([1.0]), SolverConfig(s=4, h=1.0))

    def test_iteration_cap(self):
        # contraction factor close to one: converges too slowly for the cap
        cfg = SolverConfig(s=1, h=1.99, fp_max_iter=5)
        with pytest.raises(FixedPointDiverged):
            step(linear_test(-1.0), np.array([1.0]), cfg)

    def test_non_finite(self):
        bad = Problem("bad", 1, lambda y: np.full_like(np.asarray(y, dtype=float), np.nan),
                      np.array([0.5]))
        with pytest.raises(NonFiniteState):
            step(bad, bad.y0, SolverConfig(s=2, h=0.1))
        with pytest.raises(NonFiniteState):
            step(linear_test(), np.array([np.nan]), SolverConfig(s=2, h=0.1))

    def test_tableau_mismatch(self):
        with pytest.raises(ValueError):
            step(linear_test(), np.array([1.0]), SolverConfig(s=3, h=0.1), build_tableau(4))


class TestDenseOutput:
    def test_endpoints(self):
        k = kepler()
        r = step(k, k.y0, SolverConfig(s=7, h=0.3))
        assert np.array_equal(dense_eval(r, 0.0), r.y0)
        assert np.max(np.abs(dense_eval(r, 1.0) - r.y1)) <= 1e-14 * max(1, np.max(np.abs(r.y1)))

    def test_domain(self):
        r = step(linear_test(), np.array([1.0]), SolverConfig(s=2, h=0.1))
        with pytest.raises(ValueError):
            dense_eval(r, 1.2)

    def test_derivative_is_field_at_nodes(self):
        k = kepler()
        s = 6
        r = step(k, k.y0, SolverConfig(s=s, h=0.1))
        for ci in nodes(s).c:
            np.testing.assert_allclose(dense_derivative(r, ci), k.rhs(dense_eval(r, ci)),
                                       atol=1e-12)

    def test_energy_along_dense_output(self):
        k = kepler()
        r = step(k, k.y0, SolverConfig(s=30, h=TWO_PI / 10))
        H0 = k.hamiltonian(k.y0)
        dev = max(abs(k.hamiltonian(dense_eval(r, c)) - H0) for c in np.linspace(0, 1, 101))
        assert dev <= 1e-10

    @pytest.mark.parametrize("s", [2, 3])
    def test_interior_order(self, s):
        k = kepler()
        t0 = 0.3
        y0 = k.reference(t0, k.y0)
        grid = np.linspace(0, 1, 41)
        errs = []
        for n in (400, 800):
            h = TWO_PI / n
            r = step(k, y0, SolverConfig(s=s, h=h))
            errs.append(max(np.max(np.abs(dense_eval(r, c) - k.reference(t0 + c * h, k.y0)))
                            for c in grid))
        assert abs(np.log2(errs[0] / errs[1]) - (s + 1)) <= 0.3


class TestIntegrate:
    def test_zero_field(self):
        tr = integrate(linear_test(0.0), [1.5], 1.0, SolverConfig(s=3, h=0.1))
        assert tr.states.shape == (11, 1) and np.all(tr.states == 1.5)
        assert np.all(np.diff(tr.times) > 0) and len(tr.steps) == 10

    def test_table2_first_period(self):
        k = kepler()
        tr = integrate(k, k.y0, TWO_PI, SolverConfig(s=50, h=TWO_PI / 6))
        assert np.max(np.abs(tr.states[-1] - k.y0)) <= 1e-11

    def test_midpoint_one_period(self):
        k = kepler()
        tr = integrate(k, k.y0, TWO_PI, SolverConfig(s=1, h=TWO_PI / 1600, dense_output=False))
        err = np.max(np.abs(tr.states[-1] - k.y0))
        assert 8.38e-3 / 2 <= err <= 8.38e-3 * 2
        assert all(r.gamma_hat is None for r in tr.steps)

    @pytest.mark.parametrize("s, rate", [(1, 2), (2, 2), (3, 4), (4, 4)])
    def test_endpoint_order_harmonic(self, s, rate):
        p = harmonic_oscillator(1.0)
        errs = []
        for n in (40, 80):
            tr = integrate(p, p.y0, TWO_PI, SolverConfig(s=s, h=TWO_PI / n))
            errs.append(np.max(np.abs(tr.states[-1] - p.y0)))
        assert abs(np.log2(errs[0] / errs[1]) - rate) <= 0.2

    def test_step_index_attached(self):
        p = Problem("blowup", 1, lambda y: np.where(np.asarray(y) > 1.2, np.inf, 1.0),
                    np.array([1.0]))
        with pytest.raises(NonFiniteState) as info:
            integrate(p, p.y0, 1.0, SolverConfig(s=2, h=0.1))
        # stages first pass 1.2 while stepping from y = 1.2
        assert info.value.step_index == 2
        assert "(step 2)" in str(info.value)

    @pytest.mark.parametrize("t_end, h", [(1.05, 0.1), (0.0, 0.1), (1e8, 1.0)])
    def test_rejects_bad_span(self, t_end, h):
        with pytest.raises(ValueError):
            integrate(linear_test(), [1.0], t_end, SolverConfig(s=2, h=h))


@settings(max_examples=25, deadline=None)
@given(lam=st.floats(-5, 5), h=st.floats(0.01, 0.1), s=st.integers(1, 12))
def test_linear_bridge_property(lam, h, s):
    r = step(linear_test(lam), np.array([1.0]), SolverConfig(s=s, h=h))
    R = stability_function(build_tableau(s), h * lam).real
    assert abs(r.y1[0] - R) <= 1e-12 * max(1.0, abs(R))
