"""Experiment drivers producing tabular reports.

Each study returns a :class:`RunReport` whose metadata is enough to re-run
it with :func:`rerun`; apart from the recorded wall time, a re-run
reproduces every numeric cell bit for bit.
"""

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import SolverError
from .problems import get_problem
from .solver import SolverConfig, integrate, step
from .tableau import build_tableau, min_eig_realpart, stability_function

KINDS = ("convergence", "long_run", "decay", "drift", "stability", "tableau", "trajectory")


@dataclass
class RunReport:
    kind: str
    columns: list
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row length does not match the declared columns")

    def column(self, name) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([row[j] for row in self.rows], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# kind: {self.kind}\n")
        for key, val in self.metadata.items():
            buf.write(f"# {key}: {json.dumps(val)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self, **kw) -> str:
        doc = {"kind": self.kind, "columns": self.columns,
               "rows": [[_jsonable(v) for v in row] for row in self.rows],
               "metadata": self.metadata}
        return json.dumps(doc, **kw)

    @classmethod
    def from_csv(cls, text: str) -> "RunReport":
        meta = {}
        kind = None
        body = []
        for line in text.splitlines():
            if line.startswith("# "):
                key, _, val = line[2:].partition(": ")
                if key == "kind":
                    kind = val
                else:
                    meta[key] = json.loads(val)
            elif line:
                body.append(line)
        reader = csv.reader(body)
        columns = next(reader)
        rows = [[_parse(v) for v in row] for row in reader]
        return cls(kind, columns, rows, meta)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        doc = json.loads(text)
        rows = [[math.nan if v is None else v for v in row] for row in doc["rows"]]
        return cls(doc["kind"], doc["columns"], rows, doc["metadata"])


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _parse(v):
    try:
        return int(v)
    except ValueError:
        return float(v)


def _jsonable(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return None if math.isnan(v) else v
    if isinstance(v, np.integer):
        return int(v)
    return v


def _threads():
    try:
        return max(1, int(os.environ.get("CHEBSPEC_THREADS", "1")))
    except ValueError:
        return 1


def _problem_meta(problem):
    return {"problem": problem.name, "problem_params": problem.params}


def _max_err(y, ref):
    return float(np.max(np.abs(np.asarray(y) - np.asarray(ref))))


# -- studies ------------------------------------------------------------------

def convergence_study(problem, s_list, n_list, t_end=None, path="fast",
                      fp_tol=1e-14) -> RunReport:
    """Endpoint error after ``t_end`` (default: one period) with ``h = t_end / n``.

    One row per ``n`` with an ``err_s{s}`` / ``rate_s{s}`` column pair per
    method; the rate is ``log(err_prev / err) / log(n / n_prev)``. Cells
    whose integration fails are NaN.
    """
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be increasing")
    T = problem.period if t_end is None else float(t_end)
    if T is None:
        raise ValueError("problem has no period; pass t_end")
    ref = problem.reference(T, problem.y0) if problem.reference else problem.y0
    t0 = time.perf_counter()

    def cell(sn):
        s, n = sn
        cfg = SolverConfig(s=s, h=T / n, fp_tol=fp_tol, path=path, dense_output=False)
        try:
            tr = integrate(problem, problem.y0, T, cfg)
        except SolverError:
            return math.nan
        return _max_err(tr.states[-1], ref)

    cells = [(s, n) for s in s_list for n in n_list]
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        errs = dict(zip(cells, ex.map(cell, cells)))

    columns = ["n"]
    for s in s_list:
        columns += [f"err_s{s}", f"rate_s{s}"]
    rows = []
    for i, n in enumerate(n_list):
        row = [n]
        for s in s_list:
            e = errs[(s, n)]
            if i == 0:
                rate = math.nan
            else:
                ep = errs[(s, n_list[i - 1])]
                with np.errstate(divide="ignore", invalid="ignore"):
                    rate = float(np.log(np.float64(ep) / e) / np.log(n / n_list[i - 1]))
                if not np.isfinite(rate):
                    rate = math.nan
            row += [e, rate]
        rows.append(row)
    meta = {**_problem_meta(problem), "s_list": list(s_list), "n_list": n_list,
            "t_end": T, "path": path, "fp_tol": fp_tol,
            "wall_time": time.perf_counter() - t0}
    return RunReport("convergence", columns, rows, meta)


def long_run_study(problem, s, n, periods, path="fast", fp_tol=1e-14) -> RunReport:
    """Max-norm error against the initial state at the end of each period."""
    if problem.period is None:
        raise ValueError("long-run study needs a periodic problem")
    t0 = time.perf_counter()
    rows = []
    if periods > 0:
        T = problem.period
        cfg = SolverConfig(s=s, h=T / n, fp_tol=fp_tol, path=path, dense_output=False)
        tr = integrate(problem, problem.y0, periods * T, cfg)
        for p in range(1, periods + 1):
            rows.append([p, _max_err(tr.states[p * n], problem.y0)])
    meta = {**_problem_meta(problem), "s": s, "n": n, "periods": periods,
            "path": path, "fp_tol": fp_tol, "wall_time": time.perf_counter() - t0}
    return RunReport("long_run", ["period", "err"], rows, meta)


def fit_decay_base(gamma_norms, floor_factor=100.0):
    """Geometric decay base of a coefficient sequence.

    Fits ``log|gamma_j| = a - j log(rho)`` by least squares over the leading
    run of entries above ``floor_factor * eps * |gamma_0|``. Returns
    ``(rho, n_used)``; ``rho`` is NaN when fewer than 4 entries qualify.
    """
    g = np.asarray(gamma_norms, dtype=float)
    floor = floor_factor * np.finfo(float).eps * g[0]
    above = g > floor
    n_used = int(np.argmin(above)) if not above.all() else g.size
    if n_used < 4 or g[0] == 0.0:
        return math.nan, n_used
    j = np.arange(n_used)
    slope, _ = np.polyfit(j, np.log(g[:n_used]), 1)
    return float(np.exp(-slope)), n_used


def spectral_decay(problem, s, h_list, path="fast", fp_tol=1e-14) -> RunReport:
    """|gamma_hat_j| (max norm) of the first step for each timestep.

    One row per ``h``: the fitted decay base ``rho_hat``, the number of
    coefficients used in the fit (``fit_ok`` is 0 when it was skipped), and
    the coefficient norms ``g0..g{s-1}``.
    """
    if s < 2:
        raise ValueError("decay study needs s >= 2")
    t0 = time.perf_counter()
    rows = []
    for h in h_list:
        r = step(problem, problem.y0, SolverConfig(s=s, h=float(h), fp_tol=fp_tol, path=path))
        g = np.max(np.abs(r.gamma_hat), axis=1)
        rho, n_used = fit_decay_base(g)
        rows.append([float(h), rho, n_used, int(np.isfinite(rho))] + g.tolist())
    columns = ["h", "rho_hat", "n_fit", "fit_ok"] + [f"g{j}" for j in range(s)]
    meta = {**_problem_meta(problem), "s": s, "h_list": [float(h) for h in h_list],
            "path": path, "fp_tol": fp_tol, "wall_time": time.perf_counter() - t0}
    return RunReport("decay", columns, rows, meta)


def hamiltonian_drift(problem, s, h, t_end, path="fast", fp_tol=1e-14) -> RunReport:
    """``|H(y_n) - H(y_0)|`` after every step."""
    if problem.hamiltonian is None:
        raise ValueError(f"problem {problem.name!r} has no Hamiltonian")
    t0 = time.perf_counter()
    cfg = SolverConfig(s=s, h=h, fp_tol=fp_tol, path=path, dense_output=False)
    tr = integrate(problem, problem.y0, t_end, cfg)
    H = problem.hamiltonian(tr.states)
    drift = np.abs(H - H[0])
    rows = [[float(t), float(d)] for t, d in zip(tr.times[1:], drift[1:])]
    meta = {**_problem_meta(problem), "s": s, "h": h, "t_end": t_end,
            "path": path, "fp_tol": fp_tol, "wall_time": time.perf_counter() - t0}
    return RunReport("drift", ["t", "drift"], rows, meta)


def left_half_plane_grid(n_radii=12, n_angles=12, r_min=1e-2, r_max=1e2):
    """Deterministic polar sample of the open left half plane."""
    radii = np.logspace(np.log10(r_min), np.log10(r_max), n_radii)
    angles = np.pi / 2 + np.pi * (np.arange(n_angles) + 0.5) / n_angles
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def stability_scan(s_list, y_grid=None, z_grid=None) -> RunReport:
    """Per method: min Re eig(X_s), max ||R(iy)| - 1|, max |R(z)| for Re z < 0."""
    y_grid = np.logspace(-2, 3, 50) if y_grid is None else np.asarray(y_grid, dtype=float)
    z_grid = left_half_plane_grid() if z_grid is None else np.asarray(z_grid, dtype=complex)
    t0 = time.perf_counter()
    rows = []
    for s in s_list:
        t = build_tableau(s)
        imag_defect = max(abs(abs(stability_function(t, 1j * y)) - 1.0) for y in y_grid)
        left_max = max(abs(stability_function(t, z)) for z in z_grid)
        rows.append([int(s), min_eig_realpart(s), float(imag_defect), float(left_max)])
    meta = {"s_list": [int(s) for s in s_list], "y_grid": y_grid.tolist(),
            "z_grid": [[z.real, z.imag] for z in z_grid],
            "wall_time": time.perf_counter() - t0}
    return RunReport("stability", ["s", "min_re_eig", "imag_axis_defect", "max_abs_R_left"],
                     rows, meta)


def tableau_report(s, k=None) -> RunReport:
    t = build_tableau(s, k)
    columns = ["i", "c", "b"] + [f"A{j + 1}" for j in range(t.k)]
    rows = [[i + 1, float(t.c[i]), float(t.b[i])] + t.A[i].tolist() for i in range(t.k)]
    return RunReport("tableau", columns, rows, {"s": t.s, "k": t.k})


def rerun(report: RunReport) -> RunReport:
    """Repeat the experiment described by a report's metadata."""
    m = report.metadata
    if report.kind == "tableau":
        return tableau_report(m["s"], m["k"])
    if report.kind == "stability":
        z = np.array([complex(a, b) for a, b in m["z_grid"]])
        return stability_scan(m["s_list"], m["y_grid"], z)
    problem = get_problem(m["problem"], **_params(m["problem_params"]))
    opts = {"path": m["path"], "fp_tol": m["fp_tol"]}
    if report.kind == "convergence":
        return convergence_study(problem, m["s_list"], m["n_list"], m["t_end"], **opts)
    if report.kind == "long_run":
        return long_run_study(problem, m["s"], m["n"], m["periods"], **opts)
    if report.kind == "decay":
        return spectral_decay(problem, m["s"], m["h_list"], **opts)
    if report.kind == "drift":
        return hamiltonian_drift(problem, m["s"], m["h"], m["t_end"], **opts)
    raise ValueError(f"cannot re-run a {report.kind!r} report")


def _params(p):
    p = dict(p)
    if "lam" in p and isinstance(p["lam"], list):
        p["lam"] = complex(*p["lam"])
    return p
