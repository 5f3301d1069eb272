"""Command-line driver: ``chebspec <command> [options]``.

Exit status is 0 on success, 2 when the stage iteration diverges and 1 for
usage errors.
"""

import argparse
import sys

import numpy as np

from . import diagnostics as dg
from .errors import SolverError
from .problems import PROBLEMS, get_problem
from .solver import SolverConfig, integrate
from .tableau import build_tableau


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _number_list(cast):
    def parse(text):
        return [cast(tok) for tok in text.replace(",", " ").split()]
    return parse


def _flatten(groups):
    return [x for g in groups for x in g]


def _add_problem(p, default=None):
    p.add_argument("--problem", choices=sorted(PROBLEMS), default=default,
                   required=default is None)
    p.add_argument("--lam", type=complex, help="rate of the linear test problem")
    p.add_argument("--omega", type=float, help="frequency of the harmonic oscillator")


def _add_solver(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--fast", dest="path", action="store_const", const="fast")
    g.add_argument("--dense", dest="path", action="store_const", const="dense")
    p.set_defaults(path="fast")
    p.add_argument("--fp-tol", type=float, default=1e-14)


def _add_output(p, default="csv"):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json")
    g.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    p.set_defaults(fmt=default)
    p.add_argument("--out", help="write to FILE instead of stdout")


def build_parser():
    parser = _Parser(prog="chebspec", description="Chebyshev collocation integrator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tableau", help="print the Butcher tableau")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int)
    _add_output(p, default="json")

    p = sub.add_parser("solve", help="integrate a registered problem")
    _add_problem(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--t-end", type=float, required=True)
    _add_solver(p)
    _add_output(p)

    p = sub.add_parser("convergence", help="endpoint error and rate over n")
    _add_problem(p)
    p.add_argument("--s-list", type=_number_list(int), nargs="+", required=True)
    p.add_argument("--n-list", type=_number_list(int), nargs="+", required=True)
    p.add_argument("--t-end", type=float)
    _add_solver(p)
    _add_output(p)

    p = sub.add_parser("longrun", help="period-end errors over many periods")
    _add_problem(p, default="kepler")
    p.add_argument("--s", type=int, default=50)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--periods", type=int, default=10)
    _add_solver(p)
    _add_output(p)

    p = sub.add_parser("decay", help="Fourier coefficient decay of the first step")
    _add_problem(p, default="kepler")
    p.add_argument("--s", type=int, default=30)
    p.add_argument("--h-list", type=_number_list(float), nargs="+", required=True)
    _add_solver(p)
    _add_output(p)

    p = sub.add_parser("drift", help="Hamiltonian error along a run")
    _add_problem(p, default="kepler")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--t-end", type=float, required=True)
    _add_solver(p)
    _add_output(p)

    p = sub.add_parser("stability", help="eigenvalue and stability-function scan")
    p.add_argument("--s-max", type=int, required=True)
    _add_output(p)
    return parser


def _problem(args):
    params = {}
    if args.problem == "linear" and args.lam is not None:
        params["lam"] = args.lam
    if args.problem == "harmonic" and args.omega is not None:
        params["omega"] = args.omega
    return get_problem(args.problem, **params)


def _solve_report(args):
    problem = _problem(args)
    cfg = SolverConfig(s=args.s, h=args.h, fp_tol=args.fp_tol, path=args.path,
                       dense_output=False)
    tr = integrate(problem, problem.y0, args.t_end, cfg)
    columns = ["t"] + [f"y{i}" for i in range(problem.m)] + ["iterations"]
    its = [0] + [r.iterations for r in tr.steps]
    rows = [[float(t)] + y.tolist() + [it] for t, y, it in zip(tr.times, tr.states, its)]
    meta = {"problem": problem.name, "problem_params": problem.params, "s": args.s,
            "h": args.h, "t_end": args.t_end, "path": args.path, "fp_tol": args.fp_tol}
    return dg.RunReport("trajectory", columns, rows, meta)


def _run(args):
    cmd = args.command
    if cmd == "tableau":
        if args.fmt == "json":
            return build_tableau(args.s, args.k).to_json(indent=1) + "\n"
        return dg.tableau_report(args.s, args.k)
    if cmd == "solve":
        return _solve_report(args)
    if cmd == "convergence":
        return dg.convergence_study(_problem(args), _flatten(args.s_list),
                                    _flatten(args.n_list), args.t_end,
                                    path=args.path, fp_tol=args.fp_tol)
    if cmd == "longrun":
        return dg.long_run_study(_problem(args), args.s, args.n, args.periods,
                                 path=args.path, fp_tol=args.fp_tol)
    if cmd == "decay":
        return dg.spectral_decay(_problem(args), args.s, _flatten(args.h_list),
                                 path=args.path, fp_tol=args.fp_tol)
    if cmd == "drift":
        return dg.hamiltonian_drift(_problem(args), args.s, args.h, args.t_end,
                                    path=args.path, fp_tol=args.fp_tol)
    if cmd == "stability":
        return dg.stability_scan(range(1, args.s_max + 1))
    raise AssertionError(cmd)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        out = _run(args)
    except SolverError as exc:
        print(f"chebspec: solver failed: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"chebspec: error: {exc}", file=sys.stderr)
        return 1
    if isinstance(out, dg.RunReport):
        out = out.to_json(indent=1) + "\n" if args.fmt == "json" else out.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
