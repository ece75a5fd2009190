"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 solver
error.  Every command prints one line per check; ``--report`` also writes
the run as JSON.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import asymptotics, bounds, bvp, convexity, flow
from .errors import DomainError, SolitonError
from .profile import ProfileGrid, SolverConfig, integrate_profile, integrate_regularized

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst_margin: float


@dataclass
class RunReport:
    command: str
    parameters: dict
    checks: list[CheckResult] = field(default_factory=list)
    artifacts: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, margin: float) -> None:
        self.checks.append(CheckResult(name, bool(passed), float(margin) + 0.0))

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}: worst margin {c.worst_margin:.6e}"
            for c in self.checks
        ]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def write_csv(grid: ProfileGrid, fh) -> None:
    np.savetxt(fh, grid.nodes, fmt="%.17g", delimiter=",", header="t,r,rp,rpp", comments="")


def grid_json(grid: ProfileGrid) -> dict:
    cfg = grid.config.as_dict() if grid.config is not None else {}
    return {"n": grid.n, "config": cfg, "nodes": grid.nodes.tolist()}


def read_csv(path: str, n: int) -> ProfileGrid:
    """Load a grid written by ``profile``; malformed input is a usage error."""
    try:
        with open(path) as fh:
            header = fh.readline().strip()
            if header != "t,r,rp,rpp":
                raise ValueError(f"unexpected CSV header {header!r}")
            nodes = np.loadtxt(fh, delimiter=",", ndmin=2)
        return ProfileGrid.from_nodes(n, nodes)
    except (OSError, ValueError) as exc:
        raise DomainError(f"cannot read grid {path!r}: {exc}") from exc


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {v}")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _emit(report: RunReport, args, out) -> int:
    for line in report.lines():
        print(line, file=out)
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            fh.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_profile(args, out) -> int:
    cfg = SolverConfig(args.T, args.h, args.eps)
    grid = integrate_regularized(args.n, cfg) if args.eps > 0 else integrate_profile(args.n, cfg)
    buf = io.StringIO()
    if args.format == "csv":
        write_csv(grid, buf)
    else:
        json.dump(grid_json(grid), buf)
        buf.write("\n")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.grid:
        grid = read_csv(args.grid, args.n)
        params = {"n": args.n, "grid": args.grid}
    else:
        grid = integrate_profile(args.n, SolverConfig(args.T, args.h))
        params = {"n": args.n, "T": args.T, "h": args.h}
    report = RunReport("verify", params)
    for c in bounds.check_bounds(grid).checks:
        report.add(c.name, c.passed, c.worst_margin)
    conv = convexity.check_strict_convexity(grid)
    report.add("hessian_positive", conv.passed, conv.min_eig)
    if not args.grid:
        deficit, ok = asymptotics.gradient_image_check(grid)
        report.add("gradient_limit", ok, asymptotics.gradient_deficit_bound(grid.n, grid.horizon) - deficit)
        order = bounds.residual_order(args.n, min(5.0, args.T), args.order_step)
        # RK4: halving the step should divide the residual by about 16
        report.add("residual_order", 12.0 <= order["ratio"] <= 20.0, order["order"] - 4.0)
    return _emit(report, args, out)


def cmd_bvp_check(args, out) -> int:
    report = RunReport("bvp-check", {"n": args.n, "R": args.R, "m": args.m})
    uq = bvp.uniqueness_check(args.n, args.R, args.m)
    report.add("two_guess_agreement", uq.discrepancy <= 1e-8, 1e-8 - uq.discrepancy)
    report.add("bvp_vs_ode", uq.error_vs_ode <= args.tol, args.tol - uq.error_vs_ode)
    report.add("newton_iterations", max(uq.iters) <= 20, 20 - max(uq.iters))
    shift = bvp.translation_check(args.n, args.R, uq.boundary_value, 1.0, args.m)
    report.add("translation", shift <= 1e-9, 1e-9 - shift)
    return _emit(report, args, out)


def cmd_flow(args, out) -> int:
    params = {"n": args.n, "R": args.R, "m": args.m, "tau": args.tau, "method": args.method}
    report = RunReport("flow", params)
    res = flow.soliton_invariance_test(
        args.n, args.R, args.m, args.tau, method=args.method, dt=args.dt,
    )
    report.add("soliton_invariance", res.sup_error <= args.tol, args.tol - res.sup_error)
    report.add("spacelike", res.max_slope < 1.0, 1.0 - res.max_slope)
    return _emit(report, args, out)


def cmd_blowdown(args, out) -> int:
    rho = sorted(args.rho)
    T = max(rho)
    h = args.h if args.h is not None else max(1e-3, T / 2e4)
    grid = integrate_profile(args.n, SolverConfig(T, h))
    report = RunReport("blowdown", {"n": args.n, "rho": rho, "h": h})
    rate = asymptotics.check_blowdown_rate(grid, rho)
    for r, dev, b in zip(rate.rho_samples, rate.deviations, rate.bounds):
        report.add(f"deviation_rho={r:g}", dev <= b, b - dev)
    steps = np.diff(rate.deviations)
    report.add("monotone_in_rho", rate.monotone, -float(steps.max()) if steps.size else 0.0)
    # points of norm <= 1/2 pushed out by 1/2 stay inside the horizon
    pairs = asymptotics.sample_pairs(args.n, args.pairs, 0.5, seed=args.seed)
    for r in rho:
        lip, null = asymptotics.check_lipschitz_and_null(grid, r, 0.5, pairs)
        report.add(f"lipschitz_rho={r:g}", lip >= -asymptotics.LIPSCHITZ_TOL, lip)
        report.add(f"null_rho={r:g}", null <= 2 * args.n / r, 2 * args.n / r - null)
    return _emit(report, args, out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="soliton-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("profile", help="integrate the profile and write the grid")
    sp.add_argument("--n", type=_positive_int, default=2)
    sp.add_argument("--T", type=_positive_float, default=20.0)
    sp.add_argument("--h", type=_positive_float, default=1e-3)
    sp.add_argument("--eps", type=_nonneg_float, default=0.0)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("verify", help="run the bounds suite")
    sp.add_argument("--n", type=_positive_int, default=2)
    sp.add_argument("--T", type=_positive_float, default=20.0)
    sp.add_argument("--h", type=_positive_float, default=1e-3)
    sp.add_argument("--order-step", type=_positive_float, default=0.04)
    sp.add_argument("--grid", help="verify a CSV grid instead of integrating")
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bvp-check", help="Dirichlet cross-check of uniqueness")
    sp.add_argument("--n", type=_positive_int, default=2)
    sp.add_argument("--R", type=_positive_float, default=5.0)
    sp.add_argument("--m", type=_positive_int, default=2001)
    sp.add_argument("--tol", type=_positive_float, default=1e-5)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_bvp_check)

    sp = sub.add_parser("flow", help="soliton invariance under the flow")
    sp.add_argument("--n", type=_positive_int, default=2)
    sp.add_argument("--R", type=_positive_float, default=10.0)
    sp.add_argument("--m", type=_positive_int, default=1001)
    sp.add_argument("--tau", type=_nonneg_float, default=1.0)
    sp.add_argument("--method", choices=("implicit", "explicit"), default="implicit")
    sp.add_argument("--dt", type=_positive_float)
    sp.add_argument("--tol", type=_positive_float, default=1e-3)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_flow)

    sp = sub.add_parser("blowdown", help="blowdown rate and Lipschitz checks")
    sp.add_argument("--n", type=_positive_int, default=2)
    sp.add_argument("--rho", type=_positive_float, nargs="*", default=[10.0, 100.0, 1000.0])
    sp.add_argument("--h", type=_positive_float)
    sp.add_argument("--pairs", type=_positive_int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_blowdown)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "bvp-check" and args.m < 16:
        print("error: --m must be at least 16", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "blowdown" and not args.rho:
        print("error: --rho needs at least one value", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolitonError, OSError, ValueError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
