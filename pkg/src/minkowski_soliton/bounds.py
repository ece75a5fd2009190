"""Inequality checks on computed profile grids.

Each check records the worst margin over the grid, signed so that a
negative margin means violation.  Non-strict inequalities pass when the
margin is at least ``-tol``; strict ones need a positive margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .profile import ProfileGrid, SolverConfig, integrate_profile

__all__ = [
    "Check",
    "BoundsReport",
    "check_bounds",
    "ode_residual",
    "residual_order",
]

MARGIN_TOL = 1e-10


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    worst_margin: float
    where: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        loc = "" if self.where is None else f" at t={self.where:.6g}"
        return f"{status} {self.name}: worst margin {self.worst_margin:.6e}{loc}"


@dataclass
class BoundsReport:
    n: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def _worst(t, margin, strict=False, tol=MARGIN_TOL):
    i = int(np.argmin(margin))
    m = float(margin[i])
    ok = m > 0.0 if strict else m >= -tol
    return ok, m, float(t[i])


def _add(report, name, t, margin, strict=False, tol=MARGIN_TOL):
    ok, m, where = _worst(t, margin, strict, tol)
    report.checks.append(Check(name, bool(ok), m + 0.0, where))


def check_bounds(grid: ProfileGrid, tol: float = MARGIN_TOL) -> BoundsReport:
    """Run every inequality that a computed profile must satisfy.

    For ``epsilon = 0`` grids: initial values, the gradient bound
    ``t/sqrt(n^2 + t^2) <= r' < 1``, the curvature bound ``0 < r'' <= 1``,
    the sandwich ``sqrt(n^2 + t^2) - n <= r <= t`` and discrete
    monotonicity/convexity.  For ``epsilon > 0`` grids the lower slope
    bound is ``epsilon/n`` and ``r''`` is capped by
    ``1 - (n-1) epsilon / (n (t + epsilon))``.
    """
    n, t = grid.n, grid.t
    eps = grid.epsilon
    rep = BoundsReport(n)
    _add(rep, "origin_value", t[:1], -np.abs(grid.r[:1]), tol=tol)
    if eps == 0.0:
        _add(rep, "origin_slope", t[:1], -np.abs(grid.rp[:1]), tol=tol)
        _add(rep, "gradient_lower", t, grid.rp - t / np.sqrt(n * n + t * t), tol=tol)
    else:
        _add(rep, "slope_floor", t, grid.rp - eps / n, tol=tol)
        cap = 1.0 - (n - 1) * eps / (n * (t + eps))
        _add(rep, "curvature_cap", t, cap - grid.rpp, tol=tol)
    # 1 - r' from the rapidity where known; plain 1 - r' for loaded grids
    deficit = np.where(np.isfinite(grid.rapidity), grid.slope_deficit, 1.0 - grid.rp)
    _add(rep, "gradient_upper", t, deficit, tol=tol)
    _add(rep, "curvature_positive", t, grid.rpp, strict=True)
    _add(rep, "curvature_upper", t, 1.0 - grid.rpp, tol=tol)
    if eps == 0.0:
        _add(rep, "sandwich_lower", t, grid.r - (np.sqrt(n * n + t * t) - n), tol=tol)
    else:
        _add(rep, "sandwich_lower", t, grid.r - t * eps / n, tol=tol)
    _add(rep, "sandwich_upper", t, t - grid.r, tol=tol)
    _add(rep, "monotone", t[1:], np.diff(grid.r), tol=tol)
    if len(grid) >= 3:
        slopes = np.diff(grid.r) / np.diff(t)
        _add(rep, "discrete_convex", t[1:-1], np.diff(slopes), tol=tol)
    return rep


def ode_residual(grid: ProfileGrid) -> tuple[np.ndarray, np.ndarray]:
    """Residual of the profile equation with ``r''`` from differencing ``r'``.

    Uses the five-point central difference on a uniform grid, so the
    residual is fourth order in the step at interior nodes ``i >= 2``.
    Returns ``(t, residual)`` over those nodes.
    """
    t = grid.t
    h = t[1] - t[0]
    if not np.allclose(np.diff(t), h, rtol=1e-9, atol=0.0):
        raise ValueError("ode_residual needs a uniform grid")
    s = grid.rp
    d2 = (-s[4:] + 8.0 * s[3:-1] - 8.0 * s[1:-3] + s[:-4]) / (12.0 * h)
    ti = t[2:-2]
    si = s[2:-2]
    res = d2 / (1.0 - si * si) + (grid.n - 1) * si / (ti + grid.epsilon) - 1.0
    return ti, res


def residual_order(n: int, horizon: float = 5.0, step: float = 0.04) -> dict:
    """One-step order check: max residual at ``step`` and ``step/2``.

    Both runs share the launch radius ``10 * step`` and the residual is
    taken only on nodes produced by the stepper, so the ratio isolates
    the stepper's order (about 16 for RK4).  The horizon is kept moderate
    so that ``1 - r'^2`` stays well above rounding in the denominator.
    """
    launch = 10.0 * step
    out = {}
    for h in (step, step / 2):
        g = integrate_profile(n, SolverConfig(horizon, h, launch_radius=launch))
        t, res = ode_residual(g)
        out[h] = float(np.max(np.abs(res[t >= launch + 2.0 * step - 1e-12])))
    coarse, fine = out[step], out[step / 2]
    ratio = coarse / fine if fine > 0 else math.inf
    return {
        "residual_coarse": coarse,
        "residual_fine": fine,
        "ratio": ratio,
        "order": math.log2(ratio) if fine > 0 else math.inf,
    }
