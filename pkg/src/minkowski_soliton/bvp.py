"""Dirichlet problem for the profile on ``[0, R]`` by finite differences.

The profile equation is discretised with central differences on the
uniform nodes ``t_j = j R / m``; symmetry at the origin is imposed with an
even ghost node ``r_{-1} = r_1`` and the limit form ``n r''(0) = 1`` of the
equation there.  Newton's method with backtracking solves the resulting
tridiagonal system.  This is an independent route to the profile: it never
touches the initial value problem.

The unknowns are stored relative to the boundary value, ``w = r - beta``.
The discrete equations involve only differences of ``r``, so solving for
``beta`` and ``beta + c`` from translated guesses produces identical
iterates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import DomainError, NoConvergence, SpacelikeViolation
from .profile import ProfileGrid, SolverConfig, check_dimension, integrate_profile

__all__ = [
    "BvpSolution",
    "UniquenessReport",
    "solve_bvp",
    "uniqueness_check",
    "translation_check",
    "observed_order",
    "RESIDUAL_TOL",
]

RESIDUAL_TOL = 1e-10
DAMPING_FLOOR = 2.0**-20


@dataclass(frozen=True, eq=False)
class BvpSolution:
    """Finite-difference solution with Newton diagnostics.

    ``final_residual`` is the max norm of the discrete equations in the
    multiplied-through form ``r_{j+1} - 2 r_j + r_{j-1} - dt^2 f(t_j, s_j)``;
    dividing by ``dt^2`` gives the residual of ``r'' = f``.
    """

    n: int
    radius: float
    boundary_value: float
    t: np.ndarray
    r: np.ndarray
    newton_iters: int
    final_residual: float

    @property
    def m(self) -> int:
        return self.t.size - 1

    @property
    def spacing(self) -> float:
        return self.radius / self.m

    @property
    def slopes(self) -> np.ndarray:
        return np.diff(self.r) / self.spacing


def _residual(w, n, dt, t):
    # w has m + 1 entries with w[-1] == 0
    s = (w[2:] - w[:-2]) / (2.0 * dt)
    ti = t[1:-1]
    f = (1.0 - s * s) * (1.0 - (n - 1) * s / ti)
    out = np.empty(w.size - 1)
    out[0] = 2.0 * (w[1] - w[0]) - dt * dt / n
    out[1:] = w[2:] - 2.0 * w[1:-1] + w[:-2] - dt * dt * f
    return out, s


def _jacobian(s, n, dt, t):
    m = s.size + 1
    ti = t[1:-1]
    fs = -2.0 * s * (1.0 - (n - 1) * s / ti) - (1.0 - s * s) * (n - 1) / ti
    ab = np.zeros((3, m))
    ab[1, :] = -2.0
    ab[0, 1] = 2.0
    ab[0, 2:] = 1.0 - 0.5 * dt * fs[:-1]
    ab[2, :-1] = 1.0 + 0.5 * dt * fs
    return ab


def _spacelike(w, dt) -> bool:
    return bool(np.max(np.abs(np.diff(w))) < dt)


def _initial_offsets(guess, n, t, m):
    if guess is None:
        # leading term t^2/(2n) near 0, slope below 1 everywhere
        g = np.sqrt(n * n + t * t) - n
    elif isinstance(guess, ProfileGrid):
        g = np.asarray(guess.value(t), dtype=float)
    else:
        g = np.asarray(guess, dtype=float)
        if g.shape != (m + 1,):
            raise ValueError(f"guess must have {m + 1} nodal values")
    return g - g[-1]


def solve_bvp(n: int, R: float, beta: float, m: int = 2001, guess=None,
              max_iter: int = 50, tol: float = RESIDUAL_TOL) -> BvpSolution:
    """Solve the radial Dirichlet problem with ``r(R) = beta``.

    ``guess`` may be ``None`` (the hyperboloid ``sqrt(n^2 + t^2) - n``,
    i.e. ``t^2/(2n)`` to leading order but spacelike for every ``t``), a
    :class:`ProfileGrid` covering ``[0, R]``, or ``m + 1`` nodal values.
    Any guess is translated so that it meets the boundary value.

    Raises:
        NoConvergence: Newton fails to bring the residual below ``tol``.
        SpacelikeViolation: the guess is not spacelike, or damping cannot
            keep an iterate spacelike.
    """
    n = check_dimension(n)
    if not R > 0:
        raise DomainError("R must be positive")
    if int(m) != m or m < 16:
        raise DomainError(f"m must be an integer >= 16, got {m!r}")
    m = int(m)
    dt = R / m
    t = np.arange(m + 1) * dt
    t[-1] = R
    w = _initial_offsets(guess, n, t, m)
    if not _spacelike(w, dt):
        raise SpacelikeViolation("initial guess is not spacelike")
    res, s = _residual(w, n, dt, t)
    norm = float(np.max(np.abs(res)))
    # rounding floor of the multiplied-through residual
    floor = 4.0 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(w))))
    iters = 0
    while norm > floor and iters < max_iter:
        delta = solve_banded((1, 1), _jacobian(s, n, dt, t), -res)
        iters += 1
        lam = 1.0
        while True:
            trial = w.copy()
            trial[:-1] += lam * delta
            if _spacelike(trial, dt):
                tres, ts = _residual(trial, n, dt, t)
                tnorm = float(np.max(np.abs(tres)))
                if tnorm < norm:
                    break
                cause = "stall"
            else:
                cause = "spacelike"
            lam *= 0.5
            if lam < DAMPING_FLOOR:
                if cause == "spacelike":
                    raise SpacelikeViolation(
                        f"damping floor reached with a non-spacelike step (iteration {iters})"
                    )
                if norm <= tol:
                    tnorm = None
                    break
                raise NoConvergence(
                    f"Newton stalled at residual {norm:.3e} after {iters} iterations"
                )
        if tnorm is None:
            break
        w, res, s, norm = trial, tres, ts, tnorm
        if float(np.max(np.abs(delta))) * lam <= floor:
            break
    if norm > tol:
        raise NoConvergence(f"residual {norm:.3e} after {iters} iterations")
    return BvpSolution(n, float(R), float(beta), t, w + beta, iters, norm)


@dataclass(frozen=True)
class UniquenessReport:
    n: int
    radius: float
    m: int
    boundary_value: float
    discrepancy: float
    error_vs_ode: float
    iters: tuple[int, int]

    def passed(self, tol_unique: float = 1e-8, tol_ode: float | None = None) -> bool:
        ok = self.discrepancy <= tol_unique
        if tol_ode is not None:
            ok = ok and self.error_vs_ode <= tol_ode
        return ok


def _ode_profile(n, R, step):
    step = min(step, R / 20.0)
    return integrate_profile(n, SolverConfig(R, step))


def uniqueness_check(n: int, R: float, m: int = 2001, step: float = 1e-3,
                     profile: ProfileGrid | None = None) -> UniquenessReport:
    """Solve the Dirichlet problem from two unrelated guesses.

    The boundary value is the ODE profile's ``r(R)``; the guesses are the
    hyperboloid ``sqrt(n^2 + t^2) - n`` and the line ``0.9 t beta / R``.  Reports the
    gap between the two Newton limits and the worst distance to the ODE
    profile.
    """
    n = check_dimension(n)
    if profile is None:
        profile = _ode_profile(n, R, step)
    beta = float(profile.value(R))
    a = solve_bvp(n, R, beta, m)
    line = 0.9 * a.t * beta / R
    b = solve_bvp(n, R, beta, m, guess=line)
    ref = profile.value(a.t)
    return UniquenessReport(
        n, float(R), int(m), beta,
        discrepancy=float(np.max(np.abs(a.r - b.r))),
        error_vs_ode=float(max(np.max(np.abs(a.r - ref)), np.max(np.abs(b.r - ref)))),
        iters=(a.newton_iters, b.newton_iters),
    )


def translation_check(n: int, R: float, beta: float, shift: float = 1.0,
                      m: int = 2001, guess=None) -> float:
    """Max over nodes of ``|r_{beta+shift} - r_beta - shift|``."""
    a = solve_bvp(n, R, beta, m, guess=guess)
    b = solve_bvp(n, R, beta + shift, m, guess=guess)
    return float(np.max(np.abs(b.r - a.r - shift)))


def observed_order(n: int, R: float, ms=(501, 1001, 2001), step: float = 1e-3) -> list[float]:
    """Error against the ODE profile for a sequence of resolutions."""
    profile = _ode_profile(n, R, step)
    beta = float(profile.value(R))
    errs = []
    for m in ms:
        sol = solve_bvp(n, R, beta, m, guess=profile)
        errs.append(float(np.max(np.abs(sol.r - profile.value(sol.t)))))
    return errs
