"""Radial profile of the translating soliton.

The rotationally symmetric soliton is ``u(x) = r(|x|)`` where ``r`` solves

    r'' / (1 - r'^2) + (n - 1) r' / t = 1,    r(0) = r'(0) = 0.

The coefficient ``(n - 1)/t`` is singular at the origin.  Two routes are
provided: a Taylor launch off the origin followed by RK4 (``epsilon = 0``),
and the shifted problem with ``(n - 1)/(t + epsilon)`` and ``r'(0) =
epsilon/n`` which is regular everywhere.

Internally the slope is carried as its rapidity ``phi = artanh(r')``.  The
equation then reads ``phi' = 1 - (n - 1) tanh(phi) / (t + epsilon)``, and
``1 - r'`` stays resolvable after ``r'`` itself has rounded to 1.0 (for
``t`` of a few dozen units ``1 - r'`` is below 1e-30).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import DomainError, OutOfRange, StepFailure

__all__ = [
    "SolverConfig",
    "ProfileGrid",
    "EpsExtrapolation",
    "check_dimension",
    "rhs",
    "taylor_launch",
    "closed_form_n1",
    "integrate_profile",
    "integrate_regularized",
    "extrapolate_eps",
]


def check_dimension(n) -> int:
    """Validate the ambient dimension and return it as ``int``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"dimension must be an integer >= 1, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class SolverConfig:
    """Integrator controls.

    ``launch_radius`` defaults to ``max(10 * step, 1e-3)``; it is only used
    by the ``epsilon = 0`` integrator.
    """

    horizon: float
    step: float = 1e-3
    epsilon: float = 0.0
    launch_radius: float | None = None

    def __post_init__(self):
        if self.launch_radius is None:
            object.__setattr__(self, "launch_radius", max(10.0 * self.step, 1e-3))
        if not (0.0 < self.step < self.launch_radius < self.horizon):
            raise DomainError(
                "need 0 < step < launch_radius < horizon, got "
                f"step={self.step}, launch_radius={self.launch_radius}, "
                f"horizon={self.horizon}"
            )
        if not (0.0 <= self.epsilon < 1.0):
            raise DomainError(f"epsilon must lie in [0, 1), got {self.epsilon}")

    def as_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "step": self.step,
            "epsilon": self.epsilon,
            "launch_radius": self.launch_radius,
        }


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ProfileGrid:
    """Discrete profile: nodes ``t`` with ``r``, ``r'`` and ``r''``.

    ``rapidity`` holds ``artanh(r')``; ``launch_radius`` is the radius below
    which values come from the Taylor series (0 when there is none).  Only
    structural properties are enforced on construction; the analytic
    inequalities are checked by :mod:`minkowski_soliton.bounds` so that
    faulty grids can still be represented and diagnosed.
    """

    n: int
    t: np.ndarray
    r: np.ndarray
    rp: np.ndarray
    rpp: np.ndarray
    rapidity: np.ndarray | None = None
    epsilon: float = 0.0
    launch_radius: float = 0.0
    config: SolverConfig | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "n", check_dimension(self.n))
        for name in ("t", "r", "rp", "rpp"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))
        if self.rapidity is None:
            with np.errstate(divide="ignore", invalid="ignore"):
                phi = np.arctanh(np.clip(self.rp, -1.0, 1.0))
        else:
            phi = self.rapidity
        object.__setattr__(self, "rapidity", _readonly(phi))
        size = self.t.shape
        if len(size) != 1 or size[0] < 2:
            raise ValueError("a profile grid needs at least two nodes")
        for name in ("r", "rp", "rpp", "rapidity"):
            if getattr(self, name).shape != size:
                raise ValueError(f"array {name!r} does not match the node count")
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("nodes must be strictly increasing")

    @classmethod
    def from_nodes(cls, n: int, nodes, **kwargs) -> "ProfileGrid":
        """Build a grid from rows ``(t, r, r', r'')``."""
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 4:
            raise ValueError("nodes must have shape (N, 4)")
        return cls(n, nodes[:, 0], nodes[:, 1], nodes[:, 2], nodes[:, 3], **kwargs)

    @property
    def nodes(self) -> np.ndarray:
        return np.column_stack([self.t, self.r, self.rp, self.rpp])

    @property
    def horizon(self) -> float:
        return float(self.t[-1])

    def __len__(self) -> int:
        return self.t.size

    @cached_property
    def slope_deficit(self) -> np.ndarray:
        """``1 - r'`` evaluated from the rapidity, accurate where ``r' == 1.0``."""
        with np.errstate(over="ignore"):
            e = np.exp(-2.0 * self.rapidity)
            return _readonly(np.where(np.isfinite(self.rapidity), 2.0 * e / (1.0 + e), 1.0 - self.rp))

    @cached_property
    def _hermite(self) -> CubicHermiteSpline:
        return CubicHermiteSpline(self.t, self.r, self.rp)

    @cached_property
    def _hermite_slope(self) -> CubicHermiteSpline:
        return CubicHermiteSpline(self.t, self.rp, self.rpp)

    def _check_range(self, t):
        t = np.asarray(t, dtype=float)
        tol = 1e-12 * max(1.0, self.horizon)
        if np.any(t < self.t[0] - tol) or np.any(t > self.horizon + tol):
            raise OutOfRange(f"evaluation outside [{self.t[0]}, {self.horizon}]")
        return np.clip(t, self.t[0], self.horizon)

    def value(self, t):
        """``r(t)`` by cubic Hermite interpolation with the stored slopes."""
        return self._hermite(self._check_range(t))

    def slope(self, t):
        """``r'(t)`` by cubic Hermite interpolation with the stored ``r''``."""
        return self._hermite_slope(self._check_range(t))


def _sech2(phi: float) -> float:
    e = math.exp(-2.0 * abs(phi))
    return 4.0 * e / ((1.0 + e) * (1.0 + e))


def rhs(t: float, s: float, n: int, eps: float = 0.0) -> float:
    """Second derivative implied by the profile equation.

    Returns ``(1 - (n-1) s / (t + eps)) (1 - s^2)``.  For ``n = 1`` the
    first factor is 1 and ``t + eps = 0`` is allowed.
    """
    n = check_dimension(n)
    if not abs(s) < 1.0:
        raise DomainError(f"slope must satisfy |s| < 1, got {s}")
    if n == 1:
        return 1.0 - s * s
    if t + eps <= 0.0:
        raise DomainError("t + eps must be positive when n >= 2")
    return (1.0 - (n - 1) * s / (t + eps)) * (1.0 - s * s)


def _rpp_from_rapidity(t: float, phi: float, n: int, eps: float) -> float:
    # same as rhs() but with 1 - s^2 evaluated as sech^2(phi)
    if n == 1:
        return _sech2(phi)
    if t + eps == 0.0:
        return 1.0 / n
    return (1.0 - (n - 1) * math.tanh(phi) / (t + eps)) * _sech2(phi)


def taylor_launch(n: int, t):
    """Even series solution near the origin.

    Substituting ``r = a t^2 + b t^4`` into the profile equation and
    matching the ``t^0`` and ``t^2`` coefficients gives ``a = 1/(2n)`` and
    ``b = -1/(4 n^3 (n + 2))``.  Returns ``(r, r', r'')``; ``t`` may be an
    array.
    """
    n = check_dimension(n)
    b = 1.0 / (n**3 * (n + 2))
    t2 = np.asarray(t, dtype=float) ** 2
    r = t2 / (2 * n) - b * t2 * t2 / 4
    rp = np.asarray(t, dtype=float) * (1.0 / n - b * t2)
    rpp = 1.0 / n - 3 * b * t2
    if np.ndim(t) == 0:
        return float(r), float(rp), float(rpp)
    return r, rp, rpp


def closed_form_n1(t):
    """Exact profile for ``n = 1``: ``(log cosh t, tanh t, sech^2 t)``."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("t must be nonnegative")
    # log cosh t = t + log1p(exp(-2t)) - log 2, stable for large t
    r = t + np.log1p(np.exp(-2.0 * t)) - math.log(2.0)
    e = np.exp(-2.0 * t)
    rpp = 4.0 * e / (1.0 + e) ** 2
    out = (r, np.tanh(t), rpp)
    if t.ndim == 0:
        return tuple(float(v) for v in out)
    return out


def _uniform_nodes(cfg: SolverConfig) -> tuple[int, float]:
    count = int(round(cfg.horizon / cfg.step))
    if abs(count * cfg.step - cfg.horizon) > 1e-9 * cfg.horizon:
        count = math.ceil(cfg.horizon / cfg.step)
    return count, cfg.horizon / count


def _rk4(n, eps, t, r, phi, i0, h, count):
    """March ``(r, phi)`` from node ``i0`` to node ``count`` in place."""
    c = float(n - 1)
    tanh = math.tanh
    isfinite = math.isfinite
    for i in range(i0, count):
        ti = t[i]
        ri, pi = r[i], phi[i]
        a = ti + eps
        s1 = tanh(pi)
        k1 = 1.0 - c * s1 / a if c else 1.0
        p2 = pi + 0.5 * h * k1
        s2 = tanh(p2)
        a2 = a + 0.5 * h
        k2 = 1.0 - c * s2 / a2 if c else 1.0
        p3 = pi + 0.5 * h * k2
        s3 = tanh(p3)
        k3 = 1.0 - c * s3 / a2 if c else 1.0
        p4 = pi + h * k3
        s4 = tanh(p4)
        k4 = 1.0 - c * s4 / (a + h) if c else 1.0
        if min(p2, p3, p4) < 0.0 or not isfinite(k4):
            raise StepFailure(f"slope left [0, 1) in the step starting at t={ti:.6g}")
        r[i + 1] = ri + h * (s1 + 2.0 * s2 + 2.0 * s3 + s4) / 6.0
        pn = pi + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        if pn < 0.0 or not isfinite(pn):
            raise StepFailure(f"slope left [0, 1) at t={t[i + 1]:.6g}")
        phi[i + 1] = pn


def _finish(n, eps, t, r, phi, launch_radius, cfg) -> ProfileGrid:
    rpp = np.array([_rpp_from_rapidity(ti, pi, n, eps) for ti, pi in zip(t, phi)])
    return ProfileGrid(
        n, t, r, np.tanh(phi), rpp, rapidity=phi, epsilon=eps,
        launch_radius=launch_radius, config=cfg,
    )


def integrate_profile(n: int, cfg: SolverConfig) -> ProfileGrid:
    """Solve the singular problem (``epsilon = 0``) on ``[0, horizon]``.

    Nodes ``t_i = i h`` up to the launch radius take the Taylor series;
    the rest come from classical RK4 with fixed step.
    """
    n = check_dimension(n)
    if cfg.epsilon != 0.0:
        raise DomainError("integrate_profile needs epsilon = 0; use integrate_regularized")
    count, h = _uniform_nodes(cfg)
    k = min(max(1, math.ceil(cfg.launch_radius / h - 1e-9)), count - 1)
    t = np.arange(count + 1) * h
    t[-1] = cfg.horizon
    r = np.empty(count + 1)
    phi = np.empty(count + 1)
    r[: k + 1], rp0, _ = taylor_launch(n, t[: k + 1])
    if not np.all((rp0 >= 0.0) & (rp0 < 1.0)):
        raise StepFailure(f"launch radius {t[k]:.6g} is outside the range of the series")
    phi[: k + 1] = np.arctanh(rp0)
    _rk4(n, 0.0, t, r, phi, k, h, count)
    return _finish(n, 0.0, t, r, phi, float(t[k]), cfg)


def integrate_regularized(n: int, cfg: SolverConfig) -> ProfileGrid:
    """Solve the shifted problem with ``r(0) = 0``, ``r'(0) = epsilon/n``."""
    n = check_dimension(n)
    eps = cfg.epsilon
    if not 0.0 < eps < 1.0:
        raise DomainError(f"integrate_regularized needs 0 < epsilon < 1, got {eps}")
    count, h = _uniform_nodes(cfg)
    t = np.arange(count + 1) * h
    t[-1] = cfg.horizon
    r = np.empty(count + 1)
    phi = np.empty(count + 1)
    r[0] = 0.0
    phi[0] = math.atanh(eps / n)
    _rk4(n, eps, t, r, phi, 0, h, count)
    return _finish(n, eps, t, r, phi, 0.0, cfg)


@dataclass(frozen=True, eq=False)
class EpsExtrapolation:
    """Result of :func:`extrapolate_eps`.

    ``differences[k]`` is the max-norm gap between the grids for
    ``eps[k]`` and ``eps[k + 1]``; ``order`` is the empirical order in
    epsilon, or ``None`` with fewer than three grids.
    """

    grid: ProfileGrid
    eps: tuple[float, ...]
    grids: tuple[ProfileGrid, ...]
    differences: tuple[float, ...]
    order: float | None


def extrapolate_eps(n: int, cfg: SolverConfig, eps_list: Sequence[float]) -> EpsExtrapolation:
    """Extrapolate the regularized profiles to ``epsilon = 0``.

    Assumes the error is linear in epsilon and combines the two smallest
    values.  The order is estimated, not assumed, from the last three.
    """
    n = check_dimension(n)
    eps = tuple(float(e) for e in eps_list)
    if len(eps) < 2:
        raise DomainError("need at least two epsilon values")
    if any(not 0.0 < e < 1.0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise DomainError("epsilon values must be decreasing and lie in (0, 1)")
    grids = tuple(
        integrate_regularized(
            n, SolverConfig(cfg.horizon, cfg.step, e, cfg.launch_radius)
        )
        for e in eps
    )
    diffs = tuple(
        float(np.max(np.abs(a.r - b.r))) for a, b in zip(grids, grids[1:])
    )
    order = None
    if len(grids) >= 3 and diffs[-1] > 0:
        e1, e2, e3 = eps[-3:]
        # geometric sequences only; otherwise use the local ratio of spacings
        order = math.log(diffs[-2] / diffs[-1]) / math.log((e1 - e2) / (e2 - e3))
    e1, e2 = eps[-2], eps[-1]
    g1, g2 = grids[-2], grids[-1]
    w1, w2 = -e2 / (e1 - e2), e1 / (e1 - e2)
    r = w1 * g1.r + w2 * g2.r
    rp = w1 * g1.rp + w2 * g2.rp
    # the weights act on 1 - r' too, so the deficit stays resolved
    deficit = w1 * g1.slope_deficit + w2 * g2.slope_deficit
    with np.errstate(divide="ignore"):
        phi = np.where(deficit < 1e-8, 0.5 * np.log((2.0 - deficit) / deficit), np.arctanh(rp))
    t = g2.t
    rpp = np.array([_rpp_from_rapidity(ti, pi, n, 0.0) for ti, pi in zip(t, phi)])
    grid = ProfileGrid(n, t, r, rp, rpp, rapidity=phi, epsilon=0.0, config=cfg)
    return EpsExtrapolation(grid, eps, grids, diffs, order)
