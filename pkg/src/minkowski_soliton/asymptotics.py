"""Blowdown of the radial soliton at infinity.

For ``u(x) = r(|x|)`` the rescalings ``u_rho(x) = u(rho x) / rho`` converge
to the light cone ``|x|``.  The sandwich ``sqrt(n^2 + t^2) - n <= r(t) <= t``
gives the explicit rate

    0 <= 1 - r(rho)/rho <= (n + rho - sqrt(n^2 + rho^2)) / rho <= n / rho,

since ``sqrt(n^2 + rho^2) >= rho``.  All checks here evaluate the profile
by monotone cubic (PCHIP) interpolation of the grid values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, OutOfRange
from .profile import ProfileGrid

__all__ = [
    "BlowdownReport",
    "blowdown_value",
    "check_blowdown_rate",
    "sample_pairs",
    "check_lipschitz_and_null",
    "gradient_image_check",
    "gradient_deficit_bound",
]

LIPSCHITZ_TOL = 1e-10


@lru_cache(maxsize=16)
def _pchip(grid: ProfileGrid) -> PchipInterpolator:
    return PchipInterpolator(grid.t, grid.r, extrapolate=False)


def _u(grid: ProfileGrid, t):
    t = np.asarray(t, dtype=float)
    T = grid.horizon
    if np.any(t > T * (1.0 + 1e-12)) or np.any(t < 0):
        raise OutOfRange(f"radius outside [0, {T}]")
    return _pchip(grid)(np.minimum(t, T))


def blowdown_value(profile: ProfileGrid, x_norm, rho: float):
    """``r(rho * |x|) / rho``, the rescaled height at a point of norm ``x_norm``."""
    if rho <= 0:
        raise DomainError("rho must be positive")
    x_norm = np.asarray(x_norm, dtype=float)
    if np.any(x_norm < 0):
        raise DomainError("x_norm must be nonnegative")
    out = _u(profile, rho * x_norm) / rho
    return float(out) if out.ndim == 0 else out


@dataclass
class BlowdownReport:
    n: int
    rho_samples: np.ndarray
    deviations: np.ndarray = field(default_factory=lambda: np.empty(0))
    bounds: np.ndarray = field(default_factory=lambda: np.empty(0))
    within_bound: bool = True
    monotone: bool = True
    lipschitz_worst: float | None = None
    null_worst: float | None = None
    grad_sup_deficit: float | None = None

    @property
    def passed(self) -> bool:
        ok = self.within_bound and self.monotone
        if self.lipschitz_worst is not None:
            ok = ok and self.lipschitz_worst >= -LIPSCHITZ_TOL
        return ok


def check_blowdown_rate(profile: ProfileGrid, rho_samples, mono_tol: float = 1e-12) -> BlowdownReport:
    """Record ``|r(rho)/rho - 1|`` against the bound ``n/rho``.

    Also records whether the deviations are nonincreasing in ``rho``
    (true for any convex profile through the origin, since
    ``(r/t)' = (t r' - r)/t^2 >= 0``).
    """
    rho = np.sort(np.atleast_1d(np.asarray(rho_samples, dtype=float)))
    if rho.size == 0:
        raise DomainError("need at least one rho sample")
    n = profile.n
    dev = np.abs(_u(profile, rho) / rho - 1.0)
    bound = n / rho
    return BlowdownReport(
        n,
        rho,
        deviations=dev,
        bounds=bound,
        within_bound=bool(np.all(dev <= bound)),
        monotone=bool(np.all(np.diff(dev) <= mono_tol)),
    )


def sample_pairs(n: int, count: int, radius: float, seed: int = 0) -> np.ndarray:
    """Random pairs ``(x, y)`` in the ball of given radius, shape ``(count, 2, n)``."""
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(count, 2, n))
    pts /= np.linalg.norm(pts, axis=-1, keepdims=True)
    radii = radius * rng.random(size=(count, 2, 1)) ** (1.0 / n)
    return pts * radii


def check_lipschitz_and_null(profile: ProfileGrid, rho: float, delta: float,
                             pairs) -> tuple[float, float]:
    """Worst 1-Lipschitz slack and worst null-condition defect.

    The slack is ``min |x - y| - |u_rho(x) - u_rho(y)|`` over the pairs
    (nonnegative when the condition holds).  For the null condition each
    first point ``x`` is paired with ``y = x + delta x/|x|`` on its outward
    ray and the defect ``| |u_rho(y) - u_rho(x)| - delta |`` is recorded;
    it is at most ``n/rho`` by the sandwich bound.
    """
    pairs = np.asarray(pairs, dtype=float)
    if pairs.ndim != 3 or pairs.shape[1] != 2:
        raise ValueError("pairs must have shape (count, 2, dim)")
    x, y = pairs[:, 0], pairs[:, 1]
    nx = np.linalg.norm(x, axis=-1)
    ny = np.linalg.norm(y, axis=-1)
    ux = blowdown_value(profile, nx, rho)
    uy = blowdown_value(profile, ny, rho)
    slack = np.linalg.norm(x - y, axis=-1) - np.abs(ux - uy)
    lipschitz_worst = float(np.min(slack))
    ux_null = ux[nx > 0]
    uz = blowdown_value(profile, nx[nx > 0] + delta, rho)
    null_worst = float(np.max(np.abs(np.abs(uz - ux_null) - delta))) if uz.size else 0.0
    return lipschitz_worst, null_worst


def gradient_deficit_bound(n: int, T: float) -> float:
    """``1 - T/sqrt(n^2 + T^2)``, computed without cancellation."""
    s = np.hypot(n, T)
    return float(n * n / (s * (s + T)))


def gradient_image_check(profile: ProfileGrid) -> tuple[float, bool]:
    """Return ``1 - r'(T)`` at the horizon and whether it obeys the gradient bound.

    The deficit is read from the rapidity so it stays positive after
    ``r'`` has rounded to 1.0.
    """
    T = profile.horizon
    deficit = float(profile.slope_deficit[-1])
    bound = gradient_deficit_bound(profile.n, T)
    return deficit, deficit <= bound + 1e-12
