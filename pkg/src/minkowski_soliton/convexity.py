"""Hessian spectrum of ``u(x) = r(|x|)``.

At a point with ``|x| = t > 0`` the Hessian has eigenvalue ``r''(t)`` in
the radial direction and ``r'(t)/t`` (multiplicity ``n - 1``) on the
tangent sphere.  Both tend to ``r''(0) = 1/n`` at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import OutOfRange
from .profile import ProfileGrid, taylor_launch

__all__ = ["HessianSpectrum", "ConvexityReport", "hessian_eigs", "check_strict_convexity"]


@dataclass(frozen=True)
class HessianSpectrum:
    t: float
    lambda_radial: float
    lambda_tangential: float
    n: int

    @property
    def min_eig(self) -> float:
        if self.n == 1:
            return self.lambda_radial
        return min(self.lambda_radial, self.lambda_tangential)


def _tangential(profile: ProfileGrid, t: np.ndarray, rp: np.ndarray) -> np.ndarray:
    out = np.empty_like(t)
    near = t < profile.launch_radius if profile.launch_radius > 0 else t == 0.0
    if profile.epsilon == 0.0:
        n = profile.n
        # r'/t from the series; avoids 0/0 at the origin
        tn = t[near]
        out[near] = 1.0 / n - tn * tn / (n**3 * (n + 2))
    else:
        out[near] = np.inf
    out[~near] = rp[~near] / t[~near]
    return out


def hessian_eigs(profile: ProfileGrid, t: float) -> HessianSpectrum:
    """Eigenvalues of the Hessian at radius ``t``.

    Grid nodes use the stored values; between nodes ``r'`` and ``r''``
    come from Hermite interpolation (Taylor series below the launch
    radius).
    """
    if t < 0 or t > profile.horizon * (1 + 1e-12):
        raise OutOfRange(f"t={t} outside [0, {profile.horizon}]")
    idx = np.searchsorted(profile.t, t)
    if idx < len(profile) and profile.t[idx] == t:
        rp, rpp = profile.rp[idx], profile.rpp[idx]
    elif t < profile.launch_radius:
        _, rp, rpp = taylor_launch(profile.n, t)
    else:
        rp = float(profile.slope(t))
        rpp = float(np.interp(t, profile.t, profile.rpp))
    lam_t = _tangential(profile, np.array([float(t)]), np.array([rp]))[0]
    return HessianSpectrum(float(t), float(rpp), float(lam_t), profile.n)


@dataclass
class ConvexityReport:
    n: int
    min_eig: float
    argmin_t: float
    origin_eigs: tuple[float, float]
    failures: list[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_strict_convexity(profile: ProfileGrid) -> ConvexityReport:
    """Check that the Hessian is positive definite at every node.

    The origin always has both eigenvalues ``1/n``, so the positive
    definite set is nonempty; any node with a nonpositive eigenvalue is
    recorded as a failure.
    """
    t = profile.t
    lam_r = profile.rpp
    lam_t = _tangential(profile, t, profile.rp)
    mins = lam_r if profile.n == 1 else np.minimum(lam_r, lam_t)
    i = int(np.argmin(mins))
    return ConvexityReport(
        profile.n,
        float(mins[i]),
        float(t[i]),
        (float(lam_r[0]), float(lam_t[0])),
        failures=[float(x) for x in t[~(mins > 0)]],
    )
