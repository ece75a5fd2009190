"""
Strict convexity
================

The Hessian of ``u(x) = r(|x|)`` has eigenvalue ``r''`` along the radius
and ``r'/t`` on the tangent sphere.  Both equal ``1/n`` at the origin and
stay positive out to the horizon, though they decay: ``r''`` falls
exponentially and ``r'/t`` like ``1/t``.
"""

from minkowski_soliton import SolverConfig, check_strict_convexity, hessian_eigs, integrate_profile

for n in (1, 2, 4, 8):
    g = integrate_profile(n, SolverConfig(50.0, 1e-3))
    rep = check_strict_convexity(g)
    print(f"n = {n}: origin eigenvalues {rep.origin_eigs}, "
          f"smallest {rep.min_eig:.3e} at t = {rep.argmin_t:g}")

g = integrate_profile(3, SolverConfig(50.0, 1e-3))
print()
print("   t    radial    tangential")
for t in (0.0, 1.0, 5.0, 10.0, 25.0, 50.0):
    sp = hessian_eigs(g, t)
    print(f"{t:5g} {sp.lambda_radial:.3e} {sp.lambda_tangential:.3e}")
