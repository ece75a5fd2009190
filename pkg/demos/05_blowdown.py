"""
Looking from far away
=====================

The rescalings ``u(rho x) / rho`` converge to the light cone ``|x|`` as
``rho`` grows.  The sandwich bound gives the rate ``|r(rho)/rho - 1| <=
n/rho``.  The limit is 1-Lipschitz and has a null direction at every
point: moving outward by ``delta`` changes the height by ``delta``.
"""

from minkowski_soliton import (
    SolverConfig, check_blowdown_rate, check_lipschitz_and_null, integrate_profile,
)
from minkowski_soliton.asymptotics import sample_pairs

n = 2
# A coarse step is enough this far out.
g = integrate_profile(n, SolverConfig(1000.0, 0.05))
rate = check_blowdown_rate(g, [10, 100, 1000])
for rho, dev, bound in zip(rate.rho_samples, rate.deviations, rate.bounds):
    print(f"rho = {rho:6g}: |r/rho - 1| = {dev:.5f}  (bound {bound:.5f})")

# r(t) = t - c + o(1) for a constant c, so rho times the deviation levels off at c.
print("rho * deviation:", rate.rho_samples * rate.deviations)

pairs = sample_pairs(n, 1000, 0.5, seed=0)
for rho in (10, 100, 1000):
    lip, null = check_lipschitz_and_null(g, rho, 0.5, pairs)
    print(f"rho = {rho:4d}: Lipschitz slack {lip:.3e}, null defect {null:.3e}")
