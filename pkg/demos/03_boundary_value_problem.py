"""
Uniqueness through a Dirichlet problem
======================================

The profile is also the solution of the two-point problem on ``[0, R]``
with ``r'(0) = 0`` and ``r(R) = beta``.  A finite difference Newton
solver started from two unrelated guesses lands on the same function,
and that function is the one produced by the initial value integration.
"""

import numpy as np

from minkowski_soliton import SolverConfig, integrate_profile, solve_bvp, uniqueness_check
from minkowski_soliton.bvp import observed_order

n, R = 3, 5.0
ode = integrate_profile(n, SolverConfig(R, 1e-3))
beta = ode.r[-1]

sol = solve_bvp(n, R, beta, m=2001)
print(f"Newton iterations: {sol.newton_iters}, residual {sol.final_residual:.2e}")
print("max |BVP - ODE|:", np.max(np.abs(sol.r - ode.value(sol.t))))

rep = uniqueness_check(n, R, m=2001)
print("two-guess discrepancy:", rep.discrepancy, " iterations:", rep.iters)

# Raising the boundary value by one lifts the whole solution by one:
# the equation only sees derivatives of r.
lifted = solve_bvp(n, R, beta + 1.0, m=2001)
print("max |r_(beta+1) - r_beta - 1|:", np.max(np.abs(lifted.r - sol.r - 1.0)))

# Second order in the spacing: doubling m divides the error by four.
errs = observed_order(n, R, ms=(251, 501, 1001))
print("errors:", errs, " ratios:", [errs[i] / errs[i + 1] for i in range(2)])
