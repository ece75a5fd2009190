import numpy as np
import pytest

from minkowski_soliton import (
    DomainError, NoConvergence, SolverConfig, SpacelikeViolation, closed_form_n1,
    integrate_profile, solve_bvp, translation_check, uniqueness_check,
)
from minkowski_soliton.bvp import observed_order


@pytest.fixture(scope="module")
def ode_n3():
    return integrate_profile(3, SolverConfig(5.0, 1e-3))


def test_matches_ode_profile(ode_n3):
    beta = ode_n3.r[-1]
    sol = solve_bvp(3, 5.0, beta, m=2001)
    assert sol.newton_iters <= 20
    assert sol.r[-1] == beta
    assert np.max(np.abs(sol.r - ode_n3.value(sol.t))) <= 1e-5


def test_n1_matches_log_cosh():
    beta = float(closed_form_n1(4.0)[0])
    sol = solve_bvp(1, 4.0, beta, m=2001)
    assert np.max(np.abs(sol.r - closed_form_n1(sol.t)[0])) <= 1e-6


def test_translation_is_exact(ode_n3):
    assert translation_check(3, 5.0, ode_n3.r[-1], 1.0, m=2001) <= 1e-9
    assert translation_check(2, 3.0, 0.7, -0.4, m=201) <= 1e-9


def test_two_guesses_agree():
    rep = uniqueness_check(3, 5.0, m=2001)
    assert rep.discrepancy <= 1e-8
    assert rep.error_vs_ode <= 1e-5
    assert max(rep.iters) <= 20
    assert rep.passed(tol_ode=1e-5)


def test_refinement_ratio_is_four():
    errs = observed_order(2, 4.0, ms=(16, 32, 64, 128))
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    orders = np.log2(ratios)
    assert np.all((orders > 1.5) & (orders < 2.5))


def test_observed_order_default():
    errs = observed_order(3, 5.0, ms=(501, 1001))
    assert 3.0 <= errs[0] / errs[1] <= 5.0


def test_solution_is_monotone_and_convex(ode_n3):
    sol = solve_bvp(3, 5.0, ode_n3.r[-1], m=401)
    s = sol.slopes
    assert np.all(s > 0) and np.all(s < 1)
    assert np.all(np.diff(s) > 0)
    assert sol.final_residual <= 1e-10


def test_guess_can_be_a_profile(ode_n3):
    a = solve_bvp(3, 5.0, ode_n3.r[-1], m=401, guess=ode_n3)
    b = solve_bvp(3, 5.0, ode_n3.r[-1], m=401)
    # residual is scaled by the squared spacing, so agreement sits near 1e-11
    assert np.max(np.abs(a.r - b.r)) < 1e-10
    assert a.newton_iters <= b.newton_iters


def test_spacing_and_grid():
    sol = solve_bvp(2, 3.0, 1.0, m=30)
    assert sol.m == 30 and sol.spacing == pytest.approx(0.1)
    assert sol.t[0] == 0.0 and sol.t[-1] == 3.0


@pytest.mark.parametrize("kwargs", [dict(m=15), dict(m=20.5), dict(R=0.0), dict(n=0)])
def test_domain_errors(kwargs):
    args = dict(n=2, R=3.0, beta=1.0, m=64)
    args.update(kwargs)
    with pytest.raises(DomainError):
        solve_bvp(**args)


def test_non_spacelike_guess_rejected():
    m = 64
    t = np.linspace(0, 3.0, m + 1)
    with pytest.raises(SpacelikeViolation):
        solve_bvp(2, 3.0, 1.0, m=m, guess=2 * t)


def test_wrong_guess_length():
    with pytest.raises(ValueError):
        solve_bvp(2, 3.0, 1.0, m=64, guess=np.zeros(10))


def test_iteration_budget():
    with pytest.raises(NoConvergence):
        solve_bvp(3, 5.0, 2.0, m=401, max_iter=1)
