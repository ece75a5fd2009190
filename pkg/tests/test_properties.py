"""Property-based checks of the invariants on randomly chosen inputs."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from minkowski_soliton import (
    SolverConfig, blowdown_value, check_bounds, check_strict_convexity, hessian_eigs,
    integrate_profile, rhs, solve_bvp, taylor_launch,
)
from minkowski_soliton.asymptotics import check_lipschitz_and_null, sample_pairs

dims = st.integers(min_value=1, max_value=8)


@given(n=dims, t=st.floats(1e-3, 100.0), s=st.floats(0.0, 0.999),
       eps=st.floats(0.0, 0.9))
def test_rhs_formula(n, t, s, eps):
    expect = (1 - s * s) * (1 - (n - 1) * s / (t + eps))
    assert math.isclose(rhs(t, s, n, eps), expect, rel_tol=1e-12, abs_tol=1e-15)


@given(n=dims, t=st.floats(1e-3, 0.05))
def test_taylor_residual_is_small(n, t):
    _, rp, rpp = taylor_launch(n, t)
    res = rpp / (1 - rp * rp) + (n - 1) * rp / t - 1
    # the truncated series leaves an O(t^4) defect
    assert abs(res) <= 2.0 * t**4


@settings(max_examples=15, deadline=None)
@given(n=dims, T=st.floats(2.0, 30.0), h=st.sampled_from([2e-3, 5e-3, 1e-2]))
def test_bounds_and_convexity_hold(n, T, h):
    g = integrate_profile(n, SolverConfig(T, h))
    assert check_bounds(g).passed
    assert check_strict_convexity(g).passed


@settings(max_examples=25, deadline=None)
@given(n=dims, t=st.floats(0.0, 20.0))
def test_hessian_eigs_in_bounds(n, t):
    g = _profile(n)
    sp = hessian_eigs(g, t)
    assert 0 < sp.lambda_radial <= 1 + 1e-10
    assert 0 < sp.lambda_tangential <= 1 / n + 1e-10


_cache = {}


def _profile(n):
    if n not in _cache:
        _cache[n] = integrate_profile(n, SolverConfig(200.0, 1e-2))
    return _cache[n]


@settings(max_examples=25, deadline=None)
@given(n=dims, x=st.floats(0.0, 1.0), rho=st.floats(1.0, 100.0), lam=st.floats(1.0, 2.0))
def test_blowdown_scaling(n, x, rho, lam):
    g = _profile(n)
    # u_{lam rho}(x) = u_rho(lam x) / lam
    a = blowdown_value(g, x, lam * rho)
    b = blowdown_value(g, lam * x, rho) / lam
    assert math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-14)
    # sandwich: sqrt(n^2 + (rho x)^2) - n >= rho x - n
    assert x - n / rho - 1e-10 <= blowdown_value(g, x, rho) <= x + 1e-10


@settings(max_examples=10, deadline=None)
@given(n=dims, rho=st.floats(1.0, 190.0), seed=st.integers(0, 2**16))
def test_rescalings_are_1_lipschitz(n, rho, seed):
    lip, _ = check_lipschitz_and_null(_profile(n), rho, 0.05, sample_pairs(n, 200, 0.5, seed))
    assert lip >= -1e-10


@settings(max_examples=10, deadline=None)
@given(n=dims, beta=st.floats(0.0, 2.0), shift=st.floats(-5.0, 5.0))
def test_bvp_translation_invariance(n, beta, shift):
    a = solve_bvp(n, 3.0, beta, m=64)
    b = solve_bvp(n, 3.0, beta + shift, m=64)
    assert np.max(np.abs(b.r - a.r - shift)) <= 1e-9
