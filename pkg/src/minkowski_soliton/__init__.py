"""Rotationally symmetric translating solitons of mean curvature flow of
spacelike graphs in Minkowski space, computed three ways and checked
against their analytic bounds."""

from .errors import (
    CflViolation,
    DomainError,
    NoConvergence,
    OutOfRange,
    SolitonError,
    SpacelikeViolation,
    StepFailure,
)
from .profile import (
    EpsExtrapolation,
    ProfileGrid,
    SolverConfig,
    closed_form_n1,
    extrapolate_eps,
    integrate_profile,
    integrate_regularized,
    rhs,
    taylor_launch,
)
from .bounds import BoundsReport, Check, check_bounds, ode_residual, residual_order
from .bvp import BvpSolution, solve_bvp, translation_check, uniqueness_check
from .flow import FlowState, evolve, flow_rhs, soliton_invariance_test, step, step_implicit
from .asymptotics import (
    BlowdownReport,
    blowdown_value,
    check_blowdown_rate,
    check_lipschitz_and_null,
    gradient_image_check,
)
from .convexity import HessianSpectrum, check_strict_convexity, hessian_eigs

__version__ = "0.1.0"
