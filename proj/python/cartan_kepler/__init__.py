"""Flag curvature of the Cartan metrics of the rotating Kepler problem."""

from ._core import (
    ArgumentError,
    CometricBlock,
    ConsistencyError,
    ConvexityReport,
    CurvatureSample,
    DomainError,
    IoError,
    MetricParams,
    PhasePoint,
    PreconditionError,
    cli,
    cometric_at,
    critical_energy,
    f_of_t,
    flag_curvature,
    flag_curvature_closed_form,
    fstar_cartesian,
    fstar_polar,
    grid_scan,
    hessian_form,
    legendre_fiber,
    lstar,
    run_identity_suite,
    scaling_reduce,
    slice_scan,
    spray_coeffs,
    validate_domain,
    verify_convexity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
