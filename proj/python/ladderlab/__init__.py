"""Python bindings for the ladderlab core."""

from ._ladderlab import (
    GOLDEN_VERSION,
    LADDER_SHIFT,
    PHI_AT_ZERO,
    ConfigError,
    ConvergenceError,
    DomainError,
    Error,
    FormatError,
    LadderTable,
    PoleError,
    RangeError,
    ResolutionError,
    SeedNotFoundError,
    SingularityError,
    bessel_j,
    crossbreed,
    disconnected_set,
    epsilon,
    equations,
    find_seed,
    gamma,
    hardy_z,
    jacobi_sncndn,
    ladder_lhs,
    mean_value_point,
    phi_from_h,
    required_t_max,
    trace,
    validate_config,
    verify_meta,
    zeta,
    zeta_critical_abs_sq,
)

__all__ = [name for name in dir() if not name.startswith("_")]
