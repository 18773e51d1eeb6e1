"""Band-limited extrapolation of discrete-time signals."""

from ._bandext import (
    Error,
    InvalidParams,
    NearSingular,
    TooFewKnots,
    LengthMismatch,
    EmptyInput,
    lowpass_coeff,
    operator_first_row,
    condition_estimate,
    extrapolate,
    moving_average,
    spline_extrapolate,
    pchip_extrapolate,
    linear_extrapolate,
    horizon_error,
    run_comparison,
    run_truncation_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
