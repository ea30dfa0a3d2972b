"""Bounds on the reliability function of the power-constrained Gaussian channel."""

from ._optim import BracketError, ConvergenceError
from .bounds import (
    BoundCurve,
    BoundKind,
    bound_curve,
    exact_region,
    lower_bound,
    max_gap_rcrit_rbar1,
    sphere_packing_closed_form,
    sphere_packing_numeric,
    straight_line,
    theorem2_minmax,
    theorem2_numeric,
    upper_bound_t1,
    upper_bound_t2,
)
from .codes import (
    DecodingEstimate,
    SpectrumHistogram,
    SphericalCode,
    code_spectrum,
    empirical_exponent,
    gen_code,
    ml_decode_error_mc,
    spectrum_histogram,
)
from .core import (
    ChannelParams,
    ThresholdSet,
    a0,
    capacity,
    e_sp,
    j_spectrum,
    r_crit,
    r_low,
    rate_of_t,
    t_bar2,
    t_of_rate,
    tau_of_t,
    thresholds,
)
from .geometry import (
    CapSpec,
    TripleGeometry,
    VacuousBoundError,
    cap_area_log,
    lemma1_check,
    lemma2_cardinality_bound,
    lemma4_bound,
    opt_sr,
    rankin_bound,
    ring_area_log,
    sphere_area_log,
    triple_coordinates,
    z_of,
)
from .spectrum import (
    SpectrumEnvelope,
    additive_exponent,
    b_lower_t3,
    b_lower_t4,
    rho0_argmax,
    theorem3_envelope,
    theorem4_envelope,
)

__version__ = "0.1.0"
