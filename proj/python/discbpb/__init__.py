"""Constructive Bishop-Phelps-Bollobas perturbations for operators into the
disc algebra: the Stolz-region conformal map, peak-function bumps, the
functional BPB step, and the certified operator construction."""

from ._core import (  # noqa: F401
    BpbFunctionalResult,
    BpbOperatorResult,
    BumpData,
    ConformalMap,
    Delta2Result,
    DiscBpbError,
    DiscPoly,
    EtaFunction,
    Functional,
    IdealParts,
    LpSpace,
    PeakFunction,
    PerturbedOperator,
    OperatorIntoDisc,
    boundary_radius,
    bpb_functional,
    bpb_operator,
    choose_eps1_n0,
    circle_max_abs,
    corner_exponent,
    diff_norm,
    dual_norm,
    duality_map,
    eps2_disc_check,
    eval_N,
    eval_h,
    gamma_min,
    ideal_decompose,
    make_g1,
    make_rank_one_case,
    norming_vector,
    operator_norm,
    p_norm,
    point_functional,
    equicontinuity_delta2,
    run_suites,
    stolz_value,
    suite_names,
    zoo,
)

__version__ = "0.1.0"
