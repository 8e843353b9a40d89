"""Exact and certified numerics for rearrangements, level averages,
weighted supremum operators, and the function-space norms built from them."""

from .errors import (
    CharacterizationDisagreement,
    DomainMismatch,
    NonIntegrable,
    NonIntegrableHead,
    NotQuasiconcave,
    PreconditionViolated,
    RearToolError,
    TrivialSpace,
)
from .funcspace import (
    CumulativeFn,
    Domain,
    MonotoneStepFn,
    PiecewiseFn,
    StepFn,
    chi,
    cumulative,
    integrate,
    log_grid,
    maximal,
    measure_above,
    rearrange,
    suffix_function,
)
from .quasiconcave import (
    BConsensus,
    BReport,
    ClosedFormQC,
    ComplementaryQC,
    SampledQC,
    b_check,
    b_consensus,
    closed_form,
    complementary,
    from_samples,
)
from .extrema import SupResult, weighted_sup
from .supops import OpResult, apply_S, apply_T, s_bracket, t_bracket
from .norms import (
    GammaSpace,
    NormValue,
    Weight,
    gamma_fundamental,
    gamma_norm,
    gamma_norm_of_decreasing,
    l1_norm,
    linf_norm,
    linfty_embedding_check,
    marcinkiewicz_norm,
    marcinkiewicz_norm_of_decreasing,
    s_nontriviality_check,
    weight_from_fn,
    weight_from_pieces,
    weight_power,
    weight_powlog,
)
from .criteria import (
    ConditionReport,
    DerivedWeight,
    derived_weight,
    hardy_condition,
    sgg_condition,
    stgg_condition,
    tgg_condition,
)
from .verify import (
    DemoOperator,
    LemmaVerdict,
    sample_steps,
    verify_endpoints,
    verify_interpolation,
    verify_one_star,
    verify_starfalls,
)
from .descriptors import (
    DescriptorError,
    fn_to_json,
    parse_fn,
    parse_profile,
    parse_space,
    parse_weight,
    profile_to_json,
    space_to_json,
    weight_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "BConsensus",
    "BReport",
    "CharacterizationDisagreement",
    "ClosedFormQC",
    "ComplementaryQC",
    "ConditionReport",
    "CumulativeFn",
    "DemoOperator",
    "DerivedWeight",
    "DescriptorError",
    "Domain",
    "DomainMismatch",
    "GammaSpace",
    "LemmaVerdict",
    "MonotoneStepFn",
    "NonIntegrable",
    "NonIntegrableHead",
    "NormValue",
    "NotQuasiconcave",
    "OpResult",
    "PiecewiseFn",
    "PreconditionViolated",
    "RearToolError",
    "SampledQC",
    "StepFn",
    "SupResult",
    "TrivialSpace",
    "Weight",
    "apply_S",
    "apply_T",
    "b_check",
    "b_consensus",
    "chi",
    "closed_form",
    "complementary",
    "cumulative",
    "derived_weight",
    "fn_to_json",
    "from_samples",
    "gamma_fundamental",
    "gamma_norm",
    "gamma_norm_of_decreasing",
    "hardy_condition",
    "integrate",
    "l1_norm",
    "linf_norm",
    "linfty_embedding_check",
    "log_grid",
    "marcinkiewicz_norm",
    "marcinkiewicz_norm_of_decreasing",
    "maximal",
    "measure_above",
    "parse_fn",
    "parse_profile",
    "parse_space",
    "parse_weight",
    "profile_to_json",
    "rearrange",
    "s_bracket",
    "s_nontriviality_check",
    "sample_steps",
    "sgg_condition",
    "space_to_json",
    "stgg_condition",
    "suffix_function",
    "t_bracket",
    "tgg_condition",
    "verify_endpoints",
    "verify_interpolation",
    "verify_one_star",
    "verify_starfalls",
    "weight_from_fn",
    "weight_from_pieces",
    "weight_power",
    "weight_powlog",
    "weight_to_json",
    "weighted_sup",
    "__version__",
]
