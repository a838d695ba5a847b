from .macwilliams import (
    MWTransform,
    collapse,
    complete_transform,
    double_transform,
    mw_complete,
    mw_double,
    mw_refined_double,
    mw_scalar,
    refined_double_transform,
    scalar_transform,
    tensor_macwilliams,
    transform_for,
    verify_phi_condition,
)
from .oracle import OracleResult, code_projector, enumerators_dense_oracle, oracle_for_code
from .scalar import (
    UNDETECTED,
    Convention,
    EnumeratorPair,
    distance,
    distance_from_encoding_state,
    encoded_state_identity,
    encoding_state_enumerator,
    enumerators_by_counting,
    purity_check,
    shor_laflamme_weights,
)
from .tensor import (
    LegoBlock,
    TensorEnumerator,
    contract,
    factoring_legs,
    from_lego,
    lambda_clifford,
    psi_transform,
    tensor_product,
    trace_legs,
    weighted_trace,
)

__all__ = [
    "MWTransform",
    "collapse",
    "complete_transform",
    "double_transform",
    "mw_complete",
    "mw_double",
    "mw_refined_double",
    "mw_scalar",
    "refined_double_transform",
    "scalar_transform",
    "tensor_macwilliams",
    "transform_for",
    "verify_phi_condition",
    "OracleResult",
    "code_projector",
    "enumerators_dense_oracle",
    "oracle_for_code",
    "UNDETECTED",
    "Convention",
    "EnumeratorPair",
    "distance",
    "distance_from_encoding_state",
    "encoded_state_identity",
    "encoding_state_enumerator",
    "enumerators_by_counting",
    "purity_check",
    "shor_laflamme_weights",
    "LegoBlock",
    "TensorEnumerator",
    "contract",
    "factoring_legs",
    "from_lego",
    "lambda_clifford",
    "psi_transform",
    "tensor_product",
    "trace_legs",
    "weighted_trace",
]
