"""Code enumerators, distance and cross-checks from a contracted network."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from ..enumerators.macwilliams import transform_for
from ..enumerators.scalar import Convention, EnumeratorPair, distance, purity_check
from ..enumerators.tensor import TensorEnumerator, factoring_legs
from ..errors import ConsistencyError, NonRationalCoefficientError
from ..polynomials.schemes import SchemeKind
from .executor import ContractionOutcome
from .network import TensorNetwork

logger = logging.getLogger(__name__)

DISTANCE_SCHEMES = (SchemeKind.SHOR_LAFLAMME, SchemeKind.COMPLETE)


@dataclass
class CodeReport:
    pair: EnumeratorPair
    distance: Optional[Union[int, str]]
    pure: bool
    tensor: TensorEnumerator
    mw_cross_check: bool = True
    factoring: Dict[str, List[str]] = field(default_factory=dict)


def _rational(poly, what: str):
    if not poly.is_rational():
        raise NonRationalCoefficientError(f"{what} kept an irrational coefficient: {poly}")
    return poly.rationalized()


def code_report(network: TensorNetwork, outcome: ContractionOutcome) -> CodeReport:
    """Count-convention a = A(I,I) and b = Σ_P A(P,P), normalized to a_0 = 1.

    b is recomputed from a by the MacWilliams transform; any disagreement is fatal.
    """
    tensor = outcome.tensor.normalized()
    q, n, k = network.q, network.n, network.k
    a = _rational(tensor.identity_entry(), "Code enumerator A")
    b = _rational(tensor.diagonal_sum(), "Code enumerator B") if k else a

    via_mw = transform_for(network.scheme).apply(a).scale(q**k)
    if via_mw != b:
        logger.error(f"MacWilliams cross-check failed for {network.name}: diagonal sum {b}, transform {via_mw}")
        raise ConsistencyError(f"B from the logical diagonal ({b}) disagrees with the MacWilliams transform of A ({via_mw})")

    pair = EnumeratorPair(a=a, b=b, n=n, k=k, q=q, convention=Convention.COUNT)
    found = distance(pair) if network.scheme.kind in DISTANCE_SCHEMES else None

    expected = network.expected
    if expected is not None:
        if expected.n is not None and expected.n != n:
            raise ConsistencyError(f"Network declares n={expected.n}, contraction has n={n}")
        if expected.k is not None and expected.k != k:
            raise ConsistencyError(f"Network declares k={expected.k}, contraction has k={k}")
        if expected.distance is not None and found is not None and expected.distance != found:
            logger.error(f"Distance discrepancy for {network.name}: declared {expected.distance}, computed {found}")
            raise ConsistencyError(f"Network declares distance {expected.distance}, enumerators give {found}")

    factoring = {}
    for lego_id, lego in network.legos.items():
        legs = factoring_legs(lego)
        if legs:
            factoring[lego_id] = legs
    logger.info(f"Code report for {network.name or 'network'}: n={n}, k={k}, distance={found}")
    return CodeReport(
        pair=pair,
        distance=found,
        pure=purity_check(pair),
        tensor=tensor,
        factoring=factoring,
    )
