"""Dense state vectors of small networks, for checking contractions against the oracle."""
import logging
from typing import Optional

import numpy as np

from ..codes.stabilizer import StabilizerGroup
from ..enumerators.oracle import OracleResult, code_projector, enumerators_dense_oracle
from ..errors import InputValidationError
from ..polynomials.schemes import WeightScheme
from .network import TensorNetwork

logger = logging.getLogger(__name__)

MAX_DENSE_LEGS = 16


def state_vector(group: StabilizerGroup) -> np.ndarray:
    """The (unit) state stabilized by a k = 0 group, up to a global phase."""
    if group.k:
        raise InputValidationError(f"{group} is a code, not a state")
    projector = code_projector(group)
    column = int(np.argmax(np.linalg.norm(projector, axis=0)))
    vector = projector[:, column]
    return vector / np.linalg.norm(vector)


def network_state(network: TensorNetwork) -> np.ndarray:
    """Contract the legos' state vectors, pairing traced legs with Σ_i |i i⟩."""
    if network.k:
        raise InputValidationError("Dense contraction handles networks without logical legs only")
    q = network.q
    total_legs = sum(lego.group.n for lego in network.legos.values())
    if total_legs > MAX_DENSE_LEGS:
        raise InputValidationError(f"Dense contraction limited to {MAX_DENSE_LEGS} legs, network has {total_legs}")

    tensor = np.ones((), dtype=complex)
    labels = []
    for lego in network.legos.values():
        piece = state_vector(lego.group).reshape((q,) * lego.group.n)
        tensor = np.tensordot(tensor, piece, axes=0)
        labels.extend(lego.legs)
    for a, b in network.contractions:
        i, j = labels.index(a), labels.index(b)
        tensor = np.trace(tensor, axis1=i, axis2=j)
        labels = [leg for leg in labels if leg not in (a, b)]
    tensor = np.transpose(tensor, [labels.index(leg) for leg in network.physical])
    vector = tensor.reshape(-1)
    norm = np.linalg.norm(vector)
    if norm < 1e-12:
        raise InputValidationError("Network contracts to the zero vector")
    return vector / norm


def network_oracle(network: TensorNetwork, scheme: Optional[WeightScheme] = None, max_sites: int = 7) -> OracleResult:
    vector = network_state(network)
    density = np.outer(vector, vector.conj())
    logger.debug(f"Dense oracle on network {network.name} with {network.n} sites")
    return enumerators_dense_oracle(density, density, scheme or network.scheme, k=0, max_sites=max_sites)
