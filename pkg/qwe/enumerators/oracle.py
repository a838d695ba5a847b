"""Brute-force enumerators straight from the trace definitions, on dense matrices.

A_d = Σ_{wt(E)=d} Tr(E†M₁) Tr(E M₂) and B_d = Σ_{wt(E)=d} Tr(E†M₁ E M₂), with E
running over all X^a Z^b. Only meant for small n; results are snapped to
rationals with denominator q^{2n}.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Tuple

import numpy as np

from ..algebra.pauli import to_matrix
from ..codes.stabilizer import StabilizerGroup, enumerate_group
from ..errors import ConsistencyError, InputValidationError
from ..polynomials.enum_poly import EnumPoly
from ..polynomials.schemes import WeightScheme
from .scalar import Convention, EnumeratorPair

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-10
RESIDUAL_TOLERANCE = 1e-6


@dataclass(frozen=True)
class OracleResult:
    pair: EnumeratorPair
    residual: float


def code_projector(group: StabilizerGroup) -> np.ndarray:
    """Π = q^{-(n-k)} Σ_{S∈𝒮} S, the projector onto the code space."""
    dim = group.q**group.n
    total = np.zeros((dim, dim), dtype=complex)
    for element in enumerate_group(group):
        total += to_matrix(element)
    return total / group.order


def _digits(q: int, n: int) -> np.ndarray:
    """Base-q digits of every basis index, first site most significant."""
    index = np.arange(q**n)
    return np.stack([(index // q ** (n - 1 - s)) % q for s in range(n)], axis=1) if n else np.zeros((1, 0), int)


def _snap(value: complex, denominator: int) -> Tuple[Fraction, float]:
    scaled = value.real * denominator
    nearest = round(scaled)
    residual = max(abs(scaled - nearest) / denominator, abs(value.imag))
    return Fraction(nearest, denominator), residual


def enumerators_dense_oracle(
    m1: np.ndarray,
    m2: np.ndarray,
    scheme: WeightScheme,
    k: int = 0,
    max_sites: int = 7,
) -> OracleResult:
    """Raw-convention A and B of Hermitian M₁, M₂ by summing over the whole Pauli basis."""
    q = scheme.q
    m1 = np.asarray(m1, dtype=complex)
    m2 = np.asarray(m2, dtype=complex)
    if m1.shape != m2.shape or m1.ndim != 2 or m1.shape[0] != m1.shape[1]:
        raise InputValidationError(f"Oracle needs two equal square matrices, got {m1.shape} and {m2.shape}")
    dim = m1.shape[0]
    n = 0
    while q**n < dim:
        n += 1
    if q**n != dim:
        raise InputValidationError(f"Matrix side {dim} is not a power of q={q}")
    if n > max_sites:
        raise InputValidationError(f"Oracle limited to {max_sites} sites (matrix side {q ** max_sites}), got n={n}")
    for name, m in (("M1", m1), ("M2", m2)):
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOLERANCE:
            raise InputValidationError(f"{name} is not Hermitian")

    digits = _digits(q, n)
    places = q ** np.arange(n - 1, -1, -1) if n else np.zeros(0, int)
    zeta = np.exp(2j * np.pi / q)
    monomials = np.array(scheme.site_monomials, dtype=np.int64)

    sums_a: Dict[Tuple[int, ...], complex] = {}
    sums_b: Dict[Tuple[int, ...], complex] = {}
    for xs in product(range(q), repeat=n):
        perm = ((digits + np.array(xs, dtype=int)) % q) @ places if n else np.zeros(1, int)
        for zs in product(range(q), repeat=n):
            # E|j> = ζ^{z·j} |j + x>: column j carries phase[j] in row perm[j]
            phase = zeta ** (digits @ np.array(zs, dtype=int)) if n else np.ones(1)
            cols = np.arange(dim)
            # Tr(E†M) = Σ_j conj(phase_j) M[perm_j, j]
            tr1 = np.sum(np.conj(phase) * m1[perm, cols])
            tr2_dag = np.sum(np.conj(phase) * m2[perm, cols])
            value_a = tr1 * np.conj(tr2_dag)
            # (E†M₁E)_{ij} = conj(phase_i) phase_j M₁[perm_i, perm_j]
            conjugated = np.conj(phase)[:, None] * phase[None, :] * m1[np.ix_(perm, perm)]
            value_b = np.sum(conjugated * m2.T)
            codes = [a * q + b for a, b in zip(xs, zs)]
            exps = tuple(int(e) for e in monomials[codes].sum(axis=0)) if n else (0,) * scheme.size
            sums_a[exps] = sums_a.get(exps, 0) + value_a
            sums_b[exps] = sums_b.get(exps, 0) + value_b

    denominator = q ** (2 * n)
    residual = 0.0
    terms_a, terms_b = {}, {}
    for sums, terms in ((sums_a, terms_a), (sums_b, terms_b)):
        for exps, value in sums.items():
            snapped, error = _snap(complex(value), denominator)
            residual = max(residual, error)
            if snapped:
                terms[exps] = snapped
    if residual > RESIDUAL_TOLERANCE:
        raise ConsistencyError(f"Oracle rounding residual {residual:.3g} exceeds {RESIDUAL_TOLERANCE}")
    logger.debug(f"Dense oracle on n={n}, q={q}: residual {residual:.3g}")
    pair = EnumeratorPair(
        a=EnumPoly(scheme, terms_a).map_coefficients(_tidy),
        b=EnumPoly(scheme, terms_b).map_coefficients(_tidy),
        n=n,
        k=k,
        q=q,
        convention=Convention.RAW,
    )
    return OracleResult(pair=pair, residual=residual)


def _tidy(value: Fraction):
    return value.numerator if value.denominator == 1 else value


def oracle_for_code(
    group: StabilizerGroup, scheme: WeightScheme, max_sites: int = 7
) -> OracleResult:
    """Oracle with M₁ = M₂ = Π(group), the unnormalized code projector."""
    if group.n > max_sites:
        raise InputValidationError(f"Oracle refuses n={group.n}: limited to {max_sites} sites of dimension {group.q}")
    projector = code_projector(group)
    return enumerators_dense_oracle(projector, projector, scheme, k=group.k, max_sites=max_sites)
