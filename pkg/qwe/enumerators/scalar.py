"""Scalar code enumerators by stabilizer/normalizer counting, and distance rules."""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..codes.stabilizer import (
    DEFAULT_GROUP_CAP,
    LogicalFrame,
    StabilizerGroup,
    encoding_state,
    logical_operators,
    symplectic_matrix,
    validate_frame,
)
from ..errors import InputValidationError, ResourceCapError
from ..observability.metrics import get_metrics
from ..polynomials.enum_poly import EnumPoly, weight_list
from ..polynomials.schemes import SchemeKind, WeightScheme

logger = logging.getLogger(__name__)

# rows of the span enumerated per numpy block
_BLOCK = 1 << 14

UNDETECTED = "undetected"


class Convention(str, Enum):
    COUNT = "count"
    RAW = "raw"

    @classmethod
    def parse(cls, value: "str | Convention") -> "Convention":
        try:
            return cls(value)
        except ValueError:
            raise InputValidationError(f"Unknown convention {value!r} (choose count or raw)")


@dataclass(frozen=True)
class EnumeratorPair:
    """A and B of one code in a stated normalization.

    count: a_d = |S ∩ 𝔈ⁿ[d]|, b_d = |N ∩ 𝔈ⁿ[d]|; raw: a = q^{2k}·count_a, b = q^k·count_b.
    """

    a: EnumPoly
    b: EnumPoly
    n: int
    k: int
    q: int = 2
    convention: Convention = Convention.COUNT

    @property
    def scheme(self) -> WeightScheme:
        return self.a.scheme

    def to_count(self) -> "EnumeratorPair":
        if self.convention is Convention.COUNT:
            return self
        return replace(
            self,
            a=self.a / self.q ** (2 * self.k),
            b=self.b / self.q**self.k,
            convention=Convention.COUNT,
        )

    def to_raw(self) -> "EnumeratorPair":
        if self.convention is Convention.RAW:
            return self
        return replace(
            self,
            a=self.a.scale(self.q ** (2 * self.k)),
            b=self.b.scale(self.q**self.k),
            convention=Convention.RAW,
        )

    def in_convention(self, convention: "str | Convention") -> "EnumeratorPair":
        convention = Convention.parse(convention)
        return self.to_count() if convention is Convention.COUNT else self.to_raw()


def _site_monomial_matrix(scheme: WeightScheme) -> np.ndarray:
    return np.array(scheme.site_monomials, dtype=np.int64)


def span_weights(
    rows: np.ndarray,
    q: int,
    n: int,
    scheme: WeightScheme,
    threads: int = 1,
) -> Counter:
    """Histogram of scheme exponent vectors over the Z_q-span of symplectic rows."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, 2 * n) % q
    r = rows.shape[0]
    monomials = _site_monomial_matrix(scheme)

    suffix = 0
    while suffix < r and q ** (suffix + 1) <= _BLOCK:
        suffix += 1
    prefix_rows, suffix_rows = rows[: r - suffix], rows[r - suffix:]
    combos = np.array(list(product(range(q), repeat=suffix)), dtype=np.int64).reshape(q**suffix, suffix)
    suffix_span = (combos @ suffix_rows) % q

    def work(offset: Tuple[int, ...]) -> Counter:
        shift = (np.array(offset, dtype=np.int64) @ prefix_rows) % q if len(offset) else 0
        block = (suffix_span + shift) % q
        codes = block[:, :n] * q + block[:, n:]
        exps = np.zeros((block.shape[0], scheme.size), dtype=np.int64)
        for code in range(q * q):
            exps += np.outer((codes == code).sum(axis=1), monomials[code])
        unique, counts = np.unique(exps, axis=0, return_counts=True)
        return Counter({tuple(int(e) for e in u): int(c) for u, c in zip(unique, counts)})

    offsets = list(product(range(q), repeat=r - suffix))
    if threads > 1 and len(offsets) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(work, offsets))
    else:
        partials = [work(o) for o in offsets]
    total: Counter = Counter()
    for partial in partials:
        total.update(partial)
    get_metrics().group_elements_total.inc(q**r)
    return total


def _poly(scheme: WeightScheme, histogram: Counter) -> EnumPoly:
    return EnumPoly(scheme, dict(histogram))


def enumerators_by_counting(
    group: StabilizerGroup,
    scheme: WeightScheme,
    frame: Optional[LogicalFrame] = None,
    cap: int = DEFAULT_GROUP_CAP,
    threads: int = 1,
) -> EnumeratorPair:
    """Count-convention A and B; B by normalizer counting, or MacWilliams above the cap."""
    from .macwilliams import transform_for

    q, n, k = group.q, group.n, group.k
    if scheme.q != q:
        raise InputValidationError(f"Scheme {scheme} does not match code dimension q={q}")
    if group.order > cap:
        raise ResourceCapError(f"Stabilizer group of order {group.order} exceeds cap {cap}")
    stabilizer_rows = symplectic_matrix(group.generators, q, n)
    a = _poly(scheme, span_weights(stabilizer_rows, q, n, scheme, threads))

    if q ** (n + k) <= cap:
        frame = validate_frame(group, frame) if frame else logical_operators(group)
        normalizer_rows = np.vstack(
            [stabilizer_rows, symplectic_matrix(frame.x + frame.z, q, n)]
        ) if k else stabilizer_rows
        b = _poly(scheme, span_weights(normalizer_rows, q, n, scheme, threads))
        logger.info(f"Counted enumerators of {group} in scheme {scheme}")
    else:
        b = transform_for(scheme).apply(a).scale(q**k)
        logger.info(f"Normalizer of order {q ** (n + k)} above cap; B of {group} via MacWilliams")
    return EnumeratorPair(a=a, b=b, n=n, k=k, q=q)


def shor_laflamme_weights(poly: EnumPoly, n: Optional[int] = None) -> List:
    """[A_0, …, A_n] from a Shor-Laflamme or complete polynomial."""
    kind = poly.scheme.kind
    if kind is SchemeKind.SHOR_LAFLAMME:
        return weight_list(poly, n)
    if kind is SchemeKind.COMPLETE:
        from .macwilliams import collapse

        return weight_list(collapse(poly, SchemeKind.SHOR_LAFLAMME), n)
    raise InputValidationError(f"Weights per total degree are not recoverable from scheme {poly.scheme}")


def _pad(values: Sequence, length: int) -> List:
    return list(values) + [0] * (length - len(values))


def distance(pair: EnumeratorPair) -> Union[int, str]:
    """Smallest d ≥ 1 with b_d > a_d (k ≥ 1) or a_d > 0 (k = 0)."""
    count = pair.to_count()
    a = _pad(shor_laflamme_weights(count.a, pair.n), pair.n + 1)
    b = _pad(shor_laflamme_weights(count.b, pair.n), pair.n + 1)
    for d in range(1, pair.n + 1):
        if pair.k == 0 and a[d] > 0:
            return d
        if pair.k > 0 and b[d] > a[d]:
            return d
    return UNDETECTED


def purity_check(pair: EnumeratorPair) -> bool:
    count = pair.to_count()
    return count.a == count.b


def encoded_state_identity(pair: EnumeratorPair, state_a: EnumPoly) -> Dict[int, Tuple]:
    """Mismatches of A_d(state) = a_d + b_{d-1} - a_{d-1} (count form) for a k=1 code.

    Returns {d: (expected, actual)} for every failing d; empty means the identity holds.
    """
    if pair.k != 1:
        raise InputValidationError(f"Encoded-state identity applies to k=1 codes, got k={pair.k}")
    count = pair.to_count()
    size = pair.n + 2
    a = _pad(shor_laflamme_weights(count.a), size)
    b = _pad(shor_laflamme_weights(count.b), size)
    state = _pad(shor_laflamme_weights(state_a), size)
    failures = {}
    for d in range(size):
        expected = a[d] + (b[d - 1] - a[d - 1] if d else 0)
        if Fraction(expected) != Fraction(state[d]):
            failures[d] = (expected, state[d])
    return failures


def distance_from_encoding_state(state_a: EnumPoly, code_a: EnumPoly, n: int) -> Union[int, str]:
    """Smallest d with A_{d+1}(state) > a_{d+1}(code) in count form."""
    state = _pad(shor_laflamme_weights(state_a), n + 2)
    code = _pad(shor_laflamme_weights(code_a), n + 2)
    for d in range(1, n + 1):
        if state[d + 1] > code[d + 1]:
            return d
    return UNDETECTED


def encoding_state_enumerator(
    group: StabilizerGroup,
    scheme: WeightScheme,
    frame: Optional[LogicalFrame] = None,
    cap: int = DEFAULT_GROUP_CAP,
    threads: int = 1,
) -> EnumPoly:
    state = encoding_state(group, frame)
    rows = symplectic_matrix(state.generators, state.q, state.n)
    return _poly(scheme, span_weights(rows, state.q, state.n, scheme, threads))
