"""Tensor enumerators A^{(J)} keyed by basis-element pairs on open legs."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.clifford import SingleSiteClifford
from ..algebra.cyclotomic import as_rational, conjugate, root_of_unity, tidy
from ..algebra.pauli import (
    PauliString,
    basis_element,
    dagger,
    format_sites,
    mul,
    reference_phase,
    site_partner,
    site_trace_table,
)
from ..codes.stabilizer import (
    DEFAULT_GROUP_CAP,
    StabilizerGroup,
    enumerate_group,
    prime_field,
    symplectic_matrix,
)
from ..errors import ConsistencyError, InputValidationError, ResourceCapError
from ..observability.metrics import get_metrics
from ..polynomials.enum_poly import EnumPoly, Terms, _accumulate
from ..polynomials.schemes import WeightScheme

logger = logging.getLogger(__name__)

Codes = Tuple[int, ...]
Key = Tuple[Codes, Codes]

# rough per-term footprint used for memory estimates
_TERM_BYTES = 160
_ENTRY_BYTES = 240


def _merge(target: Dict[Key, Terms], key: Key, poly: EnumPoly, factor=1) -> None:
    terms = target.setdefault(key, {})
    for exps, coeff in poly.terms.items():
        _accumulate(terms, exps, coeff * factor if factor != 1 else coeff)
    if not terms:
        del target[key]


@dataclass(frozen=True)
class LegoBlock:
    """A stabilizer group whose sites carry leg labels.

    Network legos are states (k = 0); a code with k > 0 stands for its projector.
    """

    id: str
    group: StabilizerGroup
    legs: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))
        if len(self.legs) != self.group.n:
            raise InputValidationError(f"Lego {self.id} has {len(self.legs)} labels for {self.group.n} sites")
        if len(set(self.legs)) != len(self.legs):
            raise InputValidationError(f"Lego {self.id} has duplicate leg labels")


@dataclass
class TensorEnumerator:
    """Σ_{E,E'} e_{E,E'} A(E,E') over the open legs, with EnumPoly coefficients.

    Keys hold one single-site code a*q + b per open leg for E and for E'.
    """

    scheme: WeightScheme
    legs: Tuple[str, ...]
    entries: Dict[Key, EnumPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.legs = tuple(self.legs)
        if len(set(self.legs)) != len(self.legs):
            raise InputValidationError(f"Duplicate open legs in {self.legs}")
        m = len(self.legs)
        for (e, e2), poly in list(self.entries.items()):
            if len(e) != m or len(e2) != m:
                raise InputValidationError(f"Entry key {(e, e2)} does not match {m} open legs")
            if not poly:
                del self.entries[(e, e2)]

    @property
    def q(self) -> int:
        return self.scheme.q

    @property
    def rank(self) -> int:
        return len(self.legs)

    @classmethod
    def scalar(cls, poly: EnumPoly) -> "TensorEnumerator":
        return cls(poly.scheme, (), {((), ()): poly})

    @classmethod
    def _from_terms(cls, scheme: WeightScheme, legs, merged: Dict[Key, Terms]) -> "TensorEnumerator":
        entries = {}
        for key, terms in merged.items():
            clean = {e: tidy(c) for e, c in terms.items() if c}
            if clean:
                entries[key] = EnumPoly._wrap(scheme, clean)
        return cls(scheme, tuple(legs), entries)

    def entry(self, e: Sequence[int], e2: Optional[Sequence[int]] = None) -> EnumPoly:
        e2 = e if e2 is None else e2
        return self.entries.get((tuple(e), tuple(e2)), EnumPoly.zero(self.scheme))

    def identity_entry(self) -> EnumPoly:
        zero = (0,) * self.rank
        return self.entry(zero, zero)

    def to_scalar(self) -> EnumPoly:
        if self.rank:
            raise InputValidationError(f"Enumerator still has open legs {self.legs}")
        return self.entry((), ())

    def estimated_bytes(self) -> int:
        return sum(_ENTRY_BYTES + _TERM_BYTES * len(p.terms) for p in self.entries.values())

    def is_diagonal(self) -> bool:
        return all(e == e2 for e, e2 in self.entries)

    def reduced(self) -> "TensorEnumerator":
        """Diagonal part of the enumerator."""
        return TensorEnumerator(
            self.scheme, self.legs, {k: p for k, p in self.entries.items() if k[0] == k[1]}
        )

    def is_hermitian(self) -> bool:
        """A(E, E') equals the conjugate of A(E', E) for every pair."""
        for (e, e2), poly in self.entries.items():
            partner = self.entries.get((e2, e))
            if partner is None or partner.map_coefficients(conjugate) != poly:
                return False
        return True

    def normalized(self) -> "TensorEnumerator":
        """Scale so the identity entry has constant term 1."""
        constant = self.identity_entry().constant_term()
        if not constant:
            raise InputValidationError("Identity entry has no constant term; cannot normalize")
        factor = Fraction(1) / Fraction(as_rational(constant))
        entries = {k: p.scale(factor).map_coefficients(tidy) for k, p in self.entries.items()}
        return TensorEnumerator(self.scheme, self.legs, entries)

    def reordered(self, legs: Sequence[str]) -> "TensorEnumerator":
        legs = tuple(legs)
        if sorted(legs) != sorted(self.legs):
            raise InputValidationError(f"Cannot reorder legs {list(self.legs)} as {list(legs)}")
        order = [self.legs.index(leg) for leg in legs]
        entries = {
            (tuple(e[i] for i in order), tuple(e2[i] for i in order)): p for (e, e2), p in self.entries.items()
        }
        return TensorEnumerator(self.scheme, legs, entries)

    def diagonal_sum(self) -> EnumPoly:
        """Σ_P A(P, P) over all open-leg basis elements."""
        total = EnumPoly.zero(self.scheme)
        for (e, e2), poly in self.entries.items():
            if e == e2:
                total = total + poly
        return total

    def map_polynomials(self, fn) -> "TensorEnumerator":
        return TensorEnumerator(self.scheme, self.legs, {k: fn(p) for k, p in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorEnumerator):
            return NotImplemented
        return self.scheme == other.scheme and self.legs == other.legs and self.entries == other.entries

    def dump(self) -> str:
        """One line per entry: "E | E' | poly"."""
        q = self.q
        lines = []
        for (e, e2), poly in sorted(self.entries.items()):
            left = format_sites(q, [c // q for c in e], [c % q for c in e]) or "-"
            right = format_sites(q, [c // q for c in e2], [c % q for c in e2]) or "-"
            lines.append(f"{left} | {right} | {poly}")
        return "\n".join(lines)

    def __str__(self):
        return f"TensorEnumerator[legs={list(self.legs)}, entries={len(self.entries)}]"


def _off_leg_monomial(scheme: WeightScheme, codes: Iterable[int]) -> Tuple[int, ...]:
    exps = [0] * scheme.size
    for c in codes:
        for i, e in enumerate(scheme.site_monomials[c]):
            exps[i] += e
    return tuple(exps)


def from_lego(
    lego: LegoBlock,
    tensor_legs: Sequence[str],
    scheme: WeightScheme,
    cap: int = DEFAULT_GROUP_CAP,
) -> TensorEnumerator:
    """Tensor enumerator on `tensor_legs`; every other leg is weight-reduced at once."""
    group = lego.group
    q = group.q
    if scheme.q != q:
        raise InputValidationError(f"Scheme {scheme} does not match lego {lego.id} with q={q}")
    unknown = [leg for leg in tensor_legs if leg not in lego.legs]
    if unknown:
        raise InputValidationError(f"Lego {lego.id} has no legs {unknown}")
    tensor_idx = [lego.legs.index(leg) for leg in tensor_legs]
    off_idx = [i for i in range(group.n) if i not in tensor_idx]

    buckets: Dict[Codes, List[Tuple[Codes, int]]] = {}
    count = 0
    for element in enumerate_group(group, cap):
        codes = element.pauli.codes()
        on = tuple(codes[i] for i in tensor_idx)
        relative = element.phase - sum(reference_phase(q, c // q, c % q) for c in on)
        buckets.setdefault(tuple(codes[i] for i in off_idx), []).append((on, relative))
        count += 1
    get_metrics().group_elements_total.inc(count)

    merged: Dict[Key, Terms] = {}
    order = 4 * q
    for off, members in buckets.items():
        exps = _off_leg_monomial(scheme, off)
        for e, s in members:
            for e2, s2 in members:
                terms = merged.setdefault((e, e2), {})
                _accumulate(terms, exps, root_of_unity(order, s - s2))
    result = TensorEnumerator._from_terms(scheme, tensor_legs, merged)
    logger.debug(
        f"Lego {lego.id}: {count} group elements, {len(buckets)} off-leg classes, {len(result.entries)} entries"
    )
    return result


def tensor_product(left: TensorEnumerator, right: TensorEnumerator) -> TensorEnumerator:
    if left.scheme != right.scheme:
        raise InputValidationError(f"Scheme mismatch: {left.scheme} vs {right.scheme}")
    clash = set(left.legs) & set(right.legs)
    if clash:
        raise InputValidationError(f"Leg labels used twice: {sorted(clash)}")
    entries = {}
    for (e, e2), p in left.entries.items():
        for (f, f2), p2 in right.entries.items():
            entries[(e + f, e2 + f2)] = p * p2
    return TensorEnumerator(left.scheme, left.legs + right.legs, entries)


def _trace_phase(q: int, pairs: Iterable[Tuple[int, int]], primed: Iterable[Tuple[int, int]]) -> int:
    table = site_trace_table(q)
    return sum(table[a][b] for a, b in pairs) - sum(table[a][b] for a, b in primed)


def trace_legs(t: TensorEnumerator, leg_j: str, leg_k: str) -> TensorEnumerator:
    """Contract two open legs of one enumerator against a Bell pair."""
    if leg_j == leg_k:
        raise InputValidationError(f"Cannot trace leg {leg_j} with itself")
    for leg in (leg_j, leg_k):
        if leg not in t.legs:
            raise InputValidationError(f"Unknown leg {leg}; open legs are {list(t.legs)}")
    q = t.q
    partner = site_partner(q)
    j, k = t.legs.index(leg_j), t.legs.index(leg_k)
    keep = [i for i in range(t.rank) if i not in (j, k)]
    merged: Dict[Key, Terms] = {}
    for (e, e2), poly in t.entries.items():
        if e[k] != partner[e[j]] or e2[k] != partner[e2[j]]:
            continue
        phase = _trace_phase(q, [(e[j], e[k])], [(e2[j], e2[k])])
        key = (tuple(e[i] for i in keep), tuple(e2[i] for i in keep))
        _merge(merged, key, poly, root_of_unity(4 * q, phase))
    return TensorEnumerator._from_terms(t.scheme, [t.legs[i] for i in keep], merged)


def _chunks(items: List, count: int) -> List[List]:
    size = max(1, -(-len(items) // max(1, count)))
    return [items[i:i + size] for i in range(0, len(items), size)]


def contract(
    left: TensorEnumerator,
    right: TensorEnumerator,
    joins: Sequence[Tuple[str, str]],
    threads: int = 1,
) -> TensorEnumerator:
    """tensor_product followed by trace_legs on every join, without building the product."""
    if left.scheme != right.scheme:
        raise InputValidationError(f"Scheme mismatch: {left.scheme} vs {right.scheme}")
    clash = set(left.legs) & set(right.legs)
    if clash:
        raise InputValidationError(f"Leg labels used twice: {sorted(clash)}")
    q = left.q
    partner = site_partner(q)
    try:
        li = [left.legs.index(a) for a, _ in joins]
        ri = [right.legs.index(b) for _, b in joins]
    except ValueError as e:
        raise InputValidationError(f"Join references a leg that is not open: {e}") from e
    left_keep = [i for i in range(left.rank) if i not in li]
    right_keep = [i for i in range(right.rank) if i not in ri]

    index: Dict[Key, List[Tuple[Key, EnumPoly]]] = {}
    for (f, f2), poly in right.entries.items():
        index.setdefault((tuple(f[i] for i in ri), tuple(f2[i] for i in ri)), []).append(((f, f2), poly))

    order = 4 * q

    def work(chunk):
        merged: Dict[Key, Terms] = {}
        for (e, e2), poly in chunk:
            needed = (tuple(partner[e[i]] for i in li), tuple(partner[e2[i]] for i in li))
            for (f, f2), other in index.get(needed, ()):
                phase = _trace_phase(
                    q,
                    [(e[a], f[b]) for a, b in zip(li, ri)],
                    [(e2[a], f2[b]) for a, b in zip(li, ri)],
                )
                key = (
                    tuple(e[i] for i in left_keep) + tuple(f[i] for i in right_keep),
                    tuple(e2[i] for i in left_keep) + tuple(f2[i] for i in right_keep),
                )
                _merge(merged, key, poly * other, root_of_unity(order, phase))
        return merged

    chunks = _chunks(list(left.entries.items()), threads)
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(work, chunks))
    else:
        partials = [work(c) for c in chunks]

    merged: Dict[Key, Terms] = {}
    for partial in partials:
        for key, terms in partial.items():
            target = merged.setdefault(key, {})
            for exps, coeff in terms.items():
                _accumulate(target, exps, coeff)
    legs = [left.legs[i] for i in left_keep] + [right.legs[i] for i in right_keep]
    return TensorEnumerator._from_terms(left.scheme, legs, merged)


def weighted_trace(t: TensorEnumerator, legs_to_reduce: Optional[Sequence[str]] = None) -> TensorEnumerator:
    """Reduce legs to scheme weights: diagonal parts give monomials, off-diagonal parts vanish."""
    legs_to_reduce = list(t.legs if legs_to_reduce is None else legs_to_reduce)
    unknown = [leg for leg in legs_to_reduce if leg not in t.legs]
    if unknown:
        raise InputValidationError(f"Cannot reduce legs {unknown}; open legs are {list(t.legs)}")
    reduce_idx = [t.legs.index(leg) for leg in legs_to_reduce]
    keep = [i for i in range(t.rank) if i not in reduce_idx]
    merged: Dict[Key, Terms] = {}
    for (e, e2), poly in t.entries.items():
        if any(e[i] != e2[i] for i in reduce_idx):
            continue
        weight = EnumPoly.monomial(t.scheme, _off_leg_monomial(t.scheme, [e[i] for i in reduce_idx]))
        _merge(merged, (tuple(e[i] for i in keep), tuple(e2[i] for i in keep)), poly * weight)
    return TensorEnumerator._from_terms(t.scheme, [t.legs[i] for i in keep], merged)


def psi_transform(t: TensorEnumerator, max_rank: int = 6) -> TensorEnumerator:
    """e_{E,E'} ↦ q^{-2m} Σ_{F,F'} Tr(F† E F' E'†) e_{F,F'} on the open legs."""
    m, q = t.rank, t.q
    if m > max_rank:
        raise ResourceCapError(f"Ψ transform on {m} legs exceeds rank cap {max_rank}")
    if m == 0:
        return TensorEnumerator(t.scheme, (), dict(t.entries))
    basis = {
        codes: basis_element(PauliString.from_codes(q, codes))
        for codes in product(range(q * q), repeat=m)
    }
    scale = Fraction(1, q**m)
    order = 4 * q
    merged: Dict[Key, Terms] = {}
    for (e, e2), poly in t.entries.items():
        big_e, big_e2 = basis[e], basis[e2]
        left = dagger(big_e)
        right_dagger = dagger(big_e2)
        for f_codes, big_f in basis.items():
            f2 = mul(mul(left, big_f), big_e2).pauli
            check = mul(mul(mul(dagger(big_f), big_e), basis_element(f2)), right_dagger)
            if not check.pauli.is_identity():
                raise ConsistencyError(f"Ψ partner of {f_codes} failed to reduce to identity")
            _merge(merged, (f_codes, f2.codes()), poly, root_of_unity(order, check.phase) * scale)
    return TensorEnumerator._from_terms(t.scheme, t.legs, merged)


def lambda_clifford(
    t: TensorEnumerator, leg: str, clifford: SingleSiteClifford, adjoint: bool = False
) -> TensorEnumerator:
    """Λ(U) on one leg: re-key by U B U† and pick up μ_G μ*_{G'} (Λ(U†) when adjoint)."""
    if clifford.q != t.q:
        raise InputValidationError(f"Clifford dimension {clifford.q} does not match q={t.q}")
    if leg not in t.legs:
        raise InputValidationError(f"Unknown leg {leg}; open legs are {list(t.legs)}")
    if adjoint:
        clifford = clifford.inverse()
    q = t.q
    i = t.legs.index(leg)
    images, phases = [], []
    for c in range(q * q):
        image = clifford.conjugate(basis_element(PauliString.from_codes(q, (c,))))
        (code,) = image.pauli.codes()
        images.append(code)
        phases.append(image.phase - reference_phase(q, code // q, code % q))
    merged: Dict[Key, Terms] = {}
    for (e, e2), poly in t.entries.items():
        key = (e[:i] + (images[e[i]],) + e[i + 1:], e2[:i] + (images[e2[i]],) + e2[i + 1:])
        _merge(merged, key, poly, root_of_unity(4 * q, phases[e[i]] - phases[e2[i]]))
    return TensorEnumerator._from_terms(t.scheme, t.legs, merged)


def factoring_legs(lego: LegoBlock) -> List[str]:
    """Legs on which the state carries a single-site stabilizer (the state factors there)."""
    group = lego.group
    if not group.generators:
        return []
    q, n = group.q, group.n
    GF = prime_field(q)
    rows = symplectic_matrix(group.generators, q, n) % q
    full = len(group.generators)
    found = []
    for j, leg in enumerate(lego.legs):
        rest = np.delete(rows, [j, n + j], axis=1)
        if rest.shape[1] == 0 or int(np.linalg.matrix_rank(GF(rest))) < full:
            found.append(leg)
    if found:
        logger.info(f"Lego {lego.id} factors on legs {found}")
    return found
