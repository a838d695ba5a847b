"""Stabilizer groups, logical frames and encoding states."""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np

from ..algebra.clifford import SingleSiteClifford
from ..algebra.pauli import (
    PauliString,
    PhasedPauli,
    basis_element,
    check_dimension,
    mul,
    omega,
    parse_pauli,
    power,
    tensor,
)
from ..errors import ConsistencyError, InputValidationError, ResourceCapError

logger = logging.getLogger(__name__)

DEFAULT_GROUP_CAP = 2**26


@lru_cache(maxsize=None)
def prime_field(q: int):
    return galois.GF(check_dimension(q))


def symplectic_matrix(paulis: Sequence[PhasedPauli], q: int, n: int) -> np.ndarray:
    rows = [list(p.x) + list(p.z) for p in paulis]
    return np.array(rows, dtype=int).reshape(len(rows), 2 * n)


def symplectic_rank(paulis: Sequence[PhasedPauli], q: int, n: int) -> int:
    if not paulis:
        return 0
    GF = prime_field(q)
    return int(np.linalg.matrix_rank(GF(symplectic_matrix(paulis, q, n) % q)))


def symplectic_product(u: Sequence[int], v: Sequence[int], q: int) -> int:
    """ω exponent between symplectic vectors (x | z)."""
    n = len(u) // 2
    return sum(u[n + i] * v[i] - u[i] * v[n + i] for i in range(n)) % q


@dataclass(frozen=True)
class StabilizerGroup:
    """Abelian group generated by independent, commuting, order-q phased Paulis."""

    q: int
    n: int
    generators: Tuple[PhasedPauli, ...] = field(default_factory=tuple)

    def __post_init__(self):
        check_dimension(self.q)
        object.__setattr__(self, "generators", tuple(self.generators))
        identity = PhasedPauli.identity(self.q, self.n)
        for g in self.generators:
            if g.q != self.q or g.n != self.n:
                raise InputValidationError(
                    f"Generator {g} does not act on {self.n} sites of dimension {self.q}"
                )
            if power(g, self.q) != identity:
                raise InputValidationError(
                    f"Generator {g} has a nontrivial phase at order {self.q}; the group would contain a multiple of identity"
                )
        for i, g in enumerate(self.generators):
            for h in self.generators[i + 1:]:
                if omega(g.pauli, h.pauli):
                    raise InputValidationError(f"Generators {g} and {h} do not commute")
        rank = symplectic_rank(self.generators, self.q, self.n)
        if rank != len(self.generators):
            raise InputValidationError(
                f"Generators are dependent: symplectic rank {rank} < {len(self.generators)}"
            )

    @property
    def k(self) -> int:
        return self.n - len(self.generators)

    @property
    def order(self) -> int:
        return self.q ** len(self.generators)

    @classmethod
    def from_strings(cls, strings: Sequence[str], q: int = 2, n: Optional[int] = None) -> "StabilizerGroup":
        generators = tuple(parse_pauli(s, q) for s in strings)
        if n is None:
            if not generators:
                raise InputValidationError("Site count required for an empty generator list")
            n = generators[0].n
        return cls(q, n, generators)

    def __str__(self):
        return f"[[{self.n},{self.k}]]_{self.q} <" + ", ".join(str(g) for g in self.generators) + ">"


@dataclass(frozen=True)
class LogicalFrame:
    """Representatives X̄_i, Z̄_i for each logical qudit."""

    x: Tuple[PhasedPauli, ...] = ()
    z: Tuple[PhasedPauli, ...] = ()

    @property
    def k(self) -> int:
        return len(self.x)


def enumerate_group(group: StabilizerGroup, cap: int = DEFAULT_GROUP_CAP) -> Iterator[PhasedPauli]:
    """Yield all q^{n-k} signed group elements exactly once, identity first."""
    if group.order > cap:
        raise ResourceCapError(f"Group of order {group.order} exceeds cap {cap}")
    powers = []
    for g in group.generators:
        row = [PhasedPauli.identity(group.q, group.n)]
        for _ in range(group.q - 1):
            row.append(mul(row[-1], g))
        powers.append(row)

    def walk(index: int, acc: PhasedPauli) -> Iterator[PhasedPauli]:
        if index == len(powers):
            yield acc
            return
        for p in powers[index]:
            yield from walk(index + 1, mul(acc, p))

    yield from walk(0, PhasedPauli.identity(group.q, group.n))


def normalizer_basis(group: StabilizerGroup) -> List[List[int]]:
    """Basis of symplectic vectors commuting with every generator."""
    q, n = group.q, group.n
    if not group.generators:
        return [[int(i == j) for j in range(2 * n)] for i in range(2 * n)]
    GF = prime_field(q)
    rows = [list(g.z) + [(-a) % q for a in g.x] for g in group.generators]
    kernel = GF(np.array(rows, dtype=int)).null_space()
    return [[int(c) for c in row] for row in np.asarray(kernel)]


def logical_operators(group: StabilizerGroup) -> LogicalFrame:
    """Symplectic Gram-Schmidt on the normalizer, modulo the stabilizer."""
    q = group.q
    pool = normalizer_basis(group)
    pairs = []
    while True:
        found = None
        for i, v in enumerate(pool):
            for j, w in enumerate(pool):
                if i != j and symplectic_product(v, w, q):
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        v, w = pool[i], pool[j]
        # scale so that ω(X̄, Z̄) matches ω(X, Z) = -1
        factor = (-pow(symplectic_product(v, w, q), -1, q)) % q
        w = [(c * factor) % q for c in w]
        inv = pow(symplectic_product(v, w, q), -1, q)
        remaining = []
        for idx, u in enumerate(pool):
            if idx in found:
                continue
            along_w = symplectic_product(u, w, q) * inv
            along_v = symplectic_product(u, v, q) * inv
            projected = [(uc - along_w * vc + along_v * wc) % q for uc, vc, wc in zip(u, v, w)]
            if any(projected):
                remaining.append(projected)
        pool = remaining
        pairs.append((v, w))

    if len(pairs) != group.k:
        raise ConsistencyError(f"Found {len(pairs)} logical pairs for a code with k={group.k}")
    n = group.n

    def to_pauli(vec: List[int]) -> PhasedPauli:
        return basis_element(PauliString(q, tuple(vec[:n]), tuple(vec[n:])))

    frame = LogicalFrame(tuple(to_pauli(v) for v, _ in pairs), tuple(to_pauli(w) for _, w in pairs))
    logger.debug(f"Logical frame for {group}: X={[str(p) for p in frame.x]} Z={[str(p) for p in frame.z]}")
    return frame


def validate_frame(group: StabilizerGroup, frame: LogicalFrame) -> LogicalFrame:
    q = group.q
    if len(frame.x) != group.k or len(frame.z) != group.k:
        raise InputValidationError(f"Frame has {len(frame.x)}/{len(frame.z)} operators, code has k={group.k}")
    identity = PhasedPauli.identity(q, group.n)
    for rep in frame.x + frame.z:
        if rep.n != group.n or rep.q != q:
            raise InputValidationError(f"Logical operator {rep} has the wrong shape")
        if power(rep, q) != identity:
            raise InputValidationError(f"Logical operator {rep} does not have order {q}")
        for g in group.generators:
            if omega(g.pauli, rep.pauli):
                raise InputValidationError(f"Logical operator {rep} anticommutes with stabilizer {g}")
    for i in range(group.k):
        for j in range(group.k):
            if omega(frame.x[i].pauli, frame.z[j].pauli) != ((q - 1) if i == j else 0):
                raise InputValidationError(f"Logical pair ({i},{j}) has the wrong commutation phase")
            if omega(frame.x[i].pauli, frame.x[j].pauli) or omega(frame.z[i].pauli, frame.z[j].pauli):
                raise InputValidationError(f"Logical operators {i},{j} of equal type do not commute")
    return frame


def encoding_state(group: StabilizerGroup, frame: Optional[LogicalFrame] = None) -> StabilizerGroup:
    """Stabilizer group of the Choi state Σ_j |j̄>|j> on n + k sites.

    Generators: S ⊗ I, X̄_i ⊗ X on logical leg i and Z̄_i ⊗ Z^{-1} on leg i
    (Z^{-1} = Z for qubits).
    """
    if group.k == 0:
        return group
    frame = validate_frame(group, frame or logical_operators(group))
    q, k = group.q, group.k
    leg_identity = PhasedPauli.identity(q, k)

    def on_leg(i: int, a: int, b: int) -> PhasedPauli:
        xs = tuple(a if j == i else 0 for j in range(k))
        zs = tuple(b if j == i else 0 for j in range(k))
        return PhasedPauli(PauliString(q, xs, zs))

    generators = [tensor(g, leg_identity) for g in group.generators]
    for i in range(k):
        generators.append(tensor(frame.x[i], on_leg(i, 1, 0)))
        generators.append(tensor(frame.z[i], on_leg(i, 0, q - 1)))
    return StabilizerGroup(q, group.n + k, tuple(generators))


def _independent(generators: Sequence[PhasedPauli]) -> List[PhasedPauli]:
    """Row-reduce qubit generators, dropping +I and refusing -I."""
    pivots: List[Tuple[int, PhasedPauli]] = []
    for g in generators:
        for column, p in pivots:
            if (list(g.x) + list(g.z))[column]:
                g = mul(g, p)
        vector = list(g.x) + list(g.z)
        column = next((i for i, v in enumerate(vector) if v), None)
        if column is None:
            if g.phase:
                raise ConsistencyError("Stoppers project the lego onto the zero vector")
            continue
        pivots.append((column, g))
    return [p for _, p in pivots]


def cap_sites(group: StabilizerGroup, caps: Dict[int, str]) -> StabilizerGroup:
    """Contract sites against |0> ("zero") or |+> ("plus") stoppers and drop them.

    Only group elements acting on a capped site by I or the stopper's own Pauli
    survive; for qubit states this is one elimination per site.
    """
    if group.q != 2:
        raise InputValidationError(f"Stoppers are qubit states; got q={group.q}")
    generators = list(group.generators)
    for site, kind in caps.items():
        if not 0 <= site < group.n:
            raise InputValidationError(f"Cannot cap site {site} of a {group.n}-site group")
        if kind == "zero":
            blocked = lambda g: g.x[site]  # noqa: E731
        elif kind == "plus":
            blocked = lambda g: g.z[site]  # noqa: E731
        else:
            raise InputValidationError(f"Unknown stopper {kind!r}")
        pivot = next((g for g in generators if blocked(g)), None)
        if pivot is not None:
            generators = [mul(g, pivot) if blocked(g) else g for g in generators if g is not pivot]
    keep = [i for i in range(group.n) if i not in caps]
    restricted = [PhasedPauli(g.pauli.restrict(keep), g.phase) for g in generators]
    capped = StabilizerGroup(group.q, len(keep), tuple(_independent(restricted)))
    logger.debug(f"Capped {len(caps)} sites: {group} -> {capped}")
    return capped


def apply_clifford(group: StabilizerGroup, site: int, clifford: SingleSiteClifford) -> StabilizerGroup:
    """Conjugate every generator by a Clifford acting on one site."""
    generators = []
    for g in group.generators:
        local = PhasedPauli(PauliString(group.q, (g.x[site],), (g.z[site],)))
        image = clifford.conjugate(local)
        xs, zs = list(g.x), list(g.z)
        xs[site], zs[site] = image.x[0], image.z[0]
        generators.append(PhasedPauli(PauliString(group.q, tuple(xs), tuple(zs)), g.phase + image.phase))
    return StabilizerGroup(group.q, group.n, tuple(generators))
