"""Lattice builders: planar surface codes from [[5,1,2]] legos, Bell chains and random legos.

All builders here produce qubit (q = 2) objects.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.clifford import hadamard, phase_gate
from ..algebra.pauli import PauliString, PhasedPauli
from ..errors import InputValidationError
from ..models import BuilderSpec, ExpectedValues, LegoEntry, NetworkDocument
from .library import document_from_group
from .stabilizer import LogicalFrame, StabilizerGroup, apply_clifford

logger = logging.getLogger(__name__)


def _pauli(n: int, xs: Sequence[int] = (), zs: Sequence[int] = (), phase: int = 0) -> PhasedPauli:
    x = tuple(1 if i in xs else 0 for i in range(n))
    z = tuple(1 if i in zs else 0 for i in range(n))
    return PhasedPauli(PauliString(2, x, z), phase)


def spider_group(kind: str, legs: int) -> StabilizerGroup:
    """GHZ-type spider on `legs` qubits.

    kind "z": Σ_u |u…u⟩, stabilized by Z_a Z_b pairs and X on every leg.
    kind "x": even-parity states, stabilized by X_a X_b pairs and Z on every leg.
    One-leg spiders are the |+⟩ and |0⟩ stoppers.
    """
    if legs < 1:
        raise InputValidationError("Spider needs at least one leg")
    if kind not in ("x", "z"):
        raise InputValidationError(f"Unknown spider kind {kind!r}")
    everything = range(legs)
    if kind == "z":
        pairs = [_pauli(legs, zs=(a, a + 1)) for a in range(legs - 1)]
        return StabilizerGroup(2, legs, tuple(pairs) + (_pauli(legs, xs=everything),))
    pairs = [_pauli(legs, xs=(a, a + 1)) for a in range(legs - 1)]
    return StabilizerGroup(2, legs, tuple(pairs) + (_pauli(legs, zs=everything),))


def _planar_sites(rows: int, cols: int) -> List[Tuple[int, int]]:
    """Data sites (i, j), i + j even, of the (2·rows-1) × (2·cols-1) planar lattice in row-major order."""
    if rows < 2 or cols < 2:
        raise InputValidationError(f"Planar surface code needs at least 2×2, got {rows}×{cols}")
    return [(i, j) for i in range(2 * rows - 1) for j in range(2 * cols - 1) if (i + j) % 2 == 0]


def planar_surface_checks(rows: int, cols: int) -> Tuple[List[List[int]], List[List[int]]]:
    """X-type checks sit on (even, odd) faces, Z-type checks on (odd, even) faces.

    Each check touches the data sites among its four lattice neighbours.
    """
    sites = _planar_sites(rows, cols)
    index = {site: v for v, site in enumerate(sites)}
    x_checks, z_checks = [], []
    for i in range(2 * rows - 1):
        for j in range(2 * cols - 1):
            if (i + j) % 2 == 0:
                continue
            support = [index[s] for s in ((i - 1, j), (i, j - 1), (i, j + 1), (i + 1, j)) if s in index]
            (x_checks if i % 2 == 0 else z_checks).append(sorted(support))
    return x_checks, z_checks


def planar_surface_logicals(rows: int, cols: int) -> Tuple[List[int], List[int]]:
    """Supports of X̄ (first column) and Z̄ (first row)."""
    sites = _planar_sites(rows, cols)
    return [v for v, (_, j) in enumerate(sites) if j == 0], [v for v, (i, _) in enumerate(sites) if i == 0]


def planar_surface_code(rows: int, cols: int) -> Tuple[StabilizerGroup, LogicalFrame]:
    """[[rows·cols + (rows-1)(cols-1), 1, min(rows, cols)]] planar surface code."""
    n = len(_planar_sites(rows, cols))
    x_checks, z_checks = planar_surface_checks(rows, cols)
    generators = [_pauli(n, xs=c) for c in x_checks] + [_pauli(n, zs=c) for c in z_checks]
    group = StabilizerGroup(2, n, tuple(generators))
    x_bar, z_bar = planar_surface_logicals(rows, cols)
    frame = LogicalFrame((_pauli(n, xs=x_bar),), (_pauli(n, zs=z_bar),))
    logger.info(f"Built {rows}×{cols} planar surface code: n={n}, {len(generators)} checks")
    return group, frame


# corner legs of a [[5,1,2]] lego, by lattice offset
_CORNERS = {"nw": (-1, -1), "ne": (-1, 1), "sw": (1, -1), "se": (1, 1)}


def _lego_id(i: int, j: int) -> str:
    return f"q{j:03d}_{i:02d}"


def planar_surface_network(
    rows: int,
    cols: int,
    scheme: str = "shor-laflamme",
    expected_distance: Optional[int] = None,
) -> NetworkDocument:
    """Encoding tensor of the planar surface code as a lattice of [[5,1,2]] legos.

    Every data site carries one [[5,1,2]] encoding tensor whose centre leg is the
    physical qubit and whose corners bond to the diagonal neighbours. Odd-odd
    sites list their legs as the code's own layout; even-even sites are the
    transposed lego, so their X checks run left-right. Corners leaving the lattice
    through the top or bottom get |+>, through the sides |0>. One odd-odd lego
    keeps its logical leg; the rest of the logical legs are capped.
    """
    sites = _planar_sites(rows, cols)
    present = set(sites)
    last_row, dangling_col = 2 * rows - 2, 2 * cols - 3
    logical_site = (1, dangling_col)

    legos, contract = [], []
    for i, j in sites:
        odd = i % 2 == 1
        legs = ["nw", "ne", "c", "sw", "se", "l"] if odd else ["nw", "sw", "c", "ne", "se", "l"]
        stoppers: Dict[str, str] = {}
        for corner, (di, dj) in _CORNERS.items():
            target = (i + di, j + dj)
            if target not in present:
                stoppers[corner] = "plus" if not 0 <= target[0] <= last_row else "zero"
        if (i, j) != logical_site:
            stoppers["l"] = "plus" if not odd or j == dangling_col else "zero"
        legos.append(LegoEntry(id=_lego_id(i, j), code="surface_512", legs=legs, stoppers=stoppers))
        for corner in ("se", "sw"):
            di, dj = _CORNERS[corner]
            target = (i + di, j + dj)
            if target in present:
                partner = "nw" if corner == "se" else "ne"
                contract.append((f"{_lego_id(i, j)}.{corner}", f"{_lego_id(*target)}.{partner}"))

    return NetworkDocument(
        name=f"planar-surface-{rows}x{cols}",
        q=2,
        scheme=scheme,
        legos=legos,
        contract=contract,
        dangling={
            "physical": [f"{_lego_id(i, j)}.c" for i, j in sites],
            "logical": [f"{_lego_id(*logical_site)}.l"],
        },
        expected=ExpectedValues(distance=expected_distance) if expected_distance is not None else None,
    )


def strip_network(length: int, scheme: str = "double") -> NetworkDocument:
    """3-by-N strip of the planar surface code (5N - 2 qubits)."""
    return planar_surface_network(3, length, scheme=scheme)


def bell_chain(length: int, scheme: str = "shor-laflamme") -> NetworkDocument:
    """Bell pairs b0 … b{L-1} joined end to end; the two outer legs stay open."""
    if length < 1:
        raise InputValidationError("Bell chain needs at least one pair")
    bell = document_from_group(spider_group("z", 2), name="bell")
    legos = [LegoEntry(id=f"b{i}", code=bell, legs=["a", "b"]) for i in range(length)]
    contract = [(f"b{i}.b", f"b{i + 1}.a") for i in range(length - 1)]
    return NetworkDocument(
        name=f"bell-chain-{length}",
        q=2,
        scheme=scheme,
        legos=legos,
        contract=contract,
        dangling={"physical": ["b0.a", f"b{length - 1}.b"]},
    )


def expand_builder(document: NetworkDocument) -> NetworkDocument:
    """Replace a builder section with the legos it describes."""
    spec: Optional[BuilderSpec] = document.builder
    if spec is None:
        return document
    kind = spec.kind.replace("-", "_")
    if kind == "planar_surface":
        built = planar_surface_network(spec.rows, spec.cols, scheme=document.scheme)
    elif kind == "strip":
        built = strip_network(spec.cols, scheme=document.scheme)
    elif kind == "bell_chain":
        built = bell_chain(spec.length, scheme=document.scheme)
    else:
        raise InputValidationError(f"Unknown network builder {spec.kind!r}")
    if document.q != 2:
        raise InputValidationError(f"Builder {spec.kind} only produces qubit networks, got q={document.q}")
    return built.model_copy(
        update={
            "name": document.name or built.name,
            "expected": document.expected,
            "plan": document.plan,
        }
    )


# Random objects for property checks


def random_stabilizer_state(n: int, rng: np.random.Generator) -> StabilizerGroup:
    """Graph state on a random graph, then random single-qubit Cliffords and signs."""
    adjacency = np.triu(rng.integers(0, 2, size=(n, n)), 1)
    adjacency = adjacency + adjacency.T
    generators = []
    for v in range(n):
        neighbours = [u for u in range(n) if adjacency[v, u]]
        generators.append(_pauli(n, xs=(v,), zs=neighbours, phase=4 * int(rng.integers(0, 2))))
    group = StabilizerGroup(2, n, tuple(generators))
    gates = (hadamard(2), phase_gate(2))
    for site in range(n):
        for gate in gates:
            if rng.integers(0, 2):
                group = apply_clifford(group, site, gate)
    return group


def random_code(n: int, k: int, rng: np.random.Generator) -> StabilizerGroup:
    """Random [[n, k]] code: a random stabilizer state with k generators dropped."""
    if not 0 <= k <= n:
        raise InputValidationError(f"Cannot build a [[{n},{k}]] code")
    state = random_stabilizer_state(n, rng)
    keep = sorted(rng.choice(n, size=n - k, replace=False).tolist())
    return StabilizerGroup(2, n, tuple(state.generators[i] for i in keep))


def random_two_lego_network(rng: np.random.Generator, max_merged: int = 6) -> NetworkDocument:
    """Two random stabilizer-state legos sharing j ≥ 1 traced leg pairs."""
    while True:
        n1, n2 = (int(v) for v in rng.integers(2, 5, size=2))
        joins = int(rng.integers(1, min(n1, n2) + 1))
        merged = n1 + n2 - 2 * joins
        if 1 <= merged <= max_merged:
            break
    first = document_from_group(random_stabilizer_state(n1, rng), name="random-a")
    second = document_from_group(random_stabilizer_state(n2, rng), name="random-b")
    legos = [
        LegoEntry(id="a", code=first, legs=[f"a{i}" for i in range(n1)]),
        LegoEntry(id="b", code=second, legs=[f"b{i}" for i in range(n2)]),
    ]
    contract = [(f"a.a{i}", f"b.b{i}") for i in range(joins)]
    physical = [f"a.a{i}" for i in range(joins, n1)] + [f"b.b{i}" for i in range(joins, n2)]
    return NetworkDocument(
        name=f"random-{n1}-{n2}-{joins}",
        legos=legos,
        contract=contract,
        dangling={"physical": physical},
    )
