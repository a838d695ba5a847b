"""Validated lego networks built from network documents."""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Set, Tuple, Union

from ..codes.builders import expand_builder
from ..codes.library import group_from_document, load_code_document, parse_network_document
from ..codes.stabilizer import LogicalFrame, StabilizerGroup, cap_sites, encoding_state
from ..enumerators.tensor import LegoBlock
from ..errors import InputValidationError
from ..models import ExpectedValues, NetworkDocument
from ..polynomials.schemes import WeightScheme

logger = logging.getLogger(__name__)

Edge = Tuple[str, str]


def split_leg(ref: str) -> Tuple[str, str]:
    """'t1.p3' → ('t1', 'p3')."""
    lego, sep, leg = ref.partition(".")
    if not sep or not lego or not leg:
        raise InputValidationError(f"Leg reference {ref!r} must look like 'lego.leg'")
    return lego, leg


@dataclass
class TensorNetwork:
    """Legos with globally named legs ('lego.leg'), their traced edges and dangling legs."""

    q: int
    scheme: WeightScheme
    legos: Dict[str, LegoBlock]
    contractions: List[Edge]
    physical: List[str]
    logical: List[str]
    name: Optional[str] = None
    expected: Optional[ExpectedValues] = None
    plan: Optional[List[str]] = None
    frames: Dict[str, LogicalFrame] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.physical)

    @property
    def k(self) -> int:
        return len(self.logical)

    def lego_of(self, ref: str) -> str:
        return split_leg(ref)[0]

    @cached_property
    def _edges_by_lego(self) -> Dict[str, List[Edge]]:
        table: Dict[str, List[Edge]] = {lego: [] for lego in self.legos}
        for edge in self.contractions:
            ends = {self.lego_of(edge[0]), self.lego_of(edge[1])}
            for lego in ends:
                table[lego].append(edge)
        return table

    @cached_property
    def _kept_legs(self) -> Set[str]:
        return {ref for edge in self.contractions for ref in edge} | set(self.logical)

    def edges_of(self, lego_id: str) -> List[Edge]:
        return self._edges_by_lego[lego_id]

    def tensor_legs(self, lego_id: str) -> List[str]:
        """Legs of a lego that stay as tensor legs when it is introduced (traced or logical)."""
        return [leg for leg in self.legos[lego_id].legs if leg in self._kept_legs]


def _lego_group(entry, q: int) -> Tuple[StabilizerGroup, Optional[LogicalFrame]]:
    document = load_code_document(entry.code) if isinstance(entry.code, str) else entry.code
    group, frame = group_from_document(document)
    if group.q != q:
        raise InputValidationError(f"Lego {entry.id} has q={group.q}, network has q={q}")
    return group, frame


def parse_network(document: Union[NetworkDocument, dict, str]) -> TensorNetwork:
    """Validate a network document; codes with k > 0 become their encoding states."""
    if not isinstance(document, NetworkDocument):
        document = parse_network_document(document)
    document = expand_builder(document)
    scheme = WeightScheme(document.scheme, document.q)

    legos: Dict[str, LegoBlock] = {}
    frames: Dict[str, LogicalFrame] = {}
    for entry in document.legos:
        if entry.id in legos:
            raise InputValidationError(f"Duplicate lego id {entry.id}")
        group, frame = _lego_group(entry, document.q)
        if group.k:
            if len(entry.legs) != group.n + group.k:
                raise InputValidationError(
                    f"Lego {entry.id}: a [[{group.n},{group.k}]] code needs {group.n + group.k} legs "
                    f"(physical then logical), got {len(entry.legs)}"
                )
            state = encoding_state(group, frame)
            logger.info(f"Lego {entry.id}: using the encoding state of {group}")
            group = state
        open_legs = list(entry.legs)
        if entry.stoppers:
            missing = [leg for leg in entry.stoppers if leg not in open_legs]
            if missing:
                raise InputValidationError(f"Lego {entry.id} has no legs {missing} to stop")
            group = cap_sites(group, {open_legs.index(leg): kind for leg, kind in entry.stoppers.items()})
            open_legs = [leg for leg in open_legs if leg not in entry.stoppers]
        legs = [f"{entry.id}.{leg}" for leg in open_legs]
        legos[entry.id] = LegoBlock(entry.id, group, tuple(legs))
        if frame is not None:
            frames[entry.id] = frame

    known = {leg for lego in legos.values() for leg in lego.legs}
    used: Dict[str, str] = {}

    def claim(ref: str, role: str) -> None:
        split_leg(ref)
        if ref not in known:
            raise InputValidationError(f"{role} references unknown leg {ref}")
        if ref in used:
            raise InputValidationError(f"Leg {ref} used twice ({used[ref]} and {role})")
        used[ref] = role

    contractions = []
    for a, b in document.contract:
        if a == b:
            raise InputValidationError(f"Cannot contract leg {a} with itself")
        claim(a, f"contraction {a}~{b}")
        claim(b, f"contraction {a}~{b}")
        contractions.append((a, b))
    for ref in document.dangling.physical:
        claim(ref, "dangling physical")
    for ref in document.dangling.logical:
        claim(ref, "dangling logical")
    unassigned = sorted(known - set(used))
    if unassigned:
        raise InputValidationError(f"Legs neither contracted nor dangling: {unassigned}")

    network = TensorNetwork(
        q=document.q,
        scheme=scheme,
        legos=legos,
        contractions=contractions,
        physical=list(document.dangling.physical),
        logical=list(document.dangling.logical),
        name=document.name,
        expected=document.expected,
        plan=document.plan,
        frames=frames,
    )
    logger.info(
        f"Parsed network {network.name or '<unnamed>'}: {len(legos)} legos, "
        f"{len(contractions)} contractions, n={network.n}, k={network.k}"
    )
    return network
