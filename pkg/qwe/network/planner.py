"""Contraction plans: lego introductions (with the traces they close) and self-traces."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Set, Tuple

from ..errors import InputValidationError
from .network import Edge, TensorNetwork

logger = logging.getLogger(__name__)


class StepKind(str, Enum):
    INTRODUCE = "introduce"
    TRACE = "trace"


class PlanStrategy(str, Enum):
    INPUT_ORDER = "input_order"
    GREEDY = "greedy"
    MANUAL = "manual"

    @classmethod
    def parse(cls, value: "str | PlanStrategy") -> "PlanStrategy":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).replace("-", "_"))
        except ValueError:
            raise InputValidationError(f"Unknown plan strategy {value!r} (choose input_order or greedy)")


@dataclass(frozen=True)
class PlanStep:
    """INTRODUCE brings in `lego` and traces `edges` to legos already present;
    TRACE closes one edge whose ends are both present."""

    kind: StepKind
    lego: Optional[str] = None
    edges: Tuple[Edge, ...] = ()

    @property
    def target(self) -> str:
        if self.kind is StepKind.INTRODUCE:
            return self.lego
        return "~".join(self.edges[0])


@dataclass
class ContractionPlan:
    steps: List[PlanStep]
    strategy: PlanStrategy
    widths: List[int] = field(default_factory=list)
    # open legs per step, not counting dangling logical legs
    cut_widths: List[int] = field(default_factory=list)

    @property
    def width(self) -> int:
        """Peak open-leg count of the running tensor."""
        return max(self.widths, default=0)

    @property
    def cut_width(self) -> int:
        """Peak number of open bond legs, i.e. the width without the logical legs kept to the end."""
        return max(self.cut_widths, default=0)

    def tokens(self) -> List[str]:
        out = []
        for step in self.steps:
            if step.kind is StepKind.INTRODUCE:
                out.append(step.lego)
                out.extend("~".join(e) for e in step.edges)
            else:
                out.append(step.target)
        return out


def _same_edge(a: Edge, b: Edge) -> bool:
    return a == b or a == (b[1], b[0])


def _introduce_width(network: TensorNetwork, current: int, lego: str, joins: int) -> int:
    return current + len(network.tensor_legs(lego)) - 2 * joins


def simulate_widths(network: TensorNetwork, steps: Sequence[PlanStep]) -> List[int]:
    """Check a plan against the network and return the width reached at each step."""
    present: Set[str] = set()
    traced: List[Edge] = []
    current = 0
    widths = []
    for index, step in enumerate(steps):
        if step.kind is StepKind.INTRODUCE:
            if step.lego not in network.legos:
                raise InputValidationError(f"Plan step {index} introduces unknown lego {step.lego}")
            if step.lego in present:
                raise InputValidationError(f"Plan step {index} introduces {step.lego} twice")
            for edge in step.edges:
                ends = {network.lego_of(edge[0]), network.lego_of(edge[1])}
                if step.lego not in ends or not (ends - {step.lego}) <= present or len(ends) == 1:
                    raise InputValidationError(
                        f"Plan step {index}: edge {'~'.join(edge)} does not join {step.lego} to the network so far"
                    )
            current = _introduce_width(network, current, step.lego, len(step.edges))
            present.add(step.lego)
            widths.append(current)
        else:
            (edge,) = step.edges
            if not {network.lego_of(edge[0]), network.lego_of(edge[1])} <= present:
                raise InputValidationError(f"Plan step {index} traces {'~'.join(edge)} before both legos exist")
            current -= 2
            widths.append(current)
        for edge in step.edges:
            declared = next((e for e in network.contractions if _same_edge(e, edge)), None)
            if declared is None:
                raise InputValidationError(f"Plan step {index} traces undeclared edge {'~'.join(edge)}")
            if any(_same_edge(declared, t) for t in traced):
                raise InputValidationError(f"Plan step {index} traces {'~'.join(edge)} a second time")
            traced.append(declared)
    missing = [lego for lego in network.legos if lego not in present]
    if missing:
        raise InputValidationError(f"Plan never introduces legos {missing}")
    untraced = [e for e in network.contractions if not any(_same_edge(e, t) for t in traced)]
    if untraced:
        raise InputValidationError(f"Plan leaves edges untraced: {['~'.join(e) for e in untraced]}")
    return widths


def _joins(network: TensorNetwork, lego: str, present: Set[str]) -> Tuple[List[Edge], List[Edge]]:
    joins, loops = [], []
    for edge in network.edges_of(lego):
        a, b = network.lego_of(edge[0]), network.lego_of(edge[1])
        if a == b:
            loops.append(edge)
        elif (b if a == lego else a) in present:
            joins.append(edge)
    key = lambda e: tuple(sorted(e))  # noqa: E731
    return sorted(joins, key=key), sorted(loops, key=key)


def _steps_for(lego: str, joins: List[Edge], loops: List[Edge]) -> List[PlanStep]:
    steps = [PlanStep(StepKind.INTRODUCE, lego, tuple(joins))]
    steps.extend(PlanStep(StepKind.TRACE, edges=(edge,)) for edge in loops)
    return steps


def _input_order(network: TensorNetwork) -> List[PlanStep]:
    present: Set[str] = set()
    steps = []
    for lego in network.legos:
        joins, loops = _joins(network, lego, present)
        steps.extend(_steps_for(lego, joins, loops))
        present.add(lego)
    return steps


def _greedy(network: TensorNetwork) -> List[PlanStep]:
    """Pick the introduction giving the fewest open legs; ties go to the lowest lego id.

    Only legos joined to the network so far are candidates, unless none is.
    """
    present: Set[str] = set()
    remaining = sorted(network.legos)
    current = 0
    steps = []
    while remaining:
        options = [(lego, *_joins(network, lego, present)) for lego in remaining]
        best = None
        for lego, joins, loops in [o for o in options if o[1]] or options:
            width = _introduce_width(network, current, lego, len(joins)) - 2 * len(loops)
            if best is None or width < best[0]:
                best = (width, lego, joins, loops)
        width, lego, joins, loops = best
        steps.extend(_steps_for(lego, joins, loops))
        present.add(lego)
        remaining.remove(lego)
        current = width
    return steps


def _manual(network: TensorNetwork, tokens: Sequence[str]) -> List[PlanStep]:
    """Parse ["t1", "t1.p3~t2.p6", …], folding traces that follow an introduction into it."""
    steps: List[PlanStep] = []
    for token in tokens:
        if "~" in token:
            a, sep, b = token.partition("~")
            edge = (a.strip(), b.strip())
            previous = steps[-1] if steps else None
            ends = {network.lego_of(edge[0]), network.lego_of(edge[1])}
            if previous is not None and previous.kind is StepKind.INTRODUCE and previous.lego in ends and len(ends) == 2:
                steps[-1] = PlanStep(StepKind.INTRODUCE, previous.lego, previous.edges + (edge,))
            else:
                steps.append(PlanStep(StepKind.TRACE, edges=(edge,)))
        else:
            steps.append(PlanStep(StepKind.INTRODUCE, token.strip()))
    return steps


def plan_contraction(
    network: TensorNetwork,
    strategy: "str | PlanStrategy" = PlanStrategy.GREEDY,
    tokens: Optional[Sequence[str]] = None,
) -> ContractionPlan:
    strategy = PlanStrategy.MANUAL if tokens is not None else PlanStrategy.parse(strategy)
    if strategy is PlanStrategy.MANUAL:
        if tokens is None:
            raise InputValidationError("Manual plan strategy needs plan tokens")
        steps = _manual(network, tokens)
    elif strategy is PlanStrategy.INPUT_ORDER:
        steps = _input_order(network)
    else:
        steps = _greedy(network)
    widths = simulate_widths(network, steps)
    logical = set(network.logical)
    open_logical, cut_widths = 0, []
    for step, width in zip(steps, widths):
        if step.kind is StepKind.INTRODUCE:
            open_logical += sum(leg in logical for leg in network.tensor_legs(step.lego))
        cut_widths.append(width - open_logical)
    plan = ContractionPlan(steps, strategy, widths, cut_widths)
    logger.info(f"Planned {len(steps)} steps ({strategy.value}) with peak width {plan.width}")
    return plan
