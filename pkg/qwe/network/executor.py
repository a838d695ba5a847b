"""Runs a contraction plan over a lego network."""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from ..codes.stabilizer import DEFAULT_GROUP_CAP
from ..enumerators.tensor import TensorEnumerator, contract, from_lego, trace_legs
from ..errors import ConsistencyError, EnumeratorError, ResourceCapError
from ..models import StepRecord
from ..observability.tracing import get_tracer
from ..polynomials.enum_poly import EnumPoly
from .network import TensorNetwork
from .planner import ContractionPlan, PlanStep, StepKind, plan_contraction
from .step_log import StepLog

logger = logging.getLogger(__name__)


@dataclass
class ContractionOutcome:
    tensor: TensorEnumerator
    plan: ContractionPlan
    observed_width: int
    steps: List[StepRecord] = field(default_factory=list)


class ContractionExecutor:
    """Executes plan steps in order; entry matching inside a step uses the thread pool"""

    def __init__(
        self,
        network: TensorNetwork,
        plan: ContractionPlan,
        threads: int = 1,
        mem_cap: Optional[int] = None,
        group_cap: int = DEFAULT_GROUP_CAP,
    ):
        self.network = network
        self.plan = plan
        self.threads = threads
        self.mem_cap = mem_cap
        self.group_cap = group_cap
        self.step_log = StepLog(network.name or "network")
        self.tracer = get_tracer(__name__)

        self.step_handlers = {
            StepKind.INTRODUCE: self._handle_introduce,
            StepKind.TRACE: self._handle_trace,
        }

    def run(self) -> ContractionOutcome:
        current = TensorEnumerator.scalar(EnumPoly.constant(self.network.scheme, 1))
        observed = 0
        for index, step in enumerate(self.plan.steps):
            handler = self.step_handlers[step.kind]
            self.step_log.log_step_started(index, step.kind.value, step.target, current.rank, len(current.entries))
            with self.tracer.start_as_current_span(f"contraction.{step.kind.value}") as span:
                span.set_attribute("step.index", index)
                span.set_attribute("step.target", step.target)
                try:
                    current = handler(current, step)
                    self._check_memory(current, index, step)
                except EnumeratorError as e:
                    if isinstance(e, ResourceCapError) and e.step_index is None:
                        e.step_index = index
                    self.step_log.log_step_failed(index, str(e))
                    span.record_exception(e)
                    raise
                span.set_attribute("step.width", current.rank)
                span.set_attribute("step.entries", len(current.entries))
            observed = max(observed, current.rank)
            if current.rank != self.plan.widths[index]:
                raise ConsistencyError(
                    f"Step {index} ({step.target}) left {current.rank} open legs, plan expected {self.plan.widths[index]}"
                )
            self.step_log.log_step_completed(index, current.rank, len(current.entries))

        if set(current.legs) != set(self.network.logical):
            raise ConsistencyError(f"Contraction ended on legs {list(current.legs)}, expected {self.network.logical}")
        current = current.reordered(self.network.logical)
        logger.info(f"Contracted {self.network.name or 'network'}: {len(current.entries)} entries, width {observed}")
        return ContractionOutcome(current, self.plan, observed, list(self.step_log.records))

    def _check_memory(self, current: TensorEnumerator, index: int, step: PlanStep) -> None:
        if self.mem_cap is None:
            return
        size = current.estimated_bytes()
        if size > self.mem_cap:
            raise ResourceCapError(
                f"Step {index} ({step.target}) needs about {size} bytes, above the cap of {self.mem_cap}",
                step_index=index,
            )

    def _handle_introduce(self, current: TensorEnumerator, step: PlanStep) -> TensorEnumerator:
        lego = self.network.legos[step.lego]
        fresh = from_lego(lego, self.network.tensor_legs(step.lego), self.network.scheme, self.group_cap)
        joins = []
        for a, b in step.edges:
            joins.append((a, b) if b in fresh.legs else (b, a))
        return contract(current, fresh, joins, self.threads)

    def _handle_trace(self, current: TensorEnumerator, step: PlanStep) -> TensorEnumerator:
        (a, b), = step.edges
        return trace_legs(current, a, b)


def contract_network(
    network: TensorNetwork,
    plan: Optional[ContractionPlan] = None,
    threads: int = 1,
    mem_cap: Optional[int] = None,
    group_cap: int = DEFAULT_GROUP_CAP,
) -> ContractionOutcome:
    """Contract with the given plan, the document's own plan, or a greedy one."""
    if plan is None:
        plan = plan_contraction(network, tokens=network.plan) if network.plan else plan_contraction(network)
    return ContractionExecutor(network, plan, threads, mem_cap, group_cap).run()
