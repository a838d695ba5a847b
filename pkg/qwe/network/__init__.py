from .dense import network_oracle, network_state, state_vector
from .executor import ContractionExecutor, ContractionOutcome, contract_network
from .network import TensorNetwork, parse_network, split_leg
from .planner import ContractionPlan, PlanStep, PlanStrategy, StepKind, plan_contraction, simulate_widths
from .report import CodeReport, code_report
from .step_log import StepLog

__all__ = [
    "network_oracle",
    "network_state",
    "state_vector",
    "ContractionExecutor",
    "ContractionOutcome",
    "contract_network",
    "TensorNetwork",
    "parse_network",
    "split_leg",
    "ContractionPlan",
    "PlanStep",
    "PlanStrategy",
    "StepKind",
    "plan_contraction",
    "simulate_widths",
    "CodeReport",
    "code_report",
    "StepLog",
]
