from .logging import setup_logging
from .metrics import Metrics, get_metrics, setup_metrics
from .tracing import get_tracer, setup_tracing

__all__ = [
    "setup_logging",
    "Metrics",
    "get_metrics",
    "setup_metrics",
    "get_tracer",
    "setup_tracing",
]
