from typing import Optional

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, start_http_server


class Metrics:
    """Prometheus metrics for enumeration and contraction runs"""

    def __init__(self, registry: Optional[CollectorRegistry] = None):
        self.registry = registry or CollectorRegistry()

        # Counters
        self.commands_total = Counter(
            "qwe_commands_total",
            "Total number of CLI commands executed",
            ["command", "status"],  # status: success/failure
            registry=self.registry,
        )

        self.group_elements_total = Counter(
            "qwe_group_elements_total",
            "Stabilizer group elements enumerated",
            registry=self.registry,
        )

        self.contraction_steps_total = Counter(
            "qwe_contraction_steps_total",
            "Total number of contraction steps executed",
            ["kind", "status"],  # kind: introduce/trace
            registry=self.registry,
        )

        # Histograms
        self.command_duration_seconds = Histogram(
            "qwe_command_duration_seconds",
            "Time spent per CLI command",
            ["command"],
            buckets=[0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0, 3600.0],
            registry=self.registry,
        )

        self.contraction_step_duration_seconds = Histogram(
            "qwe_contraction_step_duration_seconds",
            "Time spent on individual contraction steps",
            ["kind"],
            buckets=[0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0],
            registry=self.registry,
        )

        # Gauges
        self.open_legs = Gauge(
            "qwe_open_legs",
            "Open tensor legs of the running contraction",
            registry=self.registry,
        )

        self.tensor_entries = Gauge(
            "qwe_tensor_entries",
            "Entries held by the running contraction",
            registry=self.registry,
        )


_metrics: Optional[Metrics] = None


def setup_metrics(port: Optional[int] = None) -> Metrics:
    """Setup Prometheus metrics, optionally exposing them over HTTP"""
    global _metrics
    if _metrics is None:
        _metrics = Metrics()
    if port:
        start_http_server(port, registry=_metrics.registry)
    return _metrics


def get_metrics() -> Metrics:
    return setup_metrics()
