from datetime import datetime, timezone
from typing import Dict, List, Optional
import logging

from ..models import StepRecord
from ..observability.metrics import get_metrics

logger = logging.getLogger(__name__)


class StepLog:
    """In-memory record of contraction steps for one run"""

    def __init__(self, run_name: str):
        self.run_name = run_name
        self.records: List[StepRecord] = []
        self._started: Dict[int, datetime] = {}

    def _find(self, index: int) -> Optional[StepRecord]:
        for record in reversed(self.records):
            if record.index == index:
                return record
        return None

    def log_step_started(self, index: int, kind: str, target: str, width: int, entries: int) -> StepRecord:
        """Log that a step has started"""
        record = StepRecord(index=index, kind=kind, target=target, status="started", width=width, entries=entries)
        self.records.append(record)
        self._started[index] = datetime.now(timezone.utc)

        logger.info(f"Run {self.run_name}: Step {index} ({kind} {target}) started")
        return record

    def _finish(self, record: StepRecord) -> None:
        started_at = self._started.pop(record.index, None)
        if started_at:
            elapsed = datetime.now(timezone.utc) - started_at
            record.duration_ms = int(elapsed.total_seconds() * 1000)
            get_metrics().contraction_step_duration_seconds.labels(kind=record.kind).observe(
                elapsed.total_seconds()
            )

    def log_step_completed(self, index: int, width: int, entries: int) -> StepRecord:
        """Log that a step completed successfully"""
        record = self._find(index)
        if not record or record.status != "started":
            raise ValueError(f"No started step found: {self.run_name}/{index}")

        record.status = "completed"
        record.width = width
        record.entries = entries
        self._finish(record)

        metrics = get_metrics()
        metrics.contraction_steps_total.labels(kind=record.kind, status="success").inc()
        metrics.open_legs.set(width)
        metrics.tensor_entries.set(entries)

        logger.info(
            f"Run {self.run_name}: Step {index} completed in {record.duration_ms}ms "
            f"[width={width}, entries={entries}]"
        )
        return record

    def log_step_failed(self, index: int, error_message: str) -> StepRecord:
        """Log that a step failed"""
        record = self._find(index)
        if not record:
            record = StepRecord(index=index, kind="unknown", target="", status="failed", width=0, entries=0)
            self.records.append(record)
        record.status = "failed"
        record.error_message = error_message
        self._finish(record)

        get_metrics().contraction_steps_total.labels(kind=record.kind, status="failure").inc()
        logger.error(f"Run {self.run_name}: Step {index} failed: {error_message}")
        return record

    def completed(self) -> List[StepRecord]:
        return [r for r in self.records if r.status == "completed"]
