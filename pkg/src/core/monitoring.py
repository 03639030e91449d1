"""
Performance Monitoring for knot computations.

Tracks per-task timings (braid construction, invariants, oracle runs, scan and
sweep rows) and outcome counters, and exports them with system resource
metrics to JSON.
"""

import json
import logging
import threading
import time
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import psutil

from src.core.config import get_settings

logger = logging.getLogger(__name__)


@dataclass
class TaskTiming:
    """
    One timed unit of work.

    Attributes:
        task (str): Task kind, e.g. "braid", "alexander", "certify", "scan_row"
        label (str): What it ran on, e.g. "K(3,5,4,1/8)"
        start_time (float): Unix timestamp at start
        end_time (float): Unix timestamp at end
        duration_seconds (float): Wall time
        success (bool): Whether the task completed
        error (str, optional): Error message if it failed
    """
    task: str
    label: str
    start_time: float
    end_time: float
    duration_seconds: float
    success: bool
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class PerformanceMonitor:
    """
    Thread-safe timing and counter collection.

    Scans may evaluate rows on worker threads, so every mutation happens under
    one lock.

    Attributes:
        storage_path (Path): Default directory for exports
        timings (List[TaskTiming]): Completed task records
        counters (Dict[str, int]): Task, error and outcome counts
        gauges (Dict[str, float]): Tasks currently running, by kind

    Methods:
        track: Context manager timing one task
        increment_counter: Count an outcome, e.g. "scan_unidentified"
        get_summary_stats: Aggregate statistics with system metrics
        get_task_stats: Statistics for one task kind
        export_metrics: Write everything to a JSON file
    """

    def __init__(self, storage_path: Optional[str] = None):
        self.storage_path = Path(storage_path or get_settings().metrics_dir)

        self.timings: List[TaskTiming] = []
        self.counters: Dict[str, int] = defaultdict(int)
        self.gauges: Dict[str, float] = {}

        self._lock = threading.Lock()
        logger.debug(f"PerformanceMonitor initialized with storage: {self.storage_path}")

    @contextmanager
    def track(self, task: str, label: str = "") -> Iterator[None]:
        """Time the enclosed block; failures are recorded and re-raised."""
        start = time.time()
        with self._lock:
            self.gauges[f"active_{task}"] = self.gauges.get(f"active_{task}", 0) + 1
        try:
            yield
        except Exception as e:
            self._finish(task, label, start, success=False, error=str(e))
            raise
        else:
            self._finish(task, label, start, success=True)

    def _finish(
        self, task: str, label: str, start: float, success: bool, error: Optional[str] = None
    ) -> None:
        end = time.time()
        timing = TaskTiming(
            task=task,
            label=label,
            start_time=start,
            end_time=end,
            duration_seconds=end - start,
            success=success,
            error=error,
        )
        with self._lock:
            self.timings.append(timing)
            self.counters[f"tasks_{task}"] += 1
            if not success:
                self.counters[f"errors_{task}"] += 1
            self.gauges[f"active_{task}"] = max(0, self.gauges.get(f"active_{task}", 1) - 1)

    def increment_counter(self, counter_name: str, value: int = 1):
        with self._lock:
            self.counters[counter_name] += value

    def get_task_stats(self, task: str) -> Dict[str, Any]:
        with self._lock:
            runs = [t for t in self.timings if t.task == task]
        if not runs:
            return {"task": task, "runs": 0}
        durations = [t.duration_seconds for t in runs]
        successful = sum(1 for t in runs if t.success)
        return {
            "task": task,
            "runs": len(runs),
            "successful": successful,
            "failed": len(runs) - successful,
            "total_seconds": round(sum(durations), 4),
            "avg_seconds": round(sum(durations) / len(durations), 4),
            "max_seconds": round(max(durations), 4),
            "slowest": max(runs, key=lambda t: t.duration_seconds).label,
        }

    def get_summary_stats(self) -> Dict[str, Any]:
        with self._lock:
            tasks = sorted({t.task for t in self.timings})
            total = len(self.timings)
            failed = sum(1 for t in self.timings if not t.success)
        if not total:
            return {"total_tasks": 0, "message": "No tasks recorded"}
        return {
            "total_tasks": total,
            "failed_tasks": failed,
            "success_rate": round((total - failed) / total * 100, 2),
            "task_breakdown": {task: self.get_task_stats(task) for task in tasks},
            "system_metrics": self._get_system_metrics(),
        }

    def _get_system_metrics(self) -> Dict[str, Any]:
        """Get system resource metrics"""
        try:
            memory = psutil.virtual_memory()
            process = psutil.Process()
            return {
                "cpu_percent": psutil.cpu_percent(interval=0.1),
                "memory_percent": memory.percent,
                "memory_available_gb": round(memory.available / (1024**3), 2),
                "process_rss_mb": round(process.memory_info().rss / (1024**2), 1),
                "threads": process.num_threads(),
            }
        except Exception as e:
            logger.warning(f"Failed to get system metrics: {e}")
            return {}

    def export_metrics(self, filepath: str = None) -> str:
        """Export all metrics to file"""
        if not filepath:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filepath = str(self.storage_path / f"knots_metrics_{timestamp}.json")
        Path(filepath).parent.mkdir(parents=True, exist_ok=True)

        summary = self.get_summary_stats()
        with self._lock:
            data = {
                "exported_at": datetime.now().isoformat(),
                "timings": [t.to_dict() for t in self.timings],
                "counters": dict(self.counters),
                "gauges": dict(self.gauges),
                "summary": summary,
            }
        with open(filepath, "w") as f:
            json.dump(data, f, indent=2)

        logger.info(f"Metrics exported to {filepath}")
        return filepath
