"""
Resource monitoring for MAP-Elites runs.

Wall time, resident memory and CPU time of the current process are sampled
with psutil around a run. The numbers vary between machines, so they go to the
log and resources.json only and never into deterministic artifacts.
"""

import gc
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

try:
    import psutil

    PSUTIL_AVAILABLE = True
except ImportError:
    PSUTIL_AVAILABLE = False

from .logging_config import get_logger

logger = get_logger("monitor")


@dataclass
class ResourceUsage:
    """Container for the resources consumed by one run."""

    label: str = ""
    wall_time_s: float = 0.0
    cpu_time_s: float = 0.0
    start_rss_mb: float = 0.0
    peak_rss_mb: float = 0.0
    cpu_percent: float = 0.0
    errors: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["implementation"] = "psutil" if PSUTIL_AVAILABLE else "time_only"
        return data


class RunMonitor:
    """
    Context manager measuring one run.

    Usage:
        with RunMonitor("subset-1/ME.CO") as monitor:
            ...
            monitor.sample()  # optional, tracks peak RSS mid-run
        monitor.usage.wall_time_s
    """

    def __init__(self, label: str = "") -> None:
        self.usage = ResourceUsage(label=label)
        self._start_time: Optional[float] = None
        self._start_cpu: Optional[float] = None
        self._process = None
        self._monitoring = False

        if PSUTIL_AVAILABLE:
            try:
                self._process = psutil.Process()
            except Exception:
                pass

    def __enter__(self) -> "RunMonitor":
        self.start()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.stop()

    def _rss_mb(self) -> float:
        return self._process.memory_info().rss / 1024 / 1024

    def _cpu_seconds(self) -> float:
        times = self._process.cpu_times()
        return times.user + times.system

    def start(self) -> None:
        """Start collecting resource usage."""
        if self._monitoring:
            return
        self._monitoring = True
        self.usage = ResourceUsage(label=self.usage.label)
        self._start_time = time.perf_counter()

        gc.collect()

        if self._process:
            try:
                self.usage.start_rss_mb = self._rss_mb()
                self.usage.peak_rss_mb = self.usage.start_rss_mb
                self._start_cpu = self._cpu_seconds()
                self._process.cpu_percent()  # primes the interval counter
            except Exception as e:
                self.usage.errors.append(f"Process monitoring error: {e}")

    def sample(self) -> None:
        """Refresh the peak RSS estimate."""
        if not (self._monitoring and self._process):
            return
        try:
            self.usage.peak_rss_mb = max(self.usage.peak_rss_mb, self._rss_mb())
        except Exception as e:
            self.usage.errors.append(f"Process monitoring error: {e}")

    def stop(self) -> None:
        """Stop collecting and finalize the usage record."""
        if not self._monitoring:
            return
        self._monitoring = False

        if self._start_time is not None:
            self.usage.wall_time_s = time.perf_counter() - self._start_time

        if self._process:
            try:
                self.usage.peak_rss_mb = max(self.usage.peak_rss_mb, self._rss_mb())
                if self._start_cpu is not None:
                    self.usage.cpu_time_s = self._cpu_seconds() - self._start_cpu
                self.usage.cpu_percent = self._process.cpu_percent()
            except Exception as e:
                self.usage.errors.append(f"Process monitoring error: {e}")

        logger.info(
            f"{self.usage.label or 'run'}: {self.usage.wall_time_s:.2f}s wall, "
            f"{self.usage.cpu_time_s:.2f}s cpu, peak RSS {self.usage.peak_rss_mb:.1f} MB"
        )
