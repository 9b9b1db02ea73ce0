"""Run configuration shared by the CLI commands."""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from bmrel.errors import BudgetExceededError
from bmrel.search import SearchMode

ENV_JOBS = "BMREL_JOBS"

# Rough resident size of one materialized square inside a relation.
BYTES_PER_SQUARE = 160


def default_jobs() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class JobConfig:
    """How a command runs: workers, caps, output and mode.

    Attributes:
        jobs: Worker processes.
        memory_cap: Optional byte budget for materialized relations.
        output_path: Where materialized results are written, if anywhere.
        mode: Materialize relations or only count them.
        verify: Re-check outputs after writing.
        max_solutions: Optional cap on the number of enumerated relations.
    """

    jobs: int = 1
    memory_cap: int | None = None
    output_path: Path | None = None
    mode: SearchMode = SearchMode.MATERIALIZE
    verify: bool = False
    max_solutions: int | None = None

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        if self.memory_cap is not None and self.memory_cap <= 0:
            raise ValueError(f"memory_cap must be positive, got {self.memory_cap}")
        if self.max_solutions is not None and self.max_solutions <= 0:
            raise ValueError(f"max_solutions must be positive, got {self.max_solutions}")

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None, **overrides: Any) -> JobConfig:
        """Build a config; ``jobs`` comes from an override, then $BMREL_JOBS, then the CPU count."""
        env: Mapping[str, str] = os.environ if environ is None else environ
        if overrides.get("jobs") is None:
            raw = env.get(ENV_JOBS)
            try:
                overrides["jobs"] = int(raw) if raw else default_jobs()
            except ValueError as exc:
                raise ValueError(f"{ENV_JOBS} must be an integer, got {raw!r}") from exc
        return cls(**{k: v for k, v in overrides.items() if v is not None})

    @property
    def count_only(self) -> bool:
        return self.mode is SearchMode.COUNT_ONLY

    def with_mode(self, mode: SearchMode) -> JobConfig:
        return replace(self, mode=mode)

    def check_memory(self, relations: int, squares_per_relation: int) -> None:
        """Refuse to materialize more than ``memory_cap`` allows.

        Raises:
            BudgetExceededError: if the estimate exceeds the cap.
        """
        if self.memory_cap is None:
            return
        estimate = relations * squares_per_relation * BYTES_PER_SQUARE
        if estimate > self.memory_cap:
            raise BudgetExceededError(
                f"materializing {relations} relations needs about {estimate} bytes, "
                f"over the memory cap of {self.memory_cap}"
            )
