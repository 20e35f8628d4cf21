"""
Run configuration for one CLI invocation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from config.settings import (
    GROUP_GENERATORS,
    MIN_MAX_WINDOW,
    DEFAULT_MAX_WINDOW,
    OUTPUT_FORMATS,
    THETA_CATALOG,
)


@dataclass(frozen=True)
class RunConfig:
    group: str
    degrees: Tuple[int, ...] = (0, 1, 2)
    max_window: int = DEFAULT_MAX_WINDOW
    theta: Optional[str] = None
    output_format: str = "json"
    output_path: Optional[str] = None
    verify_invariance: bool = True
    poisson: bool = False
    witnesses: bool = False

    def validate(self) -> "RunConfig":
        if self.group not in GROUP_GENERATORS:
            raise ValueError(f"unknown group label {self.group!r}")
        if not self.degrees or any(d not in (0, 1, 2) for d in self.degrees):
            raise ValueError(f"degrees must be drawn from 0, 1, 2 (got {self.degrees})")
        if self.max_window < MIN_MAX_WINDOW:
            raise ValueError(
                f"max window must be at least {MIN_MAX_WINDOW} (got {self.max_window})"
            )
        if self.theta is not None and self.theta not in THETA_CATALOG:
            raise ValueError(
                f"theta must be one of {sorted(THETA_CATALOG)} (got {self.theta!r})"
            )
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {OUTPUT_FORMATS}")
        return self

    @property
    def theta_value(self) -> Optional[float]:
        return None if self.theta is None else THETA_CATALOG[self.theta]

    @property
    def theta_mode(self) -> str:
        if self.theta is None:
            return "symbolic"
        return f"symbolic+numeric({self.theta})"
