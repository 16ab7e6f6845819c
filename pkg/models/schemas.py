"""Pydantic schemas for jobs, reports and verification records."""

from __future__ import annotations

import enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field


# --- Enums ---


class Command(str, enum.Enum):
    F = "f"
    S = "s"
    NORMAL_FORM = "lgroup normal-form"
    EULER = "euler"
    HALL = "hall"
    QUIVER_WEIGHT = "quiver weight"
    QUIVER_HALL = "quiver hall"
    VERIFY = "verify"


class OutputFormat(str, enum.Enum):
    TEXT = "text"
    CSV = "csv"
    RECORDS = "records"


class VerifySuite(str, enum.Enum):
    GREEN = "green"
    RP = "rp"
    ROTATION = "rotation"
    ASSOC = "assoc"
    S_ENUM = "s-enum"
    DIMS = "dims"
    AUTS = "auts"
    SWEEP_EXT = "sweep-ext"
    IDENTITIES = "identities"


class HallCase(str, enum.Enum):
    LINE_TORSION = "line-torsion"
    SPLIT_MIDDLE = "split-middle"
    SPLIT_BOTH = "split-both"
    EXT_LINES = "ext-lines"
    EXT_HOMOG = "ext-homog"
    EXT_EXCEPTIONAL = "ext-exceptional"


# --- Jobs ---


class Job(BaseModel):
    """A parsed command line; ``arguments`` hold already-validated domain values."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: Command
    weights: Optional[str] = None
    subcase: Optional[str] = None
    arguments: dict[str, Any] = Field(default_factory=dict)
    output_format: OutputFormat = OutputFormat.TEXT
    out: Optional[Path] = None
    log_level: str = "INFO"


# --- Reports ---


class CheckRecord(BaseModel):
    suite: VerifySuite
    inputs: str
    lhs: str
    rhs: str
    verdict: bool
    note: str = ""


class Report(BaseModel):
    command: Command
    formula: str
    weights: Optional[str] = None
    inputs: dict[str, str] = Field(default_factory=dict)
    result: Optional[str] = None
    records: list[CheckRecord] = Field(default_factory=list)
    verdict: Optional[bool] = None
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.verdict)
