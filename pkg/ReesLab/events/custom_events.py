from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Type, Union

from ReesLab.events.base_event import BaseEvent


@dataclass()
class JobStartEvent(BaseEvent):
    """
    Thrown when the client starts a job, before its input is read

    """

    command: str
    source: Optional[str] = None


@dataclass()
class CheckEvent(BaseEvent):
    """
    Thrown once per verification check, with its outcome

    """

    name: str
    passed: bool
    detail: str = ""


@dataclass()
class RejectionEvent(BaseEvent):
    """
    Thrown when a job ends with a mathematical rejection (exit 1) or an input error (exit 2)

    """

    error_type: str
    message: str
    exit_code: int


@dataclass()
class ReportEvent(BaseEvent):
    """
    Thrown when a job has produced its report

    """

    command: str
    exit_code: int
    report: Dict[str, Any] = field(default_factory=dict)


CustomEvent: Type = Union[JobStartEvent, CheckEvent, RejectionEvent, ReportEvent]

__all__ = [
    "JobStartEvent",
    "CheckEvent",
    "RejectionEvent",
    "ReportEvent",
    "CustomEvent"
]
