import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple, Type, Union

import jinja2
from pyee.base import EventEmitter, Handler

from ReesLab.algebra.errors import AmbientMismatchError, FilteredCompatibilityError, InvalidComplexError, \
    InvalidSplittingError, MalformedConnectionError, NonDescendingFiltrationError, NonExhaustiveFiltrationError, \
    NotASubspaceError, RejectionError, ScalarSyntaxError, StrictnessRangeError, UnsupportedVariableCountError, \
    WindowInsufficientError
from ReesLab.client.errors import InputError, InvalidJobError
from ReesLab.client.job import FORMATS, JobSpec
from ReesLab.client.logger import LogLevel, ReesLabLogHandler
from ReesLab.client.routes import ChartsRoute, ClientRoute, CokerRoute, ConnectionRoute, FAVB2Route, FAVBRoute, \
    FiberRoute, ModelsRoute, P1TypeRoute, ReesRoute, RouteResult, SpecSeqRoute, SplitRoute, StrictRoute, \
    VerifyAllRoute
from ReesLab.client.settings import LabDefaults
from ReesLab.events import Event, EventHandler
from ReesLab.events.custom_events import JobStartEvent, RejectionEvent, ReportEvent
from ReesLab.schema import Document, ReportDoc, dump_document

"""Errors that mean the input was unusable rather than mathematically rejected"""
INPUT_ERRORS: Tuple[Type[Exception], ...] = (
    InputError,
    ScalarSyntaxError,
    NonDescendingFiltrationError,
    NonExhaustiveFiltrationError,
    AmbientMismatchError,
    NotASubspaceError,
    FilteredCompatibilityError,
    InvalidComplexError,
    InvalidSplittingError,
    StrictnessRangeError,
    MalformedConnectionError,
    WindowInsufficientError,
    UnsupportedVariableCountError,
    OSError
)

TEMPLATE_DIR: str = os.path.join(os.path.dirname(__file__), "templates")

"""Rendered table cells are cut at this width"""
MAX_CELL_WIDTH: int = 160


@dataclass(frozen=True)
class JobOutcome:
    """
    The exit code and report of a job, plus the document it produced (``models export``)

    """

    exit_code: int
    report: ReportDoc
    document: Optional[Document] = None

    @property
    def payload(self) -> Document:
        return self.document if self.document is not None else self.report


class ReesLabClient(EventEmitter):
    """
    Runs jobs against the algebra library and emits their reports

    """

    def __init__(self, log_level: Optional[LogLevel] = None):
        """
        Instantiate the client with one route per command

        :param log_level: Level for the library logger, defaulting to the configured one

        """

        super().__init__()

        self._logger: logging.Logger = ReesLabLogHandler.get_logger(
            level=log_level or LabDefaults.log_level
        )

        self.split: SplitRoute = SplitRoute(self)
        self.rees: ReesRoute = ReesRoute(self)
        self.fiber: FiberRoute = FiberRoute(self)
        self.strict: StrictRoute = StrictRoute(self)
        self.coker: CokerRoute = CokerRoute(self)
        self.charts: ChartsRoute = ChartsRoute(self)
        self.p1type: P1TypeRoute = P1TypeRoute(self)
        self.connection: ConnectionRoute = ConnectionRoute(self)
        self.specseq: SpecSeqRoute = SpecSeqRoute(self)
        self.favb: FAVBRoute = FAVBRoute(self)
        self.favb2: FAVB2Route = FAVB2Route(self)
        self.models: ModelsRoute = ModelsRoute(self)
        self.verify_all: VerifyAllRoute = VerifyAllRoute(self)

        self._routes: Dict[str, ClientRoute] = {
            "split": self.split,
            "rees": self.rees,
            "fiber": self.fiber,
            "strict": self.strict,
            "coker": self.coker,
            "charts": self.charts,
            "p1type": self.p1type,
            "connection": self.connection,
            "specseq": self.specseq,
            "favb": self.favb,
            "favb2": self.favb2,
            "models": self.models,
            "verify-all": self.verify_all,
        }

        self._env: jinja2.Environment = jinja2.Environment(
            trim_blocks=True,
            lstrip_blocks=True,
            loader=jinja2.FileSystemLoader(TEMPLATE_DIR),
        )
        self._template: jinja2.Template = self._env.get_template("report_template.jinja2")

    def run(self, job: JobSpec) -> JobOutcome:
        """
        Run a job. Exit code 0 on success, 1 on a mathematical rejection, 2 on an input error.

        :param job: The job to run
        :return: The outcome, whose report carries whatever was computed before a rejection

        """

        self.emit(JobStartEvent.get_type(), JobStartEvent(job.command, job.source))
        self._logger.info(f"Running '{job.command}' on {job.source or 'no input'}.")

        result: RouteResult = RouteResult()
        exit_code: int = 0
        error_type: Optional[str] = None
        error: Optional[str] = None

        try:
            job.validate()
            self._routes[job.command](job, result)
        except RejectionError as ex:
            exit_code, error_type, error = 1, type(ex).__name__, f"{type(ex).__name__}: {ex}"
            self._logger.warning(f"'{job.command}' rejected its input. {error}")
        except INPUT_ERRORS as ex:
            exit_code, error_type, error = 2, type(ex).__name__, f"{type(ex).__name__}: {ex}"
            self._logger.error(f"'{job.command}' could not read its input. {error}")

        status: str = {0: "ok", 1: "rejected", 2: "input_error"}[exit_code]
        report: ReportDoc = ReportDoc(job.command, status, exit_code, result.data, result.checks, error)

        if exit_code:
            self.emit(RejectionEvent.get_type(), RejectionEvent(error_type, error, exit_code))

        self.emit(ReportEvent.get_type(), ReportEvent(job.command, exit_code, report.to_dict()))
        return JobOutcome(exit_code, report, result.document if not exit_code else None)

    def emit_report(self, value: Document, format: str = "json") -> bytes:
        """
        Serialize a report or document

        :param value: The document to emit
        :param format: json, table (reports only) or both
        :return: UTF-8 bytes
        :raises: InvalidJobError

        """

        if format not in FORMATS:
            raise InvalidJobError(f"Unknown format '{format}'; expected one of {list(FORMATS)}")

        parts: List[str] = []

        if format in ("table", "both") and isinstance(value, ReportDoc):
            parts.append(self.render_table(value))

        if format in ("json", "both") or not isinstance(value, ReportDoc):
            parts.append(dump_document(value))

        return "\n".join(parts).encode("utf-8")

    def render_table(self, report: ReportDoc) -> str:
        rows: List[Tuple[str, str]] = list(_table_rows(report.data))

        return self._template.render(
            command=report.command,
            status=report.status,
            exit_code=report.exit_code,
            error=report.error,
            rows=rows,
            width=max((len(key) for key, _ in rows), default=5),
            checks=sorted(report.checks.items())
        )

    def execute(self, job: JobSpec) -> int:
        """
        Run a job and write its output to the job's output path or to stdout

        :param job: The job
        :return: The exit code

        """

        outcome: JobOutcome = self.run(job)
        output_format: str = job.format if job.format in FORMATS else "json"
        payload: bytes = self.emit_report(outcome.payload, output_format)

        if job.output:
            with open(job.output, "wb") as file:
                file.write(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()

        return outcome.exit_code

    def on(self, event: Type[Event], f: Optional[EventHandler] = None) -> Union[Handler, Callable[[Handler], Handler]]:
        """
        Register a listener for an event class; used bare as a decorator when f is omitted

        """

        return super().on(event.get_type(), f)

    def add_listener(self, event: Union[str, Type[Event]], f: EventHandler) -> Handler:
        name: str = event if isinstance(event, str) else event.get_type()
        return super().add_listener(event=name, f=f)

    def has_listener(self, event: Type[Event]) -> bool:
        return bool(self.listeners(event.get_type()))

    @property
    def logger(self) -> logging.Logger:
        """The ``ReesLab`` logger shared with the algebra modules"""

        return self._logger


def _cell(value: Any) -> str:
    text: str = value if isinstance(value, str) else json.dumps(value, sort_keys=True, separators=(",", ":"))
    return text if len(text) <= MAX_CELL_WIDTH else text[:MAX_CELL_WIDTH - 3] + "..."


def _table_rows(data: Dict[str, Any], prefix: str = ""):
    """Flatten nested dicts to dotted keys; lists and scalars become one cell each"""

    for key in sorted(data):
        value: Any = data[key]
        path: str = f"{prefix}.{key}" if prefix else str(key)

        if isinstance(value, dict) and value:
            yield from _table_rows(value, path)
        else:
            yield path, _cell(value)


__all__ = [
    "INPUT_ERRORS",
    "JobOutcome",
    "ReesLabClient"
]
