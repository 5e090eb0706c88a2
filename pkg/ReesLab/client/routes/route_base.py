from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, TYPE_CHECKING

from ReesLab.algebra.complexes import BigradedComplex
from ReesLab.algebra.errors import VerificationFailedError
from ReesLab.algebra.models import load_model
from ReesLab.client.errors import SchemaError
from ReesLab.client.job import JobSpec
from ReesLab.client.logger import ReesLabLogHandler
from ReesLab.events import CheckEvent
from ReesLab.schema import BigradedComplexDoc, Document, parse_input, to_complex

if TYPE_CHECKING:
    from ReesLab.client.client import ReesLabClient


@dataclass()
class RouteResult:
    """
    What a route has computed so far. Routes fill it in as they go, so a rejection still
    reports the data that led to it.

    """

    data: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    document: Optional[Document] = None

    @property
    def failed_checks(self) -> List[str]:
        return sorted(name for name, passed in self.checks.items() if not passed)


class ClientRoute(ABC):
    """
    A callable command of the ReesLab job client

    """

    def __init__(self, client: ReesLabClient):
        """
        Instantiate a route

        :param client: The client the route belongs to

        """

        self._client: ReesLabClient = client
        self._logger: logging.Logger = ReesLabLogHandler.get_logger()

    @abstractmethod
    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        Run the command, writing data and checks into ``result``

        :param job: The validated job
        :param result: The result to fill in
        :return: None

        """

        raise NotImplementedError

    def check(self, result: RouteResult, name: str, passed: bool, detail: str = "") -> bool:
        """
        Record a verification check and announce it to listeners

        """

        result.checks[name] = bool(passed)
        self._client.emit(CheckEvent.get_type(), CheckEvent(name, bool(passed), detail))

        if not passed:
            self._logger.warning(f"Check '{name}' failed. {detail}".strip())

        return bool(passed)

    @staticmethod
    def require_checks(result: RouteResult, command: str) -> None:
        """
        :raises: VerificationFailedError

        """

        failed: List[str] = result.failed_checks
        if failed:
            raise VerificationFailedError(command, f"Failed checks: {', '.join(failed)}")

    @staticmethod
    def load_document(job: JobSpec) -> Document:
        """
        Read the job's input file and make sure it is a kind the command accepts

        :raises: SchemaError

        """

        doc: Document = parse_input(job.input)
        kinds = job.spec.kinds

        if doc.kind not in kinds:
            raise SchemaError("kind", f"'{job.command}' reads {' or '.join(kinds)} documents, not {doc.kind}")

        return doc

    @classmethod
    def load_complex(cls, job: JobSpec) -> BigradedComplex:
        if job.model is not None:
            return load_model(job.model)

        doc: BigradedComplexDoc = cls.load_document(job)
        return to_complex(doc)


__all__ = [
    "RouteResult",
    "ClientRoute"
]
