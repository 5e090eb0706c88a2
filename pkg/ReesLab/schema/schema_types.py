"""
The JSON document family. Every document carries a ``kind`` discriminator and ``schema_version``;
scalars travel as strings in the literal syntax of ``parse_scalar`` ("1/2", "1-i", "3/4 i").

"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from mashumaro import DataClassDictMixin, field_options
from mashumaro.config import BaseConfig

SCHEMA_VERSION: int = 1

MatrixDoc = List[List[str]]


class _DocumentConfig(BaseConfig):
    serialize_by_alias = True
    omit_none = True


@dataclass()
class FiltrationStepDoc(DataClassDictMixin):
    """F^index, spanned by the listed vectors"""

    index: int
    basis: MatrixDoc = field(default_factory=list)


@dataclass()
class MultifiltrationDoc(DataClassDictMixin):
    dim: int
    filtrations: List[List[FiltrationStepDoc]] = field(default_factory=list)
    kind: str = "multifiltration"
    schema_version: int = SCHEMA_VERSION

    class Config(_DocumentConfig):
        pass


@dataclass()
class FilteredMapDoc(DataClassDictMixin):
    """
    A matrix of shape target.dim x source.dim acting on column vectors

    """

    source: MultifiltrationDoc
    target: MultifiltrationDoc
    matrix: MatrixDoc
    kind: str = "filtered_map"
    schema_version: int = SCHEMA_VERSION

    class Config(_DocumentConfig):
        pass


@dataclass()
class TermDoc(DataClassDictMixin):
    p: int
    q: int
    dim: int


@dataclass()
class BlockDoc(DataClassDictMixin):
    """The component of a map leaving C^(p,q)"""

    p: int
    q: int
    matrix: MatrixDoc


@dataclass()
class BigradedComplexDoc(DataClassDictMixin):
    terms: List[TermDoc]
    delta: List[BlockDoc] = field(default_factory=list, metadata=field_options(alias="del"))
    delta_bar: List[BlockDoc] = field(default_factory=list, metadata=field_options(alias="delbar"))
    sigma: Optional[List[BlockDoc]] = None
    kind: str = "bigraded_complex"
    schema_version: int = SCHEMA_VERSION

    class Config(_DocumentConfig):
        pass


@dataclass()
class CoefficientDoc(DataClassDictMixin):
    """A_(p, axis) with axis counted from 1"""

    p: List[int]
    axis: int
    matrix: MatrixDoc


@dataclass()
class ConnectionDoc(DataClassDictMixin):
    n: int
    grading: List[List[int]]
    coefficients: List[CoefficientDoc] = field(default_factory=list)
    kind: str = "connection"
    schema_version: int = SCHEMA_VERSION

    class Config(_DocumentConfig):
        pass


@dataclass()
class PieceDoc(DataClassDictMixin):
    degree: List[int]
    dim: int


@dataclass()
class MultiplicationDoc(DataClassDictMixin):
    """z_axis from the piece of ``degree`` to the next one, axis counted from 1"""

    axis: int
    degree: List[int]
    matrix: MatrixDoc


@dataclass()
class GradedModuleDumpDoc(DataClassDictMixin):
    n: int
    lo: List[int]
    hi: List[int]
    pieces: List[PieceDoc] = field(default_factory=list)
    multiplications: List[MultiplicationDoc] = field(default_factory=list)
    kind: str = "graded_module_dump"
    schema_version: int = SCHEMA_VERSION

    class Config(_DocumentConfig):
        pass


@dataclass()
class ReportDoc(DataClassDictMixin):
    """
    The outcome of one job: status is "ok", "rejected" or "input_error"

    """

    command: str
    status: str
    exit_code: int
    data: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    error: Optional[str] = None
    kind: str = "report"
    schema_version: int = SCHEMA_VERSION

    class Config(_DocumentConfig):
        pass


DOCUMENT_KINDS: Dict[str, type] = {
    "multifiltration": MultifiltrationDoc,
    "filtered_map": FilteredMapDoc,
    "bigraded_complex": BigradedComplexDoc,
    "connection": ConnectionDoc,
    "graded_module_dump": GradedModuleDumpDoc,
    "report": ReportDoc,
}

__all__ = [
    "SCHEMA_VERSION",
    "MatrixDoc",
    "FiltrationStepDoc",
    "MultifiltrationDoc",
    "FilteredMapDoc",
    "TermDoc",
    "BlockDoc",
    "BigradedComplexDoc",
    "CoefficientDoc",
    "ConnectionDoc",
    "PieceDoc",
    "MultiplicationDoc",
    "GradedModuleDumpDoc",
    "ReportDoc",
    "DOCUMENT_KINDS"
]
