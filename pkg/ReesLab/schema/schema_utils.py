"""
Reading documents into algebra values and writing values back, with JSON-path diagnostics

"""
import json
from typing import Any, Callable, Dict, List, Sequence, Tuple, Union

from mashumaro.exceptions import InvalidFieldValue, MissingField

from ReesLab.algebra.complexes import Bidegree, BigradedComplex
from ReesLab.algebra.connections import EquivariantConnection
from ReesLab.algebra.errors import NonDescendingFiltrationError, NonExhaustiveFiltrationError, ScalarSyntaxError, \
    FilteredCompatibilityError
from ReesLab.algebra.graded import GradedModule, Mult
from ReesLab.algebra.multifilt import FilteredMap, Filtration, MultiFilteredSpace, MultiIndex
from ReesLab.algebra.scalars import Matrix, Scalar, Subspace, format_scalar, parse_scalar
from ReesLab.client.errors import SchemaError
from ReesLab.schema.schema_types import BigradedComplexDoc, BlockDoc, CoefficientDoc, ConnectionDoc, \
    DOCUMENT_KINDS, FilteredMapDoc, FiltrationStepDoc, GradedModuleDumpDoc, MatrixDoc, MultifiltrationDoc, \
    MultiplicationDoc, PieceDoc, ReportDoc, SCHEMA_VERSION, TermDoc

Document = Union[MultifiltrationDoc, FilteredMapDoc, BigradedComplexDoc, ConnectionDoc, GradedModuleDumpDoc, ReportDoc]


def load_json(text: str) -> Dict[str, Any]:
    """
    :raises: SchemaError

    """

    try:
        raw: Any = json.loads(text)
    except json.JSONDecodeError as ex:
        raise SchemaError("$", f"Invalid JSON at line {ex.lineno}, column {ex.colno}: {ex.msg}") from ex

    if not isinstance(raw, dict):
        raise SchemaError("$", "A document must be a JSON object")
    return raw


def parse_document(raw: Dict[str, Any]) -> Document:
    """
    Dispatch on ``kind`` and build the typed document

    :raises: SchemaError

    """

    kind: Any = raw.get("kind")
    if kind not in DOCUMENT_KINDS:
        raise SchemaError("kind", f"Unknown document kind {kind!r}; expected one of {sorted(DOCUMENT_KINDS)}")

    if raw.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise SchemaError("schema_version", f"Unsupported schema version {raw.get('schema_version')!r}")

    try:
        return DOCUMENT_KINDS[kind].from_dict(raw)
    except MissingField as ex:
        raise SchemaError(ex.field_name, f"Missing field '{ex.field_name}' in {ex.holder_class_name}") from ex
    except InvalidFieldValue as ex:
        raise SchemaError(ex.field_name, f"Invalid value for '{ex.field_name}' in {ex.holder_class_name}") from ex
    except (TypeError, ValueError, AttributeError) as ex:
        raise SchemaError("$", f"Malformed {kind} document: {ex}") from ex


def parse_input(path: str) -> Document:
    with open(path, "r", encoding="utf-8") as file:
        return parse_document(load_json(file.read()))


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"Expected an integer, got {value!r}")
    return value


def _scalar(value: Any, path: str) -> Scalar:
    if not isinstance(value, str):
        raise SchemaError(path, f"Scalars are written as strings, got {value!r}")
    try:
        return parse_scalar(value)
    except ScalarSyntaxError as ex:
        raise SchemaError(path, str(ex)) from ex


def read_matrix(rows: Any, shape: Tuple[int, int], path: str) -> Matrix:
    """
    :raises: SchemaError

    """

    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise SchemaError(path, f"Expected {shape[0]} rows")

    entries: List[List[Scalar]] = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise SchemaError(f"{path}[{r}]", f"Expected {shape[1]} entries")
        entries.append([_scalar(value, f"{path}[{r}][{c}]") for c, value in enumerate(row)])

    return Matrix.from_rows(entries, shape[1])


def write_matrix(matrix: Matrix) -> MatrixDoc:
    return [[format_scalar(value) for value in row] for row in matrix.entries]


def _read_vectors(rows: Any, dim: int, path: str) -> List[List[Scalar]]:
    if not isinstance(rows, list):
        raise SchemaError(path, "Expected a list of vectors")
    return [list(row) for row in read_matrix(rows, (len(rows), dim), path).entries]


def to_multifiltered(doc: MultifiltrationDoc, path: str = "") -> MultiFilteredSpace:
    """
    :raises: SchemaError
    :raises: NonDescendingFiltrationError

    """

    prefix: str = f"{path}." if path else ""
    dim: int = _int(doc.dim, f"{prefix}dim")
    filtrations: List[Filtration] = []

    for i, steps in enumerate(doc.filtrations):
        spaces: List[Tuple[int, Subspace]] = [
            (
                _int(step.index, f"{prefix}filtrations[{i}][{j}].index"),
                Subspace.span(_read_vectors(step.basis, dim, f"{prefix}filtrations[{i}][{j}].basis"), dim)
            )
            for j, step in enumerate(steps)
        ]

        try:
            filtrations.append(Filtration(dim, spaces))
        except NonDescendingFiltrationError as ex:
            raise NonDescendingFiltrationError(ex.step_pair, f"{prefix}filtrations[{i}]: {ex}") from ex
        except NonExhaustiveFiltrationError as ex:
            raise SchemaError(f"{prefix}filtrations[{i}][0]", str(ex)) from ex

    return MultiFilteredSpace(dim, tuple(filtrations))


def from_multifiltered(space: MultiFilteredSpace) -> MultifiltrationDoc:
    return MultifiltrationDoc(
        dim=space.dim,
        filtrations=[
            [FiltrationStepDoc(p, write_matrix(step.basis)) for p, step in f.steps]
            for f in space.filtrations
        ]
    )


def to_filtered_map(doc: FilteredMapDoc) -> FilteredMap:
    source: MultiFilteredSpace = to_multifiltered(doc.source, "source")
    target: MultiFilteredSpace = to_multifiltered(doc.target, "target")

    if source.n != target.n:
        raise SchemaError("target.filtrations", f"Source has {source.n} filtrations, target has {target.n}")

    matrix: Matrix = read_matrix(doc.matrix, (target.dim, source.dim), "matrix")
    try:
        return FilteredMap(source, target, matrix)
    except FilteredCompatibilityError as ex:
        raise SchemaError("matrix", str(ex)) from ex


def from_filtered_map(f: FilteredMap) -> FilteredMapDoc:
    return FilteredMapDoc(from_multifiltered(f.source), from_multifiltered(f.target), write_matrix(f.matrix))


def _read_blocks(
        blocks: Sequence[BlockDoc],
        terms: Dict[Bidegree, int],
        target_of: Callable[[Bidegree], Bidegree],
        name: str
) -> Dict[Bidegree, Matrix]:
    maps: Dict[Bidegree, Matrix] = {}

    for index, block in enumerate(blocks):
        source: Bidegree = (_int(block.p, f"{name}[{index}].p"), _int(block.q, f"{name}[{index}].q"))
        target: Bidegree = target_of(source)
        maps[source] = read_matrix(
            block.matrix, (terms.get(target, 0), terms.get(source, 0)), f"{name}[{index}].matrix"
        )

    return maps


def to_complex(doc: BigradedComplexDoc) -> BigradedComplex:
    """
    :raises: SchemaError
    :raises: InvalidComplexError

    """

    terms: Dict[Bidegree, int] = {}
    for index, term in enumerate(doc.terms):
        key: Bidegree = (_int(term.p, f"terms[{index}].p"), _int(term.q, f"terms[{index}].q"))
        dim: int = _int(term.dim, f"terms[{index}].dim")
        if dim < 0 or key[0] < 0 or key[1] < 0:
            raise SchemaError(f"terms[{index}]", "Bidegrees and dims must be non-negative")
        terms[key] = dim

    return BigradedComplex(
        terms,
        _read_blocks(doc.delta, terms, lambda pq: (pq[0] + 1, pq[1]), "del"),
        _read_blocks(doc.delta_bar, terms, lambda pq: (pq[0], pq[1] + 1), "delbar"),
        _read_blocks(doc.sigma, terms, lambda pq: (pq[1], pq[0]), "sigma") if doc.sigma is not None else None
    )


def from_complex(complex_: BigradedComplex) -> BigradedComplexDoc:
    def blocks(maps: Dict[Bidegree, Matrix], keep_zero: bool = False) -> List[BlockDoc]:
        return [BlockDoc(p, q, write_matrix(m)) for (p, q), m in sorted(maps.items()) if keep_zero or not m.is_zero()]

    return BigradedComplexDoc(
        terms=[TermDoc(p, q, d) for (p, q), d in sorted(complex_.terms.items())],
        delta=blocks(complex_.delta),
        delta_bar=blocks(complex_.delta_bar),
        sigma=blocks(complex_.sigma, keep_zero=True) if complex_.sigma is not None else None
    )


def to_connection(doc: ConnectionDoc) -> EquivariantConnection:
    n: int = _int(doc.n, "n")
    grading: Tuple[MultiIndex, ...] = tuple(
        tuple(_int(x, f"grading[{r}][{c}]") for c, x in enumerate(row)) for r, row in enumerate(doc.grading)
    )
    dim: int = len(grading)
    coeffs: Dict[Tuple[MultiIndex, int], Matrix] = {}

    for index, coefficient in enumerate(doc.coefficients):
        p: MultiIndex = tuple(_int(x, f"coefficients[{index}].p[{c}]") for c, x in enumerate(coefficient.p))
        axis: int = _int(coefficient.axis, f"coefficients[{index}].axis") - 1
        key: Tuple[MultiIndex, int] = (p, axis)
        matrix: Matrix = read_matrix(coefficient.matrix, (dim, dim), f"coefficients[{index}].matrix")
        coeffs[key] = coeffs[key] + matrix if key in coeffs else matrix

    return EquivariantConnection(n, grading, coeffs)


def from_connection(connection: EquivariantConnection) -> ConnectionDoc:
    return ConnectionDoc(
        n=connection.n,
        grading=[list(d) for d in connection.grading],
        coefficients=[
            CoefficientDoc(list(p), axis + 1, write_matrix(m)) for (p, axis), m in sorted(connection.coeffs.items())
        ]
    )


def to_graded_module(doc: GradedModuleDumpDoc) -> GradedModule:
    n: int = _int(doc.n, "n")
    lo: MultiIndex = tuple(_int(x, f"lo[{i}]") for i, x in enumerate(doc.lo))
    hi: MultiIndex = tuple(_int(x, f"hi[{i}]") for i, x in enumerate(doc.hi))

    dims: Dict[MultiIndex, int] = {}
    for index, piece in enumerate(doc.pieces):
        dims[tuple(_int(x, f"pieces[{index}].degree[{i}]") for i, x in enumerate(piece.degree))] = \
            _int(piece.dim, f"pieces[{index}].dim")

    mult: Mult = {}
    for index, entry in enumerate(doc.multiplications):
        axis: int = _int(entry.axis, f"multiplications[{index}].axis") - 1
        degree: MultiIndex = tuple(_int(x, f"multiplications[{index}].degree[{i}]") for i, x in enumerate(entry.degree))
        if not 0 <= axis < n:
            raise SchemaError(f"multiplications[{index}].axis", f"Axis must lie in 1..{n}")
        target: MultiIndex = tuple(x + (1 if i == axis else 0) for i, x in enumerate(degree))
        mult[(axis, degree)] = read_matrix(
            entry.matrix, (dims.get(target, 0), dims.get(degree, 0)), f"multiplications[{index}].matrix"
        )

    module: GradedModule = GradedModule(n, lo, hi, dims, mult)
    missing: List[MultiIndex] = [m for m in module.degrees() if m not in dims]
    if missing:
        raise SchemaError("pieces", f"No piece given for degree {list(missing[0])}")
    missing_mult: List[Tuple[int, MultiIndex]] = [
        (axis, m) for m in module.degrees() for axis in range(n) if m[axis] < hi[axis] and (axis, m) not in mult
    ]
    if missing_mult:
        axis, m = missing_mult[0]
        raise SchemaError("multiplications", f"No z_{axis + 1} map given from degree {list(m)}")

    return module


def from_graded_module(module: GradedModule) -> GradedModuleDumpDoc:
    return GradedModuleDumpDoc(
        n=module.n,
        lo=list(module.lo),
        hi=list(module.hi),
        pieces=[PieceDoc(list(m), d) for m, d in sorted(module.piece_dims().items())],
        multiplications=[
            MultiplicationDoc(axis + 1, list(m), write_matrix(module.mult_at(axis, m)))
            for m in module.degrees() for axis in range(module.n) if m[axis] < module.hi[axis]
        ]
    )


def dump_document(doc: Document) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline"""

    return json.dumps(doc.to_dict(), sort_keys=True, indent=2) + "\n"


def json_key(value: Any) -> str:
    """Render a degree or bidegree as a JSON object key, e.g. (1, 0) -> "1,0" """

    if isinstance(value, tuple):
        return ",".join(str(x) for x in value)
    return str(value)


def keyed(table: Dict[Any, Any]) -> Dict[str, Any]:
    return {json_key(key): value for key, value in sorted(table.items())}


__all__ = [
    "Document",
    "load_json",
    "parse_document",
    "parse_input",
    "read_matrix",
    "write_matrix",
    "to_multifiltered",
    "from_multifiltered",
    "to_filtered_map",
    "from_filtered_map",
    "to_complex",
    "from_complex",
    "to_connection",
    "from_connection",
    "to_graded_module",
    "from_graded_module",
    "dump_document",
    "json_key",
    "keyed"
]
