"""
Exact linear algebra over the Gaussian rationals Q(i)

Scalars are sympy ``QQ_I`` elements. Linear maps act on column vectors, so a ``Matrix`` of
shape (m, n) maps k^n to k^m. Subspaces store their basis as row vectors in reduced row-echelon
form, which makes set equality of subspaces the same as equality of the stored bases.

"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ
from sympy.polys.domains import QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from ReesLab.algebra.errors import AmbientMismatchError, NotASubspaceError, ScalarSyntaxError, SingularMatrixError

Scalar = GaussianRational
Vector = Tuple[Scalar, ...]
ScalarLike = Union[Scalar, int, Fraction, str]

ZERO: Scalar = QQ_I.zero
ONE: Scalar = QQ_I.one
I_UNIT: Scalar = GaussianRational(QQ(0), QQ(1))

_RATIONAL_PATTERN: re.Pattern = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _rational(text: str, literal: str) -> Fraction:
    if not _RATIONAL_PATTERN.match(text):
        raise ScalarSyntaxError(literal, f"Invalid rational part '{text}' in scalar literal '{literal}'")

    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ScalarSyntaxError(literal, f"Zero denominator in scalar literal '{literal}'")


def _qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def parse_scalar(literal: str) -> Scalar:
    """
    Parse a scalar literal of the form "a/b+c/d i". Both parts are optional, so "3", "-1/2",
    "i", "-2 i" and "1-i" are all accepted. Whitespace is ignored.

    :param literal: The literal to parse
    :return: The exact scalar
    :raises: ScalarSyntaxError

    """

    text: str = "".join(literal.split())

    if not text:
        raise ScalarSyntaxError(literal, "Empty scalar literal")

    if not text.endswith("i"):
        return GaussianRational(_qq(_rational(text, literal)), QQ(0))

    body: str = text[:-1].rstrip("*")
    split_at: int = max(body.rfind("+"), body.rfind("-"))

    real_text: str = body[:split_at] if split_at > 0 else ""
    imag_text: str = body[split_at:] if split_at > 0 else body

    if imag_text in ("", "+"):
        imag: Fraction = Fraction(1)
    elif imag_text == "-":
        imag = Fraction(-1)
    else:
        imag = _rational(imag_text, literal)

    real: Fraction = _rational(real_text, literal) if real_text else Fraction(0)
    return GaussianRational(_qq(real), _qq(imag))


def _fraction(part) -> Fraction:
    return Fraction(int(part.numerator), int(part.denominator))


def real_part(value: Scalar) -> Fraction:
    return _fraction(value.x)


def imag_part(value: Scalar) -> Fraction:
    return _fraction(value.y)


def format_scalar(value: Scalar) -> str:
    """
    Render a scalar in the literal syntax accepted by ``parse_scalar``

    :param value: The scalar
    :return: Its canonical literal

    """

    real: Fraction = real_part(value)
    imag: Fraction = imag_part(value)

    if imag == 0:
        return str(real)

    if imag == 1:
        imag_text: str = "i"
    elif imag == -1:
        imag_text = "-i"
    else:
        imag_text = f"{imag} i"

    if real == 0:
        return imag_text

    return f"{real}{'' if imag_text.startswith('-') else '+'}{imag_text}"


def to_scalar(value: ScalarLike) -> Scalar:
    """
    Coerce a value to an exact scalar. Floats are refused.

    :param value: An existing scalar, an int, a Fraction or a scalar literal
    :return: The scalar

    """

    if isinstance(value, GaussianRational):
        return value

    if isinstance(value, bool) or isinstance(value, float) or isinstance(value, complex):
        raise TypeError(f"Refusing inexact or ambiguous scalar value {value!r}")

    if isinstance(value, int):
        return GaussianRational(QQ(value), QQ(0))

    if isinstance(value, Fraction):
        return GaussianRational(_qq(value), QQ(0))

    if isinstance(value, str):
        return parse_scalar(value)

    return QQ_I.convert(value)


def conjugate_scalar(value: Scalar) -> Scalar:
    return GaussianRational(value.x, -value.y)


def power(value: Scalar, exponent: int) -> Scalar:
    """
    Integer power by repeated multiplication (negative exponents invert first)

    """

    if exponent < 0:
        if not value:
            raise ZeroDivisionError("Zero raised to a negative power")
        value = ONE / value
        exponent = -exponent

    result: Scalar = ONE
    for _ in range(exponent):
        result = result * value
    return result


class Matrix:
    """
    Immutable exact matrix over Q(i), backed by sympy's ``DomainMatrix`` for elimination and products

    """

    __slots__ = ("_entries", "_cols")

    def __init__(self, entries: Tuple[Vector, ...], cols: int):
        """
        Wrap a grid of scalars. Use ``from_rows`` to build from arbitrary values.

        :param entries: The rows, already coerced to scalars
        :param cols: Column count (needed when there are no rows)

        """

        self._entries: Tuple[Vector, ...] = entries
        self._cols: int = cols

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[ScalarLike]], cols: Optional[int] = None) -> Matrix:
        entries: Tuple[Vector, ...] = tuple(tuple(to_scalar(v) for v in row) for row in rows)

        if cols is None:
            if not entries:
                raise AmbientMismatchError("Column count is required for a matrix without rows")
            cols = len(entries[0])

        if any(len(row) != cols for row in entries):
            raise AmbientMismatchError(f"Ragged rows for a matrix with {cols} columns")

        return cls(entries, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[ScalarLike]], rows: int) -> Matrix:
        return cls.from_rows(columns, rows).transpose() if columns else cls.zeros(rows, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, size: int) -> Matrix:
        return cls.diagonal([ONE] * size)

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike]) -> Matrix:
        size: int = len(values)
        return cls(
            tuple(tuple(to_scalar(values[r]) if r == c else ZERO for c in range(size)) for r in range(size)),
            size
        )

    @classmethod
    def block_diagonal(cls, blocks: Sequence[Matrix]) -> Matrix:
        cols: int = sum(b.cols for b in blocks)
        rows: List[Vector] = []
        offset: int = 0

        for block in blocks:
            for row in block.entries:
                rows.append((ZERO,) * offset + row + (ZERO,) * (cols - offset - block.cols))
            offset += block.cols

        return cls(tuple(rows), cols)

    @property
    def rows(self) -> int:
        return len(self._entries)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self._cols

    @property
    def entries(self) -> Tuple[Vector, ...]:
        return self._entries

    def column(self, index: int) -> Vector:
        return tuple(row[index] for row in self._entries)

    def columns(self) -> List[Vector]:
        return [self.column(c) for c in range(self._cols)]

    def transpose(self) -> Matrix:
        return Matrix(tuple(self.columns()), self.rows)

    def conjugate(self) -> Matrix:
        return Matrix(tuple(tuple(conjugate_scalar(v) for v in row) for row in self._entries), self._cols)

    def scale(self, factor: ScalarLike) -> Matrix:
        factor = to_scalar(factor)
        return Matrix(tuple(tuple(factor * v for v in row) for row in self._entries), self._cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(tuple(tuple(self._entries[r][c] for c in cols) for r in rows), len(cols))

    def vstack(self, other: Matrix) -> Matrix:
        if other.cols != self._cols:
            raise AmbientMismatchError(f"Cannot stack {self.shape} on {other.shape}")
        return Matrix(self._entries + other.entries, self._cols)

    def hstack(self, other: Matrix) -> Matrix:
        if other.rows != self.rows:
            raise AmbientMismatchError(f"Cannot place {self.shape} beside {other.shape}")
        return Matrix(tuple(a + b for a, b in zip(self._entries, other.entries)), self._cols + other.cols)

    def kron(self, other: Matrix) -> Matrix:
        rows: List[Vector] = []
        for row in self._entries:
            for other_row in other.entries:
                rows.append(tuple(a * b for a in row for b in other_row))
        return Matrix(tuple(rows), self._cols * other.cols)

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        """
        Apply the matrix to a column vector

        :param vector: Vector of length ``cols``
        :return: Vector of length ``rows``

        """

        if len(vector) != self._cols:
            raise AmbientMismatchError(f"Cannot apply a {self.shape} matrix to a vector of length {len(vector)}")

        result: List[Scalar] = []
        for row in self._entries:
            acc: Scalar = ZERO
            for a, b in zip(row, vector):
                if a and b:
                    acc = acc + a * b
            result.append(acc)
        return tuple(result)

    def is_zero(self) -> bool:
        return not any(v for row in self._entries for v in row)

    def rank(self) -> int:
        return rref(self)[0]

    def inverse(self) -> Matrix:
        """
        Exact inverse of a square matrix

        :return: The inverse
        :raises: SingularMatrixError

        """

        if self.rows != self._cols:
            raise SingularMatrixError(f"Matrix of shape {self.shape} is not square")

        if self.rows == 0:
            return self

        try:
            return _from_domain(_to_domain(self).inv())
        except DMNonInvertibleMatrixError:
            raise SingularMatrixError(f"Matrix of shape {self.shape} is singular")

    def __matmul__(self, other: Matrix) -> Matrix:
        if self._cols != other.rows:
            raise AmbientMismatchError(f"Cannot multiply {self.shape} by {other.shape}")

        if self.rows == 0 or other.cols == 0 or self._cols == 0:
            return Matrix.zeros(self.rows, other.cols)

        return _from_domain(_to_domain(self).matmul(_to_domain(other)))

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise AmbientMismatchError(f"Cannot add {self.shape} and {other.shape}")
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._entries, other.entries)), self._cols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        return Matrix(tuple(tuple(-v for v in row) for row in self._entries), self._cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self._entries))

    def __repr__(self) -> str:
        body: str = "; ".join(", ".join(format_scalar(v) for v in row) for row in self._entries)
        return f"Matrix({self.rows}x{self._cols}: [{body}])"

    def to_sympy(self) -> sympy.Matrix:
        """The matrix as a sympy expression matrix, for symbolic cross-checks"""

        return sympy.Matrix(self.rows, self._cols, [QQ_I.to_sympy(v) for row in self._entries for v in row])


def _to_domain(matrix: Matrix) -> DomainMatrix:
    return DomainMatrix([list(row) for row in matrix.entries], matrix.shape, QQ_I)


def _from_domain(domain_matrix: DomainMatrix) -> Matrix:
    rows, cols = domain_matrix.shape
    entries: List[List[Scalar]] = domain_matrix.to_dense().rep.to_list()
    return Matrix(tuple(tuple(QQ_I.convert(v) for v in row) for row in entries), cols)


def _reduce(matrix: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """Full RREF (zero rows kept) and pivot columns"""

    if matrix.rows == 0 or matrix.cols == 0:
        return Matrix.zeros(matrix.rows, matrix.cols), ()

    reduced, pivots = _to_domain(matrix).rref()
    return _from_domain(reduced), tuple(pivots)


def rref(matrix: Matrix) -> Tuple[int, Matrix]:
    """
    Reduced row-echelon form

    :param matrix: Any matrix
    :return: The rank and the RREF restricted to its nonzero rows

    """

    reduced, pivots = _reduce(matrix)
    rank: int = len(pivots)
    return rank, Matrix(reduced.entries[:rank], matrix.cols)


def kernel(matrix: Matrix) -> Subspace:
    """
    Null space {x : matrix x = 0} as a subspace of k^cols

    """

    reduced, pivots = _reduce(matrix)
    pivot_set = set(pivots)
    vectors: List[Vector] = []

    for free in range(matrix.cols):
        if free in pivot_set:
            continue

        vector: List[Scalar] = [ZERO] * matrix.cols
        vector[free] = ONE

        for row, pivot in enumerate(pivots):
            vector[pivot] = -reduced.entries[row][free]

        vectors.append(tuple(vector))

    return Subspace.span(vectors, matrix.cols)


def image(matrix: Matrix) -> Subspace:
    """
    Column space as a subspace of k^rows

    """

    return Subspace.span(matrix.columns(), matrix.rows)


class Subspace:
    """
    A subspace of k^n in canonical form: the nonzero rows of its RREF basis

    """

    __slots__ = ("_ambient_dim", "_basis", "_pivots")

    def __init__(self, ambient_dim: int, basis: Matrix, pivots: Tuple[int, ...]):
        self._ambient_dim: int = ambient_dim
        self._basis: Matrix = basis
        self._pivots: Tuple[int, ...] = pivots

    @classmethod
    def span(cls, vectors: Iterable[Sequence[ScalarLike]], ambient_dim: int) -> Subspace:
        """
        The span of a family of vectors

        :param vectors: The spanning family (may be dependent or empty)
        :param ambient_dim: Dimension of the ambient space
        :return: Canonical subspace

        """

        reduced, pivots = _reduce(Matrix.from_rows(vectors, ambient_dim))
        return cls(ambient_dim, Matrix(reduced.entries[:len(pivots)], ambient_dim), pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix((), ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.identity(ambient_dim), tuple(range(ambient_dim)))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> Subspace:
        """The span of the standard basis vectors at the given indices"""

        chosen: List[int] = sorted(set(indices))
        return cls(
            ambient_dim,
            Matrix(tuple(tuple(ONE if c == i else ZERO for c in range(ambient_dim)) for i in chosen), ambient_dim),
            tuple(chosen)
        )

    @property
    def ambient_dim(self) -> int:
        return self._ambient_dim

    @property
    def basis(self) -> Matrix:
        return self._basis

    @property
    def pivots(self) -> Tuple[int, ...]:
        return self._pivots

    @property
    def dim(self) -> int:
        return self._basis.rows

    @property
    def vectors(self) -> Tuple[Vector, ...]:
        return self._basis.entries

    def is_zero(self) -> bool:
        return self.dim == 0

    def _check_ambient(self, other: Subspace) -> None:
        if other.ambient_dim != self._ambient_dim:
            raise AmbientMismatchError(f"Subspaces of k^{self._ambient_dim} and k^{other.ambient_dim}")

    def contains(self, vector: Sequence[Scalar]) -> bool:
        if len(vector) != self._ambient_dim:
            raise AmbientMismatchError(f"Vector of length {len(vector)} in k^{self._ambient_dim}")

        residual: List[Scalar] = list(vector)
        for row, pivot in zip(self.vectors, self._pivots):
            factor: Scalar = residual[pivot]
            if factor:
                residual = [r - factor * b for r, b in zip(residual, row)]

        return not any(residual)

    def coordinates(self, vector: Sequence[Scalar]) -> Vector:
        """
        Coordinates of a member vector in the canonical basis (read off at pivot columns)

        :raises: NotASubspaceError

        """

        if not self.contains(vector):
            raise NotASubspaceError("Vector does not lie in the subspace")
        return tuple(vector[p] for p in self._pivots)

    def annihilator(self) -> Matrix:
        """Rows y with y . u = 0 for every u in the subspace (bilinear pairing)"""

        return kernel(self._basis).basis

    def __le__(self, other: Subspace) -> bool:
        self._check_ambient(other)
        return all(other.contains(v) for v in self.vectors)

    def __add__(self, other: Subspace) -> Subspace:
        self._check_ambient(other)

        if self.is_zero():
            return other
        if other.is_zero():
            return self
        return Subspace.span(self.vectors + other.vectors, self._ambient_dim)

    def __and__(self, other: Subspace) -> Subspace:
        self._check_ambient(other)

        if self.is_zero() or other.is_zero():
            return Subspace.zero(self._ambient_dim)

        constraints: Matrix = other.annihilator()
        if constraints.rows == 0:
            return self

        coefficients: Subspace = kernel(constraints @ self._basis.transpose())
        return Subspace.span((coefficients.basis @ self._basis).entries, self._ambient_dim)

    def image_under(self, matrix: Matrix) -> Subspace:
        """The image of this subspace under a linear map with ``matrix.cols == ambient_dim``"""

        if matrix.cols != self._ambient_dim:
            raise AmbientMismatchError(f"Map {matrix.shape} does not act on k^{self._ambient_dim}")

        return Subspace.span((matrix @ self._basis.transpose()).columns(), matrix.rows)

    def preimage_under(self, matrix: Matrix) -> Subspace:
        """{x : matrix x lies in this subspace}"""

        if matrix.rows != self._ambient_dim:
            raise AmbientMismatchError(f"Map {matrix.shape} does not land in k^{self._ambient_dim}")

        constraints: Matrix = self.annihilator()
        if constraints.rows == 0:
            return Subspace.full(matrix.cols)
        return kernel(constraints @ matrix)

    def embed(self, ambient_dim: int, offset: int) -> Subspace:
        """The same subspace placed in the coordinates [offset, offset + ambient_dim) of a bigger space"""

        tail: int = ambient_dim - offset - self._ambient_dim
        return Subspace(
            ambient_dim,
            Matrix(tuple((ZERO,) * offset + row + (ZERO,) * tail for row in self.vectors), ambient_dim),
            tuple(p + offset for p in self._pivots)
        )

    def conjugate(self) -> Subspace:
        return Subspace.span(self._basis.conjugate().entries, self._ambient_dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self._ambient_dim == other.ambient_dim and self._basis == other.basis

    def __hash__(self) -> int:
        return hash((self._ambient_dim, self._basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self._ambient_dim})"


def subspace_sum(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    vectors: List[Vector] = []
    for space in spaces:
        if space.ambient_dim != ambient_dim:
            raise AmbientMismatchError(f"Subspace of k^{space.ambient_dim} summed in k^{ambient_dim}")
        vectors.extend(space.vectors)
    return Subspace.span(vectors, ambient_dim)


def intersect(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    result: Subspace = Subspace.full(ambient_dim)
    for space in spaces:
        result = result & space
    return result


def completing_vectors(space: Subspace) -> List[Vector]:
    """Standard basis vectors at the non-pivot columns; together with the subspace they span k^n"""

    pivots = set(space.pivots)
    return [
        tuple(ONE if c == j else ZERO for c in range(space.ambient_dim))
        for j in range(space.ambient_dim) if j not in pivots
    ]


def solve_rows(basis: Sequence[Vector], vectors: Sequence[Vector], ambient_dim: int) -> List[Vector]:
    """
    Coefficients of each vector in an independent (not necessarily canonical) basis

    :param basis: Independent vectors
    :param vectors: Vectors in their span
    :param ambient_dim: Dimension of the ambient space
    :return: One coefficient tuple per input vector
    :raises: NotASubspaceError

    """

    span: Subspace = Subspace.span(basis, ambient_dim)
    if span.dim != len(basis):
        raise NotASubspaceError("Basis vectors are dependent")

    full: List[Vector] = list(basis) + completing_vectors(span)
    inverse: Matrix = Matrix.from_columns(full, ambient_dim).inverse()

    solutions: List[Vector] = []
    for vector in vectors:
        coefficients: Vector = inverse.apply(vector)
        if any(coefficients[len(basis):]):
            raise NotASubspaceError("Vector lies outside the span of the basis")
        solutions.append(coefficients[:len(basis)])
    return solutions


class Quotient:
    """
    A quotient W/U of subspaces of k^n, with a projection k^n -> W/U and a lift W/U -> W.

    The projection kills U and a fixed complement of W; on W its kernel is exactly U. The
    complement of U inside W is spanned by the canonical rows of W at pivots that U lacks.

    """

    __slots__ = ("numerator", "denominator", "dim", "projection", "lift")

    def __init__(self, numerator: Subspace, denominator: Subspace):
        """
        Build the quotient numerator/denominator

        :param numerator: W
        :param denominator: U, contained in W
        :raises: NotASubspaceError

        """

        if not denominator <= numerator:
            raise NotASubspaceError("Quotient denominator is not contained in the numerator")

        ambient: int = numerator.ambient_dim
        own_pivots = set(denominator.pivots)
        complement: List[Vector] = [
            row for row, pivot in zip(numerator.vectors, numerator.pivots) if pivot not in own_pivots
        ]

        self.numerator: Subspace = numerator
        self.denominator: Subspace = denominator
        self.dim: int = len(complement)
        self.lift: Matrix = Matrix.from_columns(complement, ambient)

        if self.dim == 0:
            self.projection: Matrix = Matrix.zeros(0, ambient)
            return

        full: List[Vector] = list(denominator.vectors) + complement + completing_vectors(numerator)
        inverse: Matrix = Matrix.from_columns(full, ambient).inverse()
        self.projection = inverse.submatrix(
            range(denominator.dim, denominator.dim + self.dim),
            range(ambient)
        )

    def project(self, vector: Sequence[Scalar]) -> Vector:
        return self.projection.apply(vector)

    def lift_vector(self, coordinates: Sequence[Scalar]) -> Vector:
        return self.lift.apply(coordinates)

    def lift_vectors(self) -> List[Vector]:
        return self.lift.columns()

    def __repr__(self) -> str:
        return f"Quotient(dim={self.dim}, ambient={self.numerator.ambient_dim})"


def quotient(numerator: Subspace, denominator: Subspace) -> Quotient:
    return Quotient(numerator, denominator)


def unit_vector(size: int, index: int) -> Vector:
    return tuple(ONE if c == index else ZERO for c in range(size))


def zero_vector(size: int) -> Vector:
    return (ZERO,) * size
