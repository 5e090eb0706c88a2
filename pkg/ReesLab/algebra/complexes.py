"""
Finite-dimensional bigraded complexes (C^(p,q), del, delbar) with an optional real structure,
their de Rham cohomology, Hodge filtration and Frolicher spectral sequence

The total complex in degree k lists the blocks C^(p,k-p) by increasing p, so the column
filtration F^p C^k is a coordinate subspace.

"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ReesLab.algebra.errors import InvalidComplexError, NoRealStructureError, VerificationFailedError
from ReesLab.algebra.multifilt import Filtration
from ReesLab.algebra.scalars import Matrix, ONE, Quotient, Scalar, ScalarLike, Subspace, Vector, conjugate_scalar, \
    image, kernel, power, to_scalar
from ReesLab.client.logger import ReesLabLogHandler

Bidegree = Tuple[int, int]


class BigradedComplex:
    """
    A bounded double complex: del maps C^(p,q) to C^(p+1,q), delbar maps C^(p,q) to C^(p,q+1),
    and sigma (when present) is the antilinear involution v -> S_(p,q) conj(v) from C^(p,q) to C^(q,p)

    """

    def __init__(
            self,
            terms: Dict[Bidegree, int],
            delta: Optional[Dict[Bidegree, Matrix]] = None,
            delta_bar: Optional[Dict[Bidegree, Matrix]] = None,
            sigma: Optional[Dict[Bidegree, Matrix]] = None
    ):
        """
        Build and validate a bigraded complex

        :param terms: dim C^(p,q) per bidegree (p, q >= 0)
        :param delta: del on each bidegree; missing entries are zero
        :param delta_bar: delbar on each bidegree; missing entries are zero
        :param sigma: The real structure S_(p,q), if any
        :raises: InvalidComplexError

        """

        self.terms: Dict[Bidegree, int] = {pq: d for pq, d in terms.items() if d}
        self.delta: Dict[Bidegree, Matrix] = dict(delta or {})
        self.delta_bar: Dict[Bidegree, Matrix] = dict(delta_bar or {})
        self.sigma: Optional[Dict[Bidegree, Matrix]] = dict(sigma) if sigma is not None else None

        self._validate()

    @property
    def has_real_structure(self) -> bool:
        return self.sigma is not None

    @property
    def max_degree(self) -> int:
        return max((p + q for p, q in self.terms), default=0)

    @property
    def max_p(self) -> int:
        return max((p for p, _ in self.terms), default=0)

    def dim(self, p: int, q: int) -> int:
        return self.terms.get((p, q), 0)

    def _map(self, maps: Dict[Bidegree, Matrix], source: Bidegree, target: Bidegree) -> Matrix:
        return maps.get(source, Matrix.zeros(self.dim(*target), self.dim(*source)))

    def del_at(self, p: int, q: int) -> Matrix:
        return self._map(self.delta, (p, q), (p + 1, q))

    def delbar_at(self, p: int, q: int) -> Matrix:
        return self._map(self.delta_bar, (p, q), (p, q + 1))

    def sigma_at(self, p: int, q: int) -> Matrix:
        if self.sigma is None:
            raise NoRealStructureError("The complex carries no real structure")
        return self._map(self.sigma, (p, q), (q, p))

    def _validate(self) -> None:
        for p, q in self.terms:
            if p < 0 or q < 0:
                raise InvalidComplexError(f"Term C^({p},{q}) lies outside the first quadrant")

        for name, maps, shift in (("del", self.delta, (1, 0)), ("delbar", self.delta_bar, (0, 1))):
            for (p, q), matrix in maps.items():
                expected: Tuple[int, int] = (self.dim(p + shift[0], q + shift[1]), self.dim(p, q))
                if matrix.shape != expected:
                    raise InvalidComplexError(f"{name} on C^({p},{q}) has shape {matrix.shape}, expected {expected}")

        for p, q in self.terms:
            if not (self.del_at(p + 1, q) @ self.del_at(p, q)).is_zero():
                raise InvalidComplexError(f"del^2 != 0 on C^({p},{q})")
            if not (self.delbar_at(p, q + 1) @ self.delbar_at(p, q)).is_zero():
                raise InvalidComplexError(f"delbar^2 != 0 on C^({p},{q})")
            anti: Matrix = self.del_at(p, q + 1) @ self.delbar_at(p, q) + self.delbar_at(p + 1, q) @ self.del_at(p, q)
            if not anti.is_zero():
                raise InvalidComplexError(f"del delbar + delbar del != 0 on C^({p},{q})")

        if self.sigma is None:
            return

        for p, q in self.terms:
            if self.dim(p, q) != self.dim(q, p):
                raise InvalidComplexError(f"dim C^({p},{q}) != dim C^({q},{p}) under a real structure")

            if self.sigma_at(q, p) @ self.sigma_at(p, q).conjugate() != Matrix.identity(self.dim(p, q)):
                raise InvalidComplexError(f"sigma^2 != Id on C^({p},{q})")

            if self.sigma_at(p + 1, q) @ self.del_at(p, q).conjugate() != self.delbar_at(q, p) @ self.sigma_at(p, q):
                raise InvalidComplexError(f"sigma does not carry del to delbar on C^({p},{q})")

    def blocks(self, k: int) -> List[Tuple[Bidegree, int]]:
        """The bidegrees of total degree k with their offsets in C^k"""

        result: List[Tuple[Bidegree, int]] = []
        offset: int = 0
        for p in range(0, k + 1):
            if self.dim(p, k - p):
                result.append(((p, k - p), offset))
                offset += self.dim(p, k - p)
        return result

    def total_dim(self, k: int) -> int:
        return sum(self.dim(p, k - p) for p in range(0, k + 1)) if k >= 0 else 0

    def _assemble(self, k: int, block_map) -> Matrix:
        rows: int = self.total_dim(k + 1)
        cols: int = self.total_dim(k)
        grid: List[List[Scalar]] = [[to_scalar(0)] * cols for _ in range(rows)]
        target_offsets: Dict[Bidegree, int] = dict(self.blocks(k + 1))

        for (p, q), source_offset in self.blocks(k):
            for target, matrix in block_map(p, q):
                if target not in target_offsets or matrix.is_zero():
                    continue
                for r, row in enumerate(matrix.entries):
                    for c, value in enumerate(row):
                        grid[target_offsets[target] + r][source_offset + c] = grid[target_offsets[target] + r][source_offset + c] + value

        return Matrix(tuple(tuple(row) for row in grid), cols)

    def total_differential(self, k: int, h: ScalarLike = ONE) -> Matrix:
        """
        h del + delbar from C^k to C^(k+1); h = 1 gives d

        """

        factor: Scalar = to_scalar(h)
        return self._assemble(k, lambda p, q: [
            ((p + 1, q), self.del_at(p, q).scale(factor)),
            ((p, q + 1), self.delbar_at(p, q))
        ])

    def filtration_space(self, k: int, p: int) -> Subspace:
        """F^p C^k: the blocks C^(r, k-r) with r >= p"""

        indices: List[int] = [
            offset + i for (r, _), offset in self.blocks(k) if r >= p for i in range(self.dim(r, k - r))
        ]
        return Subspace.coordinate(self.total_dim(k), indices)

    def row_filtration_space(self, k: int, q: int) -> Subspace:
        """Fbar^q C^k: the blocks C^(k-s, s) with s >= q"""

        indices: List[int] = [
            offset + i for (r, s), offset in self.blocks(k) if s >= q for i in range(self.dim(r, s))
        ]
        return Subspace.coordinate(self.total_dim(k), indices)

    def sigma_total(self, k: int) -> Matrix:
        """The linear part S of sigma on C^k, so that sigma(v) = S conj(v)"""

        size: int = self.total_dim(k)
        offsets: Dict[Bidegree, int] = dict(self.blocks(k))
        grid: List[List[Scalar]] = [[to_scalar(0)] * size for _ in range(size)]

        for (p, q), source_offset in self.blocks(k):
            matrix: Matrix = self.sigma_at(p, q)
            for r, row in enumerate(matrix.entries):
                for c, value in enumerate(row):
                    grid[offsets[(q, p)] + r][source_offset + c] = value

        return Matrix(tuple(tuple(row) for row in grid), size)

    def apply_sigma(self, k: int, vector: Vector) -> Vector:
        return self.sigma_total(k).apply(tuple(conjugate_scalar(v) for v in vector))

    def theta(self, k: int, h: ScalarLike) -> Matrix:
        """theta_h: multiplication by h^p on C^(p,q)"""

        factor: Scalar = to_scalar(h)
        return Matrix.diagonal([
            power(factor, p) for (p, q), _ in self.blocks(k) for _ in range(self.dim(p, q))
        ])

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * d for (p, q), d in self.terms.items())

    def __repr__(self) -> str:
        return f"BigradedComplex(terms={len(self.terms)}, max_degree={self.max_degree}, real={self.has_real_structure})"


@dataclass(frozen=True)
class CohomologyData:
    """
    A cohomology group as ker / im, with a lift of its basis

    """

    degree: int
    quotient: Quotient

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def basis(self) -> List[Vector]:
        return self.quotient.lift_vectors()


def _cohomology(complex_: BigradedComplex, k: int, h: ScalarLike = ONE) -> CohomologyData:
    cycles: Subspace = kernel(complex_.total_differential(k, h))
    boundaries: Subspace = image(complex_.total_differential(k - 1, h))
    return CohomologyData(k, Quotient(cycles, boundaries))


def total_cohomology(complex_: BigradedComplex, k: int) -> CohomologyData:
    return _cohomology(complex_, k)


def betti_numbers(complex_: BigradedComplex) -> List[int]:
    return [total_cohomology(complex_, k).dim for k in range(complex_.max_degree + 1)]


def _induced_filtration(complex_: BigradedComplex, k: int, space_at) -> Filtration:
    cohomology: CohomologyData = total_cohomology(complex_, k)
    cycles: Subspace = cohomology.quotient.numerator

    return Filtration.from_function(
        cohomology.dim, 0, k + 1,
        lambda p: Subspace.span(
            (cohomology.quotient.project(v) for v in (cycles & space_at(p)).vectors), cohomology.dim
        )
    )


def hodge_filtration(complex_: BigradedComplex, k: int) -> Filtration:
    """
    F^p H^k = image of H^k(F^p C) in H^k(C), in the coordinates of ``total_cohomology``

    """

    return _induced_filtration(complex_, k, lambda p: complex_.filtration_space(k, p))


def row_filtration_image(complex_: BigradedComplex, k: int) -> Filtration:
    """The filtration on H^k induced by the row filtration Fbar^q C^k"""

    return _induced_filtration(complex_, k, lambda q: complex_.row_filtration_space(k, q))


def conjugate_filtration(complex_: BigradedComplex, k: int) -> Filtration:
    """
    sigma applied to the Hodge filtration, cross-checked against the row filtration

    :raises: NoRealStructureError
    :raises: VerificationFailedError

    """

    if not complex_.has_real_structure:
        raise NoRealStructureError("The conjugate filtration needs a real structure")

    cohomology: CohomologyData = total_cohomology(complex_, k)
    cycles: Subspace = cohomology.quotient.numerator

    def conjugate_step(q: int) -> Subspace:
        images: List[Vector] = [
            cohomology.quotient.project(complex_.apply_sigma(k, v))
            for v in (cycles & complex_.filtration_space(k, q)).vectors
        ]
        return Subspace.span(images, cohomology.dim)

    result: Filtration = Filtration.from_function(cohomology.dim, 0, k + 1, conjugate_step)

    if result != row_filtration_image(complex_, k):
        raise VerificationFailedError("conjugate_filtration", "sigma(F) differs from the row filtration on cohomology")

    return result


@dataclass(frozen=True)
class SpectralSequenceTable:
    """
    Page dims, differentials d_r: E_r^(p,q) -> E_r^(p+r,q-r+1) and the degeneration page

    """

    pages: Dict[int, Dict[Bidegree, int]]
    differentials: Dict[int, Dict[Bidegree, Matrix]]
    degeneration_page: int
    infinity: Dict[Bidegree, int] = field(default_factory=dict)

    def degree_dims(self, r: int, k: int) -> Dict[Bidegree, int]:
        return {(p, q): d for (p, q), d in self.pages[r].items() if p + q == k and d}

    def degeneration_page_in_degree(self, k: int) -> int:
        """1 + the last r whose differential enters or leaves total degree k"""

        last: int = 0
        for r, maps in self.differentials.items():
            for (p, q), matrix in maps.items():
                if p + q in (k - 1, k) and not matrix.is_zero():
                    last = max(last, r)
        return last + 1


class _PageBuilder:
    """Z_r / B_r bookkeeping for one complex, cached per (degree, p, r)"""

    def __init__(self, complex_: BigradedComplex):
        self.complex: BigradedComplex = complex_
        self._differentials: Dict[int, Matrix] = {}
        self._cycles: Dict[Tuple[int, int, int], Subspace] = {}
        self._pieces: Dict[Tuple[int, int, int], Quotient] = {}

    def d(self, k: int) -> Matrix:
        if k not in self._differentials:
            self._differentials[k] = self.complex.total_differential(k)
        return self._differentials[k]

    def f(self, k: int, p: int) -> Subspace:
        return self.complex.filtration_space(k, p)

    def z(self, k: int, p: int, r: int) -> Subspace:
        """Z_r^p = {x in F^p C^k : dx in F^(p+r) C^(k+1)}"""

        key: Tuple[int, int, int] = (k, p, r)
        if key not in self._cycles:
            self._cycles[key] = self.f(k, p) & self.f(k + 1, p + r).preimage_under(self.d(k))
        return self._cycles[key]

    def piece(self, p: int, q: int, r: int) -> Quotient:
        """E_r^(p,q) = Z_r^p / ((Z_r^p & F^(p+1)) + d Z_(r-1)^(p-r+1))"""

        key: Tuple[int, int, int] = (p, q, r)
        if key not in self._pieces:
            k: int = p + q
            cycles: Subspace = self.z(k, p, r)
            boundaries: Subspace = self.z(k - 1, p - r + 1, r - 1).image_under(self.d(k - 1)) if k > 0 \
                else Subspace.zero(self.complex.total_dim(k))
            self._pieces[key] = Quotient(cycles, (cycles & self.f(k, p + 1)) + boundaries)
        return self._pieces[key]

    def differential(self, p: int, q: int, r: int) -> Matrix:
        source: Quotient = self.piece(p, q, r)
        target: Quotient = self.piece(p + r, q - r + 1, r)
        return target.projection @ self.d(p + q) @ source.lift


def spectral_sequence(complex_: BigradedComplex, r_max: int = 1) -> SpectralSequenceTable:
    """
    Pages E_r and differentials d_r of the column filtration

    Every d_r with r > max p vanishes, so pages are computed until that point or r_max,
    whichever is later, and the degeneration page is exact.

    :param complex_: The complex
    :param r_max: The last page to tabulate at least
    :return: The table

    """

    builder: _PageBuilder = _PageBuilder(complex_)
    last: int = max(r_max, complex_.max_p + 2)
    positions: List[Bidegree] = [
        (p, k - p) for k in range(complex_.max_degree + 1) for p in range(k + 1)
    ]

    pages: Dict[int, Dict[Bidegree, int]] = {}
    differentials: Dict[int, Dict[Bidegree, Matrix]] = {}
    last_nonzero: int = 0

    for r in range(1, last + 1):
        pages[r] = {pq: builder.piece(pq[0], pq[1], r).dim for pq in positions}
        differentials[r] = {}

        for p, q in positions:
            if pages[r][(p, q)] == 0:
                continue
            matrix: Matrix = builder.differential(p, q, r)
            differentials[r][(p, q)] = matrix
            if not matrix.is_zero():
                last_nonzero = r

    degeneration: int = last_nonzero + 1
    ReesLabLogHandler.get_logger().debug(f"Spectral sequence degenerates at E_{degeneration}.")

    return SpectralSequenceTable(
        pages, differentials, degeneration,
        {pq: d for pq, d in pages[min(degeneration, last)].items() if d}
    )


def degeneration_page_in_degree(complex_: BigradedComplex, k: int) -> int:
    return spectral_sequence(complex_).degeneration_page_in_degree(k)


def check_convergence(complex_: BigradedComplex, k: int, table: Optional[SpectralSequenceTable] = None) -> bool:
    """E_infinity^(p, k-p) has the dims of gr_F^p H^k"""

    table = table or spectral_sequence(complex_)
    graded: Dict[int, int] = hodge_filtration(complex_, k).graded_dims()

    expected: Dict[Bidegree, int] = {(p, k - p): d for p, d in graded.items() if d}
    return table.degree_dims(table.degeneration_page, k) == expected


def twisted_cohomology(complex_: BigradedComplex, h: ScalarLike, k: int) -> CohomologyData:
    """Cohomology of d_h = h del + delbar in degree k"""

    return _cohomology(complex_, k, h)


def theta_intertwine_check(complex_: BigradedComplex, h: ScalarLike) -> bool:
    """
    theta_h d = d_h theta_h on every degree

    """

    factor: Scalar = to_scalar(h)
    if not factor:
        raise ZeroDivisionError("theta_h needs h != 0")

    for k in range(complex_.max_degree + 1):
        left: Matrix = complex_.theta(k + 1, factor) @ complex_.total_differential(k)
        right: Matrix = complex_.total_differential(k, factor) @ complex_.theta(k, factor)
        if left != right:
            return False
    return True


def euler_characteristic(complex_: BigradedComplex) -> int:
    return complex_.euler_characteristic()
