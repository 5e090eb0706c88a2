"""
Z^n-graded modules over k[z_1, ..., z_n] in windowed form

A module is stored on a box [lo, hi] of degrees. deg(z_i) = e_i, so multiplication by z_i maps
the piece of degree m to the piece of degree m + e_i. Along every axis flagged ``low_zero`` the
pieces vanish below the box; along every axis flagged ``high_stable`` they stay constant above it
with z_i acting as the identity.

"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from ReesLab.algebra.errors import AmbientMismatchError, WindowInsufficientError
from ReesLab.algebra.multifilt import MultiIndex, add_index, box, unit_index
from ReesLab.algebra.scalars import Matrix, Quotient, Subspace, image, kernel, subspace_sum

Mult = Dict[Tuple[int, MultiIndex], Matrix]


@dataclass(frozen=True)
class FiberData:
    """
    The fibre of a graded module at a point: total dim and, at the origin of the remaining
    variables, the dims per degree

    """

    dim: int
    degree_dims: Dict[MultiIndex, int] = field(default_factory=dict)


class GradedModule:
    """
    A finitely generated Z^n-graded module over the polynomial ring, given by windowed pieces

    """

    def __init__(
            self,
            n: int,
            lo: MultiIndex,
            hi: MultiIndex,
            dims: Dict[MultiIndex, int],
            mult: Mult,
            low_zero: Optional[Sequence[bool]] = None,
            high_stable: Optional[Sequence[bool]] = None
    ):
        """
        Wrap tabulated pieces and multiplication maps

        :param n: Number of variables
        :param lo: Lower corner of the window
        :param hi: Upper corner of the window
        :param dims: Piece dims for every degree in the window
        :param mult: z_i maps for every (i, m) with m and m + e_i in the window
        :param low_zero: Per axis, whether pieces vanish below the window
        :param high_stable: Per axis, whether pieces are constant above the window

        """

        if len(lo) != n or len(hi) != n:
            raise AmbientMismatchError(f"Window corners {lo}, {hi} for {n} variables")

        self.n: int = n
        self.lo: MultiIndex = tuple(lo)
        self.hi: MultiIndex = tuple(hi)
        self.dims: Dict[MultiIndex, int] = dims
        self.mult: Mult = mult
        self.low_zero: Tuple[bool, ...] = tuple(low_zero) if low_zero is not None else (True,) * n
        self.high_stable: Tuple[bool, ...] = tuple(high_stable) if high_stable is not None else (True,) * n

    @property
    def ranges(self) -> List[Tuple[int, int]]:
        return list(zip(self.lo, self.hi))

    def degrees(self) -> Iterable[MultiIndex]:
        return box(self.ranges)

    def _clamp(self, m: MultiIndex) -> Optional[MultiIndex]:
        """The stored degree that represents m, or None when the piece at m is zero"""

        clamped: List[int] = []

        for axis, value in enumerate(m):
            if value < self.lo[axis]:
                if not self.low_zero[axis]:
                    raise WindowInsufficientError(f"Degree {m} lies below the window along axis {axis}")
                return None

            if value > self.hi[axis]:
                if not self.high_stable[axis]:
                    raise WindowInsufficientError(f"Degree {m} lies above the window along axis {axis}")
                value = self.hi[axis]

            clamped.append(value)

        return tuple(clamped)

    def piece_dim(self, m: MultiIndex) -> int:
        stored: Optional[MultiIndex] = self._clamp(m)
        return 0 if stored is None else self.dims[stored]

    def mult_at(self, axis: int, m: MultiIndex) -> Matrix:
        """
        Multiplication by z_axis from degree m to degree m + e_axis

        """

        target: MultiIndex = add_index(m, unit_index(self.n, axis))
        stored: Optional[MultiIndex] = self._clamp(m)

        if stored is None:
            return Matrix.zeros(self.piece_dim(target), 0)

        if m[axis] >= self.hi[axis]:
            return Matrix.identity(self.dims[stored])

        return self.mult[(axis, stored)]

    def monomial(self, m: MultiIndex, target: MultiIndex) -> Matrix:
        """
        Multiplication by z^(target - m), composed axis by axis

        """

        result: Matrix = Matrix.identity(self.piece_dim(m))
        current: List[int] = list(m)

        for axis in range(self.n):
            while current[axis] < target[axis]:
                result = self.mult_at(axis, tuple(current)) @ result
                current[axis] += 1

        return result

    def piece_dims(self) -> Dict[MultiIndex, int]:
        return {m: self.dims[m] for m in self.degrees()}

    def generic_rank(self) -> int:
        return self.piece_dim(self.hi)

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def commutes(self) -> bool:
        """Whether z_j z_i = z_i z_j on every piece of the window"""

        for m in self.degrees():
            for i, j in itertools.combinations(range(self.n), 2):
                via_i: Matrix = self.mult_at(j, add_index(m, unit_index(self.n, i))) @ self.mult_at(i, m)
                via_j: Matrix = self.mult_at(i, add_index(m, unit_index(self.n, j))) @ self.mult_at(j, m)
                if via_i != via_j:
                    return False
        return True

    def mult_ranks(self) -> Dict[Tuple[int, MultiIndex], int]:
        return {
            (axis, m): self.mult_at(axis, m).rank()
            for m in self.degrees() for axis in range(self.n) if m[axis] < self.hi[axis]
        }

    def reframe(self, lo: MultiIndex, hi: MultiIndex) -> GradedModule:
        """
        Re-tabulate on a window that contains the current one

        """

        if any(a > b for a, b in zip(lo, self.lo)) or any(a < b for a, b in zip(hi, self.hi)):
            raise WindowInsufficientError(f"Window [{lo}, {hi}] does not contain [{self.lo}, {self.hi}]")

        ranges: List[Tuple[int, int]] = list(zip(lo, hi))
        dims: Dict[MultiIndex, int] = {m: self.piece_dim(m) for m in box(ranges)}
        mult: Mult = {
            (axis, m): self.mult_at(axis, m)
            for m in box(ranges) for axis in range(self.n) if m[axis] < hi[axis]
        }
        return GradedModule(self.n, lo, hi, dims, mult, self.low_zero, self.high_stable)

    def invariant_table(self, lo: MultiIndex, hi: MultiIndex) -> Tuple[Dict[MultiIndex, int], Dict]:
        ranges: List[Tuple[int, int]] = list(zip(lo, hi))
        dims: Dict[MultiIndex, int] = {m: self.piece_dim(m) for m in box(ranges)}
        ranks: Dict[Tuple[int, MultiIndex], int] = {
            (axis, m): self.mult_at(axis, m).rank()
            for m in box(ranges) for axis in range(self.n) if m[axis] < hi[axis]
        }
        return dims, ranks

    def equivalent(self, other: GradedModule) -> bool:
        """
        Compare piece dims and multiplication ranks over the union of both windows. For
        torsion-free modules in one variable this decides isomorphism.

        """

        if self.n != other.n:
            return False

        lo: MultiIndex = tuple(min(a, b) - 1 for a, b in zip(self.lo, other.lo))
        hi: MultiIndex = tuple(max(a, b) + 1 for a, b in zip(self.hi, other.hi))
        return self.invariant_table(lo, hi) == other.invariant_table(lo, hi)

    def submodule(self, spaces: Dict[MultiIndex, Subspace]) -> GradedModule:
        """
        The graded submodule with the given pieces (closed under multiplication)

        :param spaces: One subspace of every piece in the window
        :return: The submodule, in the canonical coordinates of each subspace

        """

        dims: Dict[MultiIndex, int] = {m: spaces[m].dim for m in self.degrees()}
        mult: Mult = {}

        for m in self.degrees():
            for axis in range(self.n):
                if m[axis] >= self.hi[axis]:
                    continue

                target: MultiIndex = add_index(m, unit_index(self.n, axis))
                images: List = [self.mult_at(axis, m).apply(v) for v in spaces[m].vectors]
                mult[(axis, m)] = Matrix.from_columns(
                    [spaces[target].coordinates(v) for v in images], spaces[target].dim
                )

        return GradedModule(self.n, self.lo, self.hi, dims, mult, self.low_zero, self.high_stable)

    def quotient_module(self, spaces: Dict[MultiIndex, Subspace]) -> GradedModule:
        """
        The graded quotient by a submodule given piecewise

        """

        return self.quotient_with_maps(spaces)[0]

    def quotient_with_maps(self, spaces: Dict[MultiIndex, Subspace]) -> Tuple[GradedModule, Dict[MultiIndex, Quotient]]:
        quotients: Dict[MultiIndex, Quotient] = {
            m: Quotient(Subspace.full(self.dims[m]), spaces[m]) for m in self.degrees()
        }
        dims: Dict[MultiIndex, int] = {m: quotients[m].dim for m in self.degrees()}
        mult: Mult = {}

        for m in self.degrees():
            for axis in range(self.n):
                if m[axis] < self.hi[axis]:
                    target: MultiIndex = add_index(m, unit_index(self.n, axis))
                    mult[(axis, m)] = quotients[target].projection @ self.mult_at(axis, m) @ quotients[m].lift

        return GradedModule(self.n, self.lo, self.hi, dims, mult, self.low_zero, self.high_stable), quotients

    def torsion_spaces(self) -> Dict[MultiIndex, Subspace]:
        """
        T(m): the elements of degree m killed by some monomial. Chasing to the upper corner
        decides this because z_i is the identity beyond the window.

        """

        return {m: kernel(self.monomial(m, self.hi)) for m in self.degrees()}

    def torsion_submodule(self) -> GradedModule:
        return self.submodule(self.torsion_spaces())

    def mod_torsion(self) -> GradedModule:
        return self.quotient_module(self.torsion_spaces())

    def is_torsion_free(self) -> bool:
        return all(space.is_zero() for space in self.torsion_spaces().values())

    def localize(self, inverted: Iterable[int]) -> GradedModule:
        """
        Invert the variables in ``inverted``. The result is the module over the remaining
        variables read at the stabilized degree of the inverted ones.

        """

        inverted_set: Set[int] = set(inverted)
        kept: List[int] = [axis for axis in range(self.n) if axis not in inverted_set]

        for axis in inverted_set:
            if not self.high_stable[axis]:
                raise WindowInsufficientError(f"Cannot invert z_{axis} without stabilization along axis {axis}")

        def full_degree(m_kept: MultiIndex) -> MultiIndex:
            degree: List[int] = list(self.hi)
            for axis, value in zip(kept, m_kept):
                degree[axis] = value
            return tuple(degree)

        ranges: List[Tuple[int, int]] = [(self.lo[axis], self.hi[axis]) for axis in kept]
        dims: Dict[MultiIndex, int] = {m: self.piece_dim(full_degree(m)) for m in box(ranges)}
        mult: Mult = {
            (position, m): self.mult_at(axis, full_degree(m))
            for m in box(ranges) for position, axis in enumerate(kept) if m[position] < self.hi[axis]
        }

        return GradedModule(
            len(kept),
            tuple(self.lo[axis] for axis in kept),
            tuple(self.hi[axis] for axis in kept),
            dims,
            mult,
            tuple(self.low_zero[axis] for axis in kept),
            tuple(self.high_stable[axis] for axis in kept)
        )

    def incoming_image(self, m: MultiIndex) -> Subspace:
        """z_1 M(m - e_1) + ... + z_n M(m - e_n) inside M(m)"""

        dim: int = self.piece_dim(m)
        return subspace_sum(
            (image(self.mult_at(axis, add_index(m, tuple(-x for x in unit_index(self.n, axis))))) for axis in range(self.n)),
            dim
        )

    def fiber_at_zero(self) -> FiberData:
        """
        M / (z_1, ..., z_n) M, degree by degree

        """

        degree_dims: Dict[MultiIndex, int] = {}
        for m in self.degrees():
            dim: int = self.dims[m] - self.incoming_image(m).dim
            if dim:
                degree_dims[m] = dim

        return FiberData(sum(degree_dims.values()), degree_dims)

    def fiber(self, point: Sequence) -> FiberData:
        """
        The fibre at a point of k^n: localize at its nonzero coordinates, then take the fibre at
        the origin of the rest

        """

        if len(point) != self.n:
            raise AmbientMismatchError(f"Point with {len(point)} coordinates for {self.n} variables")

        nonzero: List[int] = [axis for axis, value in enumerate(point) if value]
        return self.localize(nonzero).fiber_at_zero()

    def __repr__(self) -> str:
        return f"GradedModule(n={self.n}, window=[{self.lo}, {self.hi}], generic_rank={self.generic_rank()})"


def subquotient_module(
        n: int,
        lo: MultiIndex,
        hi: MultiIndex,
        ambient_dim: int,
        numerator: Callable[[MultiIndex], Subspace],
        denominator: Optional[Callable[[MultiIndex], Subspace]] = None
) -> Tuple[GradedModule, Dict[MultiIndex, Quotient]]:
    """
    The module with pieces numerator(m) / denominator(m) of a common space k^ambient_dim,
    where z_i acts through the inclusions numerator(m) in numerator(m + e_i)

    :return: The module and the quotient that coordinatizes each piece

    """

    ranges: List[Tuple[int, int]] = list(zip(lo, hi))
    quotients: Dict[MultiIndex, Quotient] = {}

    for m in box(ranges):
        top: Subspace = numerator(m)
        bottom: Subspace = denominator(m) if denominator is not None else Subspace.zero(ambient_dim)
        quotients[m] = Quotient(top, bottom)

    dims: Dict[MultiIndex, int] = {m: q.dim for m, q in quotients.items()}
    mult: Mult = {}

    for m in box(ranges):
        for axis in range(n):
            if m[axis] < hi[axis]:
                target: MultiIndex = add_index(m, unit_index(n, axis))
                mult[(axis, m)] = quotients[target].projection @ quotients[m].lift

    return GradedModule(n, lo, hi, dims, mult), quotients


class GradedMap:
    """
    A degree-preserving module map, given piecewise on a window shared by source and target

    """

    def __init__(self, source: GradedModule, target: GradedModule, maps: Dict[MultiIndex, Matrix]):
        if source.n != target.n or source.lo != target.lo or source.hi != target.hi:
            raise AmbientMismatchError("Graded map between modules on different windows")

        self.source: GradedModule = source
        self.target: GradedModule = target
        self.maps: Dict[MultiIndex, Matrix] = maps

    def at(self, m: MultiIndex) -> Matrix:
        stored: Optional[MultiIndex] = self.source._clamp(m)
        if stored is None:
            return Matrix.zeros(self.target.piece_dim(m), 0)
        return self.maps[stored]

    def commutes(self) -> bool:
        for m in self.source.degrees():
            for axis in range(self.source.n):
                shifted: MultiIndex = add_index(m, unit_index(self.source.n, axis))
                if self.at(shifted) @ self.source.mult_at(axis, m) != self.target.mult_at(axis, m) @ self.at(m):
                    return False
        return True

    def kernel_spaces(self) -> Dict[MultiIndex, Subspace]:
        return {m: kernel(self.maps[m]) for m in self.source.degrees()}

    def image_spaces(self) -> Dict[MultiIndex, Subspace]:
        return {m: image(self.maps[m]) for m in self.source.degrees()}

    def kernel(self) -> GradedModule:
        return self.source.submodule(self.kernel_spaces())

    def image(self) -> GradedModule:
        return self.target.submodule(self.image_spaces())

    def cokernel(self) -> GradedModule:
        return self.target.quotient_module(self.image_spaces())

    def localize(self, inverted: Iterable[int]) -> GradedMap:
        inverted_set: Set[int] = set(inverted)
        kept: List[int] = [axis for axis in range(self.source.n) if axis not in inverted_set]
        source: GradedModule = self.source.localize(inverted_set)
        target: GradedModule = self.target.localize(inverted_set)

        maps: Dict[MultiIndex, Matrix] = {}
        for m in source.degrees():
            degree: List[int] = list(self.source.hi)
            for axis, value in zip(kept, m):
                degree[axis] = value
            maps[m] = self.at(tuple(degree))

        return GradedMap(source, target, maps)

    def fiber_rank_at_zero(self) -> int:
        """Rank of the induced map M / (z) M -> N / (z) N"""

        total: int = 0
        for m in self.source.degrees():
            source_q: Quotient = Quotient(Subspace.full(self.source.dims[m]), self.source.incoming_image(m))
            target_q: Quotient = Quotient(Subspace.full(self.target.dims[m]), self.target.incoming_image(m))
            total += (target_q.projection @ self.maps[m] @ source_q.lift).rank()
        return total

    def fiber_rank(self, nonzero: Iterable[int]) -> int:
        return self.localize(nonzero).fiber_rank_at_zero()


@dataclass(frozen=True)
class TorsionReport:
    """
    Dims of the torsion submodule and the codimension of its support (n+1 when it vanishes)

    """

    torsion_pieces: Dict[MultiIndex, int]
    support_codim: int
    is_zero: bool


def support_codim(torsion: GradedModule) -> int:
    """
    Codimension of the support of a torsion module: the least |S| such that the module
    survives inverting the variables outside S. The support is a union of coordinate strata.

    """

    if torsion.is_zero():
        return torsion.n + 1

    for size in range(torsion.n + 1):
        for stratum in itertools.combinations(range(torsion.n), size):
            inverted: List[int] = [axis for axis in range(torsion.n) if axis not in stratum]
            if not torsion.localize(inverted).is_zero():
                return size

    return torsion.n


def torsion_report(torsion: GradedModule) -> TorsionReport:
    pieces: Dict[MultiIndex, int] = {m: d for m, d in torsion.piece_dims().items() if d}
    return TorsionReport(pieces, support_codim(torsion), not pieces)


def invariant_sections(module: GradedModule) -> int:
    """Dimension of the degree-0 piece"""

    return module.piece_dim((0,) * module.n)
