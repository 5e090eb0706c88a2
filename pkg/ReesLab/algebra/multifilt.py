"""
Multifiltered finite-dimensional vector spaces, their splittings and filtered maps

"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ReesLab.algebra.errors import AmbientMismatchError, FilteredCompatibilityError, InvalidSplittingError, \
    NonDescendingFiltrationError, NonExhaustiveFiltrationError, NotSplittableError, StrictnessRangeError
from ReesLab.algebra.scalars import Matrix, Quotient, Subspace, Vector, image, intersect, kernel, \
    subspace_sum
from ReesLab.client.logger import ReesLabLogHandler

MultiIndex = Tuple[int, ...]


def unit_index(n: int, axis: int) -> MultiIndex:
    return tuple(1 if i == axis else 0 for i in range(n))


def add_index(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def negate_index(a: MultiIndex) -> MultiIndex:
    return tuple(-x for x in a)


def box(ranges: Sequence[Tuple[int, int]]) -> Iterator[MultiIndex]:
    """All multi-indices in a product of closed integer ranges"""

    return itertools.product(*(range(lo, hi + 1) for lo, hi in ranges))


class Filtration:
    """
    A descending, separated and exhaustive filtration of k^d, stored at its jumps.

    Steps (p_1, S_1), ..., (p_m, S_m) with p_1 < ... < p_m and k^d = S_1 > ... > S_m != 0.
    F^p is S_j for the smallest p_j >= p, and 0 above p_m.

    """

    __slots__ = ("_ambient_dim", "_steps")

    def __init__(self, ambient_dim: int, steps: Iterable[Tuple[int, Subspace]]):
        """
        Build a filtration from (index, subspace) steps in any order

        :param ambient_dim: Dimension of the filtered space
        :param steps: Pairs (p, F^p); F^p between listed indices is read off the next listed step
        :raises: NonDescendingFiltrationError
        :raises: NonExhaustiveFiltrationError

        """

        ordered: List[Tuple[int, Subspace]] = sorted(steps, key=lambda step: step[0])

        for p, space in ordered:
            if space.ambient_dim != ambient_dim:
                raise AmbientMismatchError(f"Filtration step {p} lives in k^{space.ambient_dim}, not k^{ambient_dim}")

        for (p, space), (q, successor) in zip(ordered, ordered[1:]):
            if p == q:
                raise NonDescendingFiltrationError((p, q), f"Filtration index {p} is listed twice")
            if not successor <= space:
                raise NonDescendingFiltrationError((p, q), f"Step {q} is not contained in step {p}")

        if ambient_dim > 0 and (not ordered or ordered[0][1].dim != ambient_dim):
            raise NonExhaustiveFiltrationError("The lowest filtration step must be the whole space")

        canonical: List[Tuple[int, Subspace]] = []
        for index, (p, space) in enumerate(ordered):
            if space.is_zero():
                break
            if index + 1 < len(ordered) and ordered[index + 1][1] == space:
                continue
            canonical.append((p, space))

        self._ambient_dim: int = ambient_dim
        self._steps: Tuple[Tuple[int, Subspace], ...] = tuple(canonical)

    @classmethod
    def trivial(cls, ambient_dim: int, jump: int = 0) -> Filtration:
        """A single jump at ``jump``: F^jump = V and F^(jump+1) = 0"""

        return cls(ambient_dim, [(jump, Subspace.full(ambient_dim))])

    @classmethod
    def line(cls, jump: int) -> Filtration:
        return cls.trivial(1, jump)

    @classmethod
    def from_function(cls, ambient_dim: int, lo: int, hi: int, at: Callable[[int], Subspace]) -> Filtration:
        """
        Tabulate a filtration given F^lo = V and F^(hi+1) = 0

        """

        return cls(ambient_dim, [(p, at(p)) for p in range(lo, hi + 1)])

    @property
    def ambient_dim(self) -> int:
        return self._ambient_dim

    @property
    def steps(self) -> Tuple[Tuple[int, Subspace], ...]:
        return self._steps

    @property
    def lowest(self) -> int:
        """Largest index with F^p = V"""

        return self._steps[0][0] if self._steps else 0

    @property
    def highest(self) -> int:
        """Largest index with F^p != 0"""

        return self._steps[-1][0] if self._steps else 0

    @property
    def jumps(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self._steps)

    def at(self, p: int) -> Subspace:
        for index, space in self._steps:
            if index >= p:
                return space
        return Subspace.zero(self._ambient_dim)

    def dims(self, lo: int, hi: int) -> Dict[int, int]:
        return {p: self.at(p).dim for p in range(lo, hi + 1)}

    def graded_dims(self) -> Dict[int, int]:
        """dim F^p / F^(p+1) at every jump"""

        result: Dict[int, int] = {}
        for position, (p, space) in enumerate(self._steps):
            following: int = self._steps[position + 1][1].dim if position + 1 < len(self._steps) else 0
            result[p] = space.dim - following
        return result

    def map_spaces(self, ambient_dim: int, transform: Callable[[Subspace], Subspace]) -> Filtration:
        return Filtration(ambient_dim, [(p, transform(space)) for p, space in self._steps])

    def transformed(self, matrix: Matrix) -> Filtration:
        """Push forward along an invertible matrix (simultaneous change of basis)"""

        return self.map_spaces(matrix.rows, lambda space: space.image_under(matrix))

    def conjugate(self) -> Filtration:
        return self.map_spaces(self._ambient_dim, Subspace.conjugate)

    def shift(self, amount: int) -> Filtration:
        return Filtration(self._ambient_dim, [(p + amount, space) for p, space in self._steps])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Filtration):
            return NotImplemented
        return self._ambient_dim == other.ambient_dim and self._steps == other.steps

    def __hash__(self) -> int:
        return hash((self._ambient_dim, self._steps))

    def __repr__(self) -> str:
        table: str = ", ".join(f"{p}:{space.dim}" for p, space in self._steps)
        return f"Filtration(dim={self._ambient_dim}, steps=[{table}])"


@dataclass(frozen=True)
class MultiFilteredSpace:
    """
    A finite-dimensional space k^dim with n descending separated exhaustive filtrations

    """

    dim: int
    filtrations: Tuple[Filtration, ...]

    def __post_init__(self):
        object.__setattr__(self, "filtrations", tuple(self.filtrations))

        for filtration in self.filtrations:
            if filtration.ambient_dim != self.dim:
                raise AmbientMismatchError(f"Filtration on k^{filtration.ambient_dim} attached to k^{self.dim}")

    @property
    def n(self) -> int:
        return len(self.filtrations)

    def support_ranges(self) -> List[Tuple[int, int]]:
        """Per axis, the indices where F_i still changes"""

        return [(f.lowest, f.highest) for f in self.filtrations]

    def window(self) -> List[Tuple[int, int]]:
        """Per axis, the jump range extended by one on each side"""

        return [(f.lowest - 1, f.highest + 1) for f in self.filtrations]

    def drop_filtrations(self, dropped: Iterable[int]) -> MultiFilteredSpace:
        removed = set(dropped)
        return MultiFilteredSpace(self.dim, tuple(f for i, f in enumerate(self.filtrations) if i not in removed))

    def transformed(self, matrix: Matrix) -> MultiFilteredSpace:
        return MultiFilteredSpace(matrix.rows, tuple(f.transformed(matrix) for f in self.filtrations))


def f_intersection(space: MultiFilteredSpace, p: MultiIndex) -> Subspace:
    """
    F^p = F_1^(p_1) & ... & F_n^(p_n)

    """

    if len(p) != space.n:
        raise AmbientMismatchError(f"Multi-index of length {len(p)} for {space.n} filtrations")

    return intersect((f.at(p_i) for f, p_i in zip(space.filtrations, p)), space.dim)


def graded_piece_D(space: MultiFilteredSpace, p: MultiIndex) -> Quotient:
    """
    D^p = F^p / (F^(p+e_1) + ... + F^(p+e_n))

    :param space: The multifiltered space
    :param p: The multi-index
    :return: The quotient, whose lift spans a complement of the shifted sum inside F^p

    """

    numerator: Subspace = f_intersection(space, p)
    shifted: Subspace = subspace_sum(
        (f_intersection(space, add_index(p, unit_index(space.n, i))) & numerator for i in range(space.n)),
        space.dim
    )
    return Quotient(numerator, shifted)


def d_table(space: MultiFilteredSpace) -> Dict[MultiIndex, int]:
    """Nonzero dims of D^p; outside the product of jump ranges D^p vanishes"""

    table: Dict[MultiIndex, int] = {}
    for p in box(space.support_ranges()):
        dim: int = graded_piece_D(space, p).dim
        if dim:
            table[p] = dim
    return table


def is_splittable(space: MultiFilteredSpace) -> bool:
    return sum(d_table(space).values()) == space.dim


@dataclass(frozen=True)
class Splitting:
    """
    A decomposition V = sum of V^p over multi-indices p

    """

    components: Dict[MultiIndex, Subspace] = field(default_factory=dict)

    def total_dim(self) -> int:
        return sum(space.dim for space in self.components.values())

    def partial_sum(self, axis: int, r: int, ambient_dim: int) -> Subspace:
        """Sum of the V^p with p_axis >= r"""

        return subspace_sum((space for p, space in self.components.items() if p[axis] >= r), ambient_dim)

    def verify(self, space: MultiFilteredSpace) -> None:
        """
        Check that the components are independent, span V and induce every filtration

        :raises: InvalidSplittingError

        """

        everything: Subspace = subspace_sum(self.components.values(), space.dim)
        if self.total_dim() != space.dim or everything.dim != space.dim:
            raise InvalidSplittingError(
                f"Components of total dim {self.total_dim()} span {everything.dim} of {space.dim} dimensions"
            )

        for axis, filtration in enumerate(space.filtrations):
            for r in range(filtration.lowest - 1, filtration.highest + 2):
                if self.partial_sum(axis, r, space.dim) != filtration.at(r):
                    raise InvalidSplittingError(f"Splitting does not induce filtration {axis} at index {r}")

    def is_valid(self, space: MultiFilteredSpace) -> bool:
        try:
            self.verify(space)
        except InvalidSplittingError:
            return False
        return True


def compute_splitting(space: MultiFilteredSpace) -> Splitting:
    """
    Lift every D^p into F^p, visiting p in lexicographically decreasing order

    :param space: The multifiltered space
    :return: A verified splitting
    :raises: NotSplittableError

    """

    components: Dict[MultiIndex, Subspace] = {}

    for p in sorted(box(space.support_ranges()), reverse=True):
        piece: Quotient = graded_piece_D(space, p)
        if piece.dim:
            components[p] = Subspace.span(piece.lift_vectors(), space.dim)

    total: int = sum(c.dim for c in components.values())
    if total != space.dim:
        raise NotSplittableError(total, space.dim, f"Sum of dim D^p is {total}, but dim V is {space.dim}")

    splitting: Splitting = Splitting(components)
    splitting.verify(space)

    ReesLabLogHandler.get_logger().debug(f"Split a {space.n}-filtered space of dim {space.dim} into {len(components)} pieces.")
    return splitting


@dataclass(frozen=True)
class FilteredMap:
    """
    A linear map between multifiltered spaces sending F_i^p into G_i^p for every i and p

    """

    source: MultiFilteredSpace
    target: MultiFilteredSpace
    matrix: Matrix

    def __post_init__(self):
        if self.source.n != self.target.n:
            raise AmbientMismatchError(f"Map between {self.source.n}- and {self.target.n}-filtered spaces")

        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise AmbientMismatchError(
                f"Matrix of shape {self.matrix.shape} for a map k^{self.source.dim} -> k^{self.target.dim}"
            )

        for axis, (lo, hi) in enumerate(self.joint_window()):
            for p in range(lo, hi + 1):
                pushed: Subspace = self.source.filtrations[axis].at(p).image_under(self.matrix)
                if not pushed <= self.target.filtrations[axis].at(p):
                    raise FilteredCompatibilityError(axis, p, f"f(F_{axis}^{p}) is not contained in G_{axis}^{p}")

    @property
    def n(self) -> int:
        return self.source.n

    def joint_window(self) -> List[Tuple[int, int]]:
        return [
            (min(a.lowest, b.lowest) - 1, max(a.highest, b.highest) + 1)
            for a, b in zip(self.source.filtrations, self.target.filtrations)
        ]

    def image(self) -> Subspace:
        return image(self.matrix)


def is_r_strict(f: FilteredMap, r: int) -> bool:
    """
    Whether f(F_I^p) = G_I^p & im f for every index set I of size r and every p

    :param f: The filtered map
    :param r: Size of the index sets, 1 <= r <= n
    :return: Whether f is r-strict
    :raises: StrictnessRangeError

    """

    if not 1 <= r <= f.n:
        raise StrictnessRangeError(f"r = {r} is outside 1..{f.n}")

    window: List[Tuple[int, int]] = f.joint_window()
    image_space: Subspace = f.image()

    for axes in itertools.combinations(range(f.n), r):
        for p in box([window[axis] for axis in axes]):
            source_part: Subspace = intersect(
                (f.source.filtrations[axis].at(p_i) for axis, p_i in zip(axes, p)), f.source.dim
            )
            target_part: Subspace = intersect(
                (f.target.filtrations[axis].at(p_i) for axis, p_i in zip(axes, p)), f.target.dim
            )

            if source_part.image_under(f.matrix) != target_part & image_space:
                ReesLabLogHandler.get_logger().debug(f"Strictness fails on axes {axes} at {p}.")
                return False

    return True


def tensor(left: MultiFilteredSpace, right: MultiFilteredSpace) -> MultiFilteredSpace:
    """
    Tensor product with the convolution filtrations; u (x) w sits at index a * dim(right) + b

    """

    if left.n != right.n:
        raise AmbientMismatchError(f"Tensor of {left.n}- and {right.n}-filtered spaces")

    dim: int = left.dim * right.dim
    filtrations: List[Filtration] = []

    for f, g in zip(left.filtrations, right.filtrations):

        def convolution(p: int, f: Filtration = f, g: Filtration = g) -> Subspace:
            vectors: List[Vector] = []
            for a in range(f.lowest, f.highest + 1):
                for u in f.at(a).vectors:
                    for w in g.at(p - a).vectors:
                        vectors.append(tuple(x * y for x in u for y in w))
            return Subspace.span(vectors, dim)

        filtrations.append(
            Filtration.from_function(dim, f.lowest + g.lowest, f.highest + g.highest + 1, convolution)
        )

    return MultiFilteredSpace(dim, tuple(filtrations))


def direct_sum(left: MultiFilteredSpace, right: MultiFilteredSpace) -> MultiFilteredSpace:
    if left.n != right.n:
        raise AmbientMismatchError(f"Direct sum of {left.n}- and {right.n}-filtered spaces")

    dim: int = left.dim + right.dim
    filtrations: List[Filtration] = []

    for f, g in zip(left.filtrations, right.filtrations):
        lo: int = min(f.lowest, g.lowest)
        hi: int = max(f.highest, g.highest) + 1
        filtrations.append(Filtration.from_function(
            dim, lo, hi, lambda p, f=f, g=g: f.at(p).embed(dim, 0) + g.at(p).embed(dim, left.dim)
        ))

    return MultiFilteredSpace(dim, tuple(filtrations))


def restrict_to(space: MultiFilteredSpace, sub: Subspace) -> MultiFilteredSpace:
    """The induced filtrations F_i^p & sub, written in the canonical coordinates of ``sub``"""

    def restricted(filtration: Filtration) -> Filtration:
        return Filtration.from_function(
            sub.dim,
            filtration.lowest,
            filtration.highest + 1,
            lambda p: Subspace.span((sub.coordinates(v) for v in (filtration.at(p) & sub).vectors), sub.dim)
        )

    return MultiFilteredSpace(sub.dim, tuple(restricted(f) for f in space.filtrations))


def kernel_object(f: FilteredMap) -> MultiFilteredSpace:
    """ker f with the filtrations F_i^p & ker f, in the canonical basis of ker f"""

    return restrict_to(f.source, kernel(f.matrix))


def cokernel_projection(f: FilteredMap) -> Quotient:
    return Quotient(Subspace.full(f.target.dim), f.image())


def cokernel_object(f: FilteredMap) -> MultiFilteredSpace:
    """coker f with the image filtrations pi(G_i^p)"""

    projection: Matrix = cokernel_projection(f).projection
    dim: int = projection.rows

    return MultiFilteredSpace(dim, tuple(
        Filtration.from_function(dim, g.lowest, g.highest + 1, lambda p, g=g: g.at(p).image_under(projection))
        for g in f.target.filtrations
    ))


def zero_space(n: int) -> MultiFilteredSpace:
    return MultiFilteredSpace(0, tuple(Filtration(0, []) for _ in range(n)))


def identity_map(space: MultiFilteredSpace) -> FilteredMap:
    return FilteredMap(space, space, Matrix.identity(space.dim))


def zero_map(source: MultiFilteredSpace, target: MultiFilteredSpace) -> FilteredMap:
    return FilteredMap(source, target, Matrix.zeros(target.dim, source.dim))


def filtration_from_splitting(dim: int, pieces: Sequence[Tuple[int, Sequence[Vector]]]) -> Filtration:
    """
    The filtration F^p = span of the vectors whose label is at least p

    :param dim: Ambient dimension
    :param pieces: (label, vectors) pairs forming a basis of k^dim together
    :return: The induced filtration

    """

    labels: List[int] = sorted({label for label, _ in pieces})
    if not labels:
        return Filtration(dim, [] if dim == 0 else [(0, Subspace.full(dim))])

    return Filtration.from_function(
        dim, labels[0], labels[-1] + 1,
        lambda p: Subspace.span([v for label, vectors in pieces if label >= p for v in vectors], dim)
    )


__all__ = [
    "MultiIndex",
    "Filtration",
    "MultiFilteredSpace",
    "FilteredMap",
    "Splitting",
    "f_intersection",
    "graded_piece_D",
    "d_table",
    "is_splittable",
    "compute_splitting",
    "is_r_strict",
    "tensor",
    "direct_sum",
    "kernel_object",
    "cokernel_object",
    "restrict_to",
    "box",
    "unit_index",
    "add_index",
    "negate_index",
]
