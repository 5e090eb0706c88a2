"""
The Rees construction: multifiltered spaces to Z^n-graded modules and back

The degree-m piece of the Rees module of V is F^(-m) V, and z_i acts by the inclusion
F^(-m) in F^(-m-e_i). The fibre at the origin in degree m is D^(-m).

"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ReesLab.algebra.errors import NotChartSplittableError, NotReflexiveError, SplittingTypeInconsistencyError, \
    TorsionPresentError, VerificationFailedError, InvalidSplittingError, NotASubspaceError, \
    UnsupportedVariableCountError
from ReesLab.algebra.graded import FiberData, GradedMap, GradedModule, TorsionReport, subquotient_module, \
    torsion_report
from ReesLab.algebra.multifilt import FilteredMap, Filtration, MultiFilteredSpace, MultiIndex, Splitting, box, \
    cokernel_object, cokernel_projection, compute_splitting, d_table, direct_sum, f_intersection, is_splittable, \
    kernel_object, negate_index, tensor
from ReesLab.algebra.scalars import Matrix, Quotient, Subspace, Vector, kernel, solve_rows
from ReesLab.client.logger import ReesLabLogHandler


@dataclass(frozen=True)
class ReesHandle:
    """
    A multifiltered space together with its realized Rees module

    """

    source: MultiFilteredSpace
    realized: GradedModule

    def space_at(self, m: MultiIndex) -> Subspace:
        """The subspace F^(-m) of V whose canonical basis coordinatizes the piece of degree m"""

        return f_intersection(self.source, negate_index(m))

    def fiber(self, point: Sequence) -> FiberData:
        return self.realized.fiber(point)

    def invariant_sections(self) -> Subspace:
        return self.space_at((0,) * self.source.n)


def rees_window(space: MultiFilteredSpace) -> Tuple[MultiIndex, MultiIndex]:
    return (
        tuple(-f.highest for f in space.filtrations),
        tuple(-f.lowest for f in space.filtrations)
    )


def rees_module(
        space: MultiFilteredSpace,
        lo: Optional[MultiIndex] = None,
        hi: Optional[MultiIndex] = None
) -> ReesHandle:
    """
    The Rees module of a multifiltered space

    :param space: The multifiltered space
    :param lo: Optional lower window corner (must contain the natural window)
    :param hi: Optional upper window corner (must contain the natural window)
    :return: The handle

    """

    natural_lo, natural_hi = rees_window(space)

    # the zero space has no jumps, so a requested window is taken as is
    if space.dim == 0 and lo is not None and hi is not None:
        natural_lo, natural_hi = lo, hi

    lo = tuple(min(a, b) for a, b in zip(lo, natural_lo)) if lo is not None else natural_lo
    hi = tuple(max(a, b) for a, b in zip(hi, natural_hi)) if hi is not None else natural_hi

    module, _ = subquotient_module(
        space.n, lo, hi, space.dim,
        lambda m: f_intersection(space, negate_index(m))
    )
    return ReesHandle(space, module)


def line_module(twist: Sequence[int]) -> ReesHandle:
    """O(r): the Rees module of a line with one jump at r_i in each filtration"""

    return rees_module(MultiFilteredSpace(1, tuple(Filtration.line(r) for r in twist)))


def free_module(dim: int, n: int) -> ReesHandle:
    return rees_module(MultiFilteredSpace(dim, tuple(Filtration.trivial(dim, 0) for _ in range(n))))


def restrict_to_subtorus(space: MultiFilteredSpace, inverted: Iterable[int]) -> ReesHandle:
    """
    Invert the variables in ``inverted``; the result is the Rees module of V with those
    filtrations dropped, cross-checked against localizing the full Rees module

    :raises: VerificationFailedError

    """

    inverted = sorted(set(inverted))
    handle: ReesHandle = rees_module(space.drop_filtrations(inverted))
    localized: GradedModule = rees_module(space).realized.localize(inverted)

    if not localized.equivalent(handle.realized):
        raise VerificationFailedError("restrict_to_subtorus", f"Localizing at {inverted} disagrees with dropping filtrations")

    return handle


def is_vector_bundle(space: MultiFilteredSpace) -> bool:
    """
    Splittability, cross-checked by comparing the fibre at the origin with the generic fibre

    :raises: VerificationFailedError

    """

    splittable: bool = is_splittable(space)
    constant_fibers: bool = rees_module(space).realized.fiber_at_zero().dim == space.dim

    if splittable != constant_fibers:
        raise VerificationFailedError("is_vector_bundle", "Splittability and fibre-dimension constancy disagree")

    return splittable


@dataclass(frozen=True)
class SplitIsomorphism:
    """
    The isomorphism of a Rees module with a sum of twisted line modules V^p (x) O(p)

    """

    twists: Dict[MultiIndex, int]
    changes: Dict[MultiIndex, Matrix] = field(default_factory=dict)

    def twist_multiset(self) -> List[MultiIndex]:
        return sorted(p for p, dim in self.twists.items() for _ in range(dim))


def split_piece_basis(splitting: Splitting, m: MultiIndex) -> List[Vector]:
    """Basis of the degree-m piece of the sum of V^p (x) O(p): all V^p with p >= -m"""

    vectors: List[Vector] = []
    for p in sorted(splitting.components):
        if all(p_i >= -m_i for p_i, m_i in zip(p, m)):
            vectors.extend(splitting.components[p].vectors)
    return vectors


def split_iso(space: MultiFilteredSpace, splitting: Splitting) -> SplitIsomorphism:
    """
    Degreewise change of basis from the Rees module pieces to the split pieces

    :param space: The multifiltered space
    :param splitting: A splitting of it
    :return: Twists and change-of-basis matrices (split coordinates of the canonical basis of F^(-m))
    :raises: InvalidSplittingError

    """

    splitting.verify(space)
    handle: ReesHandle = rees_module(space)
    changes: Dict[MultiIndex, Matrix] = {}

    for m in handle.realized.degrees():
        piece: Subspace = handle.space_at(m)
        split_basis: List[Vector] = split_piece_basis(splitting, m)

        if len(split_basis) != piece.dim:
            raise InvalidSplittingError(f"Degree {m}: split piece has dim {len(split_basis)}, Rees piece {piece.dim}")

        try:
            coefficients: List[Vector] = solve_rows(split_basis, piece.vectors, space.dim)
        except NotASubspaceError:
            raise InvalidSplittingError(f"Degree {m}: split piece differs from F^(-m)")

        changes[m] = Matrix.from_columns(coefficients, len(split_basis))

    twists: Dict[MultiIndex, int] = {p: s.dim for p, s in splitting.components.items() if s.dim}
    return SplitIsomorphism(twists, changes)


def _common_window(left: MultiFilteredSpace, right: MultiFilteredSpace) -> Tuple[MultiIndex, MultiIndex]:
    if left.dim == 0:
        return rees_window(right)
    if right.dim == 0:
        return rees_window(left)

    left_lo, left_hi = rees_window(left)
    right_lo, right_hi = rees_window(right)
    return (
        tuple(min(a, b) for a, b in zip(left_lo, right_lo)),
        tuple(max(a, b) for a, b in zip(left_hi, right_hi))
    )


def rees_map(f: FilteredMap) -> GradedMap:
    """
    The graded map induced by f between the Rees modules on a common window

    """

    lo, hi = _common_window(f.source, f.target)
    source: ReesHandle = rees_module(f.source, lo, hi)
    target: ReesHandle = rees_module(f.target, lo, hi)
    maps: Dict[MultiIndex, Matrix] = {}

    for m in source.realized.degrees():
        target_space: Subspace = target.space_at(m)
        maps[m] = Matrix.from_columns(
            [target_space.coordinates(f.matrix.apply(v)) for v in source.space_at(m).vectors],
            target_space.dim
        )

    return GradedMap(source.realized, target.realized, maps)


def rees_kernel(f: FilteredMap) -> GradedModule:
    """
    ker of the Rees map, cross-checked against the Rees module of the kernel object

    :raises: VerificationFailedError

    """

    graded: GradedMap = rees_map(f)
    module: GradedModule = graded.kernel()
    expected: GradedModule = rees_module(kernel_object(f), module.lo, module.hi).realized

    if module.piece_dims() != expected.piece_dims():
        raise VerificationFailedError("rees_kernel", "Kernel of the Rees map differs from the Rees module of ker f")

    return module


@dataclass(frozen=True)
class CokernelReport:
    """
    coker of the Rees map, its torsion T = ker(phi), the Rees module of coker f and the dims of
    coker(phi), so that 0 -> T -> coker -> target -> coker(phi) -> 0 is exact in every degree

    """

    coker: GradedModule
    torsion_module: GradedModule
    torsion: TorsionReport
    phi_target: GradedModule
    phi: Dict[MultiIndex, Matrix]
    phi_cokernel_dims: Dict[MultiIndex, int] = field(default_factory=dict)

    @property
    def phi_surjective(self) -> bool:
        return not any(self.phi_cokernel_dims.values())

    def sequence_mismatches(self) -> List[MultiIndex]:
        """Degrees where dim coker != dim T + dim target - dim coker(phi)"""

        return [
            m for m in self.coker.degrees()
            if self.coker.piece_dim(m) + self.phi_cokernel_dims.get(m, 0)
            != self.torsion_module.piece_dim(m) + self.phi_target.piece_dim(m)
        ]


def rees_cokernel(f: FilteredMap) -> CokernelReport:
    """
    Build coker with pieces F_W^p / f(F_V^p), compare it with the Rees module of coker f through
    phi^p, and read off the torsion as ker(phi).

    The target piece is the intersection of the pi(G_i^(p_i)), which can be larger than
    pi of the intersection once n >= 2, so phi need not be onto. Its cokernel is reported
    and must vanish for n = 1.

    :raises: VerificationFailedError

    """

    lo, hi = _common_window(f.source, f.target)

    coker, quotients = subquotient_module(
        f.n, lo, hi, f.target.dim,
        lambda m: f_intersection(f.target, negate_index(m)),
        lambda m: f_intersection(f.source, negate_index(m)).image_under(f.matrix)
    )

    projection: Matrix = cokernel_projection(f).projection
    target: ReesHandle = rees_module(cokernel_object(f), lo, hi)

    phi: Dict[MultiIndex, Matrix] = {}
    phi_cokernel_dims: Dict[MultiIndex, int] = {}
    torsion_spaces: Dict[MultiIndex, Subspace] = {}

    for m in coker.degrees():
        target_space: Subspace = target.space_at(m)
        phi[m] = Matrix.from_columns(
            [target_space.coordinates(projection.apply(w)) for w in quotients[m].lift_vectors()],
            target_space.dim
        )
        phi_cokernel_dims[m] = target_space.dim - phi[m].rank()
        torsion_spaces[m] = kernel(phi[m])

    if torsion_spaces != coker.torsion_spaces():
        raise VerificationFailedError("rees_cokernel", "ker(phi) differs from the monomial torsion of the cokernel")

    if f.n == 1 and any(phi_cokernel_dims.values()):
        raise VerificationFailedError("rees_cokernel", "phi is not onto for a single filtration")

    torsion_module: GradedModule = coker.submodule(torsion_spaces)
    report: TorsionReport = torsion_report(torsion_module)

    ReesLabLogHandler.get_logger().debug(
        f"Cokernel torsion: {sum(report.torsion_pieces.values())} dims, support codim {report.support_codim}, "
        f"coker(phi): {sum(phi_cokernel_dims.values())} dims."
    )

    return CokernelReport(coker, torsion_module, report, target.realized, phi, phi_cokernel_dims)


def has_constant_rank(f: FilteredMap) -> bool:
    """
    Whether the fibre maps of the Rees map have the same rank over every torus orbit (the
    coordinate strata of affine space)

    """

    graded: GradedMap = rees_map(f)
    ranks = {
        graded.fiber_rank(nonzero)
        for size in range(f.n + 1)
        for nonzero in itertools.combinations(range(f.n), size)
    }
    return len(ranks) == 1


def rees_fiber(space: MultiFilteredSpace, point: Sequence) -> FiberData:
    return rees_module(space).fiber(point)


def fiber_matches_d_table(space: MultiFilteredSpace) -> bool:
    """The fibre at the origin in degree m is D^(-m)"""

    fiber: FiberData = rees_module(space).realized.fiber_at_zero()
    return fiber.degree_dims == {negate_index(p): dim for p, dim in d_table(space).items()}


def _piece_dims_from_splitting(splitting: Splitting, degrees: Iterable[MultiIndex]) -> Dict[MultiIndex, int]:
    return {
        m: sum(s.dim for p, s in splitting.components.items() if all(a >= -b for a, b in zip(p, m)))
        for m in degrees
    }


def tensor_piece_dims(left: MultiFilteredSpace, right: MultiFilteredSpace) -> Dict[MultiIndex, int]:
    """
    Piece dims of the graded tensor product of two split Rees modules: the degree-m piece of
    (V^p (x) O(p)) (x) (W^q (x) O(q)) is nonzero exactly when p + q >= -m

    """

    left_split: Splitting = compute_splitting(left)
    right_split: Splitting = compute_splitting(right)
    lo, hi = rees_window(tensor(left, right))

    dims: Dict[MultiIndex, int] = {}
    for m in box(list(zip(lo, hi))):
        dims[m] = sum(
            u.dim * w.dim
            for p, u in left_split.components.items()
            for q, w in right_split.components.items()
            if all(a + b >= -c for a, b, c in zip(p, q, m))
        )
    return dims


def direct_sum_piece_dims(left: MultiFilteredSpace, right: MultiFilteredSpace) -> Dict[MultiIndex, int]:
    lo, hi = rees_window(direct_sum(left, right))
    degrees: List[MultiIndex] = list(box(list(zip(lo, hi))))
    left_dims = _piece_dims_from_splitting(compute_splitting(left), degrees)
    right_dims = _piece_dims_from_splitting(compute_splitting(right), degrees)
    return {m: left_dims[m] + right_dims[m] for m in degrees}


@dataclass(frozen=True)
class ChartReport:
    """
    The n+1 affine charts of a toric bundle on P^n and the pairwise overlap checks

    """

    charts: Tuple[ReesHandle, ...]
    overlaps: Dict[Tuple[int, int], bool]

    @property
    def consistent(self) -> bool:
        return all(self.overlaps.values())


def projective_charts(space: MultiFilteredSpace) -> ChartReport:
    """
    Chart j is the Rees module of V with filtration j dropped. On the overlap of charts j and l
    both must restrict to the Rees module of V with filtrations j and l dropped.

    :param space: V with n+1 filtrations
    :return: Charts and overlap checks
    :raises: NotChartSplittableError

    """

    count: int = space.n
    charts: List[ReesHandle] = []

    for dropped in range(count):
        chart_space: MultiFilteredSpace = space.drop_filtrations([dropped])
        if not is_splittable(chart_space):
            subset: List[int] = [i for i in range(count) if i != dropped]
            raise NotChartSplittableError(subset, f"Filtrations {subset} are not splittable")
        charts.append(rees_module(chart_space))

    overlaps: Dict[Tuple[int, int], bool] = {}
    for j, l in itertools.combinations(range(count), 2):
        # Filtration l sits at position l - 1 in chart j; filtration j keeps position j in chart l
        from_j: GradedModule = charts[j].realized.localize([l - 1])
        from_l: GradedModule = charts[l].realized.localize([j])
        overlaps[(j, l)] = from_j.equivalent(from_l)

    return ChartReport(tuple(charts), overlaps)


def section_filtration_dims(space: MultiFilteredSpace) -> Dict[int, int]:
    """
    h(m) = dim of the sum of F^p & Fbar^q over p + q = m, for a pair of filtrations

    """

    first, second = space.filtrations
    lo: int = first.lowest + second.lowest
    hi: int = first.highest + second.highest + 1

    dims: Dict[int, int] = {}
    for m in range(lo, hi + 1):
        total: Subspace = Subspace.zero(space.dim)
        for p in range(first.lowest, first.highest + 1):
            total = total + (first.at(p) & second.at(m - p))
        dims[m] = total.dim
    return dims


def p1_splitting_type(space: MultiFilteredSpace) -> List[int]:
    """
    The twists a_i with xi_P1(V, F, Fbar) = sum of O(a_i)

    The multiplicity of a is h(a) - h(a+1). The result is cross-checked against the sums p + q
    of a splitting and against h^0(E(j)) = sum over i of max(0, a_i + j + 1).

    :param space: V with exactly two filtrations
    :return: The sorted twists (descending)
    :raises: SplittingTypeInconsistencyError

    """

    if space.n != 2:
        raise SplittingTypeInconsistencyError(f"A bundle on P^1 needs two filtrations, got {space.n}")

    h: Dict[int, int] = section_filtration_dims(space)
    lo: int = min(h)
    hi: int = max(h)

    def h_at(m: int) -> int:
        return space.dim if m < lo else h.get(m, 0)

    twists: List[int] = []
    for a in range(lo, hi + 1):
        multiplicity: int = h_at(a) - h_at(a + 1)
        if multiplicity < 0:
            raise SplittingTypeInconsistencyError(f"Negative multiplicity {multiplicity} for O({a})")
        twists.extend([a] * multiplicity)

    if len(twists) != space.dim:
        raise SplittingTypeInconsistencyError(f"{len(twists)} twists for a rank {space.dim} bundle")

    splitting: Splitting = compute_splitting(space)
    from_splitting: Counter = Counter()
    for (p, q), component in splitting.components.items():
        from_splitting[p + q] += component.dim

    if from_splitting != Counter(twists):
        raise SplittingTypeInconsistencyError("Twists from sections and from a splitting disagree")

    for j in range(-hi - 1, -lo + 2):
        sections: int = sum(h_at(m) for m in range(-j, hi + 1))
        if sections != sum(max(0, a + j + 1) for a in twists):
            raise SplittingTypeInconsistencyError(f"h0(E({j})) does not match the twists")

    return sorted(twists, reverse=True)


def recover_multifiltration(module: GradedModule) -> MultiFilteredSpace:
    """
    Read a multifiltered space back from a torsion-free module in one or two variables:
    V is the generic piece and F_i^p is the image of the piece with m_i = -p and the other
    degrees at the top of the window

    :raises: TorsionPresentError
    :raises: NotReflexiveError

    """

    if module.n not in (1, 2):
        raise UnsupportedVariableCountError(f"Recovery is implemented for one or two variables, not {module.n}")

    if not module.is_torsion_free():
        raise TorsionPresentError("Cannot recover filtrations from a module with torsion")

    dim: int = module.generic_rank()
    filtrations: List[Filtration] = []

    for axis in range(module.n):

        def image_of(p: int, axis: int = axis) -> Subspace:
            degree: List[int] = list(module.hi)
            degree[axis] = -p
            chase: Matrix = module.monomial(tuple(degree), module.hi)
            return Subspace.span(chase.columns(), dim)

        filtrations.append(
            Filtration.from_function(dim, -module.hi[axis], -module.lo[axis] + 1, image_of)
        )

    recovered: MultiFilteredSpace = MultiFilteredSpace(dim, tuple(filtrations))

    if not rees_module(recovered).realized.equivalent(module):
        raise NotReflexiveError("The module is not the Rees module of the filtrations it induces")

    return recovered
