"""
The Frolicher approximating vector bundle of a bigraded complex, as the Rees module of the
Hodge filtration on H^k, together with the Rees complex that computes it by base change

"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ReesLab.algebra.complexes import BigradedComplex, CohomologyData, SpectralSequenceTable, conjugate_filtration, \
    hodge_filtration, spectral_sequence, total_cohomology, twisted_cohomology
from ReesLab.algebra.errors import NoRealStructureError
from ReesLab.algebra.graded import GradedModule, TorsionReport, subquotient_module, torsion_report
from ReesLab.algebra.multifilt import Filtration, MultiFilteredSpace, MultiIndex, d_table
from ReesLab.algebra.rees import ReesHandle, p1_splitting_type, rees_module, restrict_to_subtorus
from ReesLab.algebra.scalars import Matrix, ScalarLike, Subspace, format_scalar, kernel, to_scalar
from ReesLab.client.logger import ReesLabLogHandler
from ReesLab.client.settings import LabDefaults


class ReesComplex:
    """
    The Rees complex A_k = xi(C^k, F) of the column filtration over k[z], kept in split form:
    the piece of degree m is F^(-m) C^k and the differential is d_z = z del + delbar.

    """

    def __init__(self, complex_: BigradedComplex):
        self.complex: BigradedComplex = complex_

    @staticmethod
    def window(k: int) -> Tuple[MultiIndex, MultiIndex]:
        """Degrees -k-1 .. 1; F on degree-k forms jumps only in [0, k]"""

        return (-k - 1,), (1,)

    def piece(self, k: int, m: int) -> Subspace:
        return self.complex.filtration_space(k, -m)

    def split_differential(self, k: int) -> Dict[int, Matrix]:
        """
        d_z as a polynomial in z: {0: delbar, 1: del}, zero parts omitted

        """

        whole: Matrix = self.complex.total_differential(k)
        delbar_part: Matrix = self.complex.total_differential(k, 0)
        parts: Dict[int, Matrix] = {0: delbar_part, 1: whole - delbar_part}
        return {power: matrix for power, matrix in parts.items() if not matrix.is_zero()}

    def specialize(self, k: int, h: ScalarLike) -> Matrix:
        """The fibre of d_z at z = h, which is the twisted differential h del + delbar"""

        return self.complex.total_differential(k, h)

    def degree_differential(self, k: int) -> Matrix:
        """
        d_z on one graded piece, in the monomial basis of the split form. The z^j part moves the
        column degree up by j and the monomial absorbs z^j, so every piece sees the sum of the parts.

        """

        zero: Matrix = Matrix.zeros(self.complex.total_dim(k + 1), self.complex.total_dim(k))
        return sum(self.split_differential(k).values(), zero)

    def cohomology_module(self, k: int) -> GradedModule:
        """
        H^k(A) from the split differential: in degree m, (ker d_z & F^(-m) C^k) / d_z(F^(-m) C^(k-1))

        """

        lo, hi = self.window(k)

        cycles: Subspace = kernel(self.degree_differential(k))
        previous: Matrix = self.degree_differential(k - 1)

        module, _ = subquotient_module(
            1, lo, hi, self.complex.total_dim(k),
            lambda m: cycles & self.piece(k, m[0]),
            lambda m: self.piece(k - 1, m[0]).image_under(previous)
        )
        return module


def rees_complex(complex_: BigradedComplex) -> ReesComplex:
    return ReesComplex(complex_)


class ReesComplex2:
    """
    The two-parameter deformation with pieces F^(-m1) & Fbar^(-m2) C^k and differential z1 del + z2 delbar

    """

    def __init__(self, complex_: BigradedComplex):
        self.complex: BigradedComplex = complex_

    def piece(self, k: int, m: MultiIndex) -> Subspace:
        return self.complex.filtration_space(k, -m[0]) & self.complex.row_filtration_space(k, -m[1])

    def cohomology_module(self, k: int) -> GradedModule:
        cycles: Subspace = kernel(self.complex.total_differential(k))
        previous: Matrix = self.complex.total_differential(k - 1)

        module, _ = subquotient_module(
            2, (-k - 1, -k - 1), (1, 1), self.complex.total_dim(k),
            lambda m: cycles & self.piece(k, m),
            lambda m: self.piece(k - 1, m).image_under(previous)
        )
        return module


def rees_complex2(complex_: BigradedComplex) -> ReesComplex2:
    return ReesComplex2(complex_)


@dataclass(frozen=True)
class BaseChangeData:
    """
    H^k of the Rees complex, its torsion, and the torsion one degree up

    """

    cohomology_dims: Dict[int, int]
    torsion: TorsionReport
    next_torsion: TorsionReport
    iso_verified: bool

    @property
    def has_torsion(self) -> bool:
        return not (self.torsion.is_zero and self.next_torsion.is_zero)


@dataclass(frozen=True)
class FAVBReport:
    """
    xi(H^k, F) with both fibres and the base-change comparison

    Degrees of the module are m; the special fibre is keyed by p = -m so that it lines up
    with E_infinity^(p, k-p).

    """

    k: int
    betti: int
    module: GradedModule
    piece_dims: Dict[int, int]
    fiber_generic: Dict[str, int]
    twisted_dims: Dict[str, int]
    fiber_zero: Dict[int, int]
    e_infinity: Dict[int, int]
    base_change: BaseChangeData
    hodge_dims: Dict[int, int] = field(default_factory=dict)

    @property
    def fiber_contract(self) -> bool:
        generic_ok: bool = all(d == self.betti for d in self.fiber_generic.values())
        twisted_ok: bool = all(d == self.betti for d in self.twisted_dims.values())
        zero_ok: bool = sum(self.fiber_zero.values()) == self.betti and self.fiber_zero == self.e_infinity
        return generic_ok and twisted_ok and zero_ok

    @property
    def twists(self) -> List[int]:
        """The splitting type of the bundle on the line, one twist per jump p of F, repeated"""

        return sorted((p for p, d in self.fiber_zero.items() for _ in range(d)), reverse=True)

    def checks(self) -> Dict[str, bool]:
        return {
            "fiber_contract": self.fiber_contract,
            "base_change": self.base_change.iso_verified
        }


def _hodge_handle(k: int, filtration: Filtration) -> ReesHandle:
    lo, hi = ReesComplex.window(k)
    return rees_module(MultiFilteredSpace(filtration.ambient_dim, (filtration,)), lo, hi)


def favb_module(complex_: BigradedComplex, k: int) -> GradedModule:
    return _hodge_handle(k, hodge_filtration(complex_, k)).realized


def rees_complex_cohomology_mod_torsion(complex_: BigradedComplex, k: int) -> Tuple[GradedModule, TorsionReport]:
    """
    H^k of the Rees complex with its z-torsion stripped

    :return: The torsion-free quotient and a report on the torsion that was removed

    """

    module: GradedModule = ReesComplex(complex_).cohomology_module(k)
    return module.mod_torsion(), torsion_report(module.torsion_submodule())


def _base_change(complex_: BigradedComplex, k: int, reference: GradedModule) -> BaseChangeData:
    rees: ReesComplex = ReesComplex(complex_)
    module: GradedModule = rees.cohomology_module(k)
    following: GradedModule = rees.cohomology_module(k + 1)

    return BaseChangeData(
        {m[0]: d for m, d in module.piece_dims().items()},
        torsion_report(module.torsion_submodule()),
        torsion_report(following.torsion_submodule()),
        module.mod_torsion().equivalent(reference)
    )


def verify_base_change(complex_: BigradedComplex, k: int) -> bool:
    """H^k(A) mod torsion against xi(H^k, F), by piece dims and multiplication ranks"""

    reduced, _ = rees_complex_cohomology_mod_torsion(complex_, k)
    return reduced.equivalent(favb_module(complex_, k))


def favb(
        complex_: BigradedComplex,
        k: int,
        samples: Optional[Sequence[str]] = None,
        table: Optional[SpectralSequenceTable] = None
) -> FAVBReport:
    """
    Build xi(H^k, F) and check its fibres: dim b_k at every sample h != 0 (also through the
    twisted differential) and E_infinity^(p, k-p) in degree -p at the origin

    :param complex_: The complex
    :param k: Total degree
    :param samples: Scalar literals for the generic fibre, defaulting to the configured samples
    :param table: A spectral sequence already computed for this complex
    :return: The report

    """

    logger = ReesLabLogHandler.get_logger()
    cohomology: CohomologyData = total_cohomology(complex_, k)
    filtration: Filtration = hodge_filtration(complex_, k)
    handle: ReesHandle = _hodge_handle(k, filtration)
    table = table or spectral_sequence(complex_)

    fiber_generic: Dict[str, int] = {}
    twisted_dims: Dict[str, int] = {}
    for literal in (samples or LabDefaults.fiber_samples):
        h = to_scalar(literal)
        if not h:
            continue
        fiber_generic[format_scalar(h)] = handle.fiber((h,)).dim
        twisted_dims[format_scalar(h)] = twisted_cohomology(complex_, h, k).dim

    fiber_zero: Dict[int, int] = {-m[0]: d for m, d in handle.realized.fiber_at_zero().degree_dims.items()}
    e_infinity: Dict[int, int] = {p: d for (p, q), d in table.infinity.items() if p + q == k}

    report: FAVBReport = FAVBReport(
        k=k,
        betti=cohomology.dim,
        module=handle.realized,
        piece_dims={m[0]: d for m, d in handle.realized.piece_dims().items()},
        fiber_generic=fiber_generic,
        twisted_dims=twisted_dims,
        fiber_zero=fiber_zero,
        e_infinity=e_infinity,
        base_change=_base_change(complex_, k, handle.realized),
        hodge_dims=filtration.dims(0, k + 1)
    )

    logger.debug(f"FAVB in degree {k}: rank {report.betti}, twists {report.twists}.")
    return report


@dataclass(frozen=True)
class PurityReport:
    """
    Dims of D^(p,q) = (F^p & Fbar^q) / (F^(p+1) & Fbar^q + F^p & Fbar^(q+1)) on H^k

    """

    k: int
    betti: int
    d_dims: Dict[Tuple[int, int], int]

    @property
    def total(self) -> int:
        return sum(self.d_dims.values())

    @property
    def is_pure(self) -> bool:
        return self.total == self.betti and all(p + q == self.k for p, q in self.d_dims)


@dataclass(frozen=True)
class FAVB2Report:
    """
    xi(H^k, F, Fbar) on the plane with its purity data and slice checks

    """

    k: int
    module: GradedModule
    purity: PurityReport
    fiber_zero: Dict[Tuple[int, int], int]
    slice_hodge: bool
    slice_conjugate: bool
    base_change: Optional[bool] = None

    @property
    def fiber_matches_purity(self) -> bool:
        return self.fiber_zero == self.purity.d_dims

    def checks(self) -> Dict[str, bool]:
        result: Dict[str, bool] = {
            "fiber_matches_purity": self.fiber_matches_purity,
            "slice_hodge": self.slice_hodge,
            "slice_conjugate": self.slice_conjugate
        }
        if self.base_change is not None:
            result["base_change2"] = self.base_change
        return result


def _hodge_pair(complex_: BigradedComplex, k: int) -> MultiFilteredSpace:
    if not complex_.has_real_structure:
        raise NoRealStructureError("The second filtration needs a real structure")

    hodge: Filtration = hodge_filtration(complex_, k)
    return MultiFilteredSpace(hodge.ambient_dim, (hodge, conjugate_filtration(complex_, k)))


def conjugate_favb(complex_: BigradedComplex, k: int) -> GradedModule:
    """
    xi(H^k, Fbar) on the degree window of the Hodge bundle

    :raises: NoRealStructureError

    """

    space: MultiFilteredSpace = _hodge_pair(complex_, k)
    return _hodge_handle(k, space.filtrations[1]).realized


def favb2(complex_: BigradedComplex, k: int, with_base_change: bool = False) -> FAVB2Report:
    """
    The two-filtration bundle. Its fibre at the origin is D, and inverting either variable
    gives back the Hodge or the conjugate bundle.

    :raises: NoRealStructureError

    """

    space: MultiFilteredSpace = _hodge_pair(complex_, k)
    handle: ReesHandle = rees_module(space)

    fiber_zero: Dict[Tuple[int, int], int] = {
        (-m[0], -m[1]): d for m, d in handle.realized.fiber_at_zero().degree_dims.items()
    }

    # inverting z2 drops Fbar and leaves the Hodge bundle, and the other way round
    slice_hodge: bool = restrict_to_subtorus(space, [1]).realized.equivalent(favb_module(complex_, k))
    slice_conjugate: bool = restrict_to_subtorus(space, [0]).realized.equivalent(conjugate_favb(complex_, k))

    return FAVB2Report(
        k=k,
        module=handle.realized,
        purity=PurityReport(k, space.dim, d_table(space)),
        fiber_zero=fiber_zero,
        slice_hodge=slice_hodge,
        slice_conjugate=slice_conjugate,
        base_change=verify_base_change2(complex_, k) if with_base_change else None
    )


def verify_base_change2(complex_: BigradedComplex, k: int) -> bool:
    """
    H^k of the two-parameter Rees complex mod torsion against xi(H^k, F, Fbar)

    :raises: NoRealStructureError

    """

    module: GradedModule = ReesComplex2(complex_).cohomology_module(k)
    return module.mod_torsion().equivalent(rees_module(_hodge_pair(complex_, k)).realized)


def twistor_type(complex_: BigradedComplex, k: int) -> List[int]:
    """
    The splitting type of xi_P1(H^k, F, Fbar)

    :raises: NoRealStructureError

    """

    return p1_splitting_type(_hodge_pair(complex_, k))
