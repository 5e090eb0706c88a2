from typing import Callable, Dict, List, Optional

from ReesLab.algebra.complexes import BigradedComplex, SpectralSequenceTable, betti_numbers, check_convergence, \
    euler_characteristic, spectral_sequence, theta_intertwine_check
from ReesLab.algebra.connections import is_flat, poly_mul, symbolic_curvature, trivialize_flat
from ReesLab.algebra.errors import NotSplittableError
from ReesLab.algebra.favb import FAVB2Report, FAVBReport, favb, favb2, twistor_type, verify_base_change, \
    verify_base_change2
from ReesLab.algebra.graded import GradedModule
from ReesLab.algebra.models import ModelDescriptor, instantiate, list_models, parse_descriptor, \
    random_complex, random_filtered_map, random_flat_connection, random_multifiltration, random_perturbation, \
    random_subspace_pair, three_lines
from ReesLab.algebra.multifilt import FilteredMap, MultiFilteredSpace, compute_splitting, d_table, is_r_strict, \
    is_splittable
from ReesLab.algebra.rees import CokernelReport, fiber_matches_d_table, is_vector_bundle, recover_multifiltration, \
    rees_cokernel, rees_fiber, rees_module, restrict_to_subtorus, split_iso
from ReesLab.algebra.scalars import Subspace
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.options import read_int
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.client.settings import LabDefaults
from ReesLab.schema import keyed

Golden = Callable[[BigradedComplex, SpectralSequenceTable, Dict[int, FAVBReport]], Dict[str, bool]]


def _torus_goldens(complex_: BigradedComplex, table: SpectralSequenceTable, reports: Dict[int, FAVBReport]) -> Dict[str, bool]:
    purity: FAVB2Report = favb2(complex_, 1)
    return {
        "betti": betti_numbers(complex_) == [1, 2, 1],
        "e1_degree_1": table.degree_dims(1, 1) == {(0, 1): 1, (1, 0): 1},
        "degeneration_page": table.degeneration_page == 1,
        "favb_type": reports[1].twists == [1, 0],
        "twistor_type": twistor_type(complex_, 1) == [1, 1],
        "purity": purity.purity.d_dims == {(1, 0): 1, (0, 1): 1},
        "base_change2": verify_base_change2(complex_, 1)
    }


def _iwasawa_goldens(complex_: BigradedComplex, table: SpectralSequenceTable, reports: Dict[int, FAVBReport]) -> Dict[str, bool]:
    purity: FAVB2Report = favb2(complex_, 1)
    return {
        "betti_1": betti_numbers(complex_)[1] == 4,
        "e1_degree_1": sum(table.degree_dims(1, 1).values()) == 5,
        "e2_degree_1": sum(table.degree_dims(2, 1).values()) == 4,
        "degeneration_page_1": table.degeneration_page_in_degree(1) == 2,
        "favb_fiber_zero": reports[1].fiber_zero == {0: 2, 1: 2},
        "base_change_torsion": reports[1].base_change.has_torsion,
        "purity": purity.purity.total == 4 and all(p + q == 1 for p, q in purity.purity.d_dims),
        "base_change2": verify_base_change2(complex_, 1)
    }


def _synthetic_d2_goldens(complex_: BigradedComplex, table: SpectralSequenceTable, reports: Dict[int, FAVBReport]) -> Dict[str, bool]:
    return {
        "acyclic": all(b == 0 for b in betti_numbers(complex_)),
        "d2_nonzero": any(not m.is_zero() for m in table.differentials.get(2, {}).values()),
        "degeneration_page": table.degeneration_page == 3,
        "favb_zero": all(report.module.is_zero() for report in reports.values()),
        "pure_torsion": any(report.base_change.has_torsion for report in reports.values())
    }


"""Frozen numbers for the built-in models, keyed by normalized descriptor"""
GOLDENS: Dict[str, Golden] = {
    "torus:g=1": _torus_goldens,
    "iwasawa": _iwasawa_goldens,
    "synthetic_d2": _synthetic_d2_goldens,
}


class VerifyAllRoute(ClientRoute):
    """
    Run the acceptance suites: model goldens and property checks on the built-in models, and
    seeded randomized suites for every structural claim

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        With a model, run only that model's suite; otherwise run every model and every randomized suite.
        Each randomized suite draws its own count of seeds from LabDefaults.suite_samples unless the
        job's samples option sets one count for all of them.

        :param job: The job, optionally naming a model and a sample count
        :param result: The result to fill in
        :return: None
        :raises: VerificationFailedError

        """

        samples: Optional[int] = job.option("samples")
        if samples is not None:
            samples = read_int("samples", samples, minimum=0)

        result.data.update({"seed": LabDefaults.seed, "samples": samples, "models": {}, "suites": {}})

        if job.model is not None:
            descriptor: ModelDescriptor = parse_descriptor(job.model)
            self._model_suite(result, descriptor, instantiate(descriptor))
        else:
            for descriptor in list_models():
                self._model_suite(result, descriptor, instantiate(descriptor))
            self._random_suites(result, samples)

        self.require_checks(result, job.command)

    def _suite(
            self,
            result: RouteResult,
            name: str,
            samples: Optional[int],
            predicate: Callable[[int], bool]
    ) -> None:
        """
        Run a predicate on every seed; errors raised by the library count as failures of that seed

        """

        count: int = LabDefaults.suite_samples.get(name, 0) if samples is None else samples
        seeds: range = range(LabDefaults.seed, LabDefaults.seed + count)
        failed: List[int] = []

        for seed in seeds:
            try:
                passed: bool = predicate(seed)
            except RuntimeError as ex:
                self._logger.warning(f"Suite '{name}' raised {type(ex).__name__} at seed {seed}: {ex}")
                passed = False
            if not passed:
                failed.append(seed)

        result.data["suites"][name] = {"samples": count, "failed_seeds": failed}
        self.check(result, name, not failed, f"Failing seeds: {failed}" if failed else "")

    def _model_suite(self, result: RouteResult, descriptor: ModelDescriptor, complex_: BigradedComplex) -> None:
        prefix: str = descriptor.descriptor
        degrees: range = range(complex_.max_degree + 1)
        table: SpectralSequenceTable = spectral_sequence(complex_, LabDefaults.spectral_rmax)
        reports: Dict[int, FAVBReport] = {k: favb(complex_, k, table=table) for k in degrees}

        result.data["models"][prefix] = {
            "betti": betti_numbers(complex_),
            "degeneration_page": table.degeneration_page,
            "e_infinity": keyed(table.infinity),
            "favb_twists": {str(k): report.twists for k, report in reports.items()}
        }

        self.check(result, f"{prefix}/convergence", all(check_convergence(complex_, k, table) for k in degrees))
        self.check(result, f"{prefix}/spectral_invariants", _spectral_invariants(complex_, table))
        self.check(result, f"{prefix}/fiber_contract", all(r.fiber_contract for r in reports.values()))
        self.check(result, f"{prefix}/base_change", all(r.base_change.iso_verified for r in reports.values()))
        self.check(
            result, f"{prefix}/theta_intertwining",
            all(theta_intertwine_check(complex_, h) for h in LabDefaults.theta_samples)
        )

        if complex_.has_real_structure:
            pairs: List[FAVB2Report] = [favb2(complex_, k) for k in degrees]
            self.check(result, f"{prefix}/favb2_purity_fiber", all(r.fiber_matches_purity for r in pairs))
            self.check(result, f"{prefix}/favb2_slices", all(r.slice_hodge and r.slice_conjugate for r in pairs))

        golden: Optional[Golden] = GOLDENS.get(prefix)
        if golden is not None:
            for name, passed in golden(complex_, table, reports).items():
                self.check(result, f"{prefix}/golden/{name}", passed)

    def _random_suites(self, result: RouteResult, samples: Optional[int]) -> None:
        dim_max: int = LabDefaults.random_dim_max

        # the one instance that does not split, with its fibre jump
        lines: MultiFilteredSpace = three_lines()
        self.check(
            result, "three_lines",
            not is_splittable(lines)
            and sum(d_table(lines).values()) == 3
            and rees_fiber(lines, (0, 0, 0)).dim == 3
            and rees_fiber(lines, (1, 1, 1)).dim == 2
        )

        self._suite(result, "subspace_modularity", samples, lambda seed: _modular(*random_subspace_pair(seed)))
        self._suite(result, "splittable_n_le_2", samples, lambda seed: _splits(
            random_multifiltration(seed, 1 + seed % 2, 1 + seed % dim_max)
        ))
        self._suite(result, "bundle_conditions_n3", samples, lambda seed: _conditions_agree(
            random_multifiltration(seed, 3, 1 + seed % 3)
        ))
        self._suite(result, "cokernel_exactness", samples, lambda seed: _exactness(
            random_filtered_map(seed, 1 + seed % 2, 1 + seed % dim_max, 1 + (seed // 2) % dim_max)
        ))
        self._suite(result, "strictness_codim", samples, lambda seed: _strict_iff_codim(
            random_filtered_map(seed, 2, 1 + seed % 3, 1 + (seed // 3) % 3), 1
        ))
        self._suite(result, "restriction", samples, lambda seed: _restriction(
            random_multifiltration(seed, 1 + seed % 2, 1 + seed % dim_max)
        ))
        self._suite(result, "round_trip", samples, lambda seed: _round_trip(
            random_multifiltration(seed, 1 + seed % 2, 1 + seed % dim_max)
        ))
        self._suite(result, "spectral_invariants", samples, lambda seed: _spectral_invariants(random_complex(seed)))
        self._suite(result, "base_change_random", samples, lambda seed: _base_change(random_complex(seed)))
        self._suite(result, "flat_connections", samples, _flat_round_trip)
        self._suite(result, "perturbed_connections", samples, _perturbation_matches_oracle)


def _modular(left: Subspace, right: Subspace) -> bool:
    return (left + right).dim + (left & right).dim == left.dim + right.dim


def _splits(space: MultiFilteredSpace) -> bool:
    return is_splittable(space) and sum(split_iso(space, compute_splitting(space)).twists.values()) == space.dim


def _conditions_agree(space: MultiFilteredSpace) -> bool:
    """Sum of dim D = dim V, constant fibre dimension and an explicit splitting agree"""

    bundle: bool = is_vector_bundle(space)
    try:
        compute_splitting(space)
    except NotSplittableError:
        return not bundle
    return bundle


def _exactness(f: FilteredMap) -> bool:
    """0 -> T -> coker -> target -> coker(phi) -> 0 in every degree, and n-strictness is torsion-freeness"""

    report: CokernelReport = rees_cokernel(f)
    return not report.sequence_mismatches() and is_r_strict(f, f.n) == report.torsion.is_zero


def _strict_iff_codim(f: FilteredMap, r: int) -> bool:
    return is_r_strict(f, r) == (rees_cokernel(f).torsion.support_codim > r)


def _restriction(space: MultiFilteredSpace) -> bool:
    generic_ok: bool = rees_fiber(space, (1,) * space.n).dim == space.dim
    if space.n > 1:
        restrict_to_subtorus(space, [space.n - 1])
    return generic_ok and fiber_matches_d_table(space)


def _round_trip(space: MultiFilteredSpace) -> bool:
    module: GradedModule = rees_module(space).realized
    recovered: MultiFilteredSpace = recover_multifiltration(module)
    profiles_ok: bool = all(
        a.graded_dims() == b.graded_dims() for a, b in zip(space.filtrations, recovered.filtrations)
    )
    return recovered.dim == space.dim and profiles_ok and rees_module(recovered).realized.equivalent(module)


def _spectral_invariants(complex_: BigradedComplex, table: Optional[SpectralSequenceTable] = None) -> bool:
    """Every page has the Euler characteristic of the complex, and no page grows"""

    table = table or spectral_sequence(complex_, LabDefaults.spectral_rmax)
    chi: int = euler_characteristic(complex_)
    if chi != sum((-1) ** k * b for k, b in enumerate(betti_numbers(complex_))):
        return False

    pages: List[int] = sorted(table.pages)
    for r in pages:
        if sum((-1) ** (p + q) * d for (p, q), d in table.pages[r].items()) != chi:
            return False
    return all(
        table.pages[s][pq] <= table.pages[r][pq]
        for r, s in zip(pages, pages[1:])
        for pq in table.pages[r]
    )


def _base_change(complex_: BigradedComplex) -> bool:
    table: SpectralSequenceTable = spectral_sequence(complex_)
    for k in range(complex_.max_degree + 1):
        report: FAVBReport = favb(complex_, k, table=table)
        if not (report.fiber_contract and verify_base_change(complex_, k)):
            return False
    return True


def _flat_round_trip(seed: int) -> bool:
    """h^-1 d h is flat, and h times its trivializing gauge is the constant term of h"""

    connection, gauge = random_flat_connection(seed)
    zero = (0,) * connection.n
    return is_flat(connection) and poly_mul(gauge, trivialize_flat(connection)) == {zero: gauge[zero]}


def _perturbation_matches_oracle(seed: int) -> bool:
    """
    One extra coefficient on a gauged flat connection: is_flat agrees with the sympy curvature

    """

    connection, _ = random_flat_connection(seed)
    try:
        perturbed, _, _ = random_perturbation(seed, connection)
    except ValueError:
        # a grading with a single degree admits no coefficient
        return True

    return perturbed.violations() == [] and is_flat(perturbed) == (not symbolic_curvature(perturbed))
