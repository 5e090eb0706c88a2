from typing import List

from ReesLab.algebra.graded import GradedModule
from ReesLab.algebra.multifilt import FilteredMap, MultiIndex, is_r_strict
from ReesLab.algebra.rees import CokernelReport, has_constant_rank, rees_cokernel, rees_kernel
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import keyed, to_filtered_map


class CokerRoute(ClientRoute):
    """
    Kernel and cokernel of the Rees map of a filtered map, with the torsion of the cokernel

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        :raises: VerificationFailedError

        """

        f: FilteredMap = to_filtered_map(self.load_document(job))
        report: CokernelReport = rees_cokernel(f)
        kernel: GradedModule = rees_kernel(f)
        strict: bool = is_r_strict(f, f.n)

        result.data.update({
            "n": f.n,
            "kernel_dims": keyed(kernel.piece_dims()),
            "coker_dims": keyed(report.coker.piece_dims()),
            "coker_target_dims": keyed(report.phi_target.piece_dims()),
            "torsion_dims": keyed(report.torsion.torsion_pieces),
            "torsion_support_codim": report.torsion.support_codim,
            "phi_cokernel_dims": keyed({m: d for m, d in report.phi_cokernel_dims.items() if d}),
            "phi_surjective": report.phi_surjective,
            "n_strict": strict,
            "constant_rank": has_constant_rank(f)
        })

        mismatched: List[MultiIndex] = report.sequence_mismatches()
        self.check(result, "cokernel_sequence", not mismatched, f"Degrees {mismatched}" if mismatched else "")
        self.check(result, "strict_iff_torsion_free", strict == report.torsion.is_zero)
        self.require_checks(result, job.command)
