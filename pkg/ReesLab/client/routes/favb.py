from typing import Optional, Sequence

from ReesLab.algebra.complexes import BigradedComplex
from ReesLab.algebra.favb import FAVBReport, favb
from ReesLab.algebra.graded import TorsionReport
from ReesLab.algebra.scalars import format_scalar
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.options import read_int, read_scalars
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import keyed


def torsion_doc(report: TorsionReport) -> dict:
    return {
        "dims": keyed(report.torsion_pieces),
        "support_codim": report.support_codim,
        "zero": report.is_zero
    }


class FAVBRoute(ClientRoute):
    """
    The Frolicher approximating vector bundle of H^k on the affine line

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        Build the bundle, report both fibres and compare with the cohomology of the Rees complex

        :param job: A job on a model or complex file, with option k
        :param result: The result to fill in
        :return: None
        :raises: VerificationFailedError

        """

        complex_: BigradedComplex = self.load_complex(job)
        k: int = read_int("k", job.option("k"), minimum=0)
        samples: Optional[Sequence[str]] = None

        if job.option("samples") is not None:
            samples = [format_scalar(h) for h in read_scalars("samples", job.option("samples"))]

        report: FAVBReport = favb(complex_, k, samples)

        result.data.update({
            "source": job.source,
            "k": k,
            "betti": report.betti,
            "piece_dims": keyed(report.piece_dims),
            "fiber_generic": dict(sorted(report.fiber_generic.items())),
            "twisted_dims": dict(sorted(report.twisted_dims.items())),
            "fiber_zero": keyed(report.fiber_zero),
            "e_infinity": keyed(report.e_infinity),
            "hodge_dims": keyed(report.hodge_dims),
            "twists": report.twists,
            "base_change": {
                "cohomology_dims": keyed(report.base_change.cohomology_dims),
                "torsion": torsion_doc(report.base_change.torsion),
                "next_torsion": torsion_doc(report.base_change.next_torsion),
                "has_torsion": report.base_change.has_torsion
            }
        })

        for name, passed in report.checks().items():
            self.check(result, name, passed)

        self.require_checks(result, job.command)
