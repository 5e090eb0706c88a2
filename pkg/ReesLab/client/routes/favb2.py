from ReesLab.algebra.complexes import BigradedComplex
from ReesLab.algebra.favb import FAVB2Report, favb2, twistor_type
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.options import read_flag, read_int
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import keyed


class FAVB2Route(ClientRoute):
    """
    The bundle of H^k with its Hodge and conjugate filtrations, on the plane and on P^1

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        :raises: NoRealStructureError
        :raises: VerificationFailedError

        """

        complex_: BigradedComplex = self.load_complex(job)
        k: int = read_int("k", job.option("k"), minimum=0)
        report: FAVB2Report = favb2(complex_, k, read_flag(job.option("base_change", False)))

        result.data.update({
            "source": job.source,
            "k": k,
            "betti": report.purity.betti,
            "piece_dims": keyed(report.module.piece_dims()),
            "fiber_zero": keyed(report.fiber_zero),
            "d_dims": keyed(report.purity.d_dims),
            "d_total": report.purity.total,
            "pure": report.purity.is_pure,
            "twistor_type": twistor_type(complex_, k)
        })

        for name, passed in report.checks().items():
            self.check(result, name, passed)

        self.require_checks(result, job.command)
