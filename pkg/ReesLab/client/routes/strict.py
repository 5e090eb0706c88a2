from ReesLab.algebra.multifilt import FilteredMap, is_r_strict
from ReesLab.algebra.rees import CokernelReport, rees_cokernel
from ReesLab.client.errors import NotStrictError
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.options import read_int
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import to_filtered_map


class StrictRoute(ClientRoute):
    """
    Test a filtered map for r-strictness

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        Decide r-strictness and compare it with the torsion of the Rees cokernel: f is r-strict
        exactly when the torsion is supported in codimension above r, which for r = n means torsion-free

        :param job: A job reading a filtered map, with option r
        :param result: The result to fill in
        :return: None
        :raises: NotStrictError
        :raises: StrictnessRangeError

        """

        f: FilteredMap = to_filtered_map(self.load_document(job))
        r: int = read_int("r", job.option("r"))
        strict: bool = is_r_strict(f, r)

        result.data.update({"n": f.n, "r": r, "strict": strict, "image_dim": f.image().dim})

        report: CokernelReport = rees_cokernel(f)
        result.data["cokernel_torsion_free"] = report.torsion.is_zero
        result.data["torsion_support_codim"] = report.torsion.support_codim

        if r == f.n:
            self.check(result, "strict_iff_torsion_free", strict == report.torsion.is_zero)
        else:
            self.check(result, "strict_iff_codim_above_r", strict == (report.torsion.support_codim > r))
        self.require_checks(result, job.command)

        if not strict:
            raise NotStrictError(r, None, f"The map is not {r}-strict")
