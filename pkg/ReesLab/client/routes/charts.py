from ReesLab.algebra.multifilt import MultiFilteredSpace
from ReesLab.algebra.rees import ChartReport, projective_charts
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import json_key, keyed, to_multifiltered


class ChartsRoute(ClientRoute):
    """
    Glue the n+1 affine charts of a toric bundle on P^n

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        :raises: NotChartSplittableError
        :raises: VerificationFailedError

        """

        space: MultiFilteredSpace = to_multifiltered(self.load_document(job))
        report: ChartReport = projective_charts(space)

        result.data.update({
            "charts": [keyed(chart.realized.piece_dims()) for chart in report.charts],
            "overlaps": {json_key(pair): agrees for pair, agrees in sorted(report.overlaps.items())},
            "consistent": report.consistent
        })

        for (j, l), agrees in sorted(report.overlaps.items()):
            self.check(result, f"overlap_{j}_{l}", agrees)

        self.require_checks(result, job.command)
