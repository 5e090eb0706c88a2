from typing import Any, Dict

from ReesLab.algebra.complexes import BigradedComplex, SpectralSequenceTable, betti_numbers, check_convergence, \
    spectral_sequence
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.options import read_int
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.client.settings import LabDefaults
from ReesLab.schema import keyed


class SpecSeqRoute(ClientRoute):
    """
    Pages, differential ranks and degeneration of the Frolicher spectral sequence

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        complex_: BigradedComplex = self.load_complex(job)
        r_max: int = read_int("rmax", job.option("rmax", LabDefaults.spectral_rmax), minimum=1)
        table: SpectralSequenceTable = spectral_sequence(complex_, r_max)

        pages: Dict[str, Any] = {
            str(r): keyed({pq: d for pq, d in dims.items() if d}) for r, dims in sorted(table.pages.items())
        }
        ranks: Dict[str, Any] = {
            str(r): keyed({pq: m.rank() for pq, m in maps.items() if not m.is_zero()})
            for r, maps in sorted(table.differentials.items())
        }
        degrees = range(complex_.max_degree + 1)

        result.data.update({
            "source": job.source,
            "betti": betti_numbers(complex_),
            "euler_characteristic": complex_.euler_characteristic(),
            "pages": pages,
            "differential_ranks": ranks,
            "degeneration_page": table.degeneration_page,
            "degeneration_by_degree": {str(k): table.degeneration_page_in_degree(k) for k in degrees},
            "e_infinity": keyed(table.infinity)
        })

        for k in degrees:
            self.check(result, f"convergence_{k}", check_convergence(complex_, k, table))

        self.require_checks(result, job.command)
