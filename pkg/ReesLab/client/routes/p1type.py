from typing import List

from ReesLab.algebra.multifilt import MultiFilteredSpace
from ReesLab.algebra.rees import p1_splitting_type, section_filtration_dims
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import keyed, to_multifiltered


class P1TypeRoute(ClientRoute):
    """
    The splitting type of the bundle on P^1 given by two filtrations

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        :raises: SplittingTypeInconsistencyError

        """

        space: MultiFilteredSpace = to_multifiltered(self.load_document(job))
        twists: List[int] = p1_splitting_type(space)

        result.data.update({
            "rank": space.dim,
            "twists": twists,
            "degree": sum(twists),
            "section_dims": keyed(section_filtration_dims(space))
        })
