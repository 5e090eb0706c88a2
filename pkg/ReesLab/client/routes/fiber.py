from typing import List

from ReesLab.algebra.graded import FiberData
from ReesLab.algebra.multifilt import MultiFilteredSpace
from ReesLab.algebra.rees import fiber_matches_d_table, rees_fiber
from ReesLab.algebra.scalars import Scalar, format_scalar
from ReesLab.client.errors import InvalidJobError
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.options import read_scalars
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import keyed, to_multifiltered


class FiberRoute(ClientRoute):
    """
    The fibre of the Rees module at one point of affine space

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        space: MultiFilteredSpace = to_multifiltered(self.load_document(job))
        point: List[Scalar] = read_scalars("at", job.option("at"))

        if len(point) != space.n:
            raise InvalidJobError(f"Option 'at' needs {space.n} coordinates, got {len(point)}")

        fiber: FiberData = rees_fiber(space, point)
        result.data.update({
            "point": [format_scalar(x) for x in point],
            "dim": fiber.dim,
            "degree_dims": keyed(fiber.degree_dims)
        })

        # Generic points see V; the origin sees the sum of the D^p
        if all(point):
            self.check(result, "generic_fiber", fiber.dim == space.dim, f"dim V is {space.dim}")
        elif not any(point):
            self.check(result, "zero_fiber", fiber_matches_d_table(space))
