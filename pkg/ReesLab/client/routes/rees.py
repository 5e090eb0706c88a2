from typing import List, Optional

from ReesLab.algebra.graded import FiberData, GradedModule
from ReesLab.algebra.multifilt import MultiFilteredSpace, MultiIndex
from ReesLab.algebra.rees import ReesHandle, fiber_matches_d_table, recover_multifiltration, rees_module
from ReesLab.algebra.scalars import Scalar, format_scalar
from ReesLab.client.errors import InvalidJobError
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.options import read_scalars, read_window
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import Document, GradedModuleDumpDoc, MultifiltrationDoc, from_graded_module, \
    from_multifiltered, keyed, to_graded_module, to_multifiltered


class ReesRoute(ClientRoute):
    """
    Build the Rees module of a multifiltered space, or recover the filtrations from a module dump

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        doc: Document = self.load_document(job)

        if isinstance(doc, GradedModuleDumpDoc):
            return self._recover(job, doc, result)

        return self._build(job, doc, result)

    def _build(self, job: JobSpec, doc: MultifiltrationDoc, result: RouteResult) -> None:
        space: MultiFilteredSpace = to_multifiltered(doc)
        lo: Optional[MultiIndex] = None
        hi: Optional[MultiIndex] = None

        if job.option("window") is not None:
            lo, hi = read_window("window", job.option("window"), space.n)

        handle: ReesHandle = rees_module(space, lo, hi)
        module: GradedModule = handle.realized
        zero: FiberData = module.fiber_at_zero()

        result.data.update({
            "n": space.n,
            "window": {"lo": list(module.lo), "hi": list(module.hi)},
            "piece_dims": keyed(module.piece_dims()),
            "generic_rank": module.generic_rank(),
            "fiber_zero": {"dim": zero.dim, "degree_dims": keyed(zero.degree_dims)},
            "module": from_graded_module(module).to_dict()
        })

        if job.option("fiber") is not None:
            point: List[Scalar] = read_scalars("fiber", job.option("fiber"))
            if len(point) != space.n:
                raise InvalidJobError(f"Option 'fiber' needs {space.n} coordinates, got {len(point)}")

            fiber: FiberData = handle.fiber(point)
            result.data["fiber"] = {
                "point": [format_scalar(x) for x in point],
                "dim": fiber.dim,
                "degree_dims": keyed(fiber.degree_dims)
            }

        self.check(result, "generic_rank", module.generic_rank() == space.dim)
        self.check(result, "zero_fiber_is_d_table", fiber_matches_d_table(space))
        self.require_checks(result, job.command)

    def _recover(self, job: JobSpec, doc: GradedModuleDumpDoc, result: RouteResult) -> None:
        """
        :raises: TorsionPresentError
        :raises: NotReflexiveError

        """

        module: GradedModule = to_graded_module(doc)
        result.data.update({
            "n": module.n,
            "piece_dims": keyed(module.piece_dims()),
            "torsion_free": module.is_torsion_free()
        })

        recovered: MultiFilteredSpace = recover_multifiltration(module)

        result.data["recovered"] = from_multifiltered(recovered).to_dict()
        self.check(result, "round_trip", rees_module(recovered).realized.equivalent(module))
        self.require_checks(result, job.command)
