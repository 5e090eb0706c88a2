from typing import Dict

from ReesLab.algebra.errors import NotSplittableError
from ReesLab.algebra.multifilt import MultiFilteredSpace, MultiIndex, Splitting, compute_splitting, d_table
from ReesLab.algebra.rees import SplitIsomorphism, is_vector_bundle, split_iso
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import keyed, to_multifiltered, write_matrix


class SplitRoute(ClientRoute):
    """
    Decide whether a multifiltered space splits and, if it does, produce a splitting

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        Tabulate D^p, compare its total dimension with dim V and split

        :param job: A job reading a multifiltration
        :param result: The result to fill in
        :return: None
        :raises: NotSplittableError

        """

        space: MultiFilteredSpace = to_multifiltered(self.load_document(job))
        table: Dict[MultiIndex, int] = d_table(space)
        total: int = sum(table.values())

        result.data.update({
            "dim": space.dim,
            "n": space.n,
            "d_table": keyed(table),
            "total_graded_dim": total,
            "splittable": total == space.dim
        })

        self.check(result, "vector_bundle", is_vector_bundle(space) == (total == space.dim))

        if total != space.dim:
            raise NotSplittableError(total, space.dim, f"Sum of dim D^p is {total}, but dim V is {space.dim}")

        splitting: Splitting = compute_splitting(space)
        iso: SplitIsomorphism = split_iso(space, splitting)

        result.data["splitting"] = {key: write_matrix(s.basis) for key, s in keyed(splitting.components).items()}
        result.data["twists"] = [list(p) for p in iso.twist_multiset()]
        self.check(result, "split_iso", sum(iso.twists.values()) == space.dim)
