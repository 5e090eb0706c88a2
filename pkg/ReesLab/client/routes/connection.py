from typing import Dict, List

from ReesLab.algebra.connections import EquivariantConnection, PolyMatrix, curvature, gauge_transform, \
    trivialize_flat
from ReesLab.algebra.errors import MalformedConnectionError
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.options import read_flag
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import MatrixDoc, json_key, to_connection, write_matrix


class ConnectionRoute(ClientRoute):
    """
    Curvature of an equivariant connection and, on request, the gauge that trivializes it

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        :raises: MalformedConnectionError
        :raises: NotFlatError
        :raises: InconsistentRecursionError

        """

        connection: EquivariantConnection = to_connection(self.load_document(job))
        problems: List[str] = connection.violations()

        if problems:
            raise MalformedConnectionError("; ".join(problems))

        # keyed "p;i,j" with the axes counted from 1
        curvature_doc: Dict[str, MatrixDoc] = {
            f"{json_key(p)};{i + 1},{j + 1}": write_matrix(m) for (p, i, j), m in sorted(curvature(connection).items())
        }

        result.data.update({
            "n": connection.n,
            "rank": connection.dim,
            "flat": not curvature_doc,
            "curvature": curvature_doc
        })

        if not read_flag(job.option("flatten", False)):
            return

        gauge: PolyMatrix = trivialize_flat(connection)
        result.data["gauge"] = {json_key(p): write_matrix(m) for p, m in sorted(gauge.items())}
        self.check(result, "gauge_trivializes", not gauge_transform(connection, gauge).coeffs)
        self.require_checks(result, job.command)
