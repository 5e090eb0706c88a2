from ReesLab.algebra.complexes import BigradedComplex, betti_numbers
from ReesLab.algebra.models import ModelDescriptor, instantiate, list_models, parse_descriptor
from ReesLab.client.errors import InvalidJobError
from ReesLab.client.job import JobSpec
from ReesLab.client.routes.route_base import ClientRoute, RouteResult
from ReesLab.schema import from_complex, keyed


def descriptor_doc(descriptor: ModelDescriptor) -> dict:
    return {
        "name": descriptor.name,
        "descriptor": descriptor.descriptor,
        "parameters": dict(sorted(descriptor.parameters.items())),
        "provenance_note": descriptor.provenance_note
    }


class ModelsRoute(ClientRoute):
    """
    List the registered models or export one as a bigraded_complex document

    """

    def __call__(self, job: JobSpec, result: RouteResult) -> None:
        """
        :raises: InvalidJobError
        :raises: UnknownModelError

        """

        action: str = job.option("action")

        if action == "list":
            result.data["models"] = [descriptor_doc(d) for d in list_models()]
            return

        if action != "export":
            raise InvalidJobError(f"'models' takes the action list or export, not {action!r}")

        if not job.option("name"):
            raise InvalidJobError("'models export' needs a model name")

        descriptor: ModelDescriptor = parse_descriptor(job.option("name"))
        complex_: BigradedComplex = instantiate(descriptor)

        result.data.update({
            "model": descriptor_doc(descriptor),
            "terms": keyed(complex_.terms),
            "betti": betti_numbers(complex_)
        })
        result.document = from_complex(complex_)
