from typing import Optional

from ReesLab.algebra.errors import RejectionError


class InputError(RuntimeError):
    """
    Thrown when a job cannot be run because its input is malformed. Maps to exit code 2.

    """


class SchemaError(InputError):
    """
    Thrown when a document does not match its schema, naming the JSON path that failed
    (e.g. filtrations[0][1])

    """

    def __init__(self, path: str, *args):
        self.path: str = path
        super().__init__(*args)

    def __str__(self) -> str:
        return f"{self.path or '$'}: {super().__str__()}"


class UnknownModelError(InputError):
    """
    Thrown when a model descriptor names no registered model, or passes parameters it does not take

    """

    def __init__(self, descriptor: str, *args):
        self.descriptor: str = descriptor
        super().__init__(*args)


class InvalidJobError(InputError):
    """
    Thrown when a job combines options its command does not accept (e.g. both a file and a model)

    """


class NotStrictError(RejectionError):
    """
    Thrown when a filtered map fails the requested strictness test

    """

    def __init__(self, r: int, failing_index: Optional[tuple] = None, *args):
        self.r: int = r
        self.failing_index: Optional[tuple] = failing_index
        super().__init__(*args)
