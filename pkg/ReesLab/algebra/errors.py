from typing import Sequence, Tuple


class RejectionError(RuntimeError):
    """
    Thrown when an input is well-formed but the requested construction rejects it on
    mathematical grounds (e.g. the filtrations admit no splitting)

    """


class NotSplittableError(RejectionError):
    """
    Thrown when a multifiltered space admits no splitting

    """

    def __init__(self, total_graded_dim: int, dim: int, *args):
        self.total_graded_dim: int = total_graded_dim
        self.dim: int = dim
        super().__init__(*args)


class NotChartSplittableError(RejectionError):
    """
    Thrown when some n-subset of the n+1 filtrations of a projective datum is not splittable

    """

    def __init__(self, subset: Sequence[int], *args):
        self.subset: Tuple[int, ...] = tuple(subset)
        super().__init__(*args)


class NotFlatError(RejectionError):
    """
    Thrown when a flat connection is required but the curvature does not vanish

    """


class InconsistentRecursionError(RejectionError):
    """
    Thrown when the gauge recursion of a flat connection produces contradicting coefficients.
    Impossible for flat input, so this always signals a defect.

    """


class NoRealStructureError(RejectionError):
    """
    Thrown when a construction needs the real structure of a complex that has none

    """


class TorsionPresentError(RejectionError):
    """
    Thrown when a torsion-free graded module is required but torsion is present

    """


class NotReflexiveError(RejectionError):
    """
    Thrown when a torsion-free module is not the Rees module of the filtrations it induces

    """


class SplittingTypeInconsistencyError(RejectionError):
    """
    Thrown when no multiset of twists reproduces the computed section dimensions.
    Impossible for valid input, so this always signals a defect.

    """


class VerificationFailedError(RejectionError):
    """
    Thrown when a verification that must hold for every input fails

    """

    def __init__(self, check: str, *args):
        self.check: str = check
        super().__init__(*args)


class ScalarSyntaxError(RuntimeError):
    """
    Thrown when a scalar literal does not follow the "a/b+c/d i" syntax

    """

    def __init__(self, literal: str, *args):
        self.literal: str = literal
        super().__init__(*args)


class AmbientMismatchError(RuntimeError):
    """
    Thrown when two subspaces, vectors or matrices live in incompatible ambient spaces

    """


class NotASubspaceError(RuntimeError):
    """
    Thrown when a quotient W/U is requested although U is not contained in W

    """


class SingularMatrixError(RuntimeError):
    """
    Thrown when inverting a matrix that is not invertible

    """


class NonDescendingFiltrationError(RuntimeError):
    """
    Thrown when a filtration step does not contain its successor

    """

    def __init__(self, step_pair: Tuple[int, int], *args):
        self.step_pair: Tuple[int, int] = step_pair
        super().__init__(*args)


class NonExhaustiveFiltrationError(RuntimeError):
    """
    Thrown when the lowest filtration step is not the whole space

    """


class FilteredCompatibilityError(RuntimeError):
    """
    Thrown when a linear map does not send F_i^p into G_i^p

    """

    def __init__(self, index: int, p: int, *args):
        self.index: int = index
        self.p: int = p
        super().__init__(*args)


class InvalidSplittingError(RuntimeError):
    """
    Thrown when a proposed splitting does not induce the filtrations

    """


class WindowInsufficientError(RuntimeError):
    """
    Thrown when a graded module is evaluated outside its window in a direction without a
    stabilization flag

    """


class InvalidComplexError(RuntimeError):
    """
    Thrown when a bigraded complex violates del^2 = 0, delbar^2 = 0, anticommutation,
    boundedness or the real-structure axioms

    """


class StrictnessRangeError(RuntimeError):
    """
    Thrown when r-strictness is requested for r outside 1..n

    """


class MalformedConnectionError(RuntimeError):
    """
    Thrown when an operation needs a well-formed equivariant connection

    """


class UnsupportedVariableCountError(RuntimeError):
    """
    Thrown when recovering filtrations from a module in more than two variables

    """
