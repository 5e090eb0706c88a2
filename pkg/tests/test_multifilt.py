import pytest

from ReesLab.algebra.errors import AmbientMismatchError, FilteredCompatibilityError, NonDescendingFiltrationError, \
    NonExhaustiveFiltrationError, NotSplittableError, StrictnessRangeError
from ReesLab.algebra.models import random_filtered_map, random_multifiltration
from ReesLab.algebra.multifilt import Filtration, FilteredMap, MultiFilteredSpace, Splitting, compute_splitting, \
    d_table, direct_sum, f_intersection, graded_piece_D, identity_map, is_r_strict, is_splittable, kernel_object, \
    tensor
from ReesLab.algebra.scalars import Matrix, Subspace


def _line_space(*jumps: int) -> MultiFilteredSpace:
    return MultiFilteredSpace(1, tuple(Filtration.line(jump) for jump in jumps))


def test_filtration_reads_between_jumps():
    x = Subspace.coordinate(2, [0])
    filtration = Filtration(2, [(0, Subspace.full(2)), (2, x)])

    assert filtration.at(-5).dim == 2
    assert filtration.at(1) == x
    assert filtration.at(2) == x
    assert filtration.at(3).is_zero()
    assert filtration.graded_dims() == {0: 1, 2: 1}
    assert (filtration.lowest, filtration.highest) == (0, 2)


def test_filtration_collapses_repeated_steps():
    filtration = Filtration.from_function(2, 0, 3, lambda p: Subspace.full(2) if p < 2 else Subspace.zero(2))
    assert filtration.jumps == (1,)
    assert filtration == Filtration.trivial(2, 1)


def test_non_descending_filtration():
    x = Subspace.coordinate(2, [0])
    y = Subspace.coordinate(2, [1])

    with pytest.raises(NonDescendingFiltrationError) as info:
        Filtration(2, [(0, Subspace.full(2)), (1, x), (2, y)])
    assert info.value.step_pair == (1, 2)


def test_non_exhaustive_filtration():
    with pytest.raises(NonExhaustiveFiltrationError):
        Filtration(2, [(0, Subspace.coordinate(2, [0]))])


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        MultiFilteredSpace(2, (Filtration.trivial(3),))


def test_three_lines_d_table(lines):
    assert d_table(lines) == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}
    assert f_intersection(lines, (1, 1, 0)).is_zero()
    assert graded_piece_D(lines, (0, 0, 0)).dim == 0
    assert not is_splittable(lines)


def test_three_lines_do_not_split(lines):
    with pytest.raises(NotSplittableError) as info:
        compute_splitting(lines)
    assert (info.value.total_graded_dim, info.value.dim) == (3, 2)


@pytest.mark.parametrize("dropped", [0, 1, 2])
def test_any_two_lines_split(lines, dropped):
    pair = lines.drop_filtrations([dropped])
    splitting = compute_splitting(pair)

    assert splitting.total_dim() == 2
    assert splitting.is_valid(pair)
    assert sorted(splitting.components) == [(0, 1), (1, 0)]


def test_bogus_splitting_is_invalid(lines):
    pair = lines.drop_filtrations([2])
    x = Subspace.coordinate(2, [0])
    assert not Splitting({(1, 0): x, (0, 1): x}).is_valid(pair)


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("n", [1, 2])
def test_random_spaces_split_for_n_at_most_two(seed, n):
    space = random_multifiltration(seed, n, 1 + seed % 4)
    assert is_splittable(space)
    assert compute_splitting(space).is_valid(space)


def test_tensor_and_direct_sum_of_lines():
    assert d_table(tensor(_line_space(1), _line_space(2))) == {(3,): 1}
    assert d_table(direct_sum(_line_space(0), _line_space(2))) == {(0,): 1, (2,): 1}


def test_filtered_map_compatibility():
    with pytest.raises(FilteredCompatibilityError) as info:
        FilteredMap(_line_space(1), _line_space(0), Matrix.identity(1))
    assert info.value.index == 0


def test_strictness():
    shifted = FilteredMap(_line_space(0), _line_space(1), Matrix.identity(1))
    assert not is_r_strict(shifted, 1)
    assert is_r_strict(identity_map(_line_space(0)), 1)


@pytest.mark.parametrize("r", [0, 2])
def test_strictness_range(r):
    with pytest.raises(StrictnessRangeError):
        is_r_strict(identity_map(_line_space(0)), r)


@pytest.mark.parametrize("seed", range(6))
def test_random_filtered_maps_are_compatible(seed):
    f = random_filtered_map(seed, 2, 3, 2)
    kernel = kernel_object(f)

    assert f.matrix.shape == (2, 3)
    assert kernel.dim == 3 - f.matrix.rank()
    assert kernel.n == 2
