import pytest

from ReesLab.algebra.errors import NotChartSplittableError, NotReflexiveError, SplittingTypeInconsistencyError, \
    TorsionPresentError, UnsupportedVariableCountError
from ReesLab.algebra.models import random_filtered_map, random_multifiltration
from ReesLab.algebra.multifilt import Filtration, FilteredMap, MultiFilteredSpace, compute_splitting, \
    identity_map, is_r_strict
from ReesLab.algebra.rees import direct_sum_piece_dims, fiber_matches_d_table, \
    free_module, has_constant_rank, is_vector_bundle, p1_splitting_type, projective_charts, rees_cokernel, \
    rees_fiber, rees_kernel, rees_module, recover_multifiltration, restrict_to_subtorus, section_filtration_dims, \
    split_iso, tensor_piece_dims
from ReesLab.algebra.scalars import Matrix, Subspace


def _line_space(*jumps: int) -> MultiFilteredSpace:
    return MultiFilteredSpace(1, tuple(Filtration.line(jump) for jump in jumps))


def _shifted_map() -> FilteredMap:
    return FilteredMap(_line_space(0), _line_space(1), Matrix.identity(1))


def test_three_lines_fibers_jump(lines):
    assert rees_fiber(lines, (0, 0, 0)).dim == 3
    assert rees_fiber(lines, (1, 1, 1)).dim == 2
    assert rees_fiber(lines, (0, 1, 1)).dim == 2
    assert fiber_matches_d_table(lines)
    assert not is_vector_bundle(lines)


def test_two_lines_are_a_bundle(lines):
    pair = lines.drop_filtrations([2])
    iso = split_iso(pair, compute_splitting(pair))

    assert is_vector_bundle(pair)
    assert iso.twist_multiset() == [(0, 1), (1, 0)]
    assert rees_fiber(pair, (0, 0)).degree_dims == {(-1, 0): 1, (0, -1): 1}


def test_split_iso_changes_are_invertible(lines):
    pair = lines.drop_filtrations([0])
    iso = split_iso(pair, compute_splitting(pair))
    handle = rees_module(pair)

    for m in handle.realized.degrees():
        change = iso.changes[m]
        assert change.rows == change.cols == handle.realized.piece_dim(m)
        assert change.rank() == change.rows


@pytest.mark.parametrize("seed", range(6))
def test_restriction_matches_dropping(seed):
    space = random_multifiltration(seed, 2, 1 + seed % 3)
    handle = restrict_to_subtorus(space, [1])

    assert handle.source.n == 1
    assert fiber_matches_d_table(space)
    assert rees_fiber(space, (1, 1)).dim == space.dim


@pytest.mark.parametrize("seed", range(6))
def test_round_trip(seed):
    space = random_multifiltration(seed, 1 + seed % 2, 1 + seed % 3)
    module = rees_module(space).realized
    recovered = recover_multifiltration(module)

    assert recovered.dim == space.dim
    for original, found in zip(space.filtrations, recovered.filtrations):
        assert original.graded_dims() == found.graded_dims()
    assert rees_module(recovered).realized.equivalent(module)


def test_recovery_refuses_torsion():
    with pytest.raises(TorsionPresentError):
        recover_multifiltration(rees_cokernel(_shifted_map()).coker)


def test_recovery_refuses_non_reflexive(maximal_ideal):
    with pytest.raises(NotReflexiveError):
        recover_multifiltration(maximal_ideal)


def test_recovery_variable_count():
    with pytest.raises(UnsupportedVariableCountError):
        recover_multifiltration(free_module(1, 3).realized)


def test_cokernel_torsion_of_a_shift():
    report = rees_cokernel(_shifted_map())

    assert report.torsion.torsion_pieces == {(-1,): 1}
    assert report.torsion.support_codim == 1
    assert not report.torsion.is_zero
    assert report.phi_target.is_zero()
    assert not has_constant_rank(_shifted_map())


def test_identity_has_no_cokernel_torsion(lines):
    f = identity_map(lines)
    report = rees_cokernel(f)

    assert report.torsion.is_zero
    assert report.coker.is_zero()
    assert rees_kernel(f).is_zero()


def test_constant_rank_needs_a_bundle(lines):
    assert not has_constant_rank(identity_map(lines))
    assert has_constant_rank(identity_map(lines.drop_filtrations([2])))


@pytest.mark.parametrize("seed", range(8))
def test_strictness_matches_torsion(seed):
    f = random_filtered_map(seed, 1 + seed % 2, 1 + seed % 3, 1 + (seed // 2) % 3)
    report = rees_cokernel(f)

    assert report.sequence_mismatches() == []
    if f.n == 1:
        assert report.phi_surjective
    assert is_r_strict(f, f.n) == report.torsion.is_zero
    rees_kernel(f)


def _flag(dim: int, top) -> Filtration:
    """V in degree 0 and the span of ``top`` in degree 1"""

    return Filtration(dim, [(0, Subspace.full(dim)), (1, Subspace.span(top, dim))])


def _coordinate_lines() -> MultiFilteredSpace:
    return MultiFilteredSpace(2, (_flag(2, [(1, 0)]), _flag(2, [(0, 1)])))


def test_cokernel_comparison_can_miss_a_degree():
    # the coordinate lines meet in 0, but both map onto coker f
    f = FilteredMap(_line_space(0, 0), _coordinate_lines(), Matrix.from_rows([[1], [1]]))
    report = rees_cokernel(f)

    assert {m: d for m, d in report.phi_cokernel_dims.items() if d} == {(-1, -1): 1}
    assert not report.phi_surjective
    assert report.coker.piece_dim((-1, -1)) == 0
    assert report.phi_target.piece_dim((-1, -1)) == 1
    assert report.sequence_mismatches() == []
    assert report.torsion.is_zero
    assert is_r_strict(f, 2)


def test_strict_per_filtration_but_not_jointly():
    f = FilteredMap(_coordinate_lines(), _line_space(1, 1), Matrix.from_rows([[1, 1]]))
    report = rees_cokernel(f)

    assert is_r_strict(f, 1)
    assert not is_r_strict(f, 2)
    assert report.torsion.torsion_pieces == {(-1, -1): 1}
    assert report.torsion.support_codim == 2
    assert report.sequence_mismatches() == []


@pytest.mark.parametrize("seed", range(30))
def test_one_strictness_matches_support_codim(seed):
    f = random_filtered_map(seed, 2, 1 + seed % 3, 1 + (seed // 3) % 3)
    assert is_r_strict(f, 1) == (rees_cokernel(f).torsion.support_codim > 1)


def test_tensor_and_sum_piece_dims():
    left = _line_space(1, 0)
    right = _line_space(0, 2)

    tensor_dims = tensor_piece_dims(left, right)
    assert tensor_dims[(-1, -2)] == 1
    assert tensor_dims[(-1, -2)] == rees_module(_line_space(1, 2)).realized.piece_dim((-1, -2))

    sum_dims = direct_sum_piece_dims(left, right)
    assert sum_dims[(0, 0)] == 2
    assert sum_dims[(-1, 0)] == 1


def test_charts_of_three_lines(lines):
    report = projective_charts(lines)

    assert len(report.charts) == 3
    assert set(report.overlaps) == {(0, 1), (0, 2), (1, 2)}
    assert report.consistent


def test_charts_need_splittable_subsets():
    lines = [(1, 0), (0, 1), (1, 1), (1, -1)]
    space = MultiFilteredSpace(2, tuple(
        Filtration(2, [(0, Subspace.full(2)), (1, Subspace.span([line], 2))]) for line in lines
    ))

    with pytest.raises(NotChartSplittableError) as info:
        projective_charts(space)
    assert info.value.subset == (1, 2, 3)


def test_p1_splitting_type(lines):
    pair = lines.drop_filtrations([2])

    assert p1_splitting_type(pair) == [1, 1]
    assert section_filtration_dims(pair)[1] == 2
    assert p1_splitting_type(_line_space(2, -1)) == [1]
    assert p1_splitting_type(MultiFilteredSpace(2, (Filtration.trivial(2, 0), Filtration.trivial(2, 3)))) == [3, 3]


def test_p1_splitting_type_needs_two_filtrations(lines):
    with pytest.raises(SplittingTypeInconsistencyError):
        p1_splitting_type(lines)
