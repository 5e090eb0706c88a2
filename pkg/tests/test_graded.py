import pytest

from ReesLab.algebra.errors import WindowInsufficientError
from ReesLab.algebra.graded import GradedModule, support_codim
from ReesLab.algebra.rees import free_module, line_module
from ReesLab.algebra.scalars import Matrix


def test_free_module():
    module = free_module(2, 2).realized

    assert module.generic_rank() == 2
    assert module.is_torsion_free()
    assert module.fiber_at_zero().dim == 2
    assert module.fiber_at_zero().degree_dims == {(0, 0): 2}
    assert module.commutes()


def test_line_module_reads_outside_window():
    module = line_module((1, 2)).realized

    assert (module.lo, module.hi) == ((-1, -2), (-1, -2))
    assert module.piece_dim((5, 5)) == 1
    assert module.piece_dim((-2, -2)) == 0
    assert module.fiber_at_zero().degree_dims == {(-1, -2): 1}


def test_localize_drops_axes():
    module = free_module(3, 2).realized.localize([1])

    assert module.n == 1
    assert module.generic_rank() == 3
    assert module.fiber((0,)).dim == 3
    assert module.fiber((1,)).dim == 3


def test_maximal_ideal_fibers(maximal_ideal):
    module = maximal_ideal

    assert module.is_torsion_free()
    assert module.commutes()
    assert module.fiber((0, 0)).dim == 2
    assert module.fiber((1, 0)).dim == 1
    assert module.fiber((1, 1)).dim == 1


def test_equivalence_ignores_window():
    small = line_module((0,)).realized
    assert small.equivalent(small.reframe((-3,), (2,)))
    assert not small.equivalent(line_module((1,)).realized)


def test_window_without_stabilization():
    module = GradedModule(1, (0,), (0,), {(0,): 1}, {}, high_stable=[False])

    with pytest.raises(WindowInsufficientError):
        module.piece_dim((1,))

    with pytest.raises(WindowInsufficientError):
        module.localize([0])


def test_torsion_of_a_skyscraper():
    # k in degree 0, killed by z
    module = GradedModule(1, (0,), (1,), {(0,): 1, (1,): 0}, {(0, (0,)): Matrix.zeros(0, 1)})

    assert not module.is_torsion_free()
    assert module.torsion_submodule().piece_dims() == {(0,): 1, (1,): 0}
    assert module.mod_torsion().is_zero()
    assert support_codim(module) == 1
