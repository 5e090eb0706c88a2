import random

import pytest
import sympy

from ReesLab.algebra.errors import MalformedConnectionError, NotFlatError
from ReesLab.algebra.connections import EquivariantConnection, canonical_connection, curvature, gauge_of_trivial, \
    gauge_transform, is_flat, poly_mul, symbolic_curvature, trivialize_flat
from ReesLab.algebra.models import random_flat_connection, random_grading, random_perturbation
from ReesLab.algebra.scalars import Matrix


def _single(grading, p, axis, row, col, value=1) -> EquivariantConnection:
    entries = [[0] * len(grading) for _ in grading]
    entries[row][col] = value
    return EquivariantConnection(2, tuple(grading), {(p, axis): Matrix.from_rows(entries)})


def test_trivial_connection():
    connection = canonical_connection(2, ((0, 0), (1, 2)))

    assert is_flat(connection)
    assert connection.violations() == []
    assert trivialize_flat(connection) == {(0, 0): Matrix.identity(2)}


def test_coefficient_along_its_own_axis_is_flat():
    connection = _single(((0, 0), (1, 0)), (1, 0), 0, 0, 1, 3)
    gauge = trivialize_flat(connection)

    assert is_flat(connection)
    assert gauge[(1, 0)] == Matrix.from_rows([[0, -3], [0, 0]])
    assert gauge_transform(connection, gauge).coeffs == {}


def test_mixed_coefficient_has_curvature():
    connection = _single(((0, 0), (1, 1)), (1, 1), 0, 0, 1)

    assert curvature(connection) == {((1, 1), 0, 1): Matrix.from_rows([[0, -1], [0, 0]])}
    with pytest.raises(NotFlatError):
        trivialize_flat(connection)


def test_pole_is_malformed():
    connection = _single(((0, 0), (0, 1)), (0, 1), 0, 0, 1)

    assert any("pole" in problem for problem in connection.violations())
    with pytest.raises(MalformedConnectionError):
        trivialize_flat(connection)


def test_degree_raising_coefficient_is_malformed():
    connection = _single(((0, 0), (1, 0)), (1, 0), 0, 1, 0)
    assert any("lower degrees" in problem for problem in connection.violations())


def test_poly_mul_drops_zero_terms():
    upper = Matrix.from_rows([[0, 1], [0, 0]])
    assert poly_mul({(0,): upper}, {(0,): upper}) == {}
    assert poly_mul({(1,): upper}, {(2,): Matrix.identity(2)}) == {(3,): upper}


def test_constant_gauge_gives_trivial_connection():
    grading = ((0, 0), (0, 0), (1, 0))
    constant = Matrix.from_rows([[1, 2, 0], [3, 4, 0], [0, 0, 5]])
    assert gauge_of_trivial(2, grading, {(0, 0): constant}).coeffs == {}


@pytest.mark.parametrize("seed", range(10))
def test_random_flat_connections_trivialize(seed):
    connection, gauge = random_flat_connection(seed)
    zero = (0,) * connection.n

    assert connection.violations() == []
    assert is_flat(connection)
    assert poly_mul(gauge, trivialize_flat(connection)) == {zero: gauge[zero]}


@pytest.mark.parametrize("seed", range(12))
def test_single_perturbation_is_flat_exactly_on_its_axis(seed):
    grading = random_grading(random.Random(seed), 2, 3)
    try:
        perturbed, p, axis = random_perturbation(seed, canonical_connection(2, grading))
    except ValueError:
        pytest.skip("grading admits no coefficient")

    assert perturbed.violations() == []
    assert is_flat(perturbed) == all(p_j == 0 for j, p_j in enumerate(p) if j != axis)


def test_symbolic_curvature_of_a_mixed_coefficient():
    z1, z2 = sympy.symbols("z1:3")
    connection = _single(((0, 0), (1, 1)), (1, 1), 0, 0, 1)

    assert symbolic_curvature(connection) == {(0, 1): sympy.Matrix([[0, -z1 * z2], [0, 0]])}
    assert symbolic_curvature(canonical_connection(2, ((0, 0), (1, 2)))) == {}


@pytest.mark.parametrize("seed", range(50))
def test_perturbed_flat_connections_match_symbolic_curvature(seed):
    connection, _ = random_flat_connection(seed)
    assert symbolic_curvature(connection) == {}

    try:
        perturbed, _, _ = random_perturbation(seed, connection)
    except ValueError:
        pytest.skip("grading admits no coefficient")

    assert perturbed.violations() == []
    assert is_flat(perturbed) == (not symbolic_curvature(perturbed))
