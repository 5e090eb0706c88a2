from fractions import Fraction

import pytest

from ReesLab.algebra.errors import NotASubspaceError, ScalarSyntaxError, SingularMatrixError
from ReesLab.algebra.models import random_subspace_pair
from ReesLab.algebra.scalars import I_UNIT, Matrix, ONE, Quotient, Subspace, ZERO, format_scalar, image, \
    imag_part, kernel, parse_scalar, real_part, solve_rows, to_scalar


@pytest.mark.parametrize(
    "literal, real, imag",
    [
        ("3", Fraction(3), Fraction(0)),
        ("-1/2", Fraction(-1, 2), Fraction(0)),
        ("i", Fraction(0), Fraction(1)),
        ("-2 i", Fraction(0), Fraction(-2)),
        ("1-i", Fraction(1), Fraction(-1)),
        ("3/4 i", Fraction(0), Fraction(3, 4)),
        (" 2 + 1/3 i ", Fraction(2), Fraction(1, 3)),
    ]
)
def test_parse_scalar(literal, real, imag):
    value = parse_scalar(literal)
    assert real_part(value) == real
    assert imag_part(value) == imag


@pytest.mark.parametrize("literal", ["", "x", "1/0", "1.5", "2 j", "1+2+i"])
def test_parse_scalar_rejects(literal):
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(literal)


@pytest.mark.parametrize("literal", ["0", "7", "-1/2", "i", "-i", "1-i", "3/4 i", "-2+5/3 i"])
def test_format_scalar_is_canonical(literal):
    assert format_scalar(parse_scalar(literal)) == literal


def test_to_scalar_accepts_exact_values():
    assert to_scalar(2) == parse_scalar("2")
    assert to_scalar(Fraction(1, 3)) == parse_scalar("1/3")
    assert to_scalar("i") == I_UNIT


@pytest.mark.parametrize("value", [0.5, True, 1j])
def test_to_scalar_refuses_inexact(value):
    with pytest.raises(TypeError):
        to_scalar(value)


def test_inverse_is_exact():
    m = Matrix.from_rows([[1, "i"], [0, 2]])
    assert m @ m.inverse() == Matrix.identity(2)
    assert m.inverse() @ m == Matrix.identity(2)


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        Matrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_rank_kernel_image():
    m = Matrix.from_rows([[1, 1, 0], [0, 0, 0]])
    assert m.rank() == 1

    null = kernel(m)
    assert null.dim == 2
    for vector in null.vectors:
        assert all(v == ZERO for v in m.apply(vector))

    assert image(m) == Subspace.coordinate(2, [0])


def test_subspace_lattice():
    x = Subspace.coordinate(3, [0])
    y = Subspace.span([[0, 1, 0]], 3)
    diagonal = Subspace.span([[1, 1, 0]], 3)

    plane = x + y
    assert plane.dim == 2
    assert diagonal <= plane
    assert not diagonal <= x
    assert (x & y).is_zero()
    assert (plane & Subspace.span([[1, 1, 0], [0, 0, 1]], 3)) == diagonal
    assert plane.contains((ONE, ONE, ZERO))


def test_span_is_canonical():
    a = Subspace.span([[1, 2], [2, 4]], 2)
    b = Subspace.span([["1/2", 1]], 2)
    assert a == b
    assert a.dim == 1


def test_coordinates_outside_subspace():
    x = Subspace.coordinate(2, [0])
    assert x.coordinates((parse_scalar("5"), ZERO)) == (parse_scalar("5"),)
    with pytest.raises(NotASubspaceError):
        x.coordinates((ZERO, ONE))


def test_image_and_preimage():
    swap = Matrix.from_rows([[0, 1], [1, 0]])
    x = Subspace.coordinate(2, [0])
    y = Subspace.coordinate(2, [1])

    assert x.image_under(swap) == y
    assert y.preimage_under(swap) == x
    assert Subspace.zero(2).preimage_under(Matrix.zeros(2, 3)) == Subspace.full(3)


def test_embed_and_conjugate():
    line = Subspace.span([[1, "i"]], 2)
    assert line.embed(4, 1) == Subspace.span([[0, 1, "i", 0]], 4)
    assert line.conjugate() == Subspace.span([[1, "-i"]], 2)


def test_quotient_projection_kills_denominator():
    numerator = Subspace.coordinate(3, [0, 1])
    denominator = Subspace.span([[1, 1, 0]], 3)
    q = Quotient(numerator, denominator)

    assert q.dim == 1
    assert all(v == ZERO for v in q.project((ONE, ONE, ZERO)))
    lifted = q.lift_vectors()
    assert len(lifted) == 1
    assert numerator.contains(lifted[0])
    assert q.project(lifted[0]) == (ONE,)


def test_quotient_requires_containment():
    with pytest.raises(NotASubspaceError):
        Quotient(Subspace.coordinate(2, [0]), Subspace.coordinate(2, [1]))


def test_solve_rows():
    basis = [(ONE, ONE), (ZERO, ONE)]
    target = (parse_scalar("2"), parse_scalar("5"))
    assert solve_rows(basis, [target], 2) == [(parse_scalar("2"), parse_scalar("3"))]

    with pytest.raises(NotASubspaceError):
        solve_rows([(ONE, ZERO)], [(ZERO, ONE)], 2)


@pytest.mark.parametrize("seed", range(200))
def test_subspace_modularity(seed):
    left, right = random_subspace_pair(seed)

    assert left.ambient_dim == right.ambient_dim <= 8
    assert (left + right).dim + (left & right).dim == left.dim + right.dim
    assert left & right <= left <= left + right
