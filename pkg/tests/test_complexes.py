import pytest

from ReesLab.algebra.complexes import BigradedComplex, betti_numbers, check_convergence, conjugate_filtration, \
    euler_characteristic, hodge_filtration, row_filtration_image, spectral_sequence, theta_intertwine_check, \
    twisted_cohomology
from ReesLab.algebra.errors import InvalidComplexError, NoRealStructureError
from ReesLab.algebra.models import random_complex
from ReesLab.algebra.scalars import Matrix

ONE_BY_ONE = Matrix.from_rows([[1]])


@pytest.mark.parametrize(
    "terms, delta, delta_bar",
    [
        ({(0, 0): 1, (1, 0): 1, (2, 0): 1}, {(0, 0): ONE_BY_ONE, (1, 0): ONE_BY_ONE}, {}),
        ({(0, 0): 1, (1, 0): 2}, {(0, 0): ONE_BY_ONE}, {}),
        ({(-1, 0): 1}, {}, {}),
        ({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
         {(0, 0): ONE_BY_ONE, (0, 1): ONE_BY_ONE}, {(0, 0): ONE_BY_ONE, (1, 0): ONE_BY_ONE}),
    ]
)
def test_invalid_complexes(terms, delta, delta_bar):
    with pytest.raises(InvalidComplexError):
        BigradedComplex(terms, delta, delta_bar)


def test_real_structure_needs_symmetric_terms():
    with pytest.raises(InvalidComplexError):
        BigradedComplex({(1, 0): 1}, sigma={})


def test_torus_spectral_sequence(torus_model):
    table = spectral_sequence(torus_model)

    assert betti_numbers(torus_model) == [1, 2, 1]
    assert table.degree_dims(1, 1) == {(0, 1): 1, (1, 0): 1}
    assert table.degeneration_page == 1
    assert euler_characteristic(torus_model) == 0


def test_iwasawa_spectral_sequence(iwasawa_model):
    table = spectral_sequence(iwasawa_model)

    assert betti_numbers(iwasawa_model)[1] == 4
    assert sum(table.degree_dims(1, 1).values()) == 5
    assert sum(table.degree_dims(2, 1).values()) == 4
    assert table.degeneration_page_in_degree(1) == 2


def test_synthetic_d2(d2_model):
    table = spectral_sequence(d2_model)

    assert betti_numbers(d2_model) == [0, 0, 0]
    assert table.pages[2] == table.pages[1]
    assert table.degree_dims(2, 1) == {(0, 1): 1}
    assert not table.differentials[2][(0, 1)].is_zero()
    assert table.degeneration_page == 3
    assert table.degeneration_page_in_degree(0) == 1
    assert table.infinity == {}


@pytest.mark.parametrize("model", ["torus_model", "iwasawa_model", "d2_model"])
def test_convergence(model, request):
    complex_ = request.getfixturevalue(model)
    table = spectral_sequence(complex_)

    for k in range(complex_.max_degree + 1):
        assert check_convergence(complex_, k, table)


@pytest.mark.parametrize("seed", range(6))
def test_random_complexes_converge(seed):
    complex_ = random_complex(seed)
    table = spectral_sequence(complex_)

    for k in range(complex_.max_degree + 1):
        assert check_convergence(complex_, k, table)


def _page_euler(page) -> int:
    return sum((-1) ** (p + q) * d for (p, q), d in page.items())


@pytest.mark.parametrize("seed", range(60))
def test_pages_keep_euler_characteristic_and_shrink(seed):
    complex_ = random_complex(seed)
    table = spectral_sequence(complex_, 4)
    chi = euler_characteristic(complex_)

    assert chi == sum((-1) ** k * b for k, b in enumerate(betti_numbers(complex_)))
    for r in sorted(table.pages):
        assert _page_euler(table.pages[r]) == chi
        if r + 1 in table.pages:
            assert all(table.pages[r + 1][pq] <= d for pq, d in table.pages[r].items())


@pytest.mark.parametrize("h", ["2", "-1/3", "i", "1+i"])
def test_theta_intertwines(iwasawa_model, h):
    assert theta_intertwine_check(iwasawa_model, h)


def test_theta_needs_nonzero_h(torus_model):
    with pytest.raises(ZeroDivisionError):
        theta_intertwine_check(torus_model, 0)


def test_twisted_cohomology(iwasawa_model):
    assert twisted_cohomology(iwasawa_model, 2, 1).dim == 4
    assert twisted_cohomology(iwasawa_model, "i", 1).dim == 4
    # at h = 0 the differential is delbar alone
    assert twisted_cohomology(iwasawa_model, 0, 1).dim == 5


def test_hodge_and_conjugate_filtrations(torus_model):
    hodge = hodge_filtration(torus_model, 1)

    assert hodge.graded_dims() == {0: 1, 1: 1}
    assert conjugate_filtration(torus_model, 1) == row_filtration_image(torus_model, 1)


def test_conjugate_filtration_needs_real_structure(d2_model):
    with pytest.raises(NoRealStructureError):
        conjugate_filtration(d2_model, 1)
