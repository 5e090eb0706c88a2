import pytest

from ReesLab.algebra.errors import NoRealStructureError
from ReesLab.algebra.favb import conjugate_favb, favb, favb2, rees_complex, rees_complex2, twistor_type, \
    verify_base_change, verify_base_change2
from ReesLab.algebra.models import random_complex
from ReesLab.algebra.scalars import Matrix


def test_torus_bundle(torus_model):
    report = favb(torus_model, 1)

    assert report.betti == 2
    assert report.fiber_zero == {0: 1, 1: 1}
    assert report.twists == [1, 0]
    assert report.fiber_contract
    assert report.base_change.iso_verified
    assert not report.base_change.has_torsion
    assert all(report.checks().values())


def test_torus_generic_fibres(torus_model):
    report = favb(torus_model, 2, samples=["1", "3", "-i", "0"])

    assert report.betti == 1
    assert set(report.fiber_generic) == {"1", "3", "-i"}
    assert set(report.fiber_generic.values()) == {1}
    assert report.twisted_dims == report.fiber_generic


def test_iwasawa_bundle(iwasawa_model):
    report = favb(iwasawa_model, 1)

    assert report.betti == 4
    assert report.fiber_zero == {0: 2, 1: 2}
    assert report.fiber_zero == report.e_infinity
    assert report.base_change.has_torsion
    assert report.base_change.iso_verified
    assert report.fiber_contract


def test_synthetic_d2_bundle_vanishes(d2_model):
    reports = [favb(d2_model, k) for k in range(3)]

    assert all(report.module.is_zero() for report in reports)
    assert all(report.fiber_contract for report in reports)
    assert any(report.base_change.has_torsion for report in reports)


@pytest.mark.parametrize("seed", range(5))
def test_random_base_change(seed):
    complex_ = random_complex(seed)
    for k in range(complex_.max_degree + 1):
        assert verify_base_change(complex_, k)
        assert favb(complex_, k).fiber_contract


def test_rees_complex_specializes(iwasawa_model):
    rees = rees_complex(iwasawa_model)
    parts = rees.split_differential(1)

    assert set(parts) == {0, 1}
    assert rees.specialize(1, 1) == parts[0] + parts[1]
    assert rees.specialize(1, 2) == parts[0] + parts[1].scale(2)
    assert rees.window(1) == ((-2,), (1,))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_split_parts_shift_the_column_degree(iwasawa_model, k):
    rees = rees_complex(iwasawa_model)
    parts = rees.split_differential(k)

    assert rees.degree_differential(k) == rees.specialize(k, 1)
    for p in range(k + 2):
        source = iwasawa_model.filtration_space(k, p)
        for power, matrix in parts.items():
            assert source.image_under(matrix) <= iwasawa_model.filtration_space(k + 1, p + power)


def test_torus_purity(torus_model):
    report = favb2(torus_model, 1, with_base_change=True)

    assert report.purity.d_dims == {(1, 0): 1, (0, 1): 1}
    assert report.purity.is_pure
    assert report.fiber_matches_purity
    assert report.checks() == {
        "fiber_matches_purity": True,
        "slice_hodge": True,
        "slice_conjugate": True,
        "base_change2": True,
    }
    assert twistor_type(torus_model, 1) == [1, 1]


def test_iwasawa_purity(iwasawa_model):
    report = favb2(iwasawa_model, 1)

    assert report.purity.total == 4
    assert all(p + q == 1 for p, q in report.purity.d_dims)
    assert report.fiber_matches_purity
    assert report.slice_hodge and report.slice_conjugate
    assert "base_change2" not in report.checks()
    assert verify_base_change2(iwasawa_model, 1)


def test_conjugate_bundle_has_the_same_rank(torus_model):
    assert conjugate_favb(torus_model, 1).generic_rank() == 2
    assert rees_complex2(torus_model).cohomology_module(1).mod_torsion().generic_rank() == 2


def test_second_filtration_needs_real_structure(d2_model):
    with pytest.raises(NoRealStructureError):
        favb2(d2_model, 1)

    with pytest.raises(NoRealStructureError):
        twistor_type(d2_model, 1)


def test_split_differential_of_a_closed_complex(torus_model):
    assert rees_complex(torus_model).split_differential(1) == {}
    assert rees_complex(torus_model).specialize(0, 5) == Matrix.zeros(2, 1)
