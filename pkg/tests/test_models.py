import random

import pytest

from ReesLab.algebra.complexes import betti_numbers
from ReesLab.algebra.models import instantiate, list_models, load_model, parse_descriptor, random_complex, \
    random_filtered_map, random_invertible, random_multifiltration, random_subspace_pair, torus
from ReesLab.client.errors import UnknownModelError
from ReesLab.schema import dump_document, from_complex, from_multifiltered


def test_registry_listing():
    assert [d.name for d in list_models()] == ["iwasawa", "synthetic_d2", "torus"]
    assert [d.descriptor for d in list_models()] == ["iwasawa", "synthetic_d2", "torus:g=1"]
    assert all(d.provenance_note for d in list_models())


@pytest.mark.parametrize(
    "text, descriptor",
    [
        ("torus", "torus:g=1"),
        ("torus:g=2", "torus:g=2"),
        ("Iwasawa", "iwasawa"),
        ("synthetic-d2", "synthetic_d2"),
    ]
)
def test_parse_descriptor(text, descriptor):
    assert parse_descriptor(text).descriptor == descriptor


@pytest.mark.parametrize("text", ["klein", "torus:h=1", "iwasawa:g=1", "torus:g=x", ""])
def test_unknown_models(text):
    with pytest.raises(UnknownModelError):
        parse_descriptor(text)


def test_torus_of_higher_genus():
    assert betti_numbers(load_model("torus:g=2")) == [1, 4, 6, 4, 1]
    assert betti_numbers(instantiate(parse_descriptor("torus"))) == [1, 2, 1]

    with pytest.raises(ValueError):
        torus(0)


def test_generators_are_deterministic():
    assert dump_document(from_complex(random_complex(7))) == dump_document(from_complex(random_complex(7)))
    assert dump_document(from_multifiltered(random_multifiltration(3, 2, 3))) == \
        dump_document(from_multifiltered(random_multifiltration(3, 2, 3)))
    assert random_filtered_map(5, 2, 2, 3).matrix == random_filtered_map(5, 2, 2, 3).matrix


def test_random_multifiltration_shape():
    space = random_multifiltration(0, 3, 4, jump_range=(-1, 1))

    assert space.n == 3
    assert space.dim == 4
    for filtration in space.filtrations:
        assert -1 <= filtration.lowest <= filtration.highest <= 1


def test_random_invertible():
    assert random_invertible(random.Random(1), 3).rank() == 3


@pytest.mark.parametrize("seed", range(4))
def test_random_complexes_stay_in_bounds(seed):
    complex_ = random_complex(seed, bound=2, pieces=3)
    assert all(0 <= p <= 2 and 0 <= q <= 2 for p, q in complex_.terms)


def test_subspace_pairs_share_vectors():
    pairs = [random_subspace_pair(seed) for seed in range(40)]

    assert random_subspace_pair(7) == random_subspace_pair(7)
    assert all(1 <= left.ambient_dim <= 8 for left, _ in pairs)
    assert any(not (left & right).is_zero() for left, right in pairs)
