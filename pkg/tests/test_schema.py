import json

import pytest

from ReesLab.algebra.connections import EquivariantConnection
from ReesLab.algebra.complexes import betti_numbers
from ReesLab.algebra.errors import NonDescendingFiltrationError
from ReesLab.algebra.models import random_flat_connection
from ReesLab.algebra.multifilt import d_table
from ReesLab.algebra.rees import rees_module
from ReesLab.client.errors import SchemaError
from ReesLab.schema import ReportDoc, dump_document, from_complex, from_connection, from_graded_module, \
    from_multifiltered, json_key, keyed, load_json, parse_document, read_matrix, to_complex, to_connection, \
    to_filtered_map, to_graded_module, to_multifiltered

FULL_PLANE = [["1", "0"], ["0", "1"]]


def _reload(doc):
    return parse_document(load_json(dump_document(doc)))


def test_invalid_json_names_position():
    with pytest.raises(SchemaError) as info:
        load_json('{"kind": ')
    assert info.value.path == "$"
    assert "line 1" in str(info.value)


def test_document_must_be_an_object():
    with pytest.raises(SchemaError):
        load_json("[1, 2]")


@pytest.mark.parametrize(
    "raw, path",
    [
        ({"kind": "sheaf", "schema_version": 1}, "kind"),
        ({"schema_version": 1, "dim": 1}, "kind"),
        ({"kind": "multifiltration", "schema_version": 2, "dim": 1}, "schema_version"),
        ({"kind": "multifiltration", "schema_version": 1}, "dim"),
    ]
)
def test_parse_document_errors(raw, path):
    with pytest.raises(SchemaError) as info:
        parse_document(raw)
    assert info.value.path == path
    assert str(info.value).startswith(f"{path}: ")


def test_three_lines_document(three_lines_doc):
    space = to_multifiltered(parse_document(three_lines_doc))

    assert space.dim == 2
    assert space.n == 3
    assert sum(d_table(space).values()) == 3


def test_bad_scalar_names_its_path(three_lines_doc):
    three_lines_doc["filtrations"][0][1]["basis"] = [["1", "x"]]

    with pytest.raises(SchemaError) as info:
        to_multifiltered(parse_document(three_lines_doc))
    assert info.value.path == "filtrations[0][1].basis[0][1]"


def test_non_descending_document():
    doc = parse_document({
        "kind": "multifiltration",
        "schema_version": 1,
        "dim": 2,
        "filtrations": [[
            {"index": 0, "basis": FULL_PLANE},
            {"index": 1, "basis": [["1", "0"]]},
            {"index": 2, "basis": [["0", "1"]]},
        ]]
    })

    with pytest.raises(NonDescendingFiltrationError) as info:
        to_multifiltered(doc)
    assert info.value.step_pair == (1, 2)
    assert "filtrations[0]" in str(info.value)


def test_non_exhaustive_document():
    doc = parse_document({
        "kind": "multifiltration",
        "schema_version": 1,
        "dim": 2,
        "filtrations": [[{"index": 0, "basis": [["1", "0"]]}]]
    })

    with pytest.raises(SchemaError) as info:
        to_multifiltered(doc)
    assert info.value.path == "filtrations[0][0]"


def test_incompatible_filtered_map(three_lines_doc):
    line = {"kind": "multifiltration", "schema_version": 1, "dim": 1}
    raw = {
        "kind": "filtered_map",
        "schema_version": 1,
        "source": {**line, "filtrations": [[{"index": 1, "basis": [["1"]]}]]},
        "target": {**line, "filtrations": [[{"index": 0, "basis": [["1"]]}]]},
        "matrix": [["1"]],
    }

    with pytest.raises(SchemaError) as info:
        to_filtered_map(parse_document(raw))
    assert info.value.path == "matrix"


def test_read_matrix_shape():
    assert read_matrix([["1", "i"]], (1, 2), "m").shape == (1, 2)

    with pytest.raises(SchemaError) as info:
        read_matrix([["1"]], (1, 2), "m")
    assert info.value.path == "m[0]"

    with pytest.raises(SchemaError) as info:
        read_matrix([[1, 2]], (1, 2), "m")
    assert info.value.path == "m[0][0]"


def test_multifiltration_round_trip(lines):
    reloaded = to_multifiltered(_reload(from_multifiltered(lines)))
    assert reloaded.filtrations == lines.filtrations


def test_complex_round_trip(iwasawa_model):
    doc = from_complex(iwasawa_model)
    raw = doc.to_dict()

    assert "del" in raw and "delbar" in raw
    reloaded = to_complex(_reload(doc))
    assert reloaded.terms == iwasawa_model.terms
    assert reloaded.has_real_structure
    assert betti_numbers(reloaded) == betti_numbers(iwasawa_model)


def test_connection_round_trip():
    connection, _ = random_flat_connection(4)
    doc = from_connection(connection)

    assert all(c.axis >= 1 for c in doc.coefficients)
    reloaded: EquivariantConnection = to_connection(_reload(doc))
    assert reloaded == connection


def test_graded_module_round_trip(lines):
    module = rees_module(lines).realized
    assert to_graded_module(_reload(from_graded_module(module))).equivalent(module)


def test_graded_module_needs_every_piece(lines):
    doc = from_graded_module(rees_module(lines).realized)
    doc.pieces = doc.pieces[1:]

    with pytest.raises(SchemaError) as info:
        to_graded_module(doc)
    assert info.value.path == "pieces"


def test_dump_is_deterministic():
    report = ReportDoc("split", "ok", 0, {"b": 1, "a": {"1,0": 2}}, {"z": True, "a": False})
    text = dump_document(report)

    assert text.endswith("}\n")
    assert text == dump_document(ReportDoc("split", "ok", 0, {"a": {"1,0": 2}, "b": 1}, {"a": False, "z": True}))
    assert "error" not in json.loads(text)
    assert list(json.loads(text)) == sorted(json.loads(text))


def test_keys():
    assert json_key((1, 0)) == "1,0"
    assert json_key(3) == "3"
    assert keyed({(1, 0): 1, (0, 1): 2}) == {"0,1": 2, "1,0": 1}
