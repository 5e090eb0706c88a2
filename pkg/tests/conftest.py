import json
from typing import Any, Callable, Dict

import pytest

from ReesLab.algebra.complexes import BigradedComplex
from ReesLab.algebra.graded import GradedModule
from ReesLab.algebra.models import iwasawa, synthetic_d2, three_lines, torus
from ReesLab.algebra.multifilt import MultiFilteredSpace
from ReesLab.algebra.scalars import Matrix
from ReesLab.client.client import ReesLabClient
from ReesLab.client.logger import LogLevel


@pytest.fixture(scope="session")
def torus_model() -> BigradedComplex:
    return torus(1)


@pytest.fixture(scope="session")
def iwasawa_model() -> BigradedComplex:
    return iwasawa()


@pytest.fixture(scope="session")
def d2_model() -> BigradedComplex:
    return synthetic_d2()


@pytest.fixture()
def lines() -> MultiFilteredSpace:
    return three_lines()


@pytest.fixture()
def client() -> ReesLabClient:
    return ReesLabClient(log_level=LogLevel.CRITICAL)


@pytest.fixture()
def write_doc(tmp_path) -> Callable[[Dict[str, Any], str], str]:
    """Write a JSON document into the test's temporary directory and return its path"""

    def write(doc: Dict[str, Any], name: str = "input.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture()
def three_lines_doc() -> Dict[str, Any]:
    return {
        "kind": "multifiltration",
        "schema_version": 1,
        "dim": 2,
        "filtrations": [
            [{"index": 0, "basis": [["1", "0"], ["0", "1"]]}, {"index": 1, "basis": [["1", "0"]]}],
            [{"index": 0, "basis": [["1", "0"], ["0", "1"]]}, {"index": 1, "basis": [["0", "1"]]}],
            [{"index": 0, "basis": [["1", "0"], ["0", "1"]]}, {"index": 1, "basis": [["1", "1"]]}],
        ]
    }


@pytest.fixture()
def two_lines_doc(three_lines_doc) -> Dict[str, Any]:
    return {**three_lines_doc, "filtrations": three_lines_doc["filtrations"][:2]}


@pytest.fixture()
def maximal_ideal() -> GradedModule:
    """(z_1, z_2) inside k[z_1, z_2]: torsion-free, yet not the Rees module of any filtrations"""

    one: Matrix = Matrix.identity(1)
    return GradedModule(
        2, (0, 0), (1, 1),
        {(0, 0): 0, (1, 0): 1, (0, 1): 1, (1, 1): 1},
        {
            (0, (0, 0)): Matrix.zeros(1, 0),
            (1, (0, 0)): Matrix.zeros(1, 0),
            (0, (0, 1)): one,
            (1, (1, 0)): one,
        }
    )
