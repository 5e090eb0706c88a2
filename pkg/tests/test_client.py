import json
from typing import List

import pytest

from ReesLab.__main__ import main
from ReesLab.algebra.models import random_flat_connection
from ReesLab.client.client import JobOutcome, ReesLabClient
from ReesLab.client.errors import InvalidJobError
from ReesLab.client.job import JobSpec
from ReesLab.client.settings import DEFAULT_SUITE_SAMPLES, LabDefaults
from ReesLab.events import CheckEvent, JobStartEvent, RejectionEvent, ReportEvent
from ReesLab.schema import dump_document, from_connection


def _read(path) -> dict:
    with open(path, encoding="utf-8") as file:
        return json.load(file)


def test_split_rejects_three_lines(client, write_doc, three_lines_doc):
    outcome: JobOutcome = client.run(JobSpec("split", input=write_doc(three_lines_doc)))
    report = outcome.report.to_dict()

    assert outcome.exit_code == 1
    assert report["status"] == "rejected"
    assert report["data"]["total_graded_dim"] == 3
    assert report["data"]["d_table"] == {"0,0,1": 1, "0,1,0": 1, "1,0,0": 1}
    assert report["error"].startswith("NotSplittableError")
    assert "splitting" not in report["data"]


def test_split_two_lines(client, write_doc, two_lines_doc):
    outcome: JobOutcome = client.run(JobSpec("split", input=write_doc(two_lines_doc)))

    assert outcome.exit_code == 0
    assert outcome.report.data["twists"] == [[0, 1], [1, 0]]
    assert all(outcome.report.checks.values())


def test_events(client, write_doc, three_lines_doc):
    seen: List[str] = []

    @client.on(JobStartEvent)
    def on_start(event: JobStartEvent):
        seen.append(event.type)

    @client.on(CheckEvent)
    def on_check(event: CheckEvent):
        seen.append(f"{event.type}:{event.name}:{event.passed}")

    @client.on(RejectionEvent)
    def on_rejection(event: RejectionEvent):
        seen.append(f"{event.type}:{event.error_type}:{event.exit_code}")

    @client.on(ReportEvent)
    def on_report(event: ReportEvent):
        seen.append(f"{event.type}:{event.report['status']}")

    client.run(JobSpec("split", input=write_doc(three_lines_doc)))

    assert seen == [
        "JobStartEvent",
        "CheckEvent:vector_bundle:True",
        "RejectionEvent:NotSplittableError:1",
        "ReportEvent:rejected",
    ]
    assert client.has_listener(ReportEvent)


@pytest.mark.parametrize(
    "job",
    [
        JobSpec("split"),
        JobSpec("split", input="a.json", model="torus"),
        JobSpec("split", model="torus"),
        JobSpec("favb", model="torus"),
        JobSpec("favb", model="torus", options={"k": 1, "flatten": True}),
        JobSpec("models", input="a.json", options={"action": "list"}),
        JobSpec("sheaf", input="a.json"),
        JobSpec("specseq", model="torus", format="xml"),
    ]
)
def test_invalid_jobs(client, job):
    outcome: JobOutcome = client.run(job)

    assert outcome.exit_code == 2
    assert outcome.report.status == "input_error"
    assert outcome.report.error.startswith("InvalidJobError")


def test_unknown_model_is_an_input_error(client):
    outcome: JobOutcome = client.run(JobSpec("specseq", model="klein"))
    assert outcome.exit_code == 2
    assert outcome.report.error.startswith("UnknownModelError")


def test_missing_file_is_an_input_error(client, tmp_path):
    assert client.run(JobSpec("split", input=str(tmp_path / "missing.json"))).exit_code == 2


def test_wrong_document_kind(client, write_doc):
    path: str = write_doc(
        {"kind": "multifiltration", "schema_version": 1, "dim": 1, "filtrations": [[{"index": 0, "basis": [["1"]]}]]}
    )
    outcome: JobOutcome = client.run(JobSpec("specseq", input=path))

    assert outcome.exit_code == 2
    assert outcome.report.error.startswith("SchemaError: kind")


def test_emit_report_formats(client, write_doc, two_lines_doc):
    outcome: JobOutcome = client.run(JobSpec("split", input=write_doc(two_lines_doc)))

    table: str = client.emit_report(outcome.report, "table").decode("utf-8")
    assert table.startswith("split  status=ok  exit=0")
    assert "[ok] vector_bundle" in table
    assert "total_graded_dim" in table

    both: str = client.emit_report(outcome.report, "both").decode("utf-8")
    assert both.startswith(table)
    assert json.loads(both[len(table):])["status"] == "ok"

    with pytest.raises(InvalidJobError):
        client.emit_report(outcome.report, "xml")


def test_cli_split(write_doc, tmp_path, three_lines_doc, two_lines_doc):
    output = tmp_path / "report.json"

    assert main(["split", write_doc(three_lines_doc), "-o", str(output)]) == 1
    assert _read(output)["data"]["total_graded_dim"] == 3

    assert main(["split", write_doc(two_lines_doc, "two.json"), "-o", str(output)]) == 0
    assert _read(output)["status"] == "ok"


def test_cli_favb_on_a_model(tmp_path):
    output = tmp_path / "favb.json"

    assert main(["favb", "--model", "iwasawa", "--k", "1", "-o", str(output)]) == 0
    report = _read(output)
    assert report["data"]["fiber_zero"] == {"0": 2, "1": 2}
    assert report["data"]["betti"] == 4
    assert report["data"]["base_change"]["has_torsion"]


def test_cli_models(tmp_path):
    listing = tmp_path / "models.json"
    exported = tmp_path / "torus.json"
    table = tmp_path / "specseq.json"

    assert main(["models", "list", "-o", str(listing)]) == 0
    assert [m["descriptor"] for m in _read(listing)["data"]["models"]] == ["iwasawa", "synthetic_d2", "torus:g=1"]

    assert main(["models", "export", "torus", "-o", str(exported)]) == 0
    assert _read(exported)["kind"] == "bigraded_complex"

    assert main(["specseq", str(exported), "-o", str(table)]) == 0
    assert _read(table)["data"]["betti"] == [1, 2, 1]


def test_cli_rejects_both_sources(write_doc, tmp_path, three_lines_doc):
    output = tmp_path / "report.json"
    assert main(["specseq", write_doc(three_lines_doc), "--model", "torus", "-o", str(output)]) == 2
    assert _read(output)["status"] == "input_error"


def test_cli_verify_torus(tmp_path):
    output = tmp_path / "verify.json"

    assert main(["verify-all", "--model", "torus:g=1", "-o", str(output)]) == 0
    report = _read(output)
    assert report["checks"]["torus:g=1/golden/twistor_type"]
    assert report["data"]["models"]["torus:g=1"]["favb_twists"]["1"] == [1, 0]


def test_cli_output_is_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"

    main(["specseq", "--model", "synthetic_d2", "-o", str(first)])
    main(["specseq", "--model", "synthetic_d2", "-o", str(second)])

    assert first.read_bytes() == second.read_bytes()


def test_cli_table_to_stdout(capsys):
    assert main(["models", "list", "--format", "table"]) == 0
    assert capsys.readouterr().out.startswith("models  status=ok  exit=0")


def test_client_is_reusable(client: ReesLabClient):
    assert client.run(JobSpec("models", options={"action": "list"})).exit_code == 0
    assert client.run(JobSpec("models", options={"action": "export", "name": "klein"})).exit_code == 2
    assert client.run(JobSpec("models", options={"action": "list"})).exit_code == 0


@pytest.fixture()
def shifted_map_doc():
    """The identity on a line, from a jump at 0 to a jump at 1: filtered but not strict"""

    line = {"kind": "multifiltration", "schema_version": 1, "dim": 1}
    return {
        "kind": "filtered_map",
        "schema_version": 1,
        "source": {**line, "filtrations": [[{"index": 0, "basis": [["1"]]}]]},
        "target": {**line, "filtrations": [[{"index": 1, "basis": [["1"]]}]]},
        "matrix": [["1"]],
    }


def test_strict_rejects_the_shifted_map(client, write_doc, shifted_map_doc):
    outcome: JobOutcome = client.run(JobSpec("strict", input=write_doc(shifted_map_doc), options={"r": 1}))

    assert outcome.exit_code == 1
    assert outcome.report.data["strict"] is False
    assert outcome.report.data["cokernel_torsion_free"] is False
    assert outcome.report.checks == {"strict_iff_torsion_free": True}
    assert outcome.report.error.startswith("NotStrictError")


def test_strictness_range_is_an_input_error(client, write_doc, shifted_map_doc):
    outcome: JobOutcome = client.run(JobSpec("strict", input=write_doc(shifted_map_doc), options={"r": 2}))
    assert outcome.exit_code == 2


def test_coker_of_the_shifted_map(client, write_doc, shifted_map_doc):
    outcome: JobOutcome = client.run(JobSpec("coker", input=write_doc(shifted_map_doc)))
    data = outcome.report.data

    assert outcome.exit_code == 0
    assert data["torsion_dims"] == {"-1": 1}
    assert data["torsion_support_codim"] == 1
    assert data["n_strict"] is False


def test_fiber_and_charts_of_three_lines(client, write_doc, three_lines_doc):
    path: str = write_doc(three_lines_doc)

    fiber: JobOutcome = client.run(JobSpec("fiber", input=path, options={"at": "0,0,0"}))
    assert fiber.exit_code == 0
    assert fiber.report.data["dim"] == 3
    assert fiber.report.checks == {"zero_fiber": True}

    generic: JobOutcome = client.run(JobSpec("fiber", input=path, options={"at": "1,2,i"}))
    assert generic.report.data["dim"] == 2

    assert client.run(JobSpec("fiber", input=path, options={"at": "1,1"})).exit_code == 2

    charts: JobOutcome = client.run(JobSpec("charts", input=path))
    assert charts.exit_code == 0
    assert charts.report.data["consistent"] is True


def test_rees_and_p1type_of_two_lines(client, write_doc, two_lines_doc):
    path: str = write_doc(two_lines_doc)

    rees: JobOutcome = client.run(JobSpec("rees", input=path, options={"fiber": "1,1"}))
    assert rees.exit_code == 0
    assert rees.report.data["generic_rank"] == 2
    assert rees.report.data["fiber"]["dim"] == 2

    p1: JobOutcome = client.run(JobSpec("p1type", input=path))
    assert p1.exit_code == 0
    assert p1.report.data["twists"] == [1, 1]


def test_flatten_a_connection(client, tmp_path):
    connection, _ = random_flat_connection(2)
    path = tmp_path / "connection.json"
    path.write_text(dump_document(from_connection(connection)), encoding="utf-8")

    outcome: JobOutcome = client.run(JobSpec("connection", input=str(path), options={"flatten": True}))

    assert outcome.exit_code == 0
    assert outcome.report.data["flat"] is True
    assert outcome.report.checks == {"gauge_trivializes": True}


def test_event_as_dict():
    assert CheckEvent("split_iso", True).as_dict() == {
        "type": "CheckEvent", "name": "split_iso", "passed": True, "detail": ""
    }


def _flag_doc(dim: int, top: List[List[str]]) -> List[dict]:
    full = [["1" if i == j else "0" for j in range(dim)] for i in range(dim)]
    return [{"index": 0, "basis": full}, {"index": 1, "basis": top}]


def _line_pair_doc(jump: int) -> dict:
    steps = [{"index": jump, "basis": [["1"]]}]
    return {"kind": "multifiltration", "schema_version": 1, "dim": 1, "filtrations": [steps, steps]}


def _map_doc(source: dict, target: dict, matrix: List[List[str]]) -> dict:
    return {"kind": "filtered_map", "schema_version": 1, "source": source, "target": target, "matrix": matrix}


@pytest.fixture()
def coordinate_lines_doc():
    return {
        "kind": "multifiltration",
        "schema_version": 1,
        "dim": 2,
        "filtrations": [_flag_doc(2, [["1", "0"]]), _flag_doc(2, [["0", "1"]])]
    }


def test_strict_below_n_compares_support_codim(client, write_doc, coordinate_lines_doc):
    path: str = write_doc(_map_doc(coordinate_lines_doc, _line_pair_doc(1), [["1", "1"]]))

    per_filtration: JobOutcome = client.run(JobSpec("strict", input=path, options={"r": 1}))
    assert per_filtration.exit_code == 0
    assert per_filtration.report.data["torsion_support_codim"] == 2
    assert per_filtration.report.checks == {"strict_iff_codim_above_r": True}

    joint: JobOutcome = client.run(JobSpec("strict", input=path, options={"r": 2}))
    assert joint.exit_code == 1
    assert joint.report.checks == {"strict_iff_torsion_free": True}


def test_coker_reports_where_phi_is_not_onto(client, write_doc, coordinate_lines_doc):
    path: str = write_doc(_map_doc(_line_pair_doc(0), coordinate_lines_doc, [["1"], ["1"]]))
    outcome: JobOutcome = client.run(JobSpec("coker", input=path))

    assert outcome.exit_code == 0
    assert outcome.report.data["phi_cokernel_dims"] == {"-1,-1": 1}
    assert outcome.report.data["phi_surjective"] is False
    assert outcome.report.checks["cokernel_sequence"]


def test_verify_all_counts_each_suite(client, monkeypatch):
    counts = {**{name: 1 for name in DEFAULT_SUITE_SAMPLES}, "round_trip": 3}
    monkeypatch.setattr(LabDefaults, "suite_samples", counts)
    outcome: JobOutcome = client.run(JobSpec("verify-all"))
    suites = outcome.report.data["suites"]

    assert outcome.exit_code == 0
    assert set(suites) == set(DEFAULT_SUITE_SAMPLES)
    assert suites["round_trip"]["samples"] == 3
    assert suites["cokernel_exactness"] == {"samples": 1, "failed_seeds": []}


def test_verify_all_samples_option_overrides_every_suite(client):
    outcome: JobOutcome = client.run(JobSpec("verify-all", options={"samples": 2}))

    assert outcome.exit_code == 0
    assert outcome.report.data["samples"] == 2
    assert {suite["samples"] for suite in outcome.report.data["suites"].values()} == {2}


def test_default_suite_counts():
    assert DEFAULT_SUITE_SAMPLES["splittable_n_le_2"] == 200
    assert DEFAULT_SUITE_SAMPLES["subspace_modularity"] == 200
    for name in ("bundle_conditions_n3", "cokernel_exactness", "restriction", "round_trip"):
        assert DEFAULT_SUITE_SAMPLES[name] == 100
    for name in ("base_change_random", "flat_connections", "perturbed_connections"):
        assert DEFAULT_SUITE_SAMPLES[name] == 50
