import json

import pytest

from changeflow.db.database import parse_event_log
from changeflow.ingest.parser import model_document, parse_model, serialize_model
from changeflow.main import main
from changeflow.workflow.csw import parse_csw_document


@pytest.fixture
def elevator_path(fixtures_dir):
    return str(fixtures_dir / "elevator.json")


@pytest.fixture
def elevator_bdrs_path(tmp_path, elevator_bdrs):
    path = tmp_path / "elevator_bdrs.json"
    path.write_text(serialize_model(model_document(elevator_bdrs)))
    return str(path)


def scenario_path(fixtures_dir, name):
    return str(fixtures_dir / "scenarios" / f"{name}.json")


# ─── gen-bdr ─────────────────────────────────────────────────────────────

def test_gen_bdr(elevator_path, capsys):
    assert main(["gen-bdr", elevator_path]) == 0
    doc = parse_model(capsys.readouterr().out)
    assert len(doc.model.bdrs) == 26


def test_gen_bdr_is_idempotent(elevator_path, tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert main(["gen-bdr", elevator_path, "-o", str(first)]) == 0
    assert main(["gen-bdr", str(first), "-o", str(second), "--verify"]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_gen_bdr_empty_model(fixtures_dir, capsys):
    assert main(["gen-bdr", str(fixtures_dir / "empty.json")]) == 0
    out = capsys.readouterr().out
    assert parse_model(out) == parse_model((fixtures_dir / "empty.json").read_bytes())
    assert out == (fixtures_dir / "empty.json").read_text()


def test_gen_bdr_human(elevator_path, capsys):
    assert main(["gen-bdr", elevator_path, "--format", "human"]) == 0
    assert "Generated BDRs (26)" in capsys.readouterr().out


def test_malformed_model(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"schemaVersion": "1", "model": {"phases": [{"id": "p"}]}}')
    assert main(["gen-bdr", str(path)]) == 1
    err = capsys.readouterr().err
    assert "SchemaError" in err
    assert "phases[0].name" in err


def test_missing_file(tmp_path, capsys):
    assert main(["gen-bdr", str(tmp_path / "nope.json")]) == 2
    assert "I/O error" in capsys.readouterr().err


def test_matrix_override(elevator_path, tmp_path, capsys):
    matrix = tmp_path / "matrix.json"
    matrix.write_text(json.dumps({
        "schemaVersion": "1",
        "rules": [{"target": "RelationshipDiagram", "source": "ClassifierElement", "kinds": []}],
    }))
    assert main(["gen-bdr", elevator_path, "--matrix", str(matrix)]) == 0
    bdrs = parse_model(capsys.readouterr().out).model.bdrs
    assert len(bdrs) < 26
    assert ("D4", "1.3.1") not in {(b.target, b.source) for b in bdrs}


# ─── impact ──────────────────────────────────────────────────────────────

@pytest.mark.acceptance
def test_impact_dot(elevator_path, fixtures_dir, capsys):
    assert main(["impact", elevator_path, "1.1", "--auto-bdr", "--dot"]) == 0
    assert capsys.readouterr().out == (fixtures_dir / "golden" / "elevator_impact.dot").read_text()


def test_impact_json(elevator_bdrs_path, capsys):
    assert main(["impact", elevator_bdrs_path, "1.1", "--no-containment"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["vertices"] == ["1.1", "D3"]


def test_impact_unknown_root(elevator_bdrs_path, capsys):
    assert main(["impact", elevator_bdrs_path, "9.9"]) == 1
    assert "UnknownRootError" in capsys.readouterr().err


# ─── gen-csw / gen-sub ───────────────────────────────────────────────────

def test_gen_csw_with_branches(elevator_bdrs_path, capsys):
    assert main(["gen-csw", elevator_bdrs_path, "1.1", "--expand", "2=1.2.1.1"]) == 0
    csws = parse_csw_document(capsys.readouterr().out)
    assert [c.id for c in csws] == ["W", "W.2.1"]
    assert csws[0].activity("2").child_workflows == ["W.2.1"]


def test_gen_csw_rejects_bad_branch(elevator_bdrs_path, capsys):
    assert main(["gen-csw", elevator_bdrs_path, "1.1", "--expand", "1=1.2.1.1"]) == 1
    assert "NotCompositeError" in capsys.readouterr().err


def test_gen_csw_build_time_warning(elevator_bdrs_path, tmp_path, capsys):
    first = tmp_path / "w.json"
    assert main(["gen-csw", elevator_bdrs_path, "1.1", "-o", str(first)]) == 0
    args = ["gen-csw", elevator_bdrs_path, "1.1", "--id", "W2", "--against", str(first)]
    assert main(args) == 0
    assert "PlanningVsPlanning" in capsys.readouterr().err
    assert main(args + ["--strict"]) == 4


def test_gen_sub(elevator_bdrs_path, tmp_path, capsys):
    lower = tmp_path / "x.json"
    assert main(["gen-csw", elevator_bdrs_path, "1.3.2", "--id", "X", "--change-request", "CR2",
                 "-o", str(lower)]) == 0
    assert main(["gen-sub", elevator_bdrs_path, str(lower)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [w["id"] for w in doc["workflows"]] == ["CR2.G2.1", "CR2.G2.2"]
    assert len(doc["pipeline"]) == 3
    assert doc["pipeline"][0] == {
        "lower": {"workflow": "X", "activity": "2"},
        "higher": {"workflow": "CR2.G2.1", "activity": "1"},
        "via": ["1.2.3.1", "1.2.1.1"],
    }


# ─── simulate ────────────────────────────────────────────────────────────

@pytest.mark.acceptance
def test_simulate_concurrent_writes(elevator_bdrs_path, fixtures_dir, tmp_path, capsys):
    log = tmp_path / "log.json"
    scenario = scenario_path(fixtures_dir, "concurrent_writes")
    assert main(["simulate", elevator_bdrs_path, scenario, "--no-possibilities", "--log", str(log)]) == 0
    doc = json.loads(capsys.readouterr().out)
    [warning] = doc["warnings"]
    assert warning["kind"] == "WwDirectConflict"
    assert warning["evidence"] == [0, 1, 2, 3]
    assert len(parse_event_log(log.read_text())) == 4


def test_simulate_reports_possibilities(elevator_bdrs_path, fixtures_dir, capsys):
    scenario = scenario_path(fixtures_dir, "concurrent_writes")
    assert main(["simulate", elevator_bdrs_path, scenario, "--possibilities", "--offline"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [w["confirmed"] for w in doc["warnings"]] == [False, True]


def test_simulate_strict(elevator_bdrs_path, fixtures_dir):
    scenario = scenario_path(fixtures_dir, "concurrent_writes")
    assert main(["simulate", elevator_bdrs_path, scenario, "--strict"]) == 4


def test_simulate_conflict_free(elevator_bdrs_path, fixtures_dir, capsys):
    scenario = scenario_path(fixtures_dir, "sequential_writes")
    assert main(["simulate", elevator_bdrs_path, scenario, "--strict"]) == 0
    assert json.loads(capsys.readouterr().out)["warnings"] == []


def test_simulate_human(elevator_bdrs_path, fixtures_dir, capsys):
    scenario = scenario_path(fixtures_dir, "sequential_writes")
    assert main(["simulate", elevator_bdrs_path, scenario, "--format", "human"]) == 0
    assert "No inconsistencies detected." in capsys.readouterr().out


def test_simulate_protocol_error(elevator_bdrs_path, fixtures_dir, capsys):
    scenario = scenario_path(fixtures_dir, "checkin_without_checkout")
    assert main(["simulate", elevator_bdrs_path, scenario]) == 3
    assert "events[0]" in capsys.readouterr().err


# ─── repeated runs ───────────────────────────────────────────────────────

@pytest.mark.acceptance
@pytest.mark.parametrize("args", [
    ["impact", "{model}", "1.1"],
    ["impact", "{model}", "1.1", "--dot"],
    ["gen-csw", "{model}", "1.1", "--expand", "2=1.2.1.1,1.2.3.1"],
    ["simulate", "{model}", "{concurrent}", "--offline"],
])
def test_repeated_runs_are_byte_identical(args, elevator_bdrs_path, fixtures_dir, tmp_path):
    concurrent = scenario_path(fixtures_dir, "concurrent_writes")
    argv = [a.format(model=elevator_bdrs_path, concurrent=concurrent) for a in args]
    outputs = []
    for run in ("first", "second"):
        out = tmp_path / f"{run}.out"
        assert main(argv + ["-o", str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0]
    assert outputs[0] == outputs[1]


def test_simulate_event_log_is_byte_identical(elevator_bdrs_path, fixtures_dir, tmp_path):
    scenario = scenario_path(fixtures_dir, "concurrent_writes")
    logs = [tmp_path / "first.log.json", tmp_path / "second.log.json"]
    for log in logs:
        assert main(["simulate", elevator_bdrs_path, scenario, "--log", str(log), "-o", str(tmp_path / "r.json")]) == 0
    assert logs[0].read_bytes() == logs[1].read_bytes()


# ─── argument handling ───────────────────────────────────────────────────

def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "changeflow" in capsys.readouterr().out


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["gen-csw"])
    assert info.value.code == 2
