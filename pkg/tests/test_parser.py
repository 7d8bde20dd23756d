import json

import pytest

from changeflow.errors import (
    DanglingReferenceError,
    DocumentSyntaxError,
    InvariantError,
    NonMonotonicTimeError,
    PhaseOrderError,
    SchemaError,
    ScenarioError,
    UnknownActivityError,
)
from changeflow.ingest.parser import (
    format_locator,
    model_document,
    parse_model,
    parse_scenario,
    serialize_model,
    serialize_scenario,
)


def model_json(**model) -> str:
    base = {
        "phases": [{"id": "p", "name": "Analysis", "order": 0}],
        "diagrams": [{"id": "D", "name": "Classes", "kind": "ClassDiagram", "phase": "p"}],
        "elements": [{"id": "e1", "name": "Lamp", "elementKind": "Class", "diagram": "D"}],
    }
    base.update(model)
    return json.dumps({"schemaVersion": "1", "model": base})


def scenario_json(events, workflows=None) -> str:
    if workflows is None:
        workflows = [{"id": "W", "activities": [{"id": "A", "writes": ["d"]}]}]
    return json.dumps({"schemaVersion": "1", "workflows": workflows, "events": events})


def test_minimal_document():
    doc = parse_model(model_json())
    assert len(doc.model.phases) == 1
    assert doc.model.bdrs == []


def test_elevator_fixture(elevator):
    assert [p.id for p in elevator.phases] == ["requirement", "analysis", "design"]
    assert [d.id for d in elevator.diagrams] == ["D1", "D2", "D3", "D4", "D5", "D7", "D8"]
    assert any(e.name == "Select Destination" and e.element_kind.value == "UseCase" for e in elevator.elements)


def test_malformed_json():
    with pytest.raises(DocumentSyntaxError):
        parse_model('{"schemaVersion": "1", "model": ')


def test_schema_violation_has_locator():
    text = model_json(elements=[{"id": "e1", "name": "Lamp", "elementKind": "Lamp", "diagram": "D"}])
    with pytest.raises(SchemaError) as info:
        parse_model(text)
    assert info.value.violations[0].locator == "elements[0].elementKind"


def test_unknown_diagram_reference():
    text = model_json(elements=[{"id": "e1", "name": "Lamp", "elementKind": "Class", "diagram": "D9"}])
    with pytest.raises(DanglingReferenceError) as info:
        parse_model(text)
    assert info.value.violations[0].locator == "elements[0].diagram"
    assert "D9" in info.value.violations[0].message


def test_duplicate_entity_id_across_diagrams_and_elements():
    text = model_json(elements=[{"id": "D", "name": "Lamp", "elementKind": "Class", "diagram": "D"}])
    with pytest.raises(SchemaError):
        parse_model(text)


def test_classifier_name_only_on_objects():
    text = model_json(elements=[
        {"id": "e1", "name": "Lamp", "elementKind": "Class", "classifierName": "Lamp", "diagram": "D"},
    ])
    with pytest.raises(SchemaError):
        parse_model(text)


def test_phase_order_gap():
    text = model_json(phases=[{"id": "p", "name": "Analysis", "order": 1}])
    with pytest.raises(PhaseOrderError):
        parse_model(text)


def test_bdr_invariant():
    text = model_json(
        elements=[
            {"id": "e1", "name": "Lamp", "elementKind": "Class", "diagram": "D"},
            {"id": "e2", "name": "Switch", "elementKind": "Class", "diagram": "D"},
        ],
        bdrs=[{"target": "e1", "source": "e2", "kind": "Copy"}],
    )
    with pytest.raises(InvariantError):
        parse_model(text)


def test_first_category_wins_but_every_violation_is_listed():
    text = model_json(
        phases=[{"id": "p", "name": "Analysis", "order": 2}],
        elements=[{"id": "e1", "name": "Lamp", "elementKind": "Class", "diagram": "D9"}],
    )
    with pytest.raises(DanglingReferenceError) as info:
        parse_model(text)
    assert {v.locator for v in info.value.violations} == {"elements[0].diagram", "phases"}


def test_format_locator():
    assert format_locator(("model", "elements", 3, "diagram")) == "elements[3].diagram"
    assert format_locator(("schemaVersion",)) == "schemaVersion"


def test_model_round_trip(elevator_text):
    doc = parse_model(elevator_text)
    text = serialize_model(doc)
    assert parse_model(text) == doc
    assert serialize_model(parse_model(text)) == text


def test_round_trip_keeps_rule_traces(elevator_bdrs):
    text = serialize_model(model_document(elevator_bdrs))
    again = parse_model(text).model
    assert again.bdrs == elevator_bdrs.bdrs
    assert all(b.rule_trace for b in again.bdrs)


def test_minimal_scenario():
    doc = parse_scenario(scenario_json([
        {"time": 1, "workflow": "W", "activity": "A", "artifact": "d", "action": "CheckOut"},
        {"time": 2, "workflow": "W", "activity": "A", "artifact": "d", "action": "CheckIn"},
    ]))
    assert len(doc.events) == 2
    assert parse_scenario(serialize_scenario(doc)) == doc


def test_checkin_without_checkout_parses():
    doc = parse_scenario(scenario_json([
        {"time": 1, "workflow": "W", "activity": "A", "artifact": "d", "action": "CheckIn"},
    ]))
    assert len(doc.events) == 1


def test_duplicate_timestamp():
    with pytest.raises(NonMonotonicTimeError) as info:
        parse_scenario(scenario_json([
            {"time": 1, "workflow": "W", "activity": "A", "artifact": "d", "action": "CheckOut"},
            {"time": 1, "workflow": "W", "activity": "A", "artifact": "d", "action": "CheckIn"},
        ]))
    assert info.value.violations[0].locator == "events[1].time"


def test_undeclared_activity():
    with pytest.raises(UnknownActivityError):
        parse_scenario(scenario_json([
            {"time": 1, "workflow": "W", "activity": "B", "artifact": "d", "action": "CheckOut"},
        ]))


def test_read_and_write_of_same_artifact_is_rejected():
    workflows = [{"id": "W", "activities": [{"id": "A", "writes": ["d"], "reads": ["d"]}]}]
    with pytest.raises(ScenarioError):
        parse_scenario(scenario_json([], workflows))
