import pytest

from changeflow.db.models import Bdr, BdrKind, Phase, PhaseRelation
from changeflow.db.queries import ModelIndex, bdr_violations, normalize_name, phase_relation


@pytest.mark.parametrize("raw, expected", [
    ("FloorLampInterfaces", "floorlampinterface"),
    (":ElevatorControl", "elevatorcontrol"),
    ("", ""),
    ("Select  Destination", "selectdestination"),
    ("floor_button", "floorbutton"),
    ("Glass", "glass"),
    ("Bus", "bus"),
    (" : Lamp", "lamp"),
])
def test_normalize_name(raw, expected):
    assert normalize_name(raw) == expected


@pytest.mark.parametrize("raw", ["FloorLampInterfaces", ":Classes", "glass", "Process", "ab s", "::x_y"])
def test_normalize_name_is_idempotent(raw):
    once = normalize_name(raw)
    assert normalize_name(once) == once


@pytest.mark.parametrize("a, b, expected", [
    (1, 1, PhaseRelation.SAME),
    (1, 2, PhaseRelation.ADJOINING),
    (2, 1, PhaseRelation.ADJOINING),
    (0, 3, PhaseRelation.SEPARATE),
])
def test_phase_relation(a, b, expected):
    assert phase_relation(Phase(id="a", name="A", order=a), Phase(id="b", name="B", order=b)) == expected


def test_model_index_lookups(elevator):
    index = ModelIndex(elevator)
    assert "1.1" in index and "D3" in index and "nope" not in index
    assert index.diagram_of("1.2.1.1") == "D3"
    assert index.diagram_of("D3") == "D3"
    assert index.phase_of("2.1.1").id == "design"
    assert index.kind_of("1.3.1") == "Class"
    assert [e.id for e in index.elements_in("D4")] == ["1.3.1", "1.3.2"]
    assert {d.source for d in index.intra_deps_of("1.3.1")} == {"1.3.2"}


def test_containment_is_diagram_to_own_element(elevator_bdrs):
    index = ModelIndex(elevator_bdrs)
    contained = {(b.target, b.source) for b in elevator_bdrs.bdrs if index.is_containment(b)}
    assert ("D3", "1.2.1.1") in contained
    assert ("1.1", "D3") not in contained
    assert len(contained) == 12


@pytest.mark.parametrize("target, source, kind, ok", [
    ("D4", "1.3.1", BdrKind.EXIST_TOGETHER, True),
    ("1.3.1", "2.1.1", BdrKind.EXIST_TOGETHER, False),
    ("1.3.1", "1.3.2", BdrKind.EXIST_TOGETHER, True),
    ("1.3.1", "D4", BdrKind.EXIST_TOGETHER, False),
    ("D5", "1.3.1", BdrKind.EXIST_TOGETHER, False),
    ("D4", "D5", BdrKind.EXIST_TOGETHER, False),
    ("1.3.1", "1.2.1.1", BdrKind.INFORMATION_SHARING, True),
    ("1.3.1", "2.2.1", BdrKind.INFORMATION_SHARING, False),
    ("1.3.1", "2.2.1", BdrKind.CONCEPT, True),
    ("0.2", "2.2.1", BdrKind.CONCEPT, False),
    ("1.3.1", "1.3.2", BdrKind.COPY, False),
    ("1.3.1", "1.3.1", BdrKind.COPY, False),
])
def test_bdr_violations(elevator, target, source, kind, ok):
    problems = bdr_violations(ModelIndex(elevator), Bdr(target=target, source=source, kind=kind))
    assert (problems == []) is ok
