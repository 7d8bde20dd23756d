import json

import pytest

from changeflow.db.database import INITIAL, event_log_document, parse_event_log
from changeflow.db.models import AccessMode, EventAction, WorkflowState
from changeflow.errors import (
    DuplicateCheckoutError,
    IllegalTransitionError,
    NoOpenCheckoutError,
    TimeOrderError,
    UndeclaredArtifactError,
    UnknownActivityError,
    WorkflowNotExecutingError,
)
from changeflow.ingest.parser import parse_scenario
from changeflow.runtime.buildtime import BuildTimeKind, buildtime_check
from changeflow.runtime.lifecycle import finish_workflow, start_workflow
from changeflow.runtime.runner import replay_scenario
from changeflow.db.database import VersionStore
from tests.helpers import executing_store, make_csw

WORKFLOWS = {
    "WA": {"A": (["d"], ["r"])},
    "WB": {"B": (["d"], [])},
}


@pytest.fixture
def store():
    return executing_store(WORKFLOWS)


# ─── Store protocol ──────────────────────────────────────────────────────

def test_initial_version(store):
    assert store.latest("d").number == 1
    assert store.versions("d")[0].created_by == INITIAL


def test_concurrent_writers_get_fresh_versions(store):
    a = store.check_out("WA", "A", "d", 1.0)
    b = store.check_out("WB", "B", "d", 2.0)
    assert a.version == b.version == 1
    assert store.check_in("WA", "A", "d", 3.0).version == 2
    assert store.check_in("WB", "B", "d", 4.0).version == 3
    assert [v.created_by for v in store.versions("d")] == [INITIAL, "WA/A", "WB/B"]
    assert [e.event_id for e in store.log] == [0, 1, 2, 3]


def test_read_checkout(store):
    event = store.check_out("WA", "A", "r", 1.0)
    assert event.mode == AccessMode.READ
    with pytest.raises(NoOpenCheckoutError):
        store.check_in("WA", "A", "r", 2.0)


def test_workflow_must_be_executing():
    store = VersionStore()
    store.register(make_csw("W", {"A": (["d"], [])}))
    with pytest.raises(WorkflowNotExecutingError):
        store.check_out("W", "A", "d", 1.0)
    with pytest.raises(WorkflowNotExecutingError):
        store.check_out("nobody", "A", "d", 1.0)


def test_undeclared_artifact(store):
    with pytest.raises(UndeclaredArtifactError):
        store.check_out("WA", "A", "elsewhere", 1.0)
    with pytest.raises(UndeclaredArtifactError):
        store.check_out("WA", "A", "d", 1.0, AccessMode.READ)
    with pytest.raises(UndeclaredArtifactError):
        store.check_out("WA", "Z", "d", 1.0)


def test_one_checkout_per_artifact(store):
    store.check_out("WA", "A", "d", 1.0)
    with pytest.raises(DuplicateCheckoutError):
        store.check_out("WA", "A", "d", 2.0)
    store.check_in("WA", "A", "d", 3.0)
    with pytest.raises(DuplicateCheckoutError):
        store.check_out("WA", "A", "d", 4.0)


def test_checkin_needs_open_checkout(store):
    with pytest.raises(NoOpenCheckoutError):
        store.check_in("WA", "A", "d", 1.0)


def test_time_must_increase(store):
    store.check_out("WA", "A", "d", 5.0)
    with pytest.raises(TimeOrderError):
        store.check_out("WB", "B", "d", 5.0)
    with pytest.raises(TimeOrderError):
        store.check_in("WA", "A", "d", 4.0)
    assert len(store.log) == 1


def test_rejected_request_leaves_store_unchanged(store):
    store.check_out("WA", "A", "d", 1.0)
    before = store.snapshot()
    with pytest.raises(DuplicateCheckoutError):
        store.check_out("WA", "A", "d", 2.0)
    assert store.snapshot() == before
    assert store.open_checkouts("WA", "A") == ["d"]


def test_activity_interval(store):
    activity = store.workflows["WA"].activity("A")
    store.check_out("WA", "A", "r", 1.0)
    store.check_out("WA", "A", "d", 2.0)
    assert (activity.interval.start, activity.interval.finish) == (1.0, None)
    store.check_in("WA", "A", "d", 3.0)
    assert (activity.interval.start, activity.interval.finish) == (1.0, 3.0)


def test_event_log_round_trip(store):
    store.check_out("WA", "A", "d", 1.0)
    store.check_in("WA", "A", "d", 2.5)
    text = event_log_document(store.log)
    assert parse_event_log(text) == store.log
    assert json.loads(text)["events"][1]["action"] == "CheckIn"


# ─── Lifecycle ───────────────────────────────────────────────────────────

def test_lifecycle():
    csw = make_csw("W", {"A": (["d"], [])})
    start_workflow(csw)
    assert csw.state == WorkflowState.EXECUTING
    with pytest.raises(IllegalTransitionError):
        start_workflow(csw)
    with pytest.raises(IllegalTransitionError):
        finish_workflow(csw)
    csw.activities[0].interval.start, csw.activities[0].interval.finish = 1.0, 2.0
    finish_workflow(csw)
    assert csw.state == WorkflowState.FINISHED
    with pytest.raises(IllegalTransitionError):
        finish_workflow(csw)


def test_planning_workflow_cannot_finish():
    with pytest.raises(IllegalTransitionError):
        finish_workflow(make_csw("W", {}))


# ─── Build-time check ────────────────────────────────────────────────────

def test_buildtime_warnings():
    new = make_csw("N", {"1": (["a", "b"], [])})
    planning = make_csw("P", {"1": (["b"], [])})
    executing = make_csw("E", {"1": ([], ["a"])})
    executing.state = WorkflowState.EXECUTING
    finished = make_csw("F", {"1": (["a"], [])})
    finished.state = WorkflowState.FINISHED
    unrelated = make_csw("U", {"1": (["z"], [])})

    warnings = buildtime_check(new, [planning, unrelated, finished, executing, new])
    assert [(w.kind, w.other_workflow, w.artifacts) for w in warnings] == [
        (BuildTimeKind.PLANNING_VS_EXECUTING, "E", ["a"]),
        (BuildTimeKind.PLANNING_VS_PLANNING, "P", ["b"]),
    ]
    assert "delayed" in warnings[0].suggestion
    assert warnings[1].to_dict()["otherWorkflow"] == "P"


# ─── Scenario replay ─────────────────────────────────────────────────────

def scenario(events, workflows=None):
    workflows = workflows or [
        {"id": "WA", "activities": [{"id": "A", "writes": ["d"]}]},
        {"id": "WB", "activities": [{"id": "B", "writes": ["d"]}]},
    ]
    return parse_scenario(json.dumps({"schemaVersion": "1", "workflows": workflows, "events": events}))


def ev(time, workflow, activity, artifact, action):
    return {"time": time, "workflow": workflow, "activity": activity, "artifact": artifact, "action": action}


def test_replay_synthesizes_workflows():
    result = replay_scenario(None, [], scenario([
        ev(1, "WA", "A", "d", "CheckOut"),
        ev(2, "WB", "B", "d", "CheckOut"),
        ev(3, "WA", "A", "d", "CheckIn"),
    ]))
    assert [e.action for e in result.log] == [EventAction.CHECK_OUT, EventAction.CHECK_OUT, EventAction.CHECK_IN]
    assert result.to_dict()["workflows"] == {"WA": "Finished", "WB": "Executing"}


def test_replay_reports_event_locator():
    with pytest.raises(NoOpenCheckoutError) as info:
        replay_scenario(None, [], scenario([
            ev(1, "WA", "A", "d", "CheckOut"),
            ev(2, "WB", "B", "d", "CheckIn"),
        ]))
    assert info.value.locator == "events[1]"


def test_replay_applies_declarations_to_csws(elevator_bdrs):
    csw = make_csw("W", {"1": (["1.1"], []), "2": (["D3"], [])})
    doc = scenario(
        [ev(1, "W", "2", "1.2.1.1", "CheckOut")],
        [{"id": "W", "activities": [{"id": "2", "writes": ["1.2.1.1"], "reads": ["1.1"], "worker": "kim"}]}],
    )
    result = replay_scenario(elevator_bdrs, [csw], doc)
    second = result.store.workflows["W"].activity("2")
    assert second.write_set == {"1.2.1.1"}
    assert second.read_set == {"1.1"}
    assert second.worker == "kim"


def test_replay_rejects_declaration_of_unknown_activity():
    csw = make_csw("W", {"1": (["d"], [])})
    doc = scenario([], [{"id": "W", "activities": [{"id": "9", "writes": ["d"]}]}])
    with pytest.raises(UnknownActivityError):
        replay_scenario(None, [csw], doc)


def test_replay_warns_about_unknown_artifacts(elevator_bdrs, caplog):
    replay_scenario(elevator_bdrs, [], scenario([ev(1, "WA", "A", "d", "CheckOut")]))
    assert "Artifact d is not in the project model" in caplog.text
