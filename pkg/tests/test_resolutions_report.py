import io
import json

from rich.console import Console

from changeflow.awareness.detectors import detect_all
from changeflow.awareness.report import WarningReport, render_report, report_document
from changeflow.awareness.resolutions import Strategy, suggest_resolutions
from changeflow.runtime.buildtime import BuildTimeKind, BuildTimeWarning
from tests.helpers import deps_for, replay_steps


def ww_warning():
    log = replay_steps({"WA": {"A": (["d"], [])}, "WB": {"B": (["d"], [])}}, [
        (1, "WA", "A", "co", "d"),
        (2, "WB", "B", "co", "d"),
        (3, "WA", "A", "ci", "d"),
        (4, "WB", "B", "ci", "d"),
    ])
    return detect_all(log, deps_for(["d"]))[0]


def render(report) -> str:
    buffer = io.StringIO()
    render_report(report, Console(file=buffer, width=160, markup=False, highlight=False))
    return buffer.getvalue()


def test_resolutions_for_inconsistency():
    resolutions = suggest_resolutions(ww_warning())
    assert [r.strategy for r in resolutions] == [
        Strategy.FINE_GRAIN, Strategy.COMBINED_CHANGE_REQUEST, Strategy.MERGE,
    ]
    assert resolutions[0].description == "Split the work so that WA and WB modify different parts of d"


def test_executing_conflict_suggests_delay_first():
    warning = BuildTimeWarning(BuildTimeKind.PLANNING_VS_EXECUTING, "N", "E", ["a"])
    resolutions = suggest_resolutions(warning)
    assert resolutions[0].strategy == Strategy.DELAY
    assert resolutions[0].description == warning.suggestion
    assert len(resolutions) == 4


def test_planning_conflict_has_no_delay():
    warning = BuildTimeWarning(BuildTimeKind.PLANNING_VS_PLANNING, "N", "P", ["a", "b"])
    strategies = [r.strategy for r in suggest_resolutions(warning)]
    assert Strategy.DELAY not in strategies
    assert suggest_resolutions(warning)[1].description == (
        "Replace N and P with one combined change request covering a, b"
    )


def test_report_document():
    warning = ww_warning()
    build = BuildTimeWarning(BuildTimeKind.PLANNING_VS_PLANNING, "N", "P", ["a"])
    report = WarningReport(warnings=[warning, warning], build_time=[build])
    assert len(report) == 2

    doc = json.loads(report_document(report))
    assert doc["schemaVersion"] == "1"
    [entry] = doc["warnings"]
    assert entry["kind"] == "WwDirectConflict"
    assert entry["confirmed"] is True
    assert entry["activities"] == [{"workflow": "WA", "activity": "A"}, {"workflow": "WB", "activity": "B"}]
    assert entry["artifacts"] == [{"artifact": "d", "versions": [1, 2, 3]}]
    assert (entry["detectionTime"], entry["reportedAt"]) == (2.0, 4.0)
    assert entry["evidence"] == [0, 1, 2, 3]
    assert [r["strategy"] for r in entry["resolutions"]] == ["FineGrain", "CombinedChangeRequest", "Merge"]
    assert doc["buildTime"][0]["kind"] == "PlanningVsPlanning"


def test_empty_report():
    report = WarningReport()
    assert json.loads(report_document(report)) == {"schemaVersion": "1", "warnings": [], "buildTime": []}
    assert "No inconsistencies detected." in render(report)


def test_render_tables():
    report = WarningReport(
        warnings=[ww_warning()],
        build_time=[BuildTimeWarning(BuildTimeKind.PLANNING_VS_EXECUTING, "N", "E", ["a[1]"])],
    )
    text = render(report)
    assert "Inconsistency Warnings" in text
    assert "WwDirectConflict" in text
    assert "WA/A, WB/B" in text
    assert "Build-time Warnings" in text
    assert "a[1]" in text
