"""Builders shared by the test modules"""
from typing import Dict, Iterable, List, Sequence, Tuple

from changeflow.db.database import ChangeEvent, VersionStore
from changeflow.db.models import (
    Diagram,
    DiagramKind,
    ElementKind,
    IntraDependency,
    IntraKind,
    ModelElement,
    Phase,
    ProjectModel,
)
from changeflow.impact.graph import Dependencies
from changeflow.runtime.lifecycle import start_workflow
from changeflow.workflow.csw import Activity, Csw

# {workflow id: {activity id: (writes, reads)}}
Workflows = Dict[str, Dict[str, Tuple[Sequence[str], Sequence[str]]]]
# (time, workflow, activity, "co" | "ci", artifact)
Step = Tuple[float, str, str, str, str]


def artifact_model(artifacts: Iterable[str], depends: Iterable[Tuple[str, str]] = ()) -> ProjectModel:
    """One class diagram holding every artifact; ``depends`` lists (dependent, depended-on)"""
    return ProjectModel(
        phases=[Phase(id="p", name="Design", order=0)],
        diagrams=[Diagram(id="D", name="Design Classes", kind=DiagramKind.CLASS, phase="p")],
        elements=[
            ModelElement(id=a, name=f"Artifact {a}", element_kind=ElementKind.CLASS, diagram="D")
            for a in artifacts
        ],
        intra_deps=[
            IntraDependency(target=target, source=source, kind=IntraKind.ASSOCIATION)
            for source, target in depends
        ],
    )


def deps_for(artifacts: Iterable[str], depends: Iterable[Tuple[str, str]] = ()) -> Dependencies:
    return Dependencies(artifact_model(artifacts, depends))


def make_csw(workflow_id: str, activities: Dict[str, Tuple[Sequence[str], Sequence[str]]]) -> Csw:
    return Csw(
        id=workflow_id,
        change_request_id=workflow_id,
        root_artifact="",
        activities=[
            Activity(id=a, write_set=set(writes), read_set=set(reads))
            for a, (writes, reads) in activities.items()
        ],
    )


def executing_store(workflows: Workflows) -> VersionStore:
    store = VersionStore()
    for workflow_id, activities in workflows.items():
        csw = make_csw(workflow_id, activities)
        store.register(csw)
        start_workflow(csw)
    return store


def replay_steps(workflows: Workflows, steps: List[Step]) -> List[ChangeEvent]:
    """Drive a fresh store; event ids follow the step order"""
    store = executing_store(workflows)
    for time, workflow_id, activity_id, action, artifact in steps:
        if action == "co":
            store.check_out(workflow_id, activity_id, artifact, float(time))
        else:
            store.check_in(workflow_id, activity_id, artifact, float(time))
    return list(store.log)


def evidence_ids(warning) -> Tuple[int, ...]:
    return tuple(e.event_id for e in warning.evidence)
