"""
Scenario replay: drives the version store from a scenario document

1. Bind scenario workflows to CSWs (or synthesize them from declarations)
2. Apply the run-time declarations (reads, writes, workers)
3. Apply each event in time order, starting workflows on their first event
4. Finish workflows whose activities have all finished
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import logging

from changeflow.db.database import ChangeEvent, VersionStore
from changeflow.db.models import EventAction, ProjectModel, WorkflowState
from changeflow.errors import ProtocolError, ScenarioError, UnknownActivityError, Violation
from changeflow.ingest.documents import ScenarioDocument, WorkflowDeclaration
from changeflow.runtime.lifecycle import finish_workflow, start_workflow
from changeflow.workflow.csw import Activity, Csw

logger = logging.getLogger(__name__)


@dataclass
class ReplayResult:
    store: VersionStore
    log: List[ChangeEvent] = field(default_factory=list)

    @property
    def workflows(self) -> List[Csw]:
        return [self.store.workflows[k] for k in sorted(self.store.workflows)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "events": len(self.log),
            "workflows": {c.id: c.state.value for c in self.workflows},
        }


def _synthesize(decl: WorkflowDeclaration) -> Csw:
    activities = [
        Activity(id=a.id, write_set=set(a.writes or []), read_set=set(a.reads), worker=a.worker)
        for a in decl.activities
    ]
    writes = sorted(set().union(*(a.write_set for a in activities))) if activities else []
    return Csw(
        id=decl.id,
        change_request_id=decl.change_request_id or decl.id,
        root_artifact=writes[0] if writes else "",
        activities=activities,
    )


def _declare(csw: Csw, decl: WorkflowDeclaration, where: str) -> None:
    """Copy run-time declarations onto the CSW's activities"""
    unknown, overlapping = [], []
    for j, item in enumerate(decl.activities):
        activity = csw.activity(item.id)
        if activity is None:
            unknown.append(Violation(f"{where}.activities[{j}].id", f"{csw.id} has no activity {item.id!r}"))
            continue
        if item.writes is not None:
            activity.write_set = set(item.writes)
        activity.read_set = set(item.reads)
        if item.worker is not None:
            activity.worker = item.worker
        both = activity.read_set & activity.write_set
        if both:
            overlapping.append(Violation(f"{where}.activities[{j}].reads", f"also written: {sorted(both)}"))
    if unknown:
        raise UnknownActivityError(unknown)
    if overlapping:
        raise ScenarioError(overlapping)


class ScenarioRunner:
    """
    Replays one scenario against a set of CSWs.

    Protocol violations stop the replay and carry the ``events[i]`` locator of
    the offending record.
    """

    def __init__(self, model: Optional[ProjectModel], csws: List[Csw]):
        self.model = model
        self.csws = {c.id: c for c in csws}
        self.store = VersionStore()

    def _bind(self, scenario: ScenarioDocument) -> None:
        for csw in self.csws.values():
            self.store.register(csw)
        for i, decl in enumerate(scenario.workflows):
            csw = self.csws.get(decl.id)
            if csw is None:
                csw = _synthesize(decl)
                logger.info("Workflow %s has no CSW; synthesized %d activities", decl.id, len(csw.activities))
                self.store.register(csw)
            else:
                _declare(csw, decl, f"workflows[{i}]")

    def _warn_unknown_artifacts(self, scenario: ScenarioDocument) -> None:
        if self.model is None:
            return
        known = {d.id for d in self.model.diagrams} | {e.id for e in self.model.elements}
        for artifact in sorted({e.artifact for e in scenario.events} - known):
            logger.warning("Artifact %s is not in the project model", artifact)

    def run(self, scenario: ScenarioDocument) -> ReplayResult:
        self._bind(scenario)
        self._warn_unknown_artifacts(scenario)

        for i, record in enumerate(scenario.events):
            csw = self.store.workflows.get(record.workflow)
            if csw is not None and csw.state == WorkflowState.PLANNING:
                start_workflow(csw)
            try:
                if record.action == EventAction.CHECK_OUT:
                    self.store.check_out(record.workflow, record.activity, record.artifact, record.time, record.mode)
                else:
                    self.store.check_in(record.workflow, record.activity, record.artifact, record.time)
            except ProtocolError as e:
                raise e.at(f"events[{i}]") from None

        for csw in self.store.workflows.values():
            if csw.state == WorkflowState.EXECUTING and all(a.interval.finish is not None for a in csw.activities):
                finish_workflow(csw)

        logger.info("Replayed %d events over %d workflows", len(self.store.log), len(self.store.workflows))
        return ReplayResult(self.store, list(self.store.log))


def replay_scenario(model: Optional[ProjectModel], csws: List[Csw], scenario: ScenarioDocument) -> ReplayResult:
    return ScenarioRunner(model, csws).run(scenario)
