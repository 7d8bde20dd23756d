"""
Change Support Workflow records and the CSW document

A CSW is the tuple (activities, flow arcs, artifacts, workers, per-activity
read/write sets, worker and time interval). Sets are stored as Python sets and
written sorted.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple
import json

from changeflow.config import settings
from changeflow.db.models import WorkflowState
from changeflow.errors import DocumentSyntaxError, SchemaError, Violation


@dataclass
class TimeInterval:
    """None stands for an undecided start or finish"""
    start: Optional[float] = None
    finish: Optional[float] = None

    @property
    def decided(self) -> bool:
        return self.start is not None and self.finish is not None

    def to_dict(self) -> Dict[str, Any]:
        return {"start": self.start, "finish": self.finish}

    @classmethod
    def from_dict(cls, data: Dict) -> "TimeInterval":
        return cls(start=data.get("start"), finish=data.get("finish"))


@dataclass
class Activity:
    id: str
    write_set: Set[str] = field(default_factory=set)
    read_set: Set[str] = field(default_factory=set)
    worker: Optional[str] = None
    interval: TimeInterval = field(default_factory=TimeInterval)
    composite: bool = False
    child_workflows: List[str] = field(default_factory=list)
    branches_decided: bool = False

    @property
    def artifacts(self) -> Set[str]:
        return self.write_set | self.read_set

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "writeSet": sorted(self.write_set),
            "readSet": sorted(self.read_set),
            "worker": self.worker,
            "interval": self.interval.to_dict(),
            "composite": self.composite,
            "childWorkflows": list(self.child_workflows),
            "branchesDecided": self.branches_decided,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "Activity":
        return cls(
            id=data["id"],
            write_set=set(data.get("writeSet", [])),
            read_set=set(data.get("readSet", [])),
            worker=data.get("worker"),
            interval=TimeInterval.from_dict(data.get("interval", {})),
            composite=data.get("composite", False),
            child_workflows=list(data.get("childWorkflows", [])),
            branches_decided=data.get("branchesDecided", False),
        )


@dataclass
class Csw:
    id: str
    change_request_id: str
    root_artifact: str
    activities: List[Activity] = field(default_factory=list)
    arcs: Set[Tuple[str, str]] = field(default_factory=set)
    grade: int = 1
    state: WorkflowState = WorkflowState.PLANNING

    @property
    def artifacts(self) -> Set[str]:
        """D: every artifact read or written by some activity"""
        found: Set[str] = set()
        for activity in self.activities:
            found |= activity.artifacts
        return found

    @property
    def written(self) -> Set[str]:
        found: Set[str] = set()
        for activity in self.activities:
            found |= activity.write_set
        return found

    @property
    def workers(self) -> Set[str]:
        return {a.worker for a in self.activities if a.worker}

    def activity(self, activity_id: str) -> Optional[Activity]:
        for activity in self.activities:
            if activity.id == activity_id:
                return activity
        return None

    def writer_of(self, artifact: str) -> Optional[Activity]:
        for activity in self.activities:
            if artifact in activity.write_set:
                return activity
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "changeRequestId": self.change_request_id,
            "rootArtifact": self.root_artifact,
            "grade": self.grade,
            "state": self.state.value,
            "activities": [a.to_dict() for a in self.activities],
            "arcs": [{"from": a, "to": b} for a, b in sorted(self.arcs)],
            "artifacts": sorted(self.artifacts),
            "workers": sorted(self.workers),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "Csw":
        return cls(
            id=data["id"],
            change_request_id=data.get("changeRequestId", data["id"]),
            root_artifact=data["rootArtifact"],
            activities=[Activity.from_dict(a) for a in data.get("activities", [])],
            arcs={(arc["from"], arc["to"]) for arc in data.get("arcs", [])},
            grade=data.get("grade", 1),
            state=WorkflowState(data.get("state", WorkflowState.PLANNING.value)),
        )


@dataclass(frozen=True)
class PrecedencePair:
    """The higher-grade activity runs after the lower-grade one"""
    lower_workflow: str
    lower_activity: str
    higher_workflow: str
    higher_activity: str
    via: Tuple[str, str]  # (lower artifact, higher artifact)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lower": {"workflow": self.lower_workflow, "activity": self.lower_activity},
            "higher": {"workflow": self.higher_workflow, "activity": self.higher_activity},
            "via": list(self.via),
        }


# ===== CSW document =====

def csw_document(csws: List[Csw], pipeline: Optional[List[PrecedencePair]] = None) -> str:
    doc: Dict[str, Any] = {
        "schemaVersion": settings.SCHEMA_VERSION,
        "workflows": [c.to_dict() for c in csws],
    }
    if pipeline is not None:
        doc["pipeline"] = [p.to_dict() for p in pipeline]
    return json.dumps(doc, indent=settings.JSON_INDENT) + "\n"


def parse_csw_document(text) -> List[Csw]:
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise DocumentSyntaxError([Violation("", str(e))]) from None
    if not isinstance(data, dict) or data.get("schemaVersion") != settings.SCHEMA_VERSION:
        raise SchemaError([Violation("schemaVersion", f"expected {settings.SCHEMA_VERSION!r}")])

    csws = []
    for i, item in enumerate(data.get("workflows", [])):
        try:
            csws.append(Csw.from_dict(item))
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError([Violation(f"workflows[{i}]", f"invalid workflow: {e!r}")]) from None
    return csws
