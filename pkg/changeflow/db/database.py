"""
In-memory versioned artifact store - optimistic check-out / check-in

The store never blocks concurrent work: two activities may check out the same
version and both check in, producing two new versions. Spotting that is the
detectors' job.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional
import json
import logging

from changeflow.config import settings
from changeflow.db.models import AccessMode, EventAction, WorkflowState
from changeflow.errors import (
    DocumentSyntaxError,
    DuplicateCheckoutError,
    NoOpenCheckoutError,
    SchemaError,
    TimeOrderError,
    UndeclaredArtifactError,
    Violation,
    WorkflowNotExecutingError,
)

if TYPE_CHECKING:
    from changeflow.workflow.csw import Activity, Csw

logger = logging.getLogger(__name__)

INITIAL = "Initial"


@dataclass(frozen=True, order=True)
class ActivityRef:
    workflow: str
    activity: str

    def __str__(self) -> str:
        return f"{self.workflow}/{self.activity}"


@dataclass(frozen=True)
class Version:
    artifact: str
    number: int
    created_by: str  # "<workflow>/<activity>" or Initial
    created_at: float


@dataclass(frozen=True)
class ChangeEvent:
    event_id: int
    time: float
    workflow: str
    activity: str
    artifact: str
    action: EventAction
    version: int
    mode: AccessMode

    @property
    def ref(self) -> ActivityRef:
        return ActivityRef(self.workflow, self.activity)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eventId": self.event_id,
            "time": self.time,
            "workflow": self.workflow,
            "activity": self.activity,
            "artifact": self.artifact,
            "action": self.action.value,
            "version": self.version,
            "mode": self.mode.value,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "ChangeEvent":
        return cls(
            event_id=data["eventId"],
            time=data["time"],
            workflow=data["workflow"],
            activity=data["activity"],
            artifact=data["artifact"],
            action=EventAction(data["action"]),
            version=data["version"],
            mode=AccessMode(data["mode"]),
        )


@dataclass
class ActivityRecord:
    """Run-time bookkeeping for one activity"""
    ref: ActivityRef
    activity: Activity
    open_writes: Dict[str, ChangeEvent] = field(default_factory=dict)
    checked_out: set = field(default_factory=set)
    has_checked_in: bool = False


class VersionStore:
    """
    Version histories, open checkouts and the append-only event log.

    Usage:
        store = VersionStore()
        store.register(csw)
        start_workflow(csw)
        store.check_out("W", "1", "d", 1.0)
        store.check_in("W", "1", "d", 2.0)
    """

    def __init__(self):
        self.workflows: Dict[str, Csw] = {}
        self.history: Dict[str, List[Version]] = {}
        self.log: List[ChangeEvent] = []
        self._records: Dict[ActivityRef, ActivityRecord] = {}

    def register(self, csw: Csw) -> None:
        self.workflows[csw.id] = csw
        for activity in csw.activities:
            ref = ActivityRef(csw.id, activity.id)
            self._records[ref] = ActivityRecord(ref, activity)

    # ─── Queries ─────────────────────────────────────────────────────────

    def versions(self, artifact: str) -> List[Version]:
        """History of an artifact; version 1 always exists"""
        return self.history.get(artifact) or [Version(artifact, 1, INITIAL, 0.0)]

    def latest(self, artifact: str) -> Version:
        return self.versions(artifact)[-1]

    @property
    def last_time(self) -> Optional[float]:
        return self.log[-1].time if self.log else None

    def open_checkouts(self, workflow_id: str, activity_id: str) -> List[str]:
        record = self._records.get(ActivityRef(workflow_id, activity_id))
        return sorted(record.open_writes) if record else []

    def snapshot(self) -> tuple:
        """Immutable view of the event log"""
        return tuple(self.log)

    # ─── Protocol ────────────────────────────────────────────────────────

    def _record(self, workflow_id: str, activity_id: str) -> ActivityRecord:
        csw = self.workflows.get(workflow_id)
        if csw is None or csw.state != WorkflowState.EXECUTING:
            state = csw.state.value if csw else "unknown"
            raise WorkflowNotExecutingError(f"workflow {workflow_id!r} is {state}, not Executing")
        record = self._records.get(ActivityRef(workflow_id, activity_id))
        if record is None:
            raise UndeclaredArtifactError(f"activity {activity_id!r} is not part of workflow {workflow_id!r}")
        return record

    def _check_time(self, time: float) -> None:
        if self.last_time is not None and time <= self.last_time:
            raise TimeOrderError(f"time {time:g} is not after the last logged time {self.last_time:g}")

    def _append(self, record: ActivityRecord, artifact: str, time: float,
                action: EventAction, version: int, mode: AccessMode) -> ChangeEvent:
        event = ChangeEvent(
            event_id=len(self.log),
            time=time,
            workflow=record.ref.workflow,
            activity=record.ref.activity,
            artifact=artifact,
            action=action,
            version=version,
            mode=mode,
        )
        self.log.append(event)
        return event

    @staticmethod
    def _touch(record: ActivityRecord, time: float) -> None:
        interval = record.activity.interval
        interval.start = time if interval.start is None else min(interval.start, time)
        # finished once no write is open; a later checkout re-opens it
        interval.finish = None if record.open_writes else time

    def check_out(self, workflow_id: str, activity_id: str, artifact: str, time: float,
                  mode: Optional[AccessMode] = None) -> ChangeEvent:
        """Check out the latest version; the mode comes from the activity's declaration"""
        record = self._record(workflow_id, activity_id)
        self._check_time(time)

        activity = record.activity
        if artifact in activity.write_set:
            declared = AccessMode.WRITE
        elif artifact in activity.read_set:
            declared = AccessMode.READ
        else:
            raise UndeclaredArtifactError(f"{record.ref} does not declare {artifact!r}")
        if mode is not None and mode != declared:
            raise UndeclaredArtifactError(f"{record.ref} declares {artifact!r} for {declared.value}, not {mode.value}")
        if artifact in record.checked_out:
            raise DuplicateCheckoutError(f"{record.ref} already checked out {artifact!r}")

        if record.has_checked_in:
            logger.info("%s checks out %s after one of its check-ins", record.ref, artifact)
        record.checked_out.add(artifact)
        event = self._append(record, artifact, time, EventAction.CHECK_OUT, self.latest(artifact).number, declared)
        if declared == AccessMode.WRITE:
            record.open_writes[artifact] = event
        self._touch(record, time)
        return event

    def check_in(self, workflow_id: str, activity_id: str, artifact: str, time: float) -> ChangeEvent:
        """Check in an open write checkout, creating version latest+1"""
        record = self._record(workflow_id, activity_id)
        if artifact not in record.open_writes:
            raise NoOpenCheckoutError(f"{record.ref} has no open write checkout of {artifact!r}")
        self._check_time(time)

        number = self.latest(artifact).number + 1
        self.history[artifact] = self.versions(artifact) + [Version(artifact, number, str(record.ref), time)]
        del record.open_writes[artifact]
        record.has_checked_in = True
        event = self._append(record, artifact, time, EventAction.CHECK_IN, number, AccessMode.WRITE)
        logger.debug("%s checked in %s as version %d at %g", record.ref, artifact, number, time)
        self._touch(record, time)
        return event


# ===== Event-log document =====

def event_log_document(events: List[ChangeEvent]) -> str:
    doc = {
        "schemaVersion": settings.SCHEMA_VERSION,
        "events": [e.to_dict() for e in events],
    }
    return json.dumps(doc, indent=settings.JSON_INDENT) + "\n"


def parse_event_log(text) -> List[ChangeEvent]:
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise DocumentSyntaxError([Violation("", str(e))]) from None
    if not isinstance(data, dict) or data.get("schemaVersion") != settings.SCHEMA_VERSION:
        raise SchemaError([Violation("schemaVersion", f"expected {settings.SCHEMA_VERSION!r}")])
    events = []
    for i, item in enumerate(data.get("events", [])):
        try:
            events.append(ChangeEvent.from_dict(item))
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError([Violation(f"events[{i}]", f"invalid event: {e!r}")]) from None
    return events
