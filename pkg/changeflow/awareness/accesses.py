"""
Access table: one record per (activity, artifact) checkout, with its check-in

Times follow the CO/CI notation: ``co`` is the checkout event, ``ci`` the
check-in event (None while open, or always for reads).
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from changeflow.db.database import ActivityRef, ChangeEvent
from changeflow.db.models import AccessMode, EventAction

INF = float("inf")


@dataclass
class Access:
    ref: ActivityRef
    artifact: str
    mode: AccessMode
    co: ChangeEvent
    ci: Optional[ChangeEvent] = None

    @property
    def workflow(self) -> str:
        return self.ref.workflow

    @property
    def co_time(self) -> float:
        return self.co.time

    @property
    def co_version(self) -> int:
        return self.co.version

    @property
    def ci_time(self) -> float:
        """Check-in time, infinite while the checkout is open"""
        return self.ci.time if self.ci else INF

    @property
    def ci_version(self) -> Optional[int]:
        return self.ci.version if self.ci else None

    @property
    def checked_in(self) -> bool:
        return self.ci is not None

    @property
    def is_write(self) -> bool:
        return self.mode == AccessMode.WRITE


def overlaps(a_start: float, a_end: float, b_start: float, b_end: float) -> bool:
    """Closed intervals; touching endpoints overlap"""
    return a_start <= b_end and b_start <= a_end


class AccessTable:
    """Checkouts of a log indexed by activity and by artifact"""

    def __init__(self, events: Iterable[ChangeEvent]):
        self.events: List[ChangeEvent] = list(events)
        self._by_key: Dict[Tuple[ActivityRef, str], Access] = {}
        for event in self.events:
            key = (event.ref, event.artifact)
            if event.action == EventAction.CHECK_OUT:
                self._by_key[key] = Access(event.ref, event.artifact, event.mode, event)
            elif key in self._by_key:
                self._by_key[key].ci = event

        self._by_activity: Dict[ActivityRef, List[Access]] = defaultdict(list)
        for access in self._by_key.values():
            self._by_activity[access.ref].append(access)

    @property
    def now(self) -> float:
        return self.events[-1].time if self.events else 0.0

    def all(self) -> List[Access]:
        return list(self._by_key.values())

    def writes(self) -> List[Access]:
        return [a for a in self._by_key.values() if a.is_write]

    def reads(self) -> List[Access]:
        return [a for a in self._by_key.values() if not a.is_write]

    def get(self, ref: ActivityRef, artifact: str) -> Optional[Access]:
        return self._by_key.get((ref, artifact))

    def of(self, ref: ActivityRef) -> List[Access]:
        return self._by_activity.get(ref, [])

    def writes_of(self, ref: ActivityRef) -> List[Access]:
        return [a for a in self.of(ref) if a.is_write]

    def reads_of(self, ref: ActivityRef) -> List[Access]:
        return [a for a in self.of(ref) if not a.is_write]

    def activities(self) -> List[ActivityRef]:
        return sorted(self._by_activity)
