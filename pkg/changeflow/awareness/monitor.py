"""
Online inconsistency monitor

Events are fed one at a time in strictly increasing time order. After each
event the detectors run over the prefix seen so far; a warning is emitted the
first time it appears. Every pattern is monotone on prefixes, so replaying a
full log yields exactly the offline detector output.
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Set, Tuple
import logging

from changeflow.awareness.accesses import AccessTable
from changeflow.awareness.detectors import DetectorRegistry, InconsistencyWarning, canonical, get_detector_registry
from changeflow.config import settings
from changeflow.db.database import ChangeEvent
from changeflow.errors import TimeOrderError
from changeflow.impact.graph import Dependencies

logger = logging.getLogger(__name__)


@dataclass
class MonitorState:
    deps: Dependencies
    events: List[ChangeEvent] = field(default_factory=list)
    seen: Set[tuple] = field(default_factory=set)
    emitted: List[InconsistencyWarning] = field(default_factory=list)
    possibilities: bool = True

    @property
    def now(self) -> Optional[float]:
        return self.events[-1].time if self.events else None

    @property
    def confirmed(self) -> List[InconsistencyWarning]:
        return [w for w in self.emitted if w.confirmed]


def monitor_state(deps: Dependencies, possibilities: Optional[bool] = None) -> MonitorState:
    if possibilities is None:
        possibilities = settings.MONITOR_POSSIBILITIES
    return MonitorState(deps=deps, possibilities=possibilities)


def monitor_step(
    state: MonitorState,
    event: ChangeEvent,
    registry: Optional[DetectorRegistry] = None,
) -> Tuple[MonitorState, List[InconsistencyWarning]]:
    """Feed one event; returns the state and the warnings first detectable at it"""
    if state.now is not None and event.time <= state.now:
        raise TimeOrderError(f"event {event.event_id} at {event.time:g} is not after {state.now:g}")
    registry = registry or get_detector_registry()

    state.events.append(event)
    table = AccessTable(state.events)
    found = registry.detect_all(table, state.deps)
    if state.possibilities:
        found = found + registry.possibilities(table, state.deps)

    new = []
    for warning in canonical(found):
        if warning.key not in state.seen:
            state.seen.add(warning.key)
            new.append(warning)
    state.emitted.extend(new)

    for warning in new:
        label = "confirmed" if warning.confirmed else "possible"
        logger.info(
            "t=%g %s %s on %s", event.time, label, warning.kind.value, ", ".join(warning.artifacts),
        )
    return state, new


class InconsistencyMonitor:
    """
    Stateful wrapper around ``monitor_step``.

    Usage:
        monitor = InconsistencyMonitor(Dependencies(model))
        for event in store.log:
            for warning in monitor.observe(event):
                ...
    """

    def __init__(self, deps: Dependencies, possibilities: Optional[bool] = None):
        self.state = monitor_state(deps, possibilities)

    def observe(self, event: ChangeEvent) -> List[InconsistencyWarning]:
        self.state, new = monitor_step(self.state, event)
        return new

    def observe_all(self, events: Iterable[ChangeEvent]) -> List[InconsistencyWarning]:
        emitted = []
        for event in events:
            emitted.extend(self.observe(event))
        return emitted

    @property
    def warnings(self) -> List[InconsistencyWarning]:
        return list(self.state.emitted)
