"""
Inconsistency pattern detectors

Each detector checks the literal clause conjunction of its patterns over an
access table. Refinements (RW, RWR, WWR) are reported next to their base
pattern, never instead of it.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from changeflow.awareness.accesses import Access, AccessTable, overlaps
from changeflow.db.database import ActivityRef, ChangeEvent
from changeflow.db.models import EventAction
from changeflow.impact.graph import Dependencies


class PatternKind(str, Enum):
    WW_DIRECT_CONFLICT = "WwDirectConflict"
    POTENTIAL_INDIRECT_CONFLICT = "PotentialIndirectConflict"
    RW_DIRECT_CONFLICT = "RwDirectConflict"
    WWW_POTENTIAL_INDIRECT = "WwwPotentialIndirect"
    RWR_DIRECT_INCONSISTENCY = "RwrDirectInconsistency"
    W2W_POTENTIAL_INDIRECT = "W2wPotentialIndirect"
    WWR_DIRECT_INCONSISTENCY = "WwrDirectInconsistency"


KIND_ORDER = {kind: i for i, kind in enumerate(PatternKind)}


@dataclass(frozen=True)
class InconsistencyWarning:
    kind: PatternKind
    activities: Tuple[ActivityRef, ...]
    artifacts: Tuple[str, ...]
    evidence: Tuple[ChangeEvent, ...]  # in clause order
    detection_time: float
    reported_at: float
    confirmed: bool = True

    @property
    def key(self) -> tuple:
        return (self.kind, self.activities, self.artifacts, tuple(e.event_id for e in self.evidence), self.confirmed)

    @property
    def sort_key(self) -> tuple:
        return (
            self.detection_time,
            KIND_ORDER[self.kind],
            tuple(str(a) for a in self.activities),
            self.artifacts,
            tuple(e.event_id for e in self.evidence),
            self.confirmed,
        )

    @property
    def workflows(self) -> List[str]:
        return sorted({a.workflow for a in self.activities})

    def versions(self) -> Dict[str, List[int]]:
        """Versions of each involved artifact seen in the evidence"""
        seen: Dict[str, set] = {a: set() for a in self.artifacts}
        for event in self.evidence:
            if event.artifact in seen:
                seen[event.artifact].add(event.version)
        return {artifact: sorted(numbers) for artifact, numbers in seen.items()}

    def to_dict(self) -> Dict[str, Any]:
        versions = self.versions()
        return {
            "kind": self.kind.value,
            "confirmed": self.confirmed,
            "activities": [{"workflow": a.workflow, "activity": a.activity} for a in self.activities],
            "artifacts": [{"artifact": a, "versions": versions[a]} for a in self.artifacts],
            "detectionTime": self.detection_time,
            "reportedAt": self.reported_at,
            "evidence": [e.event_id for e in self.evidence],
        }


def make_warning(
    kind: PatternKind,
    activities: Sequence[ActivityRef],
    artifacts: Sequence[str],
    evidence: Sequence[ChangeEvent],
    confirmed: bool = True,
) -> InconsistencyWarning:
    """Detection time is the latest checkout in the evidence, report time the latest event"""
    checkouts = [e.time for e in evidence if e.action == EventAction.CHECK_OUT]
    return InconsistencyWarning(
        kind=kind,
        activities=tuple(activities),
        artifacts=tuple(artifacts),
        evidence=tuple(evidence),
        detection_time=max(checkouts),
        reported_at=max(e.time for e in evidence),
        confirmed=confirmed,
    )


def canonical(warnings: Iterable[InconsistencyWarning]) -> List[InconsistencyWarning]:
    """Deduplicated, sorted by (detection time, kind, activities)"""
    unique = {w.key: w for w in warnings}
    return sorted(unique.values(), key=lambda w: w.sort_key)


LogLike = Union[AccessTable, Sequence[ChangeEvent]]


def as_table(log: LogLike) -> AccessTable:
    return log if isinstance(log, AccessTable) else AccessTable(log)


class Detector:
    """
    Base class for pattern detectors.

    Subclass this and implement ``detect()``; ``possibilities()`` reports
    patterns whose last clause still waits for a check-in.
    """

    def __init__(self, name: str, description: str, kinds: Tuple[PatternKind, ...]):
        self.name = name
        self.description = description
        self.kinds = kinds

    def detect(self, table: AccessTable, deps: Dependencies) -> List[InconsistencyWarning]:
        raise NotImplementedError(f"Detector '{self.name}' must implement detect()")

    def possibilities(self, table: AccessTable, deps: Dependencies) -> List[InconsistencyWarning]:
        return []

    def to_schema(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "kinds": [k.value for k in self.kinds],
        }


def _same_workflow_pairs(table: AccessTable) -> List[Tuple[ActivityRef, ActivityRef]]:
    """Ordered pairs of distinct activities of one workflow"""
    return [(a, b) for a, b in permutations(table.activities(), 2) if a.workflow == b.workflow]


def _b_start(rb: Access, wb: Access) -> float:
    # a read and a write checked out for one change count as one checkout
    return min(rb.co_time, wb.co_time)


# ===== Direct write-write conflicts =====

class WwDirectDetector(Detector):
    def __init__(self):
        super().__init__(
            name="ww_direct",
            description="Two workflows check out the same version of an artifact and check in two new versions",
            kinds=(PatternKind.WW_DIRECT_CONFLICT,),
        )

    @staticmethod
    def _pairs(table: AccessTable):
        writes = sorted(table.writes(), key=lambda a: a.co_time)
        for a, b in combinations(writes, 2):
            if a.artifact == b.artifact and a.workflow != b.workflow and a.co_version == b.co_version:
                yield a, b

    def detect(self, table, deps):
        found = []
        for a, b in self._pairs(table):
            if not (a.checked_in and b.checked_in):
                continue
            if overlaps(a.co_time, a.ci_time, b.co_time, b.ci_time) and a.ci_version != b.ci_version:
                found.append(make_warning(
                    PatternKind.WW_DIRECT_CONFLICT, (a.ref, b.ref), (a.artifact,), (a.co, b.co, a.ci, b.ci),
                ))
        return found

    def possibilities(self, table, deps):
        # fires at the second same-version checkout while the first is still open
        return [
            make_warning(PatternKind.WW_DIRECT_CONFLICT, (a.ref, b.ref), (a.artifact,), (a.co, b.co), confirmed=False)
            for a, b in self._pairs(table)
            if b.co_time == table.now and a.ci_time > b.co_time
        ]


# ===== Potential indirect conflicts and the RW refinement =====

class PotentialIndirectDetector(Detector):
    def __init__(self):
        super().__init__(
            name="potential_indirect",
            description="Concurrent workflows modify two artifacts connected by dependencies",
            kinds=(PatternKind.POTENTIAL_INDIRECT_CONFLICT, PatternKind.RW_DIRECT_CONFLICT),
        )

    def _rw_candidates(self, table: AccessTable):
        """(A's write of d, B's read of d, B's write of d1) with matching checkout versions"""
        for a in table.writes():
            for r in table.reads():
                if r.artifact != a.artifact or r.workflow == a.workflow or r.co_version != a.co_version:
                    continue
                for w in table.writes_of(r.ref):
                    if w.artifact == a.artifact:
                        continue
                    if overlaps(a.co_time, a.ci_time, _b_start(r, w), w.ci_time):
                        yield a, r, w

    def detect(self, table, deps):
        found = []
        for a in table.writes():
            for b in table.writes():
                if a.workflow == b.workflow or a.artifact == b.artifact:
                    continue
                if overlaps(a.co_time, a.ci_time, b.co_time, b.ci_time) and deps.reaches(b.artifact, a.artifact):
                    found.append(make_warning(
                        PatternKind.POTENTIAL_INDIRECT_CONFLICT, (a.ref, b.ref), (a.artifact, b.artifact), (a.co, b.co),
                    ))
        for a, r, w in self._rw_candidates(table):
            if a.checked_in and a.ci_version != r.co_version:
                found.append(make_warning(
                    PatternKind.RW_DIRECT_CONFLICT, (a.ref, r.ref), (a.artifact, w.artifact), (a.co, a.ci, r.co, w.co),
                ))
        return found

    def possibilities(self, table, deps):
        return [
            make_warning(
                PatternKind.RW_DIRECT_CONFLICT, (a.ref, r.ref), (a.artifact, w.artifact), (a.co, r.co, w.co),
                confirmed=False,
            )
            for a, r, w in self._rw_candidates(table)
            if not a.checked_in and max(a.co_time, r.co_time, w.co_time) == table.now
        ]


# ===== WWW chains and the RWR refinement =====

class WwwDetector(Detector):
    def __init__(self):
        super().__init__(
            name="www",
            description="A foreign change lands between two activities of one workflow whose artifacts share a dependency",
            kinds=(PatternKind.WWW_POTENTIAL_INDIRECT, PatternKind.RWR_DIRECT_INCONSISTENCY),
        )

    def detect(self, table, deps):
        found = []
        writes = table.writes()
        for ref_a, ref_b in _same_workflow_pairs(table):
            foreign = [p for p in writes if p.workflow != ref_a.workflow and p.checked_in]

            for x in table.writes_of(ref_a):
                if not x.checked_in:
                    continue
                for y in table.writes_of(ref_b):
                    for p in foreign:
                        s = p.artifact
                        if s in (x.artifact, y.artifact):
                            continue
                        if not (x.ci_time < p.co_time and p.ci_time < y.co_time):
                            continue
                        if deps.reaches(x.artifact, s) and deps.reaches(y.artifact, s):
                            found.append(make_warning(
                                PatternKind.WWW_POTENTIAL_INDIRECT, (ref_a, ref_b, p.ref),
                                (x.artifact, y.artifact, s), (x.ci, p.co, p.ci, y.co),
                            ))

            for ra in table.reads_of(ref_a):
                for rb in table.reads_of(ref_b):
                    if rb.artifact != ra.artifact:
                        continue
                    for p in foreign:
                        if p.artifact != ra.artifact:
                            continue
                        if ra.co_version != p.co_version or p.ci_version != rb.co_version:
                            continue
                        for x in table.writes_of(ref_a):
                            if not (x.checked_in and x.ci_time < p.co_time):
                                continue
                            for y in table.writes_of(ref_b):
                                if p.ci_time < _b_start(rb, y):
                                    found.append(make_warning(
                                        PatternKind.RWR_DIRECT_INCONSISTENCY, (ref_a, ref_b, p.ref),
                                        (x.artifact, y.artifact, p.artifact),
                                        (ra.co, x.ci, p.co, p.ci, rb.co, y.co),
                                    ))
        return found


# ===== W2W chains and the WWR refinement =====

class W2wDetector(Detector):
    def __init__(self):
        super().__init__(
            name="w2w",
            description="A foreign change re-versions an artifact between its writer and a dependent activity of the same workflow",
            kinds=(PatternKind.W2W_POTENTIAL_INDIRECT, PatternKind.WWR_DIRECT_INCONSISTENCY),
        )

    def detect(self, table, deps):
        found = []
        writes = table.writes()
        for ref_a, ref_b in _same_workflow_pairs(table):
            for a in table.writes_of(ref_a):
                if not a.checked_in:
                    continue
                s = a.artifact
                for p in writes:
                    if p.artifact != s or p.workflow == ref_a.workflow or not p.checked_in:
                        continue
                    if not a.ci_time < p.co_time:
                        continue

                    for y in table.writes_of(ref_b):
                        if y.artifact != s and p.ci_time < y.co_time and deps.reaches(y.artifact, s):
                            found.append(make_warning(
                                PatternKind.W2W_POTENTIAL_INDIRECT, (ref_a, ref_b, p.ref),
                                (s, y.artifact), (a.ci, p.co, p.ci, y.co),
                            ))

                    rb = table.get(ref_b, s)
                    if rb is None or rb.is_write:
                        continue
                    if a.ci_version != p.co_version or p.ci_version != rb.co_version:
                        continue
                    for y in table.writes_of(ref_b):
                        if p.ci_time < _b_start(rb, y):
                            found.append(make_warning(
                                PatternKind.WWR_DIRECT_INCONSISTENCY, (ref_a, ref_b, p.ref),
                                (s, y.artifact), (a.ci, p.co, p.ci, rb.co, y.co),
                            ))
        return found


class DetectorRegistry:
    """
    Central registry for pattern detectors.

    Usage:
        registry = DetectorRegistry()
        registry.register(WwDirectDetector())
        warnings = registry.detect_all(table, deps)
    """

    def __init__(self):
        self._detectors: Dict[str, Detector] = {}

    def register(self, detector: Detector) -> None:
        if detector.name in self._detectors:
            raise ValueError(f"Detector '{detector.name}' is already registered")
        self._detectors[detector.name] = detector

    def get(self, name: str) -> Optional[Detector]:
        return self._detectors.get(name)

    def list_names(self) -> List[str]:
        return list(self._detectors.keys())

    def count(self) -> int:
        return len(self._detectors)

    def detect_all(self, log: LogLike, deps: Dependencies) -> List[InconsistencyWarning]:
        table = as_table(log)
        return canonical(w for d in self._detectors.values() for w in d.detect(table, deps))

    def possibilities(self, log: LogLike, deps: Dependencies) -> List[InconsistencyWarning]:
        table = as_table(log)
        return canonical(w for d in self._detectors.values() for w in d.possibilities(table, deps))


# ─── Singleton ───────────────────────────────────────────────────────────────

_registry: Optional[DetectorRegistry] = None


def get_detector_registry() -> DetectorRegistry:
    """Get or create the global detector registry"""
    global _registry
    if _registry is None:
        _registry = DetectorRegistry()
        _register_builtin_detectors(_registry)
    return _registry


def _register_builtin_detectors(registry: DetectorRegistry) -> None:
    registry.register(WwDirectDetector())
    registry.register(PotentialIndirectDetector())
    registry.register(WwwDetector())
    registry.register(W2wDetector())


# ===== Per-pattern entry points =====

def detect_all(log: LogLike, deps: Dependencies) -> List[InconsistencyWarning]:
    return get_detector_registry().detect_all(log, deps)


def detect_ww_direct(log: LogLike, deps: Dependencies) -> List[InconsistencyWarning]:
    return canonical(WwDirectDetector().detect(as_table(log), deps))


def detect_potential_indirect(log: LogLike, deps: Dependencies) -> List[InconsistencyWarning]:
    return canonical(PotentialIndirectDetector().detect(as_table(log), deps))


def detect_www(log: LogLike, deps: Dependencies) -> List[InconsistencyWarning]:
    return canonical(WwwDetector().detect(as_table(log), deps))


def detect_w2w(log: LogLike, deps: Dependencies) -> List[InconsistencyWarning]:
    return canonical(W2wDetector().detect(as_table(log), deps))
