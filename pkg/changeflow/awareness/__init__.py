"""
Inconsistency awareness

Components:
- AccessTable: checkouts and check-ins of an event log per activity and artifact
- DetectorRegistry: the pattern detectors, run together by detect_all
- InconsistencyMonitor: incremental detection over an event stream
- suggest_resolutions: advisory strategies for a warning
"""
from changeflow.awareness.accesses import AccessTable
from changeflow.awareness.detectors import (
    DetectorRegistry,
    InconsistencyWarning,
    PatternKind,
    detect_all,
    detect_potential_indirect,
    detect_w2w,
    detect_ww_direct,
    detect_www,
    get_detector_registry,
)
from changeflow.awareness.monitor import InconsistencyMonitor, monitor_step
from changeflow.awareness.report import WarningReport
from changeflow.awareness.resolutions import suggest_resolutions

__all__ = [
    "AccessTable",
    "DetectorRegistry", "InconsistencyWarning", "PatternKind", "get_detector_registry",
    "detect_all", "detect_ww_direct", "detect_potential_indirect", "detect_www", "detect_w2w",
    "InconsistencyMonitor", "monitor_step",
    "WarningReport",
    "suggest_resolutions",
]
