"""
Advisory resolution strategies for inconsistency and build-time warnings

Nothing here changes a workflow; the strategies are text for the change
workers to negotiate over.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Union

from changeflow.awareness.detectors import InconsistencyWarning
from changeflow.runtime.buildtime import BuildTimeKind, BuildTimeWarning


class Strategy(str, Enum):
    DELAY = "Delay"
    FINE_GRAIN = "FineGrain"
    COMBINED_CHANGE_REQUEST = "CombinedChangeRequest"
    MERGE = "Merge"


@dataclass(frozen=True)
class Resolution:
    strategy: Strategy
    description: str

    def to_dict(self) -> Dict[str, Any]:
        return {"strategy": self.strategy.value, "description": self.description}


AnyWarning = Union[InconsistencyWarning, BuildTimeWarning]


def _involved(warning: AnyWarning):
    if isinstance(warning, BuildTimeWarning):
        return [warning.workflow, warning.other_workflow], list(warning.artifacts)
    return warning.workflows, list(warning.artifacts)


def suggest_resolutions(warning: AnyWarning) -> List[Resolution]:
    """Fine-grain partition, combined change request and merge; delay first for executing conflicts"""
    workflows, artifacts = _involved(warning)
    flows = " and ".join(workflows)
    shared = ", ".join(artifacts)

    resolutions = []
    if isinstance(warning, BuildTimeWarning) and warning.kind == BuildTimeKind.PLANNING_VS_EXECUTING:
        resolutions.append(Resolution(Strategy.DELAY, warning.suggestion))
    resolutions += [
        Resolution(
            Strategy.FINE_GRAIN,
            f"Split the work so that {flows} modify different parts of {shared}",
        ),
        Resolution(
            Strategy.COMBINED_CHANGE_REQUEST,
            f"Replace {flows} with one combined change request covering {shared}",
        ),
        Resolution(
            Strategy.MERGE,
            f"Merge the activities of {flows} that touch {shared} into one workflow part",
        ),
    ]
    return resolutions
