"""
Build-time shared-artifact check for a newly planned CSW
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List

from changeflow.db.models import WorkflowState
from changeflow.workflow.csw import Csw


class BuildTimeKind(str, Enum):
    PLANNING_VS_PLANNING = "PlanningVsPlanning"
    PLANNING_VS_EXECUTING = "PlanningVsExecuting"


@dataclass
class BuildTimeWarning:
    kind: BuildTimeKind
    workflow: str
    other_workflow: str
    artifacts: List[str] = field(default_factory=list)

    @property
    def suggestion(self) -> str:
        shared = ", ".join(self.artifacts)
        if self.kind == BuildTimeKind.PLANNING_VS_EXECUTING:
            return (
                f"{self.workflow} should be delayed until the executing workflow "
                f"{self.other_workflow} has finished (shared: {shared})"
            )
        return f"renegotiate the plans of {self.workflow} and {self.other_workflow} (shared: {shared})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "workflow": self.workflow,
            "otherWorkflow": self.other_workflow,
            "artifacts": list(self.artifacts),
            "suggestion": self.suggestion,
        }


def buildtime_check(new: Csw, others: List[Csw]) -> List[BuildTimeWarning]:
    """One warning per planning or executing workflow sharing an artifact with ``new``"""
    warnings = []
    for other in sorted(others, key=lambda c: c.id):
        if other.id == new.id or other.state == WorkflowState.FINISHED:
            continue
        shared = new.artifacts & other.artifacts
        if not shared:
            continue
        kind = (
            BuildTimeKind.PLANNING_VS_EXECUTING
            if other.state == WorkflowState.EXECUTING
            else BuildTimeKind.PLANNING_VS_PLANNING
        )
        warnings.append(BuildTimeWarning(kind, new.id, other.id, sorted(shared)))
    return warnings
