"""
Document schemas: project-model files and scenario (event) files
"""
from pydantic import Field
from typing import List, Literal, Optional

from changeflow.db.models import AccessMode, DocumentModel, EventAction, ProjectModel


class ModelDocument(DocumentModel):
    schema_version: Literal["1"]
    model: ProjectModel


# ===== Scenario Models =====

class ActivityDeclaration(DocumentModel):
    """Run-time declaration of one activity: what it reads, what it writes, who does it"""
    id: str = Field(..., min_length=1)
    writes: Optional[List[str]] = None  # None -> taken from the workflow file
    reads: List[str] = Field(default_factory=list)
    worker: Optional[str] = None


class WorkflowDeclaration(DocumentModel):
    id: str = Field(..., min_length=1)
    change_request_id: Optional[str] = None
    activities: List[ActivityDeclaration] = Field(default_factory=list)


class EventRecord(DocumentModel):
    time: float = Field(..., ge=0)
    workflow: str
    activity: str
    artifact: str
    action: EventAction
    mode: Optional[AccessMode] = None  # derived from the declaration when absent


class ScenarioDocument(DocumentModel):
    schema_version: Literal["1"]
    workflows: List[WorkflowDeclaration] = Field(default_factory=list)
    events: List[EventRecord] = Field(default_factory=list)

    def declaration(self, workflow_id: str, activity_id: str) -> Optional[ActivityDeclaration]:
        for workflow in self.workflows:
            if workflow.id != workflow_id:
                continue
            for activity in workflow.activities:
                if activity.id == activity_id:
                    return activity
        return None
