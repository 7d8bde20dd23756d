"""
Pydantic models for the project model (phases, diagrams, elements, dependencies)

Field names are snake_case in Python and camelCase in documents.
"""
from pydantic import BaseModel, ConfigDict, Field
from pydantic.alias_generators import to_camel
from typing import Optional, List, Union
from enum import Enum


class DocumentModel(BaseModel):
    """Base for every document type: camelCase aliases, unknown fields rejected"""
    model_config = ConfigDict(
        alias_generator=to_camel,
        populate_by_name=True,
        extra="forbid",
        frozen=True,
    )


# ===== Enums =====

class DiagramKind(str, Enum):
    USE_CASE = "UseCaseDiagram"
    CLASS = "ClassDiagram"
    OBJECT = "ObjectDiagram"
    COMPONENT = "ComponentDiagram"
    DEPLOYMENT = "DeploymentDiagram"
    STATE_CHART = "StateChartDiagram"
    ACTIVITY = "ActivityDiagram"
    SEQUENCE = "SequenceDiagram"
    COLLABORATION = "CollaborationDiagram"


class ElementKind(str, Enum):
    ACTOR = "Actor"
    USE_CASE = "UseCase"
    CLASS = "Class"
    PACKAGE = "Package"
    NODE = "Node"
    COMPONENT = "Component"
    OBJECT = "Object"
    RELATION = "Relation"
    AGGREGATION = "Aggregation"
    DEPENDENCY = "Dependency"
    GENERALIZATION = "Generalization"
    LINK = "Link"
    STATE = "State"
    ACTION_STATE = "ActionState"
    TRANSITION = "Transition"
    EVENT = "Event"
    ACTION = "Action"
    MESSAGE = "Message"


class BdrKind(str, Enum):
    """Basic Dependency Relationship kinds, in canonical order"""
    EXIST_TOGETHER = "ExistTogether"
    INFORMATION_SHARING = "InformationSharing"
    COPY = "Copy"
    CONCEPT = "Concept"


class IntraKind(str, Enum):
    GENERALIZATION = "Generalization"
    ASSOCIATION = "Association"
    AGGREGATION = "Aggregation"
    COMPOSITION = "Composition"
    CALL = "Call"
    INSTANTIATION = "Instantiation"
    SEND = "Send"
    PARAMETER = "Parameter"
    OTHER = "Other"


class PhaseRelation(str, Enum):
    SAME = "Same"
    ADJOINING = "Adjoining"
    SEPARATE = "Separate"


class WorkflowState(str, Enum):
    PLANNING = "Planning"
    EXECUTING = "Executing"
    FINISHED = "Finished"


class EventAction(str, Enum):
    CHECK_OUT = "CheckOut"
    CHECK_IN = "CheckIn"


class AccessMode(str, Enum):
    READ = "Read"
    WRITE = "Write"


BDR_KIND_ORDER = {kind: i for i, kind in enumerate(BdrKind)}


# ===== Process Models =====

class Phase(DocumentModel):
    id: str = Field(..., min_length=1)
    name: str
    order: int = Field(..., ge=0)


# ===== Diagram Models =====

class Diagram(DocumentModel):
    id: str = Field(..., min_length=1)
    name: str
    kind: DiagramKind
    phase: str


class ModelElement(DocumentModel):
    id: str = Field(..., min_length=1)
    name: str
    element_kind: ElementKind
    classifier_name: Optional[str] = None  # "FloorLampInterfaces" in ":FloorLampInterfaces"
    diagram: str
    owner: Optional[str] = None  # enclosing element in the same diagram


Entity = Union[Diagram, ModelElement]


# ===== Dependency Models =====

class IntraDependency(DocumentModel):
    """Dependency between two elements of the same diagram"""
    target: str
    source: str
    kind: IntraKind


class Bdr(DocumentModel):
    """Target <- Source: a change to the target may affect the source"""
    target: str
    source: str
    kind: BdrKind
    rule_trace: List[str] = Field(default_factory=list)

    @property
    def key(self) -> tuple:
        return (self.target, self.source, BDR_KIND_ORDER[self.kind])


# ===== Project Model =====

class ProjectModel(DocumentModel):
    phases: List[Phase] = Field(default_factory=list)
    diagrams: List[Diagram] = Field(default_factory=list)
    elements: List[ModelElement] = Field(default_factory=list)
    intra_deps: List[IntraDependency] = Field(default_factory=list)
    bdrs: List[Bdr] = Field(default_factory=list)

    def with_bdrs(self, bdrs: List[Bdr]) -> "ProjectModel":
        """Copy of this model carrying ``bdrs`` instead of the current list"""
        return self.model_copy(update={"bdrs": list(bdrs)})
