"""
Parsing, validation and serialization of model and scenario documents

Validation is total: a call returns a complete document or raises a
ValidationFailure subclass listing every violation found.
"""
from collections import defaultdict
from typing import Dict, List, Type, Union
import logging

from pydantic import BaseModel, ValidationError

from changeflow.config import settings
from changeflow.db.models import ElementKind, ProjectModel
from changeflow.db.queries import ModelIndex, bdr_violations
from changeflow.errors import (
    DanglingReferenceError,
    DocumentSyntaxError,
    InvariantError,
    NonMonotonicTimeError,
    PhaseOrderError,
    SchemaError,
    UnknownActivityError,
    ValidationFailure,
    Violation,
)
from changeflow.ingest.documents import ModelDocument, ScenarioDocument

logger = logging.getLogger(__name__)

Text = Union[str, bytes]

# Raised class is the first category present, in this order
_MODEL_PRECEDENCE: List[Type[ValidationFailure]] = [
    SchemaError,
    DanglingReferenceError,
    PhaseOrderError,
    InvariantError,
]
_SCENARIO_PRECEDENCE: List[Type[ValidationFailure]] = [
    SchemaError,
    UnknownActivityError,
    NonMonotonicTimeError,
]


def format_locator(loc: tuple) -> str:
    """('model', 'elements', 3, 'diagram') -> 'elements[3].diagram'"""
    parts = list(loc)
    if parts and parts[0] == "model":
        parts = parts[1:]
    locator = ""
    for part in parts:
        if isinstance(part, int):
            locator += f"[{part}]"
        else:
            locator += f".{part}" if locator else str(part)
    return locator


def load_document(document_type: Type[BaseModel], text: Text) -> BaseModel:
    """JSON + schema validation; JSON errors win over schema errors"""
    try:
        return document_type.model_validate_json(text)
    except ValidationError as e:
        syntax, schema = [], []
        for err in e.errors():
            if err["type"] == "json_invalid":
                syntax.append(Violation("", err["msg"]))
            else:
                schema.append(Violation(format_locator(err["loc"]), err["msg"]))
        if syntax:
            raise DocumentSyntaxError(syntax) from None
        raise SchemaError(schema) from None


def _raise_first(found: Dict[type, List[Violation]], precedence: List[type]) -> None:
    present = [category for category in precedence if found.get(category)]
    if not present:
        return
    everything = [v for category in present for v in found[category]]
    raise present[0](everything)


# ===== Project model =====

def validate_model(model: ProjectModel) -> None:
    """Cross-reference, phase-order and BDR invariant checks"""
    found: Dict[type, List[Violation]] = defaultdict(list)
    schema = found[SchemaError]
    refs = found[DanglingReferenceError]

    seen_phases = set()
    for i, phase in enumerate(model.phases):
        if phase.id in seen_phases:
            schema.append(Violation(f"phases[{i}].id", f"duplicate phase id {phase.id!r}"))
        seen_phases.add(phase.id)

    # diagrams and elements share one id space
    seen_entities = set()
    for collection, entities in (("diagrams", model.diagrams), ("elements", model.elements)):
        for i, entity in enumerate(entities):
            if entity.id in seen_entities:
                schema.append(Violation(f"{collection}[{i}].id", f"duplicate entity id {entity.id!r}"))
            seen_entities.add(entity.id)

    for i, element in enumerate(model.elements):
        if element.classifier_name is not None and element.element_kind != ElementKind.OBJECT:
            schema.append(Violation(
                f"elements[{i}].classifierName",
                f"classifierName is only allowed on Object elements, not {element.element_kind.value}",
            ))

    index = ModelIndex(model)

    for i, diagram in enumerate(model.diagrams):
        if diagram.phase not in index.phases:
            refs.append(Violation(f"diagrams[{i}].phase", f"unknown phase {diagram.phase!r}"))

    for i, element in enumerate(model.elements):
        if element.diagram not in index.diagrams:
            refs.append(Violation(f"elements[{i}].diagram", f"unknown diagram {element.diagram!r}"))
        if element.owner is None:
            continue
        owner = index.elements.get(element.owner)
        if owner is None:
            refs.append(Violation(f"elements[{i}].owner", f"unknown element {element.owner!r}"))
        elif owner.id == element.id:
            refs.append(Violation(f"elements[{i}].owner", "an element cannot own itself"))
        elif owner.diagram != element.diagram:
            refs.append(Violation(f"elements[{i}].owner", f"owner {owner.id!r} is drawn in another diagram"))

    for i, dep in enumerate(model.intra_deps):
        ends = []
        for field_name in ("target", "source"):
            ref = getattr(dep, field_name)
            if ref not in index.elements:
                refs.append(Violation(f"intraDeps[{i}].{field_name}", f"unknown element {ref!r}"))
            else:
                ends.append(index.elements[ref])
        if len(ends) == 2 and ends[0].diagram != ends[1].diagram:
            refs.append(Violation(f"intraDeps[{i}]", "intra-dependency endpoints must share a diagram"))

    for i, bdr in enumerate(model.bdrs):
        for field_name in ("target", "source"):
            ref = getattr(bdr, field_name)
            if ref not in index:
                refs.append(Violation(f"bdrs[{i}].{field_name}", f"unknown entity {ref!r}"))

    orders = sorted(p.order for p in model.phases)
    if orders != list(range(len(orders))):
        found[PhaseOrderError].append(Violation(
            "phases", f"phase orders must be unique and contiguous from 0, got {orders}",
        ))

    # invariants need resolvable phases and diagrams
    if not schema and not refs:
        for i, bdr in enumerate(model.bdrs):
            for problem in bdr_violations(index, bdr):
                found[InvariantError].append(Violation(f"bdrs[{i}]", problem))

    _raise_first(found, _MODEL_PRECEDENCE)


def parse_model(text: Text) -> ModelDocument:
    """Parse and validate a project-model document"""
    doc = load_document(ModelDocument, text)
    validate_model(doc.model)
    logger.info(
        "Parsed model: %d phases, %d diagrams, %d elements, %d BDRs",
        len(doc.model.phases), len(doc.model.diagrams), len(doc.model.elements), len(doc.model.bdrs),
    )
    return doc


def serialize_model(doc: ModelDocument) -> str:
    return doc.model_dump_json(by_alias=True, exclude_none=True, indent=settings.JSON_INDENT) + "\n"


def model_document(model: ProjectModel) -> ModelDocument:
    return ModelDocument(schema_version=settings.SCHEMA_VERSION, model=model)


# ===== Scenario =====

def validate_scenario(doc: ScenarioDocument) -> None:
    found: Dict[type, List[Violation]] = defaultdict(list)
    schema = found[SchemaError]

    workflow_ids = set()
    for i, workflow in enumerate(doc.workflows):
        if workflow.id in workflow_ids:
            schema.append(Violation(f"workflows[{i}].id", f"duplicate workflow id {workflow.id!r}"))
        workflow_ids.add(workflow.id)
        activity_ids = set()
        for j, activity in enumerate(workflow.activities):
            where = f"workflows[{i}].activities[{j}]"
            if activity.id in activity_ids:
                schema.append(Violation(f"{where}.id", f"duplicate activity id {activity.id!r}"))
            activity_ids.add(activity.id)
            both = set(activity.reads) & set(activity.writes or [])
            if both:
                schema.append(Violation(f"{where}.reads", f"artifacts both read and written: {sorted(both)}"))

    previous = None
    for k, event in enumerate(doc.events):
        if event.workflow not in workflow_ids:
            found[UnknownActivityError].append(
                Violation(f"events[{k}].workflow", f"unknown workflow {event.workflow!r}"))
        elif doc.declaration(event.workflow, event.activity) is None:
            found[UnknownActivityError].append(Violation(
                f"events[{k}].activity",
                f"activity {event.activity!r} is not declared in workflow {event.workflow!r}",
            ))
        if previous is not None and event.time <= previous:
            found[NonMonotonicTimeError].append(Violation(
                f"events[{k}].time", f"time {event.time:g} is not after the previous event time {previous:g}",
            ))
        previous = event.time

    _raise_first(found, _SCENARIO_PRECEDENCE)


def parse_scenario(text: Text) -> ScenarioDocument:
    """Parse and validate a scenario document (declarations + time-ordered events)"""
    doc = load_document(ScenarioDocument, text)
    validate_scenario(doc)
    logger.info("Parsed scenario: %d workflows, %d events", len(doc.workflows), len(doc.events))
    return doc


def serialize_scenario(doc: ScenarioDocument) -> str:
    return doc.model_dump_json(by_alias=True, exclude_none=True, indent=settings.JSON_INDENT) + "\n"
