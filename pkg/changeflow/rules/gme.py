"""
Generation Model Elements - the category abstraction used by the addition rules
"""
from enum import Enum
from typing import Dict, FrozenSet

from changeflow.db.models import Diagram, DiagramKind, ElementKind, Entity
from changeflow.db.queries import ModelIndex
from changeflow.errors import UnmappedKindError


class GenerationModelElement(str, Enum):
    CLASSIFIER = "ClassifierElement"
    RELATIONSHIP = "RelationshipElement"
    STATE = "StateElement"
    TRANSITION = "TransitionElement"
    INSTANCE = "InstanceElement"
    MESSAGE = "MessageElement"
    RELATIONSHIP_DIAGRAM = "RelationshipDiagram"
    BEHAVIOR_DIAGRAM = "BehaviorDiagram"
    INTERACTION_DIAGRAM = "InteractionDiagram"


GME = GenerationModelElement

_DIAGRAM_GME: Dict[DiagramKind, GME] = {
    DiagramKind.USE_CASE: GME.RELATIONSHIP_DIAGRAM,
    DiagramKind.CLASS: GME.RELATIONSHIP_DIAGRAM,
    DiagramKind.OBJECT: GME.RELATIONSHIP_DIAGRAM,
    DiagramKind.COMPONENT: GME.RELATIONSHIP_DIAGRAM,
    DiagramKind.DEPLOYMENT: GME.RELATIONSHIP_DIAGRAM,
    DiagramKind.STATE_CHART: GME.BEHAVIOR_DIAGRAM,
    DiagramKind.ACTIVITY: GME.BEHAVIOR_DIAGRAM,
    DiagramKind.SEQUENCE: GME.INTERACTION_DIAGRAM,
    DiagramKind.COLLABORATION: GME.INTERACTION_DIAGRAM,
}

# Object is context sensitive and handled in gme_of
_ELEMENT_GME: Dict[ElementKind, GME] = {
    ElementKind.ACTOR: GME.CLASSIFIER,
    ElementKind.USE_CASE: GME.CLASSIFIER,
    ElementKind.CLASS: GME.CLASSIFIER,
    ElementKind.PACKAGE: GME.CLASSIFIER,
    ElementKind.NODE: GME.CLASSIFIER,
    ElementKind.COMPONENT: GME.CLASSIFIER,
    ElementKind.RELATION: GME.RELATIONSHIP,
    ElementKind.AGGREGATION: GME.RELATIONSHIP,
    ElementKind.DEPENDENCY: GME.RELATIONSHIP,
    ElementKind.GENERALIZATION: GME.RELATIONSHIP,
    ElementKind.LINK: GME.RELATIONSHIP,
    ElementKind.STATE: GME.STATE,
    ElementKind.ACTION_STATE: GME.STATE,
    ElementKind.TRANSITION: GME.TRANSITION,
    ElementKind.EVENT: GME.TRANSITION,
    ElementKind.ACTION: GME.TRANSITION,
    ElementKind.MESSAGE: GME.MESSAGE,
}

_OBJECT_GME: Dict[DiagramKind, GME] = {
    DiagramKind.OBJECT: GME.CLASSIFIER,
    DiagramKind.COLLABORATION: GME.INSTANCE,
    DiagramKind.SEQUENCE: GME.INSTANCE,
}


def possible_gmes(kind: str) -> FrozenSet[GME]:
    """Every GME an entity of this diagram or element kind can map to"""
    if kind == ElementKind.OBJECT.value:
        return frozenset(_OBJECT_GME.values())
    if kind in DiagramKind._value2member_map_:
        return frozenset({_DIAGRAM_GME[DiagramKind(kind)]})
    return frozenset({_ELEMENT_GME[ElementKind(kind)]})


def gme_of(entity: Entity, index: ModelIndex) -> GME:
    """Map a diagram or element to its Generation Model Element.

    An Object is a classifier in an object diagram and an instance in an
    interaction diagram; anywhere else it has no mapping.
    """
    if isinstance(entity, Diagram):
        return _DIAGRAM_GME[entity.kind]
    if entity.element_kind == ElementKind.OBJECT:
        diagram_kind = index.diagrams[entity.diagram].kind
        try:
            return _OBJECT_GME[diagram_kind]
        except KeyError:
            raise UnmappedKindError(
                f"{entity.id}: Object in a {diagram_kind.value} has no generation model element"
            ) from None
    return _ELEMENT_GME[entity.element_kind]
