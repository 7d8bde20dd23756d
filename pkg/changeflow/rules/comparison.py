"""
Comparison rules - which (target kind, source kind) pairs may carry a BDR,
and the name/containment conditions that select them
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from changeflow.db.models import Diagram, ElementKind, Entity, ModelElement
from changeflow.db.queries import kind_name, normalize_name


class ComparisonCondition(str, Enum):
    CONTAINED = "Contained"
    SIMILAR = "Similar"
    TYPE_SIM = "TypeSim"
    SIM_TYPE = "SimType"
    INCLUDE = "Include"


C = ComparisonCondition


@dataclass(frozen=True)
class ComparisonRule:
    """One row of the comparison table, read as (Target kind, Source kind)"""
    row: int
    target_kind: str
    source_kind: str
    conditions: Tuple[ComparisonCondition, ...]


def _rows(*specs) -> List[ComparisonRule]:
    return [ComparisonRule(i, t, s, conds) for i, (t, s, conds) in enumerate(specs, start=1)]


COMPARISON_RULES: List[ComparisonRule] = _rows(
    ("UseCaseDiagram", "Actor", (C.INCLUDE,)),
    ("UseCaseDiagram", "UseCase", (C.INCLUDE,)),
    ("UseCase", "ClassDiagram", (C.CONTAINED,)),
    ("UseCase", "StateChartDiagram", (C.CONTAINED,)),
    ("UseCase", "CollaborationDiagram", (C.CONTAINED,)),
    ("UseCase", "SequenceDiagram", (C.CONTAINED,)),
    ("UseCase", "UseCase", (C.SIMILAR,)),
    ("Actor", "Actor", (C.SIMILAR,)),
    ("Actor", "Class", (C.SIMILAR,)),
    ("Actor", "Object", (C.SIM_TYPE,)),
    ("ClassDiagram", "Class", (C.INCLUDE,)),
    ("ClassDiagram", "Package", (C.INCLUDE,)),
    ("Package", "Class", (C.INCLUDE,)),
    ("Package", "Package", (C.SIMILAR,)),
    ("Class", "Package", (C.SIMILAR,)),
    ("Class", "Object", (C.SIM_TYPE, C.CONTAINED)),
    ("Class", "StateChartDiagram", (C.CONTAINED,)),
    ("Class", "ActivityDiagram", (C.CONTAINED,)),
    ("Class", "Class", (C.SIMILAR, C.INCLUDE)),
    ("ObjectDiagram", "Object", (C.INCLUDE,)),
    ("Object", "Class", (C.TYPE_SIM,)),
    ("Object", "StateChartDiagram", (C.TYPE_SIM,)),
    ("Object", "ActivityDiagram", (C.TYPE_SIM,)),
    ("Object", "Object", (C.SIMILAR, C.INCLUDE)),
    ("ComponentDiagram", "Component", (C.INCLUDE,)),
    ("Component", "Component", (C.SIMILAR,)),
    ("DeploymentDiagram", "Node", (C.INCLUDE,)),
    ("Node", "Node", (C.SIMILAR,)),
    ("StateChartDiagram", "State", (C.INCLUDE,)),
    ("State", "State", (C.SIMILAR, C.INCLUDE)),
    ("ActivityDiagram", "ActionState", (C.INCLUDE,)),
    ("ActionState", "ActionState", (C.SIMILAR, C.INCLUDE)),
    ("CollaborationDiagram", "Object", (C.INCLUDE,)),
    ("SequenceDiagram", "Object", (C.INCLUDE,)),
)

RULES_BY_KINDS: Dict[Tuple[str, str], ComparisonRule] = {
    (rule.target_kind, rule.source_kind): rule for rule in COMPARISON_RULES
}


def rule_for(target: Entity, source: Entity) -> Optional[ComparisonRule]:
    return RULES_BY_KINDS.get((kind_name(target), kind_name(source)))


@dataclass(frozen=True)
class CandidatePair:
    """A (target, source) pair with the conditions that matched for it"""
    target: str
    source: str
    matched: FrozenSet[ComparisonCondition]
    rule: ComparisonRule

    @property
    def from_include(self) -> bool:
        return ComparisonCondition.INCLUDE in self.matched


def _includes(target: Entity, source: Entity) -> bool:
    """Source is drawn in the target diagram, or owned by the target element"""
    if not isinstance(source, ModelElement):
        return False
    if isinstance(target, Diagram):
        return source.diagram == target.id
    return source.owner == target.id


def _instance_name(entity: Entity) -> str:
    """Name without the ":Classifier" part for objects ("lamp1:Lamp" -> "lamp1")"""
    if isinstance(entity, ModelElement) and entity.element_kind == ElementKind.OBJECT:
        return entity.name.split(":", 1)[0]
    return entity.name


def condition_holds(condition: ComparisonCondition, target: Entity, source: Entity) -> bool:
    if condition == C.CONTAINED:
        target_name = normalize_name(target.name)
        return bool(target_name) and target_name in normalize_name(_instance_name(source))
    if condition == C.SIMILAR:
        return normalize_name(target.name) == normalize_name(source.name)
    if condition == C.TYPE_SIM:
        classifier = getattr(target, "classifier_name", None)
        return bool(classifier) and normalize_name(classifier) == normalize_name(source.name)
    if condition == C.SIM_TYPE:
        classifier = getattr(source, "classifier_name", None)
        return bool(classifier) and normalize_name(target.name) == normalize_name(classifier)
    return _includes(target, source)


def compare(target: Entity, source: Entity) -> Set[ComparisonCondition]:
    """Conditions of the matching table row that hold for this pair"""
    if target.id == source.id:
        return set()
    rule = rule_for(target, source)
    if rule is None:
        return set()
    return {cond for cond in rule.conditions if condition_holds(cond, target, source)}


def comparison_trace(pair: CandidatePair, target: Entity, source: Entity) -> List[str]:
    """One trace entry per matched condition, in table order"""
    return [
        f"comparison:{kind_name(target)}/{kind_name(source)}:{cond.value}"
        for cond in pair.rule.conditions
        if cond in pair.matched
    ]
