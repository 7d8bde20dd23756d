"""
Model query functions - lookups and derived facts over a ProjectModel
"""
from collections import defaultdict
from typing import List, Dict
import re

from changeflow.db.models import (
    Bdr,
    BdrKind,
    Diagram,
    Entity,
    IntraDependency,
    ModelElement,
    Phase,
    PhaseRelation,
    ProjectModel,
)

_SEPARATORS = re.compile(r"[\s_]+")


def normalize_name(raw: str) -> str:
    """Canonical form used by every name comparison.

    Lowercase; whitespace and underscores removed; leading colons removed;
    one trailing "s" removed when the name is longer than three characters and
    the "s" does not follow another "s". The last guard keeps the function
    idempotent ("glass" stays "glass").
    """
    name = _SEPARATORS.sub("", raw.lower()).lstrip(":")
    if len(name) > 3 and name.endswith("s") and not name.endswith("ss"):
        name = name[:-1]
    return name


def phase_relation(a: Phase, b: Phase) -> PhaseRelation:
    """Same / Adjoining / Separate by phase order distance"""
    gap = abs(a.order - b.order)
    if gap == 0:
        return PhaseRelation.SAME
    if gap == 1:
        return PhaseRelation.ADJOINING
    return PhaseRelation.SEPARATE


def kind_name(entity: Entity) -> str:
    """Element kind or diagram kind as a plain string"""
    if isinstance(entity, Diagram):
        return entity.kind.value
    return entity.element_kind.value


class ModelIndex:
    """Read-only lookup tables over one ProjectModel"""

    def __init__(self, model: ProjectModel):
        self.model = model
        self.phases: Dict[str, Phase] = {p.id: p for p in model.phases}
        self.diagrams: Dict[str, Diagram] = {d.id: d for d in model.diagrams}
        self.elements: Dict[str, ModelElement] = {e.id: e for e in model.elements}
        self.entities: Dict[str, Entity] = {**self.diagrams, **self.elements}

        self._by_target: Dict[str, List[Bdr]] = defaultdict(list)
        for bdr in model.bdrs:
            self._by_target[bdr.target].append(bdr)

        self._intra_by_artifact: Dict[str, List[IntraDependency]] = defaultdict(list)
        for dep in model.intra_deps:
            self._intra_by_artifact[dep.target].append(dep)
            if dep.source != dep.target:
                self._intra_by_artifact[dep.source].append(dep)

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self.entities

    def entity(self, entity_id: str) -> Entity:
        return self.entities[entity_id]

    def diagram_of(self, entity_id: str) -> str:
        """Diagram id an entity is drawn in; a diagram is its own diagram"""
        entity = self.entities[entity_id]
        if isinstance(entity, Diagram):
            return entity.id
        return entity.diagram

    def phase_of(self, entity_id: str) -> Phase:
        return self.phases[self.diagrams[self.diagram_of(entity_id)].phase]

    def kind_of(self, entity_id: str) -> str:
        return kind_name(self.entities[entity_id])

    def bdrs_targeting(self, entity_id: str) -> List[Bdr]:
        return self._by_target.get(entity_id, [])

    def intra_deps_of(self, artifact_id: str) -> List[IntraDependency]:
        """Intra-dependencies touching an artifact at either end"""
        return self._intra_by_artifact.get(artifact_id, [])

    def elements_in(self, diagram_id: str) -> List[ModelElement]:
        return [e for e in self.model.elements if e.diagram == diagram_id]

    def is_containment(self, bdr: Bdr) -> bool:
        """Exist Together from a diagram to an element drawn in it"""
        if bdr.kind != BdrKind.EXIST_TOGETHER:
            return False
        target = self.entities.get(bdr.target)
        source = self.entities.get(bdr.source)
        return (
            isinstance(target, Diagram)
            and isinstance(source, ModelElement)
            and source.diagram == target.id
        )


def bdr_violations(index: ModelIndex, bdr: Bdr) -> List[str]:
    """Kind-specific invariant check for one BDR; empty when it holds"""
    problems: List[str] = []
    if bdr.target == bdr.source:
        return ["target and source are the same entity"]
    if bdr.target not in index or bdr.source not in index:
        return []  # reported as dangling references by validation

    target_phase = index.phase_of(bdr.target)
    source_phase = index.phase_of(bdr.source)
    relation = phase_relation(target_phase, source_phase)
    same_diagram = index.diagram_of(bdr.target) == index.diagram_of(bdr.source)

    if bdr.kind == BdrKind.EXIST_TOGETHER:
        target, source = index.entity(bdr.target), index.entity(bdr.source)
        if isinstance(source, Diagram):
            problems.append("ExistTogether source must be an element")
        elif isinstance(target, Diagram) and source.diagram != target.id:
            problems.append("ExistTogether target diagram must contain its source")
        elif isinstance(target, ModelElement) and not same_diagram:
            problems.append("ExistTogether needs a shared diagram or a diagram containing its source")
    elif bdr.kind == BdrKind.COPY:
        target, source = index.entity(bdr.target), index.entity(bdr.source)
        if relation != PhaseRelation.SAME or same_diagram:
            problems.append("Copy needs the same phase and different diagrams")
        if kind_name(target) != kind_name(source):
            problems.append("Copy needs the same kind")
        if normalize_name(target.name) != normalize_name(source.name):
            problems.append("Copy needs equivalent names")
    elif bdr.kind == BdrKind.INFORMATION_SHARING:
        if relation != PhaseRelation.SAME or same_diagram:
            problems.append("InformationSharing needs the same phase and different diagrams")
    elif bdr.kind == BdrKind.CONCEPT:
        if relation != PhaseRelation.ADJOINING:
            problems.append("Concept needs adjoining phases")
    return problems
