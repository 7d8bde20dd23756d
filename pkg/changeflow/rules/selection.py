"""
Selection rules - pick the one BDR kind a candidate pair gets
"""
from dataclasses import dataclass
from typing import FrozenSet, Optional

from changeflow.db.models import BdrKind, PhaseRelation
from changeflow.db.queries import ModelIndex, kind_name, normalize_name, phase_relation
from changeflow.rules.comparison import CandidatePair


@dataclass(frozen=True)
class PairFacts:
    """What the selection table looks at for one pair"""
    relation: PhaseRelation
    same_diagram: bool
    same_kind: bool
    similar_names: bool

    @classmethod
    def of(cls, index: ModelIndex, target_id: str, source_id: str) -> "PairFacts":
        target, source = index.entity(target_id), index.entity(source_id)
        return cls(
            relation=phase_relation(index.phase_of(target_id), index.phase_of(source_id)),
            same_diagram=index.diagram_of(target_id) == index.diagram_of(source_id),
            same_kind=kind_name(target) == kind_name(source),
            similar_names=normalize_name(target.name) == normalize_name(source.name),
        )


@dataclass(frozen=True)
class Selection:
    kind: BdrKind
    cell: str

    @property
    def trace(self) -> str:
        return f"selection:{self.cell}"


def selection_cell(facts: PairFacts) -> Optional[Selection]:
    """The selection table, checked top to bottom; None for a "-" cell"""
    if facts.same_diagram:
        return Selection(BdrKind.EXIST_TOGETHER, "same-diagram")
    if facts.relation == PhaseRelation.SAME:
        if not facts.same_kind:
            return Selection(BdrKind.INFORMATION_SHARING, "same-phase/different-diagram/different-kind")
        if facts.similar_names:
            return Selection(BdrKind.COPY, "same-phase/different-diagram/same-kind/same-name")
        return None
    if facts.relation == PhaseRelation.ADJOINING:
        return Selection(BdrKind.CONCEPT, "adjoining-phase")
    return None


def select(pair: CandidatePair, candidates: FrozenSet[BdrKind], index: ModelIndex) -> Optional[Selection]:
    """Selected kind with its table cell, or None when the cell is empty or filtered out"""
    selection = selection_cell(PairFacts.of(index, pair.target, pair.source))
    if selection is None or selection.kind not in candidates:
        return None
    return selection


def select_bdr(pair: CandidatePair, candidates: FrozenSet[BdrKind], index: ModelIndex) -> Optional[BdrKind]:
    selection = select(pair, candidates, index)
    return selection.kind if selection else None
