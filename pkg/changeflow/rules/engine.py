"""
BDR generation pipeline

Five steps over a validated model:
1. comparison sweep over the (target kind, source kind) pairs of the comparison table
2. GME retrieval for each matching pair
3. candidate kinds from the addition matrix
4. selection of a single kind
5. addition, with orientation fix-up for Concept and one BDR per entity pair
"""
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional
import logging

from changeflow.db.models import Bdr, BdrKind, Entity, ProjectModel
from changeflow.db.queries import ModelIndex, kind_name
from changeflow.rules.addition import AdditionMatrix, get_addition_matrix
from changeflow.rules.comparison import (
    COMPARISON_RULES,
    CandidatePair,
    compare,
    comparison_trace,
    rule_for,
)
from changeflow.rules.gme import gme_of
from changeflow.rules.selection import select

logger = logging.getLogger(__name__)

FLIPPED = "orientation:flipped"


@dataclass
class Proposal:
    """A BDR proposed by one oriented candidate pair"""
    target: str
    source: str
    kind: BdrKind
    row: int
    include: bool
    trace: List[str] = field(default_factory=list)

    @property
    def rank(self) -> tuple:
        return (not self.include, self.row, self.target, self.source)


def _propose(index: ModelIndex, matrix: AdditionMatrix, target: Entity, source: Entity) -> Optional[Proposal]:
    """Steps 1-5 for one oriented pair"""
    matched = compare(target, source)
    if not matched:
        return None
    pair = CandidatePair(target.id, source.id, frozenset(matched), rule_for(target, source))

    target_gme, source_gme = gme_of(target, index), gme_of(source, index)
    candidates = matrix.candidates(target_gme, source_gme)
    selection = select(pair, candidates, index)
    if selection is None:
        return None

    trace = comparison_trace(pair, target, source)
    trace.append(f"gme:{target_gme.value}/{source_gme.value}")
    trace.append(selection.trace)
    proposal = Proposal(target.id, source.id, selection.kind, pair.rule.row, pair.from_include, trace)

    # the source of a Concept BDR is the later-phase, more concrete element
    if selection.kind == BdrKind.CONCEPT and index.phase_of(source.id).order < index.phase_of(target.id).order:
        proposal.target, proposal.source = source.id, target.id
        proposal.trace.append(FLIPPED)
    return proposal


def _merge_traces(traces: List[List[str]]) -> List[str]:
    merged: List[str] = []
    for trace in traces:
        for entry in trace:
            if entry not in merged:
                merged.append(entry)
    return merged


def _resolve(proposals: List[Proposal]) -> Bdr:
    """One BDR for an unordered entity pair"""
    by_key: Dict[tuple, List[Proposal]] = defaultdict(list)
    for p in proposals:
        by_key[(p.target, p.source, p.kind)].append(p)

    best_key = min(by_key, key=lambda k: min(p.rank for p in by_key[k]))
    winners = sorted(by_key[best_key], key=lambda p: p.rank)
    target, source, kind = best_key
    return Bdr(target=target, source=source, kind=kind, rule_trace=_merge_traces([p.trace for p in winners]))


def generate_bdrs(model: ProjectModel, matrix: Optional[AdditionMatrix] = None) -> List[Bdr]:
    """
    Generate every BDR the rules support for a validated model.

    Output is sorted by (target id, source id, kind) and carries a rule trace
    per BDR. Existing BDRs in the model are ignored.
    """
    matrix = matrix or get_addition_matrix()
    index = ModelIndex(model)

    by_kind: Dict[str, List[Entity]] = defaultdict(list)
    for entity in list(model.diagrams) + list(model.elements):
        by_kind[kind_name(entity)].append(entity)

    compared = 0
    per_pair: Dict[FrozenSet[str], List[Proposal]] = defaultdict(list)
    for rule in COMPARISON_RULES:
        for target in by_kind.get(rule.target_kind, []):
            for source in by_kind.get(rule.source_kind, []):
                if target.id == source.id:
                    continue
                compared += 1
                proposal = _propose(index, matrix, target, source)
                if proposal is not None:
                    per_pair[frozenset((target.id, source.id))].append(proposal)

    bdrs = sorted((_resolve(proposals) for proposals in per_pair.values()), key=lambda b: b.key)
    logger.info(
        "BDR generation: %d pairs compared, %d proposals, %d BDRs",
        compared, sum(len(p) for p in per_pair.values()), len(bdrs),
    )
    return bdrs


def generate_into(model: ProjectModel, matrix: Optional[AdditionMatrix] = None) -> ProjectModel:
    """Copy of the model carrying freshly generated BDRs"""
    return model.with_bdrs(generate_bdrs(model, matrix))


def replay_trace(model: ProjectModel, bdr: Bdr, matrix: Optional[AdditionMatrix] = None) -> Optional[BdrKind]:
    """
    Re-derive a BDR from its trace.

    Returns the kind the rules give for the orientation the trace records, or
    None when the rules no longer produce this BDR or the trace names steps
    the derivation does not take.
    """
    matrix = matrix or get_addition_matrix()
    index = ModelIndex(model)
    if bdr.target not in index or bdr.source not in index:
        return None

    orientations = [(bdr.target, bdr.source)]
    if FLIPPED in bdr.rule_trace:
        orientations.append((bdr.source, bdr.target))

    for target_id, source_id in orientations:
        proposal = _propose(index, matrix, index.entity(target_id), index.entity(source_id))
        if proposal is None:
            continue
        if (proposal.target, proposal.source, proposal.kind) != (bdr.target, bdr.source, bdr.kind):
            continue
        if all(entry in bdr.rule_trace for entry in proposal.trace):
            return proposal.kind
    return None
