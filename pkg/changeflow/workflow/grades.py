"""
Graded sub-CSWs and pipeline scheduling

A grade-n CSW is rooted at an artifact that has an intra-dependency with an
artifact written by a grade-(n-1) CSW and appears in no existing CSW.
"""
from collections import defaultdict
from typing import Dict, List, Set, Tuple
import logging

import networkx as nx

from changeflow.db.models import ProjectModel
from changeflow.errors import CyclicWorkflowError, GradeMismatchError
from changeflow.workflow.csw import Csw, PrecedencePair
from changeflow.workflow.generator import generate_csw

logger = logging.getLogger(__name__)

ScheduleEntry = Tuple[str, str]  # (workflow id, activity id)


def _intra_neighbours(model: ProjectModel) -> Dict[str, Set[str]]:
    neighbours: Dict[str, Set[str]] = defaultdict(set)
    for dep in model.intra_deps:
        neighbours[dep.target].add(dep.source)
        neighbours[dep.source].add(dep.target)
    return neighbours


def generate_subcsws(model: ProjectModel, existing: List[Csw], grade: int) -> List[Csw]:
    """Grade-``grade`` CSWs spread from the grade-(grade-1) CSWs in ``existing``"""
    if grade < 2:
        raise GradeMismatchError(f"sub-CSWs start at grade 2, got {grade}")

    neighbours = _intra_neighbours(model)
    covered: Set[str] = set()
    for csw in existing:
        covered |= csw.artifacts

    lower_by_request: Dict[str, List[Csw]] = defaultdict(list)
    for csw in existing:
        if csw.grade == grade - 1:
            lower_by_request[csw.change_request_id].append(csw)

    generated: List[Csw] = []
    for request_id in sorted(lower_by_request):
        written: Set[str] = set()
        for csw in lower_by_request[request_id]:
            written |= csw.written
        roots = sorted({n for artifact in written for n in neighbours.get(artifact, ())} - covered)

        k = 0
        for root in roots:
            if root in covered:
                continue
            k += 1
            sub = generate_csw(model, root, f"{request_id}.G{grade}.{k}", request_id, grade=grade)
            covered |= sub.artifacts
            generated.append(sub)

    logger.info("Generated %d grade-%d sub-CSWs", len(generated), grade)
    return generated


def pipeline_constraints(lower: Csw, higher: Csw, model: ProjectModel) -> List[PrecedencePair]:
    """Each intra-dependency between the two workflows' written artifacts orders their activities"""
    if higher.grade != lower.grade + 1:
        raise GradeMismatchError(
            f"{lower.id} (grade {lower.grade}) and {higher.id} (grade {higher.grade}) are not adjoining grades"
        )

    pairs: Set[PrecedencePair] = set()
    for dep in model.intra_deps:
        for a, b in ((dep.target, dep.source), (dep.source, dep.target)):
            low, high = lower.writer_of(a), higher.writer_of(b)
            if low is None or high is None:
                continue
            pairs.add(PrecedencePair(lower.id, low.id, higher.id, high.id, (a, b)))
    return sorted(pairs, key=lambda p: (p.lower_activity, p.higher_activity, p.via))


def schedule(csws: List[Csw], constraints: List[PrecedencePair]) -> List[ScheduleEntry]:
    """
    Pipeline-mode order: a topological order over every workflow's flow arcs
    plus the precedence pairs, ties broken by (workflow id, activity id).
    Branch workflows do not block their parent.
    """
    graph = nx.DiGraph()
    for csw in csws:
        graph.add_nodes_from((csw.id, a.id) for a in csw.activities)
        graph.add_edges_from(((csw.id, a), (csw.id, b)) for a, b in csw.arcs)
    for pair in constraints:
        graph.add_edge((pair.lower_workflow, pair.lower_activity), (pair.higher_workflow, pair.higher_activity))
    try:
        return list(nx.lexicographical_topological_sort(graph))
    except nx.NetworkXUnfeasible:
        raise CyclicWorkflowError("flow arcs and pipeline constraints form a cycle") from None
