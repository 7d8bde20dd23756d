"""
CSW generation from a change root

Artifacts linked by Copy or Information Sharing are changed together in one
activity; Concept BDRs order the activities from the abstract artifact to the
concrete one.
"""
from typing import Dict, List, Set
import logging

import networkx as nx

from changeflow.db.models import BdrKind, ProjectModel
from changeflow.db.queries import ModelIndex
from changeflow.errors import CyclicWorkflowError, InvalidRootError, NotCompositeError
from changeflow.impact.graph import DependencyGraph, dependency_graph
from changeflow.workflow.csw import Activity, Csw

logger = logging.getLogger(__name__)

GROUPING_KINDS = (BdrKind.COPY, BdrKind.INFORMATION_SHARING)


def group_artifacts(graph: DependencyGraph) -> List[Set[str]]:
    """Connected components under Copy / Information Sharing edges, ordered by smallest id"""
    undirected = nx.Graph()
    undirected.add_nodes_from(graph.vertices)
    undirected.add_edges_from((e.source, e.target) for e in graph.edges_of_kind(*GROUPING_KINDS))
    return sorted((set(c) for c in nx.connected_components(undirected)), key=min)


def _is_composite(index: ModelIndex, write_set: Set[str], artifacts: Set[str]) -> bool:
    for artifact in write_set:
        for bdr in index.bdrs_targeting(artifact):
            if bdr.kind == BdrKind.EXIST_TOGETHER and bdr.source not in artifacts:
                return True
    return False


def _assert_acyclic(csw: Csw) -> None:
    flow = nx.DiGraph()
    flow.add_nodes_from(a.id for a in csw.activities)
    flow.add_edges_from(csw.arcs)
    if not nx.is_directed_acyclic_graph(flow):
        cycle = nx.find_cycle(flow)
        raise CyclicWorkflowError(f"{csw.id}: flow arcs form a cycle {cycle}")


def generate_csw(
    model: ProjectModel,
    root: str,
    csw_id: str,
    change_request_id: str,
    grade: int = 1,
) -> Csw:
    """
    Build the CSW for a change root.

    The root's group is split: the root alone is written by activity 1, the
    rest of its group by activity 2. Every other group becomes one activity.
    Diagram containment is not followed, so a changed diagram's elements stay
    outside and make its activity composite.
    """
    graph = dependency_graph(model, root, follow_containment=False)
    index = ModelIndex(model)

    groups = group_artifacts(graph)
    root_group = next(g for g in groups if root in g)

    write_sets: List[Set[str]] = [{root}]
    if len(root_group) > 1:
        write_sets.append(root_group - {root})
    write_sets.extend(g for g in groups if g is not root_group)

    activities = [Activity(id=str(i), write_set=ws) for i, ws in enumerate(write_sets, start=1)]
    activity_of: Dict[str, str] = {}
    for activity in activities:
        for artifact in activity.write_set:
            activity_of[artifact] = activity.id

    arcs = set()
    if len(root_group) > 1:
        arcs.add(("1", "2"))
    for edge in graph.edges_of_kind(BdrKind.CONCEPT):
        a, b = activity_of[edge.target], activity_of[edge.source]
        if a != b:
            arcs.add((a, b))

    artifacts = set(graph.vertices)
    for activity in activities:
        activity.composite = _is_composite(index, activity.write_set, artifacts)

    csw = Csw(
        id=csw_id,
        change_request_id=change_request_id,
        root_artifact=root,
        activities=activities,
        arcs=arcs,
        grade=grade,
    )
    _assert_acyclic(csw)
    logger.info(
        "Generated CSW %s from %s: %d activities, %d arcs, %d composite",
        csw_id, root, len(activities), len(arcs), sum(a.composite for a in activities),
    )
    return csw


def branch_roots(activity: Activity, model: ProjectModel) -> List[str]:
    """Sources of Exist Together BDRs whose target the activity writes"""
    return sorted({
        bdr.source
        for bdr in model.bdrs
        if bdr.kind == BdrKind.EXIST_TOGETHER and bdr.target in activity.write_set
    })


def expand_composite(
    parent: Csw,
    activity: Activity,
    model: ProjectModel,
    chosen_roots: List[str],
) -> List[Csw]:
    """
    One branch CSW per chosen root of a composite activity.

    Branch ids are ``<parent>.<activity>.<k>``; the activity records its
    children and that the decision was made.
    """
    if not activity.composite:
        raise NotCompositeError(f"{parent.id}: activity {activity.id} is not composite")
    allowed = set(branch_roots(activity, model))
    seen: Set[str] = set()
    for root in chosen_roots:
        if root not in allowed:
            raise InvalidRootError(
                f"{parent.id}: {root!r} is not an Exist Together source of activity {activity.id}"
            )
        if root in seen:
            raise InvalidRootError(f"{parent.id}: {root!r} chosen twice for activity {activity.id}")
        seen.add(root)

    branches = []
    for root in chosen_roots:
        branch_id = f"{parent.id}.{activity.id}.{len(activity.child_workflows) + 1}"
        branches.append(generate_csw(model, root, branch_id, parent.change_request_id))
        activity.child_workflows.append(branch_id)
    activity.branches_decided = True
    logger.info("Expanded %s activity %s into %d branches", parent.id, activity.id, len(branches))
    return branches
