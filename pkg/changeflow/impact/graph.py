"""
Dependency graphs of potentially impacted artifacts, and reachability over
BDRs and intra-dependencies
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Set
import logging

import networkx as nx

from changeflow.config import settings
from changeflow.db.models import BDR_KIND_ORDER, BdrKind, ProjectModel
from changeflow.db.queries import ModelIndex
from changeflow.errors import UnknownRootError

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    """Directed source -> target: the source depends on the target"""
    source: str
    target: str
    kind: str


def _edge_order(edge: Edge) -> tuple:
    try:
        rank = BDR_KIND_ORDER[BdrKind(edge.kind)]
    except ValueError:
        rank = len(BDR_KIND_ORDER)
    return (edge.source, edge.target, rank, edge.kind)


@dataclass
class DependencyGraph:
    root: str
    vertices: Set[str] = field(default_factory=set)
    edges: Set[Edge] = field(default_factory=set)

    def sorted_vertices(self) -> List[str]:
        return sorted(self.vertices)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges, key=_edge_order)

    def edges_of_kind(self, *kinds: BdrKind) -> List[Edge]:
        wanted = {k.value for k in kinds}
        return [e for e in self.sorted_edges() if e.kind in wanted]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.sorted_vertices())
        for edge in self.sorted_edges():
            graph.add_edge(edge.source, edge.target, kind=edge.kind)
        return graph

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schemaVersion": settings.SCHEMA_VERSION,
            "root": self.root,
            "vertices": self.sorted_vertices(),
            "edges": [
                {"source": e.source, "target": e.target, "kind": e.kind}
                for e in self.sorted_edges()
            ],
        }


def dependency_graph(model: ProjectModel, root: str, follow_containment: bool = True) -> DependencyGraph:
    """
    Fixed point from the change root: every BDR whose target is a vertex adds
    its source as a vertex and the source -> target edge.

    With ``follow_containment=False`` diagram-to-contained-element Exist
    Together BDRs are not followed, so the elements of a changed diagram stay
    outside the graph.
    """
    index = ModelIndex(model)
    if root not in index:
        raise UnknownRootError(f"unknown change root {root!r}")

    graph = DependencyGraph(root=root, vertices={root})
    pending = [root]
    while pending:
        vertex = pending.pop()
        for bdr in index.bdrs_targeting(vertex):
            if not follow_containment and index.is_containment(bdr):
                continue
            graph.edges.add(Edge(bdr.source, bdr.target, bdr.kind.value))
            if bdr.source not in graph.vertices:
                graph.vertices.add(bdr.source)
                pending.append(bdr.source)

    logger.info("Dependency graph from %s: %d vertices, %d edges", root, len(graph.vertices), len(graph.edges))
    return graph


class Dependencies:
    """
    Reachability over BDRs and intra-dependencies.

    ``reaches(a, b)`` is true when a transitively depends on b, following
    source -> target steps. It is reflexive.
    """

    def __init__(self, model: ProjectModel):
        self._graph = nx.DiGraph()
        self._graph.add_nodes_from(d.id for d in model.diagrams)
        self._graph.add_nodes_from(e.id for e in model.elements)
        self._graph.add_edges_from((b.source, b.target) for b in model.bdrs)
        self._graph.add_edges_from((d.source, d.target) for d in model.intra_deps)
        self._descendants: Dict[str, Set[str]] = {}

    def depends_on(self, artifact: str) -> Set[str]:
        """Everything ``artifact`` transitively depends on"""
        if artifact not in self._descendants:
            if artifact in self._graph:
                self._descendants[artifact] = nx.descendants(self._graph, artifact)
            else:
                self._descendants[artifact] = set()
        return self._descendants[artifact]

    def reaches(self, src: str, dst: str) -> bool:
        return src == dst or dst in self.depends_on(src)


def reaches(model: ProjectModel, src: str, dst: str) -> bool:
    return Dependencies(model).reaches(src, dst)
