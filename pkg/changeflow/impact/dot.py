"""
Graphviz DOT export of a dependency graph

Grammar:
    digraph dependencies {
        rankdir=BT;
        node [shape=box];
        "<id>" [label="<id>\\n<name>"];              one per vertex, sorted by id
        "<root>" [label="...", peripheries=2];       the change root
        "<src>" -> "<dst>" [label="<Kind>", color="<color>"];
    }
Edges are sorted by (source, target, kind); one color per BDR kind.
"""
from typing import Dict, Optional

from changeflow.db.models import BdrKind
from changeflow.impact.graph import DependencyGraph

EDGE_COLORS: Dict[str, str] = {
    BdrKind.EXIST_TOGETHER.value: "gray40",
    BdrKind.INFORMATION_SHARING.value: "blue",
    BdrKind.COPY.value: "darkgreen",
    BdrKind.CONCEPT.value: "red",
}
INTRA_COLOR = "black"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _quote(text: str) -> str:
    return f'"{_escape(text)}"'


def export_dot(graph: DependencyGraph, names: Optional[Dict[str, str]] = None) -> str:
    """Render the graph as DOT text; ``names`` adds entity names to node labels"""
    names = names or {}
    lines = [
        "digraph dependencies {",
        "    rankdir=BT;",
        "    node [shape=box];",
    ]
    for vertex in graph.sorted_vertices():
        label = _escape(vertex)
        if vertex in names:
            label += "\\n" + _escape(names[vertex])
        attrs = f'label="{label}"'
        if vertex == graph.root:
            attrs += ", peripheries=2"
        lines.append(f"    {_quote(vertex)} [{attrs}];")
    for edge in graph.sorted_edges():
        color = EDGE_COLORS.get(edge.kind, INTRA_COLOR)
        lines.append(f'    {_quote(edge.source)} -> {_quote(edge.target)} [label="{edge.kind}", color="{color}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
