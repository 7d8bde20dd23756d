"""
impact: dependency graph of the artifacts a change to the root may affect
"""
import argparse
import json

from rich.table import Table

from changeflow.cli.common import (
    EXIT_OK,
    add_common_options,
    guarded,
    load_model,
    matrix_from,
    open_output,
    output_console,
)
from changeflow.config import settings
from changeflow.db.models import ProjectModel
from changeflow.impact.dot import export_dot
from changeflow.impact.graph import dependency_graph
from changeflow.rules.engine import generate_into


def entity_names(model: ProjectModel) -> dict:
    return {e.id: e.name for e in list(model.diagrams) + list(model.elements)}


@guarded
def cmd_impact(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    if args.auto_bdr:
        model = generate_into(model, matrix_from(args))
    graph = dependency_graph(model, args.root, follow_containment=args.containment)

    with open_output(args.output) as out:
        if args.dot:
            out.write(export_dot(graph, entity_names(model)))
        elif args.format == "human":
            names = entity_names(model)
            table = Table(title=f"Impact of {args.root}: {len(graph.vertices)} artifacts")
            table.add_column("Source", style="cyan")
            table.add_column("depends on", style="bold")
            table.add_column("Target", style="cyan")
            for edge in graph.sorted_edges():
                table.add_row(
                    f"{edge.source} {names.get(edge.source, '')}",
                    edge.kind,
                    f"{edge.target} {names.get(edge.target, '')}",
                )
            output_console(out).print(table)
        else:
            out.write(json.dumps(graph.to_dict(), indent=settings.JSON_INDENT) + "\n")
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("impact", help="Dependency graph of a change root")
    parser.add_argument("model", help="Project-model document")
    parser.add_argument("root", help="Id of the change root")
    parser.add_argument("--dot", action="store_true", help="Emit Graphviz DOT text")
    parser.add_argument("--auto-bdr", action="store_true", help="Generate BDRs before the analysis")
    parser.add_argument(
        "--containment", action=argparse.BooleanOptionalAction, default=True,
        help="Follow diagram-containment Exist Together BDRs",
    )
    add_common_options(parser)
    parser.set_defaults(func=cmd_impact)
