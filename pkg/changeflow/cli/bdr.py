"""
gen-bdr: generate Basic Dependency Relationships for a project model
"""
import argparse
import logging

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
from changeflow.errors import InvariantError, Violation
from changeflow.ingest.parser import model_document, serialize_model
from changeflow.rules.engine import generate_into, replay_trace

logger = logging.getLogger(__name__)


@guarded
def cmd_gen_bdr(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    matrix = matrix_from(args)
    generated = generate_into(model, matrix)

    if args.verify:
        problems = [
            Violation(f"bdrs[{i}]", f"trace does not re-derive {bdr.kind.value} {bdr.target} <- {bdr.source}")
            for i, bdr in enumerate(generated.bdrs)
            if replay_trace(generated, bdr, matrix) != bdr.kind
        ]
        if problems:
            raise InvariantError(problems)
        logger.info("Verified %d rule traces", len(generated.bdrs))

    with open_output(args.output) as out:
        if args.format == "human":
            table = Table(title=f"Generated BDRs ({len(generated.bdrs)})")
            table.add_column("Target", style="cyan")
            table.add_column("Source", style="cyan")
            table.add_column("Kind", style="bold")
            table.add_column("Rule trace", style="white")
            for bdr in generated.bdrs:
                table.add_row(bdr.target, bdr.source, bdr.kind.value, "\n".join(bdr.rule_trace))
            output_console(out).print(table)
        else:
            out.write(serialize_model(model_document(generated)))
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("gen-bdr", help="Generate BDRs for a project model")
    parser.add_argument("model", help="Project-model document")
    parser.add_argument("--verify", action="store_true", help="Replay every rule trace after generation")
    add_common_options(parser)
    parser.set_defaults(func=cmd_gen_bdr)
