"""
gen-csw and gen-sub: Change Support Workflow generation
"""
from typing import Dict, List, Tuple
import argparse
import logging

from rich.table import Table

from changeflow.awareness.report import WarningReport, render_report
from changeflow.cli.common import (
    EXIT_OK,
    EXIT_STRICT,
    add_common_options,
    err_console,
    guarded,
    load_model,
    matrix_from,
    open_output,
    output_console,
    read_text,
)
from changeflow.config import settings
from changeflow.errors import NotCompositeError
from changeflow.rules.engine import generate_into
from changeflow.runtime.buildtime import buildtime_check
from changeflow.workflow.csw import Csw, PrecedencePair, csw_document, parse_csw_document
from changeflow.workflow.generator import expand_composite, generate_csw
from changeflow.workflow.grades import generate_subcsws, pipeline_constraints

logger = logging.getLogger(__name__)


def parse_expand(value: str) -> Tuple[str, List[str]]:
    """ACTIVITY=ROOT[,ROOT...]"""
    activity, sep, roots = value.partition("=")
    if not sep or not activity:
        raise argparse.ArgumentTypeError(f"expected ACTIVITY=ROOT[,ROOT...], got {value!r}")
    return activity, [r for r in roots.split(",") if r]


def load_csws(paths: List[str]) -> List[Csw]:
    csws: List[Csw] = []
    for path in paths:
        csws.extend(parse_csw_document(read_text(path)))
    return csws


def render_csws(csws: List[Csw], out) -> None:
    console = output_console(out)
    for csw in csws:
        table = Table(title=f"{csw.id} (grade {csw.grade}, root {csw.root_artifact}, {csw.state.value})")
        table.add_column("Activity", style="cyan")
        table.add_column("Writes", style="magenta")
        table.add_column("Reads", style="white")
        table.add_column("Composite", style="yellow")
        table.add_column("Branches", style="green")
        for a in csw.activities:
            table.add_row(
                a.id,
                ", ".join(sorted(a.write_set)),
                ", ".join(sorted(a.read_set)),
                "yes" if a.composite else "",
                ", ".join(a.child_workflows),
            )
        console.print(table)
        if csw.arcs:
            console.print("arcs: " + ", ".join(f"{a}->{b}" for a, b in sorted(csw.arcs)))


@guarded
def cmd_gen_csw(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    if args.auto_bdr:
        model = generate_into(model, matrix_from(args))

    csw = generate_csw(model, args.root, args.id, args.change_request or args.id)
    workflows = [csw]
    for activity_id, roots in args.expand:
        activity = csw.activity(activity_id)
        if activity is None:
            raise NotCompositeError(f"{csw.id} has no activity {activity_id!r}")
        workflows.extend(expand_composite(csw, activity, model, roots))

    warnings = buildtime_check(csw, load_csws(args.against))
    if warnings:
        render_report(WarningReport(build_time=warnings), err_console)

    with open_output(args.output) as out:
        if args.format == "human":
            render_csws(workflows, out)
        else:
            out.write(csw_document(workflows))
    return EXIT_STRICT if warnings and args.strict else EXIT_OK


@guarded
def cmd_gen_sub(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    existing = load_csws(args.csws)
    subs = generate_subcsws(model, existing, args.grade)

    lower_by_request: Dict[str, List[Csw]] = {}
    for csw in existing:
        if csw.grade == args.grade - 1:
            lower_by_request.setdefault(csw.change_request_id, []).append(csw)
    pipeline: List[PrecedencePair] = []
    for sub in subs:
        for lower in lower_by_request.get(sub.change_request_id, []):
            pipeline.extend(pipeline_constraints(lower, sub, model))
    logger.info("%d pipeline constraints", len(pipeline))

    with open_output(args.output) as out:
        if args.format == "human":
            render_csws(subs, out)
        else:
            out.write(csw_document(subs, pipeline))
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("gen-csw", help="Generate the CSW of a change root")
    parser.add_argument("model", help="Project-model document")
    parser.add_argument("root", help="Id of the change root")
    parser.add_argument("--id", default="W", help="Workflow id (default: W)")
    parser.add_argument("--change-request", default=None, help="Change request id (default: the workflow id)")
    parser.add_argument(
        "--expand", action="append", type=parse_expand, default=[], metavar="ACTIVITY=ROOT[,ROOT...]",
        help="Expand a composite activity into branch CSWs",
    )
    parser.add_argument(
        "--against", action="append", default=[], metavar="CSW_FILE",
        help="Check shared artifacts against the workflows in this document",
    )
    parser.add_argument("--auto-bdr", action="store_true", help="Generate BDRs before the analysis")
    parser.add_argument("--strict", action="store_true", default=settings.STRICT, help="Exit 4 on warnings")
    add_common_options(parser)
    parser.set_defaults(func=cmd_gen_csw)

    parser = subparsers.add_parser("gen-sub", help="Generate higher-grade sub-CSWs")
    parser.add_argument("model", help="Project-model document")
    parser.add_argument("csws", nargs="+", help="CSW documents of the lower grades")
    parser.add_argument("--grade", type=int, default=2, help="Grade to generate (default: 2)")
    add_common_options(parser)
    parser.set_defaults(func=cmd_gen_sub)
