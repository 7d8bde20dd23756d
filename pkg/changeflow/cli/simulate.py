"""
simulate: replay a scenario through the version store and the online monitor
"""
import argparse
import logging

from changeflow.awareness.detectors import detect_all
from changeflow.awareness.monitor import InconsistencyMonitor
from changeflow.awareness.report import WarningReport, render_report, report_document
from changeflow.cli.common import (
    EXIT_OK,
    EXIT_STRICT,
    add_common_options,
    guarded,
    load_model,
    matrix_from,
    open_output,
    output_console,
    read_text,
    write_output,
)
from changeflow.cli.csw import load_csws
from changeflow.config import settings
from changeflow.db.database import event_log_document
from changeflow.impact.graph import Dependencies
from changeflow.ingest.parser import parse_scenario
from changeflow.rules.engine import generate_into
from changeflow.runtime.runner import replay_scenario

logger = logging.getLogger(__name__)


@guarded
def cmd_simulate(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    if args.auto_bdr:
        model = generate_into(model, matrix_from(args))
    csws = load_csws(args.csws)
    scenario = parse_scenario(read_text(args.scenario))

    result = replay_scenario(model, csws, scenario)
    deps = Dependencies(model)

    monitor = InconsistencyMonitor(deps, possibilities=args.possibilities)
    warnings = monitor.observe_all(result.log)
    if args.offline:
        warnings += detect_all(result.log, deps)
    report = WarningReport(warnings=warnings)
    logger.info("%d warnings (%d confirmed)", len(report.warnings), len(report.confirmed))

    if args.log:
        write_output(event_log_document(result.log), args.log)

    with open_output(args.output) as out:
        if args.format == "human":
            render_report(report, output_console(out))
        else:
            out.write(report_document(report))
    return EXIT_STRICT if len(report) and args.strict else EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Replay a scenario and detect inconsistencies")
    parser.add_argument("model", help="Project-model document (with BDRs)")
    parser.add_argument("scenario", help="Scenario document")
    parser.add_argument("csws", nargs="*", help="CSW documents backing the scenario's workflows")
    parser.add_argument("--log", default=None, help="Write the final event log to this file")
    parser.add_argument("--offline", action="store_true", help="Also run offline detection over the full log")
    parser.add_argument(
        "--possibilities", action=argparse.BooleanOptionalAction, default=settings.MONITOR_POSSIBILITIES,
        help="Report unconfirmed possibility warnings",
    )
    parser.add_argument("--auto-bdr", action="store_true", help="Generate BDRs before the replay")
    parser.add_argument("--strict", action="store_true", default=settings.STRICT, help="Exit 4 on warnings")
    add_common_options(parser)
    parser.set_defaults(func=cmd_simulate)
