"""
Shared plumbing for the subcommands: file I/O, output formats, exit codes
"""
from contextlib import contextmanager
from functools import wraps
from pathlib import Path
from typing import Callable, Iterator, Optional, TextIO
import argparse
import logging
import sys

from rich.console import Console
from rich.markup import escape

from changeflow.config import settings
from changeflow.db.models import ProjectModel
from changeflow.errors import ChangeflowError, ProtocolError, ValidationFailure
from changeflow.ingest.parser import parse_model
from changeflow.rules.addition import AdditionMatrix, get_addition_matrix, load_addition_matrix

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_PROTOCOL = 3
EXIT_STRICT = 4

err_console = Console(stderr=True, highlight=False)

Command = Callable[[argparse.Namespace], int]


def report_error(message: str) -> None:
    err_console.print(f"[bold red]error:[/bold red] {escape(message)}", soft_wrap=True)


def guarded(command: Command) -> Command:
    """Map changeflow errors to exit codes; diagnostics go to standard error"""

    @wraps(command)
    def wrapper(args: argparse.Namespace) -> int:
        try:
            return command(args)
        except OSError as e:
            report_error(f"I/O error: {e}")
            return EXIT_IO
        except ProtocolError as e:
            report_error(f"{type(e).__name__}: {e}")
            return EXIT_PROTOCOL
        except ValidationFailure as e:
            report_error(type(e).__name__)
            for violation in e.violations:
                err_console.print(f"  {violation}", markup=False, soft_wrap=True)
            return EXIT_INVALID
        except ChangeflowError as e:
            report_error(f"{type(e).__name__}: {e}")
            return EXIT_INVALID

    return wrapper


def read_text(path: str) -> bytes:
    return Path(path).read_bytes()


def load_model(path: str) -> ProjectModel:
    doc = parse_model(read_text(path))
    logger.info("Loaded %s: %d diagrams, %d elements, %d BDRs",
                path, len(doc.model.diagrams), len(doc.model.elements), len(doc.model.bdrs))
    return doc.model


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """Standard output for None or "-", otherwise the named file"""
    if path in (None, "-"):
        yield sys.stdout
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        yield handle


def write_output(text: str, path: Optional[str]) -> None:
    with open_output(path) as handle:
        handle.write(text)


def output_console(handle: TextIO) -> Console:
    return Console(file=handle, highlight=False, markup=False, soft_wrap=True, width=120)


def add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-o", "--output", default=None,
        help="Write the result to this file (default: standard output)",
    )
    parser.add_argument(
        "--format", choices=settings.formats_list, default=settings.DEFAULT_FORMAT,
        help="json (machine-readable) or human (rich tables)",
    )
    parser.add_argument("--matrix", default=None, help="Addition-matrix override document")


def matrix_from(args: argparse.Namespace) -> AdditionMatrix:
    if getattr(args, "matrix", None):
        return load_addition_matrix(args.matrix)
    return get_addition_matrix()
