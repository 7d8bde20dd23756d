"""
Warning report: JSON document and rich table rendering
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List
import json

from rich.console import Console
from rich.table import Table
from rich.text import Text

from changeflow.awareness.detectors import InconsistencyWarning, canonical
from changeflow.awareness.resolutions import suggest_resolutions
from changeflow.config import settings
from changeflow.runtime.buildtime import BuildTimeWarning


@dataclass
class WarningReport:
    warnings: List[InconsistencyWarning] = field(default_factory=list)
    build_time: List[BuildTimeWarning] = field(default_factory=list)

    def __post_init__(self):
        self.warnings = canonical(self.warnings)

    @property
    def confirmed(self) -> List[InconsistencyWarning]:
        return [w for w in self.warnings if w.confirmed]

    def __len__(self) -> int:
        return len(self.warnings) + len(self.build_time)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schemaVersion": settings.SCHEMA_VERSION,
            "warnings": [
                {**w.to_dict(), "resolutions": [r.to_dict() for r in suggest_resolutions(w)]}
                for w in self.warnings
            ],
            "buildTime": [
                {**b.to_dict(), "resolutions": [r.to_dict() for r in suggest_resolutions(b)]}
                for b in self.build_time
            ],
        }


def report_document(report: WarningReport) -> str:
    return json.dumps(report.to_dict(), indent=settings.JSON_INDENT) + "\n"


def _format_time(value: float) -> str:
    return f"{value:g}"


def render_report(report: WarningReport, console: Console) -> None:
    """Print the report as rich tables"""
    if not len(report):
        console.print("No inconsistencies detected.")
        return

    if report.warnings:
        table = Table(title="Inconsistency Warnings")
        table.add_column("Detected", style="cyan", justify="right")
        table.add_column("Kind", style="bold")
        table.add_column("Status", style="yellow")
        table.add_column("Activities", style="green")
        table.add_column("Artifacts (versions)", style="magenta")
        table.add_column("Evidence", style="white")
        for w in report.warnings:
            versions = w.versions()
            table.add_row(
                _format_time(w.detection_time),
                w.kind.value,
                "confirmed" if w.confirmed else "possible",
                Text(", ".join(str(a) for a in w.activities)),
                Text(", ".join(f"{a} v" + ",".join(map(str, versions[a])) for a in w.artifacts)),
                " ".join(str(e.event_id) for e in w.evidence),
            )
        console.print(table)

    if report.build_time:
        table = Table(title="Build-time Warnings")
        table.add_column("Kind", style="bold")
        table.add_column("Workflow", style="green")
        table.add_column("Other", style="green")
        table.add_column("Shared", style="magenta")
        table.add_column("Suggestion", style="white")
        for b in report.build_time:
            table.add_row(
                b.kind.value,
                Text(b.workflow),
                Text(b.other_workflow),
                Text(", ".join(b.artifacts)),
                Text(b.suggestion),
            )
        console.print(table)
