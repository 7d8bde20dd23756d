"""Change Support Workflow generation"""
from changeflow.workflow.csw import Activity, Csw, PrecedencePair, TimeInterval
from changeflow.workflow.generator import expand_composite, generate_csw, group_artifacts
from changeflow.workflow.grades import generate_subcsws, pipeline_constraints, schedule

__all__ = [
    "Activity", "Csw", "PrecedencePair", "TimeInterval",
    "expand_composite", "generate_csw", "group_artifacts",
    "generate_subcsws", "pipeline_constraints", "schedule",
]
