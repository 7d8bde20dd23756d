"""Workflow lifecycle, build-time checks and scenario replay"""
from changeflow.runtime.buildtime import BuildTimeWarning, buildtime_check
from changeflow.runtime.lifecycle import finish_workflow, start_workflow
from changeflow.runtime.runner import ReplayResult, ScenarioRunner, replay_scenario

__all__ = [
    "BuildTimeWarning", "buildtime_check",
    "finish_workflow", "start_workflow",
    "ReplayResult", "ScenarioRunner", "replay_scenario",
]
