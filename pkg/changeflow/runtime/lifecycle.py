"""
CSW lifecycle: Planning -> Executing -> Finished
"""
import logging

from changeflow.db.models import WorkflowState
from changeflow.errors import IllegalTransitionError
from changeflow.workflow.csw import Csw

logger = logging.getLogger(__name__)

_NEXT = {
    WorkflowState.PLANNING: WorkflowState.EXECUTING,
    WorkflowState.EXECUTING: WorkflowState.FINISHED,
}


def _advance(csw: Csw, expected: WorkflowState) -> Csw:
    if csw.state != expected:
        raise IllegalTransitionError(
            f"{csw.id}: cannot move from {csw.state.value} to {_NEXT[expected].value}"
        )
    csw.state = _NEXT[expected]
    logger.info("Workflow %s is now %s", csw.id, csw.state.value)
    return csw


def start_workflow(csw: Csw) -> Csw:
    return _advance(csw, WorkflowState.PLANNING)


def finish_workflow(csw: Csw) -> Csw:
    """Finish an executing workflow; every activity must have a decided finish time"""
    unfinished = [a.id for a in csw.activities if a.interval.finish is None]
    if csw.state == WorkflowState.EXECUTING and unfinished:
        raise IllegalTransitionError(f"{csw.id}: activities {unfinished} have not finished")
    return _advance(csw, WorkflowState.EXECUTING)
