"""
Exception hierarchy

Validation errors collect every violation they found, each with a path-like
locator such as ``elements[3].diagram``, so a caller sees the whole list at once.
"""
from dataclasses import dataclass
from typing import List, Optional


@dataclass(frozen=True)
class Violation:
    """A single problem found while validating a document"""
    locator: str
    message: str

    def __str__(self) -> str:
        return f"{self.locator}: {self.message}" if self.locator else self.message


class ChangeflowError(Exception):
    """Base class for every error raised by changeflow"""


# ===== Document validation =====

class ValidationFailure(ChangeflowError):
    """An input document was rejected; ``violations`` lists every reason"""

    def __init__(self, violations: List[Violation]):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations[:5])
        if len(self.violations) > 5:
            summary += f"; ... ({len(self.violations) - 5} more)"
        super().__init__(summary)


class ModelValidationError(ValidationFailure):
    """A project-model document is invalid"""


class DocumentSyntaxError(ModelValidationError):
    """The document is not well-formed JSON"""


class SchemaError(ModelValidationError):
    """Missing, unknown or mistyped fields"""


class DanglingReferenceError(ModelValidationError):
    """An id reference does not resolve"""


class PhaseOrderError(ModelValidationError):
    """Phase orders are not unique and contiguous from 0"""


class InvariantError(ModelValidationError):
    """A stored BDR breaks the invariant of its kind"""


class ScenarioError(ValidationFailure):
    """A scenario document is invalid"""


class UnknownActivityError(ScenarioError):
    """An event or declaration names an activity that does not exist"""


class NonMonotonicTimeError(ScenarioError):
    """Event times are not strictly increasing"""


# ===== Dependency generation / workflow generation =====

class UnmappedKindError(ChangeflowError):
    """An entity kind has no Generation Model Element"""


class UnknownRootError(ChangeflowError):
    """The change root is not an entity of the model"""


class InvalidRootError(ChangeflowError):
    """A chosen branch root is not an Exist Together source of the composite activity"""


class NotCompositeError(ChangeflowError):
    """Branch expansion was requested for a non-composite activity"""


class GradeMismatchError(ChangeflowError):
    """Pipeline constraints need workflows of adjoining grades"""


class CyclicWorkflowError(ChangeflowError):
    """Generated flow arcs do not form a DAG"""


# ===== Execution =====

class IllegalTransitionError(ChangeflowError):
    """A workflow lifecycle transition outside Planning -> Executing -> Finished"""


class ProtocolError(ChangeflowError):
    """A check-out/check-in request breaks the store protocol"""

    def __init__(self, message: str, locator: Optional[str] = None):
        self.locator = locator
        self.message = message
        super().__init__(f"{locator}: {message}" if locator else message)

    def at(self, locator: str) -> "ProtocolError":
        """Return a copy of this error bound to a scenario locator"""
        return type(self)(self.message, locator)


class WorkflowNotExecutingError(ProtocolError):
    pass


class TimeOrderError(ProtocolError):
    pass


class NoOpenCheckoutError(ProtocolError):
    pass


class UndeclaredArtifactError(ProtocolError):
    pass


class DuplicateCheckoutError(ProtocolError):
    pass
