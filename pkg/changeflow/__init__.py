"""
changeflow: dependency generation, change impact analysis and inconsistency
awareness for UML project models

Subpackages:
- db: project model types, model queries and the versioned artifact store
- ingest: model and scenario documents
- rules: BDR generation rules and engine
- impact: dependency graphs and DOT export
- workflow: Change Support Workflow generation
- runtime: workflow lifecycle and scenario replay
- awareness: inconsistency detection and resolutions
- cli: command-line front end
"""
from changeflow.config import settings

__version__ = settings.APP_VERSION

__all__ = ["settings", "__version__"]
