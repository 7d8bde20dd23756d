"""Project model types, model queries and the versioned artifact store"""
from changeflow.db import models, queries
from changeflow.db.database import ActivityRef, ChangeEvent, Version, VersionStore

__all__ = ["models", "queries", "ActivityRef", "ChangeEvent", "Version", "VersionStore"]
