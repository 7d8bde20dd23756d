"""Document ingestion: parse, validate and serialize model and scenario files"""
from changeflow.ingest.documents import ModelDocument, ScenarioDocument
from changeflow.ingest.parser import (
    parse_model,
    parse_scenario,
    serialize_model,
    serialize_scenario,
    validate_model,
    validate_scenario,
)

__all__ = [
    "ModelDocument", "ScenarioDocument",
    "parse_model", "serialize_model", "validate_model",
    "parse_scenario", "serialize_scenario", "validate_scenario",
]
