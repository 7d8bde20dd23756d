"""
Addition rules - the (target GME, source GME) -> candidate BDR kinds matrix

The default matrix admits all four kinds for every GME pair some comparison
rule can produce. Relationship, transition and message GMEs appear in no
comparison rule, so they get no candidates. An override document replaces
individual entries.
"""
from pathlib import Path
from typing import Dict, FrozenSet, List, Literal, Optional, Set, Tuple
import logging

from pydantic import Field

from changeflow.config import settings
from changeflow.db.models import BdrKind, DocumentModel
from changeflow.ingest.parser import Text, load_document
from changeflow.rules.comparison import COMPARISON_RULES
from changeflow.rules.gme import GME, possible_gmes

logger = logging.getLogger(__name__)

GmePair = Tuple[GME, GME]
ALL_KINDS: FrozenSet[BdrKind] = frozenset(BdrKind)


# ===== Override document =====

class MatrixRule(DocumentModel):
    target: GME
    source: GME
    kinds: List[BdrKind] = Field(default_factory=list)


class AdditionMatrixDocument(DocumentModel):
    schema_version: Literal["1"]
    rules: List[MatrixRule] = Field(default_factory=list)


class AdditionMatrix:
    """
    Registry of candidate BDR kinds per GME pair.

    Usage:
        matrix = AdditionMatrix.default()
        matrix.allow(GME.CLASSIFIER, GME.INSTANCE, {BdrKind.INFORMATION_SHARING})
        matrix.candidates(GME.CLASSIFIER, GME.INSTANCE)
    """

    def __init__(self, entries: Optional[Dict[GmePair, FrozenSet[BdrKind]]] = None):
        self._entries: Dict[GmePair, FrozenSet[BdrKind]] = dict(entries or {})

    @classmethod
    def default(cls) -> "AdditionMatrix":
        matrix = cls()
        for rule in COMPARISON_RULES:
            for target in possible_gmes(rule.target_kind):
                for source in possible_gmes(rule.source_kind):
                    matrix.allow(target, source, ALL_KINDS)
        return matrix

    def allow(self, target: GME, source: GME, kinds: Set[BdrKind]) -> None:
        """Set the candidate kinds for one pair, replacing any previous entry"""
        self._entries[(target, source)] = frozenset(kinds)

    def candidates(self, target: GME, source: GME) -> FrozenSet[BdrKind]:
        return self._entries.get((target, source), frozenset())

    def count(self) -> int:
        return len(self._entries)

    def apply(self, doc: AdditionMatrixDocument) -> "AdditionMatrix":
        """Copy of this matrix with the document's rules applied on top"""
        merged = AdditionMatrix(self._entries)
        for rule in doc.rules:
            merged.allow(rule.target, rule.source, set(rule.kinds))
        return merged


def parse_matrix(text: Text) -> AdditionMatrixDocument:
    return load_document(AdditionMatrixDocument, text)


def load_addition_matrix(path: str) -> AdditionMatrix:
    """Default matrix overridden by the document at ``path``"""
    doc = parse_matrix(Path(path).read_bytes())
    matrix = AdditionMatrix.default().apply(doc)
    logger.info("Loaded %d addition-matrix overrides from %s", len(doc.rules), path)
    return matrix


def candidate_bdrs(target: GME, source: GME, matrix: Optional[AdditionMatrix] = None) -> FrozenSet[BdrKind]:
    """Candidate BDR kinds for a GME pair"""
    return (matrix or get_addition_matrix()).candidates(target, source)


# ─── Singleton ───────────────────────────────────────────────────────────────

_matrix: Optional[AdditionMatrix] = None


def get_addition_matrix() -> AdditionMatrix:
    """Get or create the configured addition matrix"""
    global _matrix
    if _matrix is None:
        if settings.ADDITION_MATRIX_PATH:
            _matrix = load_addition_matrix(settings.ADDITION_MATRIX_PATH)
        else:
            _matrix = AdditionMatrix.default()
    return _matrix
