"""
BDR generation rules

Components:
- gme: element kinds abstracted to Generation Model Elements
- comparison: comparison rules and conditions
- addition: the addition matrix of candidate BDR kinds
- selection: picks one candidate from phase, diagram, kind and name facts
- engine: runs the pipeline over a model and resolves one BDR per pair
"""
from changeflow.rules.addition import AdditionMatrix, candidate_bdrs, get_addition_matrix
from changeflow.rules.comparison import COMPARISON_RULES, CandidatePair, compare
from changeflow.rules.engine import generate_bdrs, generate_into, replay_trace
from changeflow.rules.gme import GME, gme_of
from changeflow.rules.selection import select_bdr

__all__ = [
    "AdditionMatrix", "candidate_bdrs", "get_addition_matrix",
    "COMPARISON_RULES", "CandidatePair", "compare",
    "generate_bdrs", "generate_into", "replay_trace",
    "GME", "gme_of",
    "select_bdr",
]
