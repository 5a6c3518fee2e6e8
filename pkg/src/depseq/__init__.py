"""Dependency-tree linearizations and their robustness to PoS-tag noise."""
from .conllu import (ConlluError, DepTree, Token, Treebank, TreeValidationError, parse_conllu,
                     read_conllu, resplit, validate_tree, write_conllu)
from .corruption import (CorruptionPlan, ErrorModel, PlanError, TagCorruptor, ToleranceError,
                         build_plan, corrupt, fit_error_model, tagging_accuracy)
from .encodings import ENCODINGS, EncodedSentence, decode, encode
from .linearizer import TreeLinearizer
from .metrics import EvalResult, attachment_scores
from .sweep import SweepConfig, SweepReport, run_sweep, sweep
from .tagger import BaselineTagger
from .trees import crossing_arc_pairs, is_projective, repair_heads, repair_tree

__version__ = "0.1.0"

__all__ = [
    "BaselineTagger", "ConlluError", "CorruptionPlan", "DepTree", "ENCODINGS", "EncodedSentence",
    "ErrorModel", "EvalResult", "PlanError", "SweepConfig", "SweepReport", "TagCorruptor", "Token",
    "ToleranceError", "TreeLinearizer", "TreeValidationError", "Treebank", "attachment_scores",
    "build_plan", "corrupt", "crossing_arc_pairs", "decode", "encode", "fit_error_model",
    "is_projective", "parse_conllu", "read_conllu", "repair_heads", "repair_tree", "resplit",
    "run_sweep", "sweep", "tagging_accuracy", "validate_tree", "write_conllu",
]
