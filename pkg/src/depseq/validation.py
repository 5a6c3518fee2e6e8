"""Input checks shared by the estimators and the pipeline functions."""
from __future__ import annotations

from typing import Sequence

from .conllu import DepTree, Treebank, TreeValidationError, validate_tree


def check_treebank(tb, *, allow_empty: bool = False, validate: bool = False) -> Treebank:
    """Coerce ``tb`` to a :class:`Treebank` and optionally validate every tree."""
    if isinstance(tb, DepTree):
        tb = Treebank((tb,))
    elif not isinstance(tb, Treebank):
        sents = tuple(tb)
        if not all(isinstance(s, DepTree) for s in sents):
            raise TypeError("expected a Treebank or a sequence of DepTree")
        tb = Treebank(sents)
    if not allow_empty and len(tb) == 0:
        raise ValueError("treebank is empty")
    if validate:
        for k, sent in enumerate(tb, start=1):
            validate_tree(sent, k)
    return tb


def check_aligned(gold: Treebank, other: Treebank | Sequence[Sequence]) -> None:
    """Raise unless ``other`` has the same sentence and word counts as ``gold``."""
    other_lens = [len(s) for s in other]
    if len(other_lens) != len(gold):
        raise ValueError(f"sentence count mismatch: {len(gold)} vs {len(other_lens)}")
    for k, (g, n) in enumerate(zip(gold, other_lens), start=1):
        if len(g) != n:
            raise ValueError(f"sentence {k}: {len(g)} words vs {n}")


def check_accuracy(value: float, name: str = "accuracy") -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")
    return value


def find_invalid(tb: Treebank) -> list[tuple[int, str]]:
    """``(sentence number, message)`` for every sentence that is not a rooted tree."""
    problems = []
    for k, sent in enumerate(tb, start=1):
        try:
            validate_tree(sent, k)
        except TreeValidationError as exc:
            problems.append((k, str(exc)))
    return problems
