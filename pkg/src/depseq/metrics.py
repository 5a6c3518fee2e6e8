"""Attachment scores."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .conllu import Treebank
from .validation import check_aligned


@dataclass(frozen=True)
class EvalResult:
    uas: float
    las: float
    n: int
    repairs: dict[str, int] = field(default_factory=dict)

    def __str__(self) -> str:
        rep = ",".join(f"{k}={v}" for k, v in sorted(self.repairs.items()))
        return f"UAS={self.uas:.4f} LAS={self.las:.4f} n={self.n}" + (f" repairs={rep}" if rep else "")

    def to_dict(self) -> dict:
        return {"uas": self.uas, "las": self.las, "n": self.n, "repairs": dict(sorted(self.repairs.items()))}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def attachment_scores(gold: Treebank, predicted: Treebank, repairs: Counter | dict | None = None) -> EvalResult:
    """UAS and LAS over all syntactic words, punctuation included."""
    check_aligned(gold, predicted)
    n = heads_ok = both_ok = 0
    for g_sent, p_sent in zip(gold, predicted):
        for g, p in zip(g_sent.tokens, p_sent.tokens):
            n += 1
            if g.head == p.head:
                heads_ok += 1
                if g.deprel == p.deprel:
                    both_ok += 1
    if n == 0:
        raise ValueError("cannot score an empty treebank")
    reps = {k: int(v) for k, v in (repairs or {}).items() if v}
    return EvalResult(heads_ok / n, both_ok / n, n, reps)
