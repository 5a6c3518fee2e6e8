"""Relative PoS-based head selection (rp_h).

A label ``(+n, X)`` says: the head is the n-th word to the right whose tag
is X; ``(-n, X)`` looks left. The artificial root sits at position 0 with
the reserved tag ``ROOT``, so every root attachment is ``(-1, ROOT)``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from ..conllu import DepTree
from ..trees import repair_tree

ROOT_TAG = "ROOT"


@dataclass(frozen=True, slots=True)
class HeadSelLabel:
    offset: int
    property: str

    def __post_init__(self):
        if self.offset == 0:
            raise ValueError("head-selection offset cannot be 0")
        if not self.property:
            raise ValueError("head-selection property must be non-empty")

    def __str__(self) -> str:
        return f"{self.offset:+d}@{self.property}"

    @classmethod
    def parse(cls, text: str) -> HeadSelLabel:
        offset, sep, prop = text.partition("@")
        if not sep:
            raise ValueError(f"not a head-selection label: {text!r}")
        return cls(int(offset), prop)


def encode_rph(tree: DepTree) -> list[HeadSelLabel]:
    tags = tree.upos
    labels = []
    for i, h in enumerate(tree.heads, start=1):
        if h == 0:
            labels.append(HeadSelLabel(-1, ROOT_TAG))
            continue
        x = tags[h - 1]
        if h > i:
            rank = sum(1 for j in range(i + 1, h + 1) if tags[j - 1] == x)
        else:
            rank = -sum(1 for j in range(h, i) if tags[j - 1] == x)
        labels.append(HeadSelLabel(rank, x))
    return labels


def resolve_head(i: int, label: HeadSelLabel, tags: Sequence[str],
                 stats: Counter | None = None) -> int:
    """Head of word ``i`` (1-based) under ``label`` against ``tags``.

    When fewer than ``|n|`` candidates exist the farthest one is used; with
    none at all the word goes to the root.
    """
    if label.property == ROOT_TAG:
        if label.offset > 0 and stats is not None:
            stats["unresolved"] += 1
        return 0
    n = len(tags)
    step = 1 if label.offset > 0 else -1
    want = abs(label.offset)
    found = 0
    last = None
    j = i + step
    while 1 <= j <= n:
        if tags[j - 1] == label.property:
            found += 1
            last = j
            if found == want:
                return j
        j += step
    if stats is not None:
        stats["clamped" if last is not None else "unresolved"] += 1
    return last if last is not None else 0


def decode_rph(labels: Sequence[HeadSelLabel], tags: Sequence[str], deprels: Sequence[str],
               stats: Counter | None = None, forms: Sequence[str] | None = None) -> DepTree:
    if len(labels) != len(tags):
        raise ValueError(f"{len(labels)} labels but {len(tags)} tags")
    heads = [resolve_head(i, lab, tags, stats) for i, lab in enumerate(labels, start=1)]
    return repair_tree(heads, deprels, stats, upos=list(tags), forms=forms)
