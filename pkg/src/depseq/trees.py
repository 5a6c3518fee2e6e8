"""Arc geometry and head repair."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .conllu import DepTree

Arc = tuple[int, int]  # (head, dependent)


@dataclass(frozen=True)
class CrossingPair:
    first: Arc
    second: Arc
    same_direction: bool


def arcs_cross(a: Arc, b: Arc) -> bool:
    """True iff exactly one endpoint of ``b`` lies strictly inside ``a``."""
    a_lo, a_hi = sorted(a)
    b_lo, b_hi = sorted(b)
    return a_lo < b_lo < a_hi < b_hi or b_lo < a_lo < b_hi < a_hi


def is_right_arc(arc: Arc) -> bool:
    return arc[0] < arc[1]


def crossing_arc_pairs(tree: DepTree) -> list[CrossingPair]:
    arcs = sorted(tree.arcs(), key=lambda a: (min(a), max(a)))
    pairs = []
    for i, a in enumerate(arcs):
        for b in arcs[i + 1:]:
            if min(b) >= max(a):
                break
            if arcs_cross(a, b):
                pairs.append(CrossingPair(a, b, is_right_arc(a) == is_right_arc(b)))
    return pairs


def is_projective(tree: DepTree) -> bool:
    # sweep: an arc opened inside another must close before it
    spans = sorted(((min(a), max(a)) for a in tree.arcs()), key=lambda s: (s[0], -s[1]))
    open_ends: list[int] = []
    for lo, hi in spans:
        while open_ends and open_ends[-1] <= lo:
            open_ends.pop()
        if open_ends and hi > open_ends[-1]:
            return False
        open_ends.append(hi)
    return True


def repair_heads(heads: Sequence[int | None], stats: Counter | None = None) -> list[int]:
    """Turn a partial head assignment into a rooted tree.

    Missing or out-of-range heads become 0; each cycle is broken by
    attaching its smallest member to the root.
    """
    n = len(heads)
    fixed: list[int] = []
    for i, h in enumerate(heads, start=1):
        if h is None or not 0 <= h <= n or h == i:
            if stats is not None:
                stats["headless"] += 1
            fixed.append(0)
        else:
            fixed.append(int(h))

    state = [0] * (n + 1)
    state[0] = 2
    for start in range(1, n + 1):
        path = []
        node = start
        while state[node] == 0:
            state[node] = 1
            path.append(node)
            node = fixed[node - 1]
        if state[node] == 1:
            cycle = path[path.index(node):]
            fixed[min(cycle) - 1] = 0
            if stats is not None:
                stats["cycles"] += 1
        for p in path:
            state[p] = 2
    return fixed


def repair_tree(heads: Sequence[int | None], deprels: Sequence[str],
                stats: Counter | None = None, **token_fields) -> DepTree:
    return DepTree.from_heads(repair_heads(heads, stats), deprels, **token_fields)
