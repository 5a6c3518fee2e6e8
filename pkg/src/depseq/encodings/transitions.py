"""Transition-based linearizations (ah_tb, c_tb).

A gold transition sequence is produced by a static oracle and cut into one
label per word at every read transition (SH).
"""
from __future__ import annotations

from collections import Counter
from typing import Sequence

from ..conllu import DepTree
from ..trees import is_projective, repair_tree

SH, LA, RA, NA = "SH", "LA", "RA", "NA"
ARC_HYBRID = "arc-hybrid"
COVINGTON = "covington"
_ACTIONS = {ARC_HYBRID: {SH, LA, RA}, COVINGTON: {SH, LA, RA, NA}}


class NonProjectiveError(ValueError):
    pass


def _dependents(heads: Sequence[int]) -> list[list[int]]:
    deps: list[list[int]] = [[] for _ in range(len(heads) + 1)]
    for d, h in enumerate(heads, start=1):
        deps[h].append(d)
    return deps


def oracle_arc_hybrid(tree: DepTree, strict: bool = True) -> list[str]:
    """Static arc-hybrid oracle; the root is attached by a final RA onto 0.

    With ``strict=False`` non-projective trees are accepted: whenever no
    gold-consistent move exists the oracle shifts (or, with an empty
    buffer, reduces with RA), yielding a projective approximation.
    """
    heads = tree.heads
    if strict and not is_projective(tree):
        raise NonProjectiveError("not projective")
    n = len(heads)
    missing = [len(d) for d in _dependents(heads)]
    stack = [0]
    buf = 1
    seq: list[str] = []
    while buf <= n or len(stack) > 1:
        s0 = stack[-1]
        if s0 != 0 and buf <= n and heads[s0 - 1] == buf and missing[s0] == 0:
            seq.append(LA)
            stack.pop()
            missing[buf] -= 1
        elif len(stack) > 1 and heads[s0 - 1] == stack[-2] and missing[s0] == 0:
            seq.append(RA)
            stack.pop()
            missing[stack[-1]] -= 1
        elif buf <= n:
            seq.append(SH)
            stack.append(buf)
            buf += 1
        elif strict:
            raise NonProjectiveError("not projective")
        else:
            seq.append(RA)
            stack.pop()
    return seq


def oracle_covington(tree: DepTree) -> list[str]:
    """Covington oracle with trailing NO-ARCs for each focus word dropped."""
    heads = tree.heads
    deps = _dependents(heads)
    seq: list[str] = []
    for j in range(1, len(heads) + 1):
        seq.append(SH)
        needed = [d for d in deps[j] if d < j]
        if heads[j - 1] < j:
            needed.append(heads[j - 1])
        if not needed:
            continue
        for i in range(j - 1, min(needed) - 1, -1):
            if i >= 1 and heads[i - 1] == j:
                seq.append(LA)
            elif heads[j - 1] == i:
                seq.append(RA)
            else:
                seq.append(NA)
    return seq


def transitions_to_labels(seq: Sequence[str], n: int, read: str = SH) -> list[tuple[str, ...]]:
    """Split ``seq`` at each ``read`` transition into ``n`` labels."""
    count = sum(1 for a in seq if a == read)
    if count != n:
        raise ValueError(f"expected {n} read transitions ({read}), found {count}")
    if n and seq[0] != read:
        raise ValueError(f"sequence must start with the read transition {read}")
    labels: list[list[str]] = []
    for a in seq:
        if a == read:
            labels.append([a])
        else:
            labels[-1].append(a)
    return [tuple(lab) for lab in labels]


def format_transition_label(label: Sequence[str]) -> str:
    return ";".join(label)


def parse_transition_label(text: str) -> tuple[str, ...]:
    return tuple(text.split(";"))


def _replay_arc_hybrid(actions: Sequence[str], n: int, stats: Counter) -> list[int | None]:
    heads: list[int | None] = [None] * n
    stack = [0]
    buf = 1
    for a in actions:
        if a == SH and buf <= n:
            stack.append(buf)
            buf += 1
        elif a == LA and buf <= n and len(stack) > 1:
            heads[stack.pop() - 1] = buf
        elif a == RA and len(stack) > 1:
            d = stack.pop()
            heads[d - 1] = stack[-1]
        else:
            stats["skipped"] += 1
    return heads


def _replay_covington(actions: Sequence[str], n: int, stats: Counter) -> list[int | None]:
    heads: list[int | None] = [None] * n
    j = 0   # focus word
    i = -1  # next left candidate
    for a in actions:
        if a == SH and j < n:
            j += 1
            i = j - 1
        elif a == LA and j >= 1 and i >= 1 and heads[i - 1] is None:
            heads[i - 1] = j
            i -= 1
        elif a == RA and j >= 1 and i >= 0 and heads[j - 1] is None:
            heads[j - 1] = i
            i -= 1
        elif a == NA and j >= 1 and i >= 0:
            i -= 1
        else:
            stats["skipped"] += 1
    return heads


def decode_transitions(labels: Sequence[Sequence[str]], system: str, deprels: Sequence[str],
                       stats: Counter | None = None, upos: Sequence[str] | None = None,
                       forms: Sequence[str] | None = None) -> DepTree:
    """Replay the concatenated labels; invalid actions are skipped."""
    if system not in _ACTIONS:
        raise ValueError(f"unknown transition system {system!r}")
    local = Counter() if stats is None else stats
    actions = [a for lab in labels for a in lab]
    unknown = [a for a in actions if a not in _ACTIONS[system]]
    if unknown:
        local["skipped"] += len(unknown)
        actions = [a for a in actions if a in _ACTIONS[system]]
    replay = _replay_arc_hybrid if system == ARC_HYBRID else _replay_covington
    heads = replay(actions, len(labels), local)
    return repair_tree(heads, deprels, local, upos=upos, forms=forms)
