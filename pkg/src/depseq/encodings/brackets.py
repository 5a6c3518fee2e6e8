"""2-planar bracketing (2p_b).

Each non-root arc becomes a bracket pair on one of two planes. For an arc
whose dependent is to the left of its head, the dependent carries ``<`` and
the head ``\\``; for a rightward arc the head carries ``/`` and the
dependent ``>``. Plane-2 symbols are written with a trailing ``*``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from ..conllu import DepTree
from ..trees import Arc, arcs_cross, repair_tree

_PLANE_RE = re.compile(r"^>?\\*<?/*$")


@dataclass(frozen=True, slots=True)
class BracketLabel:
    plane1: str = ""
    plane2: str = ""  # starred form, e.g. "\\*/*"

    def __post_init__(self):
        if not _PLANE_RE.match(self.plane1) or not _PLANE_RE.match(self.plane2.replace("*", "")):
            raise ValueError(f"ill-formed bracket label {self.plane1!r}/{self.plane2!r}")
        if "*" in self.plane1 or self.plane2.count("*") * 2 != len(self.plane2):
            raise ValueError(f"ill-formed bracket label {self.plane1!r}/{self.plane2!r}")

    def plane(self, p: int) -> str:
        """Unstarred symbols of plane ``p``."""
        return self.plane1 if p == 1 else self.plane2.replace("*", "")

    def __str__(self) -> str:
        return (self.plane1 + self.plane2) or "_"

    @classmethod
    def parse(cls, text: str) -> BracketLabel:
        if text == "_":
            return cls()
        p1, p2 = [], []
        i = 0
        while i < len(text):
            sym = text[i]
            if sym not in "<>/\\":
                raise ValueError(f"unexpected bracket symbol {sym!r} in {text!r}")
            if i + 1 < len(text) and text[i + 1] == "*":
                p2.append(sym + "*")
                i += 2
            else:
                p1.append(sym)
                i += 1
        return cls("".join(p1), "".join(p2))

    @classmethod
    def from_planes(cls, plane1: str, plane2: str) -> BracketLabel:
        return cls(plane1, "".join(c + "*" for c in plane2))


def assign_planes(tree: DepTree) -> dict[Arc, int | None]:
    """Greedy plane for every non-root arc; ``None`` marks an unencodable arc."""
    arcs = sorted((a for a in tree.arcs() if a[0] != 0), key=lambda a: (min(a), max(a) - min(a)))
    planes: dict[Arc, int | None] = {}
    on_plane: dict[int, list[Arc]] = {1: [], 2: []}
    for arc in arcs:
        planes[arc] = None
        for p in (1, 2):
            if not any(arcs_cross(arc, other) for other in on_plane[p]):
                planes[arc] = p
                on_plane[p].append(arc)
                break
    return planes


def _canonical(symbols: Counter) -> str:
    return ">" * symbols[">"] + "\\" * symbols["\\"] + "<" * symbols["<"] + "/" * symbols["/"]


def encode_2pb(tree: DepTree) -> tuple[list[BracketLabel], list[Arc]]:
    """Return labels and the arcs that could not be placed on either plane."""
    n = len(tree)
    sym = {p: [Counter() for _ in range(n + 1)] for p in (1, 2)}
    dropped = []
    for (h, d), p in assign_planes(tree).items():
        if p is None:
            dropped.append((h, d))
            continue
        if d < h:
            sym[p][d]["<"] += 1
            sym[p][h]["\\"] += 1
        else:
            sym[p][h]["/"] += 1
            sym[p][d][">"] += 1
    labels = [BracketLabel.from_planes(_canonical(sym[1][i]), _canonical(sym[2][i])) for i in range(1, n + 1)]
    return labels, sorted(dropped)


def decode_2pb(labels: Sequence[BracketLabel], deprels: Sequence[str], stats: Counter | None = None,
               upos: Sequence[str] | None = None, forms: Sequence[str] | None = None) -> DepTree:
    n = len(labels)
    heads: list[int | None] = [None] * n
    discarded = duplicates = 0

    def attach(h: int, d: int):
        nonlocal duplicates
        if heads[d - 1] is None:
            heads[d - 1] = h
        else:
            duplicates += 1

    for p in (1, 2):
        right_open: list[int] = []  # pending "/" (heads of rightward arcs)
        left_open: list[int] = []   # pending "<" (dependents of leftward arcs)
        for i, label in enumerate(labels, start=1):
            s = label.plane(p)
            # closers first, so a word never matches its own openers
            for c in s:
                if c == ">":
                    if right_open:
                        attach(right_open.pop(), i)
                    else:
                        discarded += 1
                elif c == "\\":
                    if left_open:
                        attach(i, left_open.pop())
                    else:
                        discarded += 1
            for c in s:
                if c == "/":
                    right_open.append(i)
                elif c == "<":
                    left_open.append(i)
        discarded += len(right_open) + len(left_open)

    # root words are headless by design, so only cycles count as repairs here
    local = Counter()
    tree = repair_tree(heads, deprels, local, upos=upos, forms=forms)
    if stats is not None:
        stats["discarded"] += discarded
        stats["duplicate"] += duplicates
        stats["cycles"] += local["cycles"]
    return tree
