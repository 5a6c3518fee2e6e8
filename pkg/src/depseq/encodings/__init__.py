"""Sequence-labeling linearizations of dependency trees.

``encode`` maps a :class:`~depseq.conllu.DepTree` to one label per word and
``decode`` maps labels back to a valid tree. Only ``rp_h`` reads PoS tags
when decoding.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from ..conllu import DepTree
from .brackets import BracketLabel, assign_planes, decode_2pb, encode_2pb
from .headsel import ROOT_TAG, HeadSelLabel, decode_rph, encode_rph
from .transitions import (ARC_HYBRID, COVINGTON, NonProjectiveError, decode_transitions,
                          format_transition_label, oracle_arc_hybrid, oracle_covington,
                          parse_transition_label, transitions_to_labels)

RP_H, TWO_P_B, AH_TB, C_TB = "rp_h", "2p_b", "ah_tb", "c_tb"
ENCODINGS = (RP_H, TWO_P_B, AH_TB, C_TB)
TAG_DEPENDENT = frozenset({RP_H})


@dataclass(frozen=True)
class EncodedSentence:
    encoding: str
    labels: tuple
    deprels: tuple[str, ...]
    forms: tuple[str, ...] = ()
    upos: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.labels) != len(self.deprels):
            raise ValueError(f"{len(self.labels)} labels but {len(self.deprels)} relations")

    def __len__(self) -> int:
        return len(self.labels)

    def label_strings(self) -> list[str]:
        return [format_label(self.encoding, lab) for lab in self.labels]


def check_encoding(encoding: str) -> str:
    if encoding not in ENCODINGS:
        raise ValueError(f"unknown encoding {encoding!r}; expected one of {', '.join(ENCODINGS)}")
    return encoding


def encode(tree: DepTree, encoding: str, strict: bool = True) -> EncodedSentence:
    """Encode ``tree``.

    ``strict`` only matters for ``ah_tb``: when False, non-projective trees
    get the labels of a projective approximation instead of raising.
    """
    check_encoding(encoding)
    if encoding == RP_H:
        labels = encode_rph(tree)
    elif encoding == TWO_P_B:
        labels, _ = encode_2pb(tree)
    elif encoding == AH_TB:
        labels = transitions_to_labels(oracle_arc_hybrid(tree, strict=strict), len(tree))
    else:
        labels = transitions_to_labels(oracle_covington(tree), len(tree))
    return EncodedSentence(encoding, tuple(labels), tuple(tree.deprels), tuple(tree.forms), tuple(tree.upos))


def decode(sent: EncodedSentence, tags: Sequence[str] | None = None,
           stats: Counter | None = None) -> DepTree:
    """Decode ``sent``; ``tags`` override the sentence's own tags (rp_h only reads them)."""
    enc = check_encoding(sent.encoding)
    n = len(sent)
    if tags is None:
        tags = sent.upos
    if len(tags) != n:
        raise ValueError(f"{n} labels but {len(tags)} tags")
    forms = sent.forms or None
    upos = list(tags) if n else None
    if enc == RP_H:
        return decode_rph(sent.labels, tags, sent.deprels, stats, forms=forms)
    if enc == TWO_P_B:
        return decode_2pb(sent.labels, sent.deprels, stats, upos=upos, forms=forms)
    system = ARC_HYBRID if enc == AH_TB else COVINGTON
    return decode_transitions(sent.labels, system, sent.deprels, stats, upos=upos, forms=forms)


def format_label(encoding: str, label) -> str:
    if encoding in (AH_TB, C_TB):
        return format_transition_label(label)
    return str(label)


def parse_label(encoding: str, text: str):
    check_encoding(encoding)
    if encoding == RP_H:
        return HeadSelLabel.parse(text)
    if encoding == TWO_P_B:
        return BracketLabel.parse(text)
    return parse_transition_label(text)


__all__ = [
    "AH_TB", "C_TB", "ENCODINGS", "RP_H", "ROOT_TAG", "TAG_DEPENDENT", "TWO_P_B",
    "BracketLabel", "EncodedSentence", "HeadSelLabel", "NonProjectiveError",
    "assign_planes", "check_encoding", "decode", "decode_2pb", "decode_rph", "decode_transitions",
    "encode", "encode_2pb", "encode_rph", "format_label", "oracle_arc_hybrid", "oracle_covington",
    "parse_label", "transitions_to_labels",
]
