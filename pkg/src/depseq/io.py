"""Label files and tag-prediction files.

Label file: one word per line, ``index<TAB>form<TAB>upos<TAB>label<TAB>deprel``,
blank line between sentences.

Prediction files may be two-column (``form<TAB>upos``), label files (tag in
column 3) or CoNLL-U (tag in column 4); the layout is detected per line.
"""
from __future__ import annotations

from typing import Iterable

from .conllu import ConlluError, Treebank
from .encodings import EncodedSentence, check_encoding, parse_label


def _blocks(text: str) -> Iterable[list[tuple[int, str]]]:
    block: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if block:
                yield block
                block = []
        elif not (line.startswith("#") and "\t" not in line):
            block.append((lineno, line))
    if block:
        yield block


def write_labels(sentences: Iterable[EncodedSentence]) -> str:
    out = []
    for sent in sentences:
        forms = sent.forms or ("_",) * len(sent)
        upos = sent.upos or ("_",) * len(sent)
        for i, (form, tag, lab, rel) in enumerate(zip(forms, upos, sent.label_strings(), sent.deprels), start=1):
            out.append(f"{i}\t{form}\t{tag}\t{lab}\t{rel}\n")
        out.append("\n")
    return "".join(out)


def parse_labels(text: str, encoding: str) -> list[EncodedSentence]:
    check_encoding(encoding)
    sentences = []
    for block in _blocks(text):
        forms, upos, labels, rels = [], [], [], []
        for lineno, line in block:
            cols = line.split("\t")
            if len(cols) != 5:
                raise ConlluError(f"line {lineno}: expected 5 columns in label file, found {len(cols)}")
            try:
                labels.append(parse_label(encoding, cols[3]))
            except ValueError as exc:
                raise ConlluError(f"line {lineno}: {exc}") from None
            forms.append(cols[1])
            upos.append(cols[2])
            rels.append(cols[4])
        sentences.append(EncodedSentence(encoding, tuple(labels), tuple(rels), tuple(forms), tuple(upos)))
    return sentences


def parse_predictions(text: str) -> list[list[str]]:
    """Per-sentence tag sequences from any supported prediction layout."""
    out = []
    for block in _blocks(text):
        tags = []
        for lineno, line in block:
            cols = line.split("\t")
            if len(cols) == 2:
                tags.append(cols[1])
            elif len(cols) == 5:
                tags.append(cols[2])
            elif len(cols) == 10:
                if "-" in cols[0] or "." in cols[0]:
                    continue
                tags.append(cols[3])
            else:
                raise ConlluError(f"line {lineno}: cannot read a tag from {len(cols)} columns")
        out.append(tags)
    return out


def write_predictions(tb: Treebank, tags: list[list[str]]) -> str:
    out = []
    for sent, seq in zip(tb, tags, strict=True):
        out.extend(f"{form}\t{tag}\n" for form, tag in zip(sent.forms, seq, strict=True))
        out.append("\n")
    return "".join(out)
