"""CoNLL-U reading, writing and re-splitting.

Only basic syntactic words (integer IDs) become :class:`Token` objects.
Multiword-token ranges (``3-4``) and empty nodes (``5.1``) are kept as
opaque lines so that a parse/write round trip reproduces them verbatim.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

ROOT = 0


class ConlluError(ValueError):
    """Malformed CoNLL-U input."""


class TreeValidationError(ValueError):
    """A sentence whose heads do not form a rooted tree."""

    def __init__(self, message: str, sentence: int | None = None, token: int | None = None):
        self.sentence = sentence
        self.token = token
        where = []
        if sentence is not None:
            where.append(f"sentence {sentence}")
        if token is not None:
            where.append(f"token {token}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


@dataclass(frozen=True, slots=True)
class Token:
    index: int
    form: str
    upos: str
    head: int
    deprel: str
    lemma: str = "_"
    xpos: str = "_"
    feats: str = "_"
    deps: str = "_"
    misc: str = "_"

    def to_line(self) -> str:
        return "\t".join((str(self.index), self.form, self.lemma, self.upos, self.xpos,
                          self.feats, str(self.head), self.deprel, self.deps, self.misc))


@dataclass(frozen=True, slots=True)
class DepTree:
    """One sentence.

    ``extras`` holds pass-through lines (multiword tokens, empty nodes) as
    ``(k, line)`` pairs, meaning the line is written after the first ``k``
    syntactic words.
    """

    tokens: tuple[Token, ...]
    comments: tuple[str, ...] = ()
    extras: tuple[tuple[int, str], ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def heads(self) -> list[int]:
        return [t.head for t in self.tokens]

    @property
    def upos(self) -> list[str]:
        return [t.upos for t in self.tokens]

    @property
    def deprels(self) -> list[str]:
        return [t.deprel for t in self.tokens]

    @property
    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]

    def arcs(self) -> list[tuple[int, int]]:
        """``(head, dependent)`` pairs, root arcs included."""
        return [(t.head, t.index) for t in self.tokens]

    def with_upos(self, tags: Sequence[str]) -> DepTree:
        if len(tags) != len(self.tokens):
            raise ValueError(f"expected {len(self.tokens)} tags, got {len(tags)}")
        toks = tuple(t if t.upos == tag else replace(t, upos=tag) for t, tag in zip(self.tokens, tags))
        return replace(self, tokens=toks)

    def with_heads(self, heads: Sequence[int], deprels: Sequence[str] | None = None) -> DepTree:
        if deprels is None:
            deprels = self.deprels
        toks = tuple(replace(t, head=h, deprel=r) for t, h, r in zip(self.tokens, heads, deprels, strict=True))
        return replace(self, tokens=toks)

    @classmethod
    def from_heads(cls, heads: Sequence[int], deprels: Sequence[str] | None = None,
                   upos: Sequence[str] | None = None, forms: Sequence[str] | None = None) -> DepTree:
        n = len(heads)
        deprels = deprels if deprels is not None else ["dep"] * n
        upos = upos if upos is not None else ["X"] * n
        forms = forms if forms is not None else ["_"] * n
        return cls(tuple(Token(i + 1, forms[i], upos[i], int(heads[i]), deprels[i]) for i in range(n)))


@dataclass(frozen=True)
class Treebank:
    sentences: tuple[DepTree, ...] = ()
    name: str = ""
    # (sentence number, message) for sentences dropped by a non-strict parse
    rejected: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __getitem__(self, i):
        return self.sentences[i]

    @property
    def n_tokens(self) -> int:
        return sum(len(s) for s in self.sentences)

    def upos(self) -> list[list[str]]:
        return [s.upos for s in self.sentences]

    def with_upos(self, tags: Sequence[Sequence[str]]) -> Treebank:
        if len(tags) != len(self.sentences):
            raise ValueError(f"expected tags for {len(self.sentences)} sentences, got {len(tags)}")
        return replace(self, sentences=tuple(s.with_upos(t) for s, t in zip(self.sentences, tags)))


def tree_problem(heads: Sequence[int]) -> tuple[int, str] | None:
    """Return ``(token, message)`` for the first defect in ``heads`` or None."""
    n = len(heads)
    for i, h in enumerate(heads, start=1):
        if not 0 <= h <= n:
            return i, f"head out of range ({h} not in 0..{n})"
        if h == i:
            return i, "token is its own head"
    state = [0] * (n + 1)  # 0 unseen, 1 on current path, 2 reaches root
    state[0] = 2
    for start in range(1, n + 1):
        path = []
        node = start
        while state[node] == 0:
            state[node] = 1
            path.append(node)
            node = heads[node - 1]
        if state[node] == 1:
            return node, "cycle in head assignment"
        for p in path:
            state[p] = 2
    return None


def validate_tree(tree: DepTree, sentence: int | None = None) -> None:
    """Raise :class:`TreeValidationError` unless ``tree`` is a rooted tree."""
    for pos, tok in enumerate(tree.tokens, start=1):
        if tok.index != pos:
            raise TreeValidationError(f"token index {tok.index} out of sequence", sentence, pos)
        if not tok.upos:
            raise TreeValidationError("empty UPOS", sentence, pos)
    problem = tree_problem(tree.heads)
    if problem is not None:
        raise TreeValidationError(problem[1], sentence, problem[0])


def _parse_block(lines: list[tuple[int, str]], sent_no: int) -> DepTree:
    comments: list[str] = []
    tokens: list[Token] = []
    extras: list[tuple[int, str]] = []
    for lineno, line in lines:
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(f"line {lineno}: expected 10 tab-separated columns, found {len(cols)}")
        tid = cols[0]
        if "-" in tid or "." in tid:
            extras.append((len(tokens), line))
            continue
        try:
            index = int(tid)
        except ValueError:
            raise ConlluError(f"line {lineno}: invalid token ID {tid!r}") from None
        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluError(f"line {lineno}: non-integer head {cols[6]!r}") from None
        tokens.append(Token(index=index, form=cols[1], lemma=cols[2], upos=cols[3], xpos=cols[4],
                            feats=cols[5], head=head, deprel=cols[7], deps=cols[8], misc=cols[9]))
    return DepTree(tuple(tokens), tuple(comments), tuple(extras))


def parse_conllu(text: str, name: str = "", strict: bool = True) -> Treebank:
    """Parse CoNLL-U text.

    Malformed lines always raise :class:`ConlluError`. Sentences that are
    well-formed but not valid trees raise :class:`TreeValidationError` when
    ``strict``; otherwise they are dropped and listed in ``Treebank.rejected``.
    """
    blocks: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            if current:
                blocks.append(current)
                current = []
            continue
        current.append((lineno, line))
    if current:
        blocks.append(current)

    sentences = []
    rejected = []
    for sent_no, block in enumerate(blocks, start=1):
        tree = _parse_block(block, sent_no)
        if not tree.tokens:
            continue
        try:
            validate_tree(tree, sent_no)
        except TreeValidationError as exc:
            if strict:
                raise
            rejected.append((sent_no, str(exc)))
            continue
        sentences.append(tree)
    return Treebank(tuple(sentences), name, tuple(rejected))


def read_conllu(path, strict: bool = True) -> Treebank:
    with open(path, encoding="utf-8") as f:
        text = f.read()
    return parse_conllu(text, name=str(path), strict=strict)


def format_tree(tree: DepTree) -> str:
    out = list(tree.comments)
    extras = list(tree.extras)
    k = 0
    for n_before, tok in enumerate(tree.tokens):
        while k < len(extras) and extras[k][0] <= n_before:
            out.append(extras[k][1])
            k += 1
        out.append(tok.to_line())
    out.extend(line for _, line in extras[k:])
    return "\n".join(out) + "\n"


def write_conllu(tb: Treebank | Iterable[DepTree]) -> str:
    return "".join(format_tree(s) + "\n" for s in tb)


def resplit(tb: Treebank, ratios: tuple[float, float, float] = (0.6, 0.1, 0.3),
            seed: int = 0) -> tuple[Treebank, Treebank, Treebank]:
    """Shuffle sentences into train/dev/test.

    Dev and test sizes are floored, the remainder goes to train. Sentences
    keep their original relative order inside each part.
    """
    if len(ratios) != 3 or any(r < 0 for r in ratios) or not math.isclose(sum(ratios), 1.0):
        raise ValueError(f"ratios must be three non-negative numbers summing to 1, got {ratios}")
    n = len(tb)
    if n < 3:
        raise ValueError(f"need at least 3 sentences to split, got {n}")
    n_dev = math.floor(ratios[1] * n + 1e-9)
    n_test = math.floor(ratios[2] * n + 1e-9)
    order = list(range(n))
    random.Random(seed).shuffle(order)
    dev_idx = sorted(order[:n_dev])
    test_idx = sorted(order[n_dev:n_dev + n_test])
    train_idx = sorted(order[n_dev + n_test:])

    def part(idx, suffix):
        return Treebank(tuple(tb.sentences[i] for i in idx), f"{tb.name}{suffix}" if tb.name else suffix.lstrip("-"))

    return part(train_idx, "-train"), part(dev_idx, "-dev"), part(test_idx, "-test")
