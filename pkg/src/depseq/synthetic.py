"""Random trees and a synthetic tagged corpus for tests and demos."""
from __future__ import annotations

import numpy as np

from .conllu import DepTree, Token, Treebank

UPOS = ("ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM", "PART",
        "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X")


def random_heads(n: int, rng: np.random.Generator, locality: float | None = 1.0) -> list[int]:
    """Heads of a random tree rooted at 0.

    Words are attached in random order, each to an already attached node.
    With ``locality=None`` the choice is uniform; otherwise node ``j`` is
    chosen for word ``i`` with weight ``|i - j| ** -(1 + locality)``, which
    favours short, mostly projective arcs like natural language.
    """
    order = rng.permutation(np.arange(1, n + 1))
    heads = [0] * n
    placed = [0]
    for i in order:
        cand = np.array(placed)
        if locality is None:
            w = np.ones(len(cand))
        else:
            w = np.abs(cand - i).astype(float) ** -(1.0 + locality)
            w[cand == 0] = w.mean() * 0.05 if len(cand) > 1 else 1.0
        heads[i - 1] = int(rng.choice(cand, p=w / w.sum()))
        placed.append(int(i))
    return heads


def random_projective_heads(n: int, rng: np.random.Generator) -> list[int]:
    """Heads of a random projective tree with a single root word."""
    heads = [0] * n

    def build(lo: int, hi: int, head: int):
        # [lo, hi] is one subtree under ``head``; its root splits the rest
        # into runs of contiguous sub-subtrees
        r = int(rng.integers(lo, hi + 1))
        heads[r - 1] = head
        for a, b in ((lo, r - 1), (r + 1, hi)):
            start = a
            while start <= b:
                end = int(rng.integers(start, b + 1))
                build(start, end, r)
                start = end + 1

    if n:
        build(1, n, 0)
    return heads


def random_tree(n: int, rng: np.random.Generator, locality: float | None = 1.0,
                tagset=UPOS[:6], projective: bool = False) -> DepTree:
    heads = random_projective_heads(n, rng) if projective else random_heads(n, rng, locality)
    tags = [str(t) for t in rng.choice(tagset, size=n)]
    rels = [str(r) for r in rng.choice(("nsubj", "obj", "det", "amod", "obl", "root"), size=n)]
    return DepTree(tuple(Token(i + 1, f"w{i + 1}", tags[i], heads[i], rels[i]) for i in range(n)))


def confusion_structure(tagset=UPOS, rng: np.random.Generator | None = None) -> dict[str, dict[str, float]]:
    """Fixed per-tag error rates and confusion targets for a synthetic tagger."""
    rng = rng or np.random.default_rng(0)
    out = {}
    for k, t in enumerate(tagset):
        others = [o for o in tagset if o != t]
        picks = rng.choice(len(others), size=min(3, len(others)), replace=False)
        weights = rng.dirichlet(np.ones(len(picks)))
        out[t] = {"rate": float(0.02 + 0.18 * ((k * 7) % len(tagset)) / len(tagset)),
                  **{others[p]: float(w) for p, w in zip(picks, weights)}}
    return out


def synthetic_corpus(n_tokens: int = 50_000, seed: int = 0, tagset=UPOS,
                     min_len: int = 5, max_len: int = 25) -> tuple[Treebank, list[list[str]]]:
    """Random trees with Zipf-ish tags plus a noisy "tagger" output for them.

    The tagger output follows :func:`confusion_structure`; together they
    play the part of a real treebank and its calibration predictions.
    """
    rng = np.random.default_rng(seed)
    prior = 1.0 / np.arange(1, len(tagset) + 1)
    prior /= prior.sum()
    conf = confusion_structure(tagset, np.random.default_rng(seed + 1))
    rels = ("nsubj", "obj", "det", "amod", "obl", "advmod", "case", "root")
    sents, preds = [], []
    total = 0
    while total < n_tokens:
        n = int(min(rng.integers(min_len, max_len + 1), n_tokens - total))
        n = max(n, 1)
        heads = random_heads(n, rng)
        tags = [str(t) for t in rng.choice(tagset, size=n, p=prior)]
        deps = [str(r) for r in rng.choice(rels, size=n)]
        toks = tuple(Token(i + 1, f"{tags[i].lower()}{int(rng.integers(50))}", tags[i], heads[i], deps[i])
                     for i in range(n))
        sents.append(DepTree(toks))
        pred = []
        for t in tags:
            c = conf[t]
            if rng.random() < c["rate"]:
                wrong = sorted(k for k in c if k != "rate")
                p = np.array([c[k] for k in wrong])
                pred.append(wrong[int(rng.choice(len(wrong), p=p / p.sum()))])
            else:
                pred.append(t)
        preds.append(pred)
        total += n
    return Treebank(tuple(sents), f"synthetic-{seed}"), preds
