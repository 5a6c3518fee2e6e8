from __future__ import annotations

from collections import Counter
from typing import Sequence

from sklearn.base import BaseEstimator, TransformerMixin

from .conllu import Treebank
from .encodings import AH_TB, EncodedSentence, NonProjectiveError, check_encoding, decode, encode
from .trees import is_projective
from .validation import check_aligned, check_treebank


class TreeLinearizer(TransformerMixin, BaseEstimator):
    """Trees to per-word labels and back.

    ``nonprojective`` controls ``ah_tb`` on non-projective trees: ``"raise"``
    (default), ``"skip"`` (drop the sentence) or ``"approximate"`` (encode a
    projective approximation).
    """

    def __init__(self, encoding: str = "rp_h", nonprojective: str = "raise"):
        self.encoding = encoding
        self.nonprojective = nonprojective

    def fit(self, X=None, y=None):
        check_encoding(self.encoding)
        if self.nonprojective not in ("raise", "skip", "approximate"):
            raise ValueError(f"nonprojective must be raise, skip or approximate, got {self.nonprojective!r}")
        return self

    def transform(self, X) -> list[EncodedSentence]:
        self.fit()
        X = check_treebank(X, allow_empty=True)
        out = []
        self.skipped_ = []
        for k, tree in enumerate(X, start=1):
            if self.encoding == AH_TB and not is_projective(tree):
                if self.nonprojective == "skip":
                    self.skipped_.append(k)
                    continue
                if self.nonprojective == "raise":
                    raise NonProjectiveError(f"sentence {k}: not projective")
            out.append(encode(tree, self.encoding, strict=self.nonprojective != "approximate"))
        return out

    def inverse_transform(self, X: Sequence[EncodedSentence],
                          tags: Sequence[Sequence[str]] | Treebank | None = None) -> Treebank:
        """Decode; ``tags`` (e.g. a corrupted treebank) replace the tags stored in ``X``."""
        if isinstance(tags, Treebank):
            tags = tags.upos()
        if tags is not None:
            check_aligned(X, tags)
        stats: Counter = Counter()
        trees = tuple(decode(sent, None if tags is None else tags[k], stats) for k, sent in enumerate(X))
        self.repairs_ = dict(stats)
        return Treebank(trees)
