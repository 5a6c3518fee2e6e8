"""A small lexical tagger used to obtain realistic confusions.

Lookup order is exact form, lower-cased form, longest known suffix (up to
four characters), then the most frequent tag overall. Ties go to the
lexicographically smallest tag.
"""
from __future__ import annotations

from collections import Counter

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .validation import check_treebank


def _modal(counter: Counter) -> str:
    return min(counter.items(), key=lambda kv: (-kv[1], kv[0]))[0]


class BaselineTagger(BaseEstimator):
    def __init__(self, max_suffix: int = 4):
        self.max_suffix = max_suffix

    def fit(self, X, y=None):
        """Count tags per form and per suffix; ``y`` defaults to the gold UPOS of ``X``."""
        X = check_treebank(X)
        tags = y if y is not None else X.upos()
        forms: dict[str, Counter] = {}
        suffixes: dict[str, Counter] = {}
        prior: Counter = Counter()
        for sent, seq in zip(X, tags, strict=True):
            for form, tag in zip(sent.forms, seq, strict=True):
                prior[tag] += 1
                forms.setdefault(form, Counter())[tag] += 1
                for k in range(1, min(self.max_suffix, len(form)) + 1):
                    suffixes.setdefault(form[-k:], Counter())[tag] += 1
        total = sum(prior.values())
        self.form_counts_ = forms
        self.suffix_counts_ = suffixes
        self.prior_ = {t: c / total for t, c in sorted(prior.items())}
        self.form_tags_ = {f: _modal(c) for f, c in forms.items()}
        self.suffix_tags_ = {s: _modal(c) for s, c in suffixes.items()}
        self.default_tag_ = _modal(prior)
        return self

    def tag_form(self, form: str) -> str:
        check_is_fitted(self, "form_tags_")
        if form in self.form_tags_:
            return self.form_tags_[form]
        if form.lower() in self.form_tags_:
            return self.form_tags_[form.lower()]
        for k in range(min(self.max_suffix, len(form)), 0, -1):
            tag = self.suffix_tags_.get(form[-k:])
            if tag is not None:
                return tag
        return self.default_tag_

    def predict(self, X) -> list[list[str]]:
        X = check_treebank(X, allow_empty=True)
        return [[self.tag_form(f) for f in sent.forms] for sent in X]

    def score(self, X, y=None) -> float:
        X = check_treebank(X)
        gold = y if y is not None else X.upos()
        pred = self.predict(X)
        pairs = [(g, p) for gs, ps in zip(gold, pred) for g, p in zip(gs, ps)]
        return sum(g == p for g, p in pairs) / len(pairs)
