"""Controlled PoS-tag corruption driven by a real tagger's mistakes.

A tagger's output on a calibration treebank gives, per gold tag ``t``, its
count ``C_t``, its error count ``E_t`` and the confusions ``E_{t->e}``. To
reach a target accuracy ``A`` the global error count ``E`` is rescaled to
``E_A = round((1 - A) * N)`` with weight ``gamma = E_A / E``; tags whose
scaled errors exceed their count are capped and ``gamma`` is recomputed
over the remaining tags until nothing overflows. Replacement tags follow
``E_{t->e} / E_t``.

On the calibration treebank itself, lowering the error count only touches
positions the tagger actually got wrong; raising it keeps all of those and
spreads the surplus over correctly tagged words.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .conllu import Treebank
from .validation import check_accuracy, check_aligned, check_treebank

FORMAT_VERSION = 1
SHRINK, GROW = "shrink", "grow"


class PlanError(ValueError):
    """The error model cannot produce the requested accuracy."""


class ToleranceError(RuntimeError):
    """No sampling attempt landed within tolerance of the target error count."""

    def __init__(self, message: str, best_accuracy: float):
        super().__init__(message)
        self.best_accuracy = best_accuracy


@dataclass(frozen=True)
class ErrorModel:
    counts: dict[str, int]
    errors: dict[str, int]
    confusion: dict[str, dict[str, int]]
    # (0-based sentence index, 1-based word index) of words the tagger got wrong
    real_error_positions: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    @property
    def n_tokens(self) -> int:
        return sum(self.counts.values())

    @property
    def total_errors(self) -> int:
        return sum(self.errors.values())

    @property
    def accuracy(self) -> float:
        return 1.0 - self.total_errors / self.n_tokens if self.n_tokens else 1.0

    def error_rate(self, tag: str) -> float:
        """p(error | tag) as observed."""
        c = self.counts.get(tag, 0)
        return self.errors.get(tag, 0) / c if c else 0.0

    def error_types(self, tag: str) -> tuple[list[str], np.ndarray]:
        """Wrong tags for ``tag`` and their probabilities p(e | tag, error)."""
        conf = self.confusion.get(tag, {})
        wrong = sorted(conf)
        total = sum(conf.values())
        return wrong, np.array([conf[e] / total for e in wrong], dtype=float)

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_VERSION,
            "counts": dict(sorted(self.counts.items())),
            "errors": dict(sorted(self.errors.items())),
            "confusion": {t: dict(sorted(c.items())) for t, c in sorted(self.confusion.items())},
            "real_error_positions": [list(p) for p in sorted(self.real_error_positions)],
            "totals": {"N": self.n_tokens, "E": self.total_errors},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> ErrorModel:
        if data.get("format") != FORMAT_VERSION:
            raise ValueError(f"unsupported error model format {data.get('format')!r}")
        model = cls(
            counts={t: int(c) for t, c in data["counts"].items()},
            errors={t: int(c) for t, c in data["errors"].items()},
            confusion={t: {e: int(c) for e, c in conf.items()} for t, conf in data["confusion"].items()},
            real_error_positions=frozenset((int(s), int(i)) for s, i in data["real_error_positions"]),
        )
        check_error_model(model)
        return model

    @classmethod
    def from_json(cls, text: str) -> ErrorModel:
        return cls.from_dict(json.loads(text))


def check_error_model(model: ErrorModel) -> None:
    for t, c in model.counts.items():
        e = model.errors.get(t, 0)
        if not 0 <= e <= c:
            raise ValueError(f"tag {t}: error count {e} outside [0, {c}]")
        if sum(model.confusion.get(t, {}).values()) != e:
            raise ValueError(f"tag {t}: confusions do not sum to the error count {e}")
    if set(model.errors) - set(model.counts):
        raise ValueError("error counts for tags that never occur")


def fit_error_model(gold: Treebank, predicted: Sequence[Sequence[str]]) -> ErrorModel:
    """Count per-tag errors and confusions of ``predicted`` against ``gold``."""
    check_aligned(gold, predicted)
    counts: Counter = Counter()
    errors: Counter = Counter()
    confusion: dict[str, Counter] = {}
    positions = set()
    for s, (sent, tags) in enumerate(zip(gold, predicted)):
        for tok, pred in zip(sent.tokens, tags):
            counts[tok.upos] += 1
            if pred != tok.upos:
                errors[tok.upos] += 1
                confusion.setdefault(tok.upos, Counter())[pred] += 1
                positions.add((s, tok.index))
    return ErrorModel(
        counts=dict(counts),
        errors={t: errors[t] for t in counts},
        confusion={t: dict(c) for t, c in confusion.items()},
        real_error_positions=frozenset(positions),
    )


@dataclass(frozen=True)
class CorruptionPlan:
    target_accuracy: float
    target_errors: int
    gamma: float
    capped: frozenset[str]
    # p(error | t) over all words of the tag, after capping
    error_prob: dict[str, float]
    expected_errors: dict[str, float]
    mode: str
    # surplus probability for correctly tagged words in grow mode
    extra_prob: dict[str, float] = field(default_factory=dict)
    iterations: int = 0


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def target_error_count(accuracy: float, n_tokens: int) -> int:
    # the tiny epsilon absorbs binary noise such as (1 - 0.9) * 1000 = 99.999...
    return round_half_up((1.0 - accuracy) * n_tokens + 1e-9)


def build_plan(model: ErrorModel, accuracy: float) -> CorruptionPlan:
    accuracy = check_accuracy(accuracy)
    n, e_total = model.n_tokens, model.total_errors
    e_a = target_error_count(accuracy, n)
    tags = sorted(model.counts)
    if e_a > n:
        raise PlanError(f"target error count {e_a} exceeds the {n} available words")
    if e_a == 0:
        zero = {t: 0.0 for t in tags}
        return CorruptionPlan(accuracy, 0, 0.0, frozenset(), zero, dict(zero), SHRINK)
    if e_total == 0:
        raise PlanError("no error evidence: the calibration tagger made no mistakes")

    gamma = Fraction(e_a, e_total)
    capped: set[str] = set()
    iterations = 0
    while True:
        over = [t for t in tags if t not in capped and gamma * model.errors[t] > model.counts[t]]
        if not over:
            break
        capped.update(over)
        iterations += 1
        rest_errors = e_total - sum(model.errors[t] for t in capped)
        rest_target = e_a - sum(model.counts[t] for t in capped)
        if rest_errors == 0:
            if rest_target > 0:
                reachable = sum(model.counts[t] for t in tags if model.errors[t] > 0)
                raise PlanError(f"no error evidence to reach {e_a} errors: only {reachable} words "
                                f"carry tags the tagger ever confused")
            break
        gamma = Fraction(rest_target, rest_errors)

    expected = {}
    for t in tags:
        expected[t] = Fraction(model.counts[t]) if t in capped else gamma * model.errors[t]
    error_prob = {t: float(expected[t] / model.counts[t]) for t in tags}
    mode = GROW if e_a > e_total else SHRINK
    extra = {}
    if mode == GROW:
        for t in tags:
            c, e = model.counts[t], model.errors[t]
            if t in capped:
                extra[t] = 1.0
            elif e == 0 or c == e:
                extra[t] = 0.0
            else:
                extra[t] = float((gamma - 1) * e / (c - e))
    return CorruptionPlan(
        target_accuracy=accuracy,
        target_errors=e_a,
        gamma=float(gamma),
        capped=frozenset(capped),
        error_prob=error_prob,
        expected_errors={t: float(x) for t, x in expected.items()},
        mode=mode,
        extra_prob=extra,
        iterations=iterations,
    )


def token_probabilities(tb: Treebank, model: ErrorModel, plan: CorruptionPlan,
                        calibration: bool = True) -> np.ndarray:
    """Corruption probability of every word of ``tb``, flattened in reading order."""
    probs = []
    real = model.real_error_positions
    for s, sent in enumerate(tb):
        for tok in sent.tokens:
            t = tok.upos
            if model.errors.get(t, 0) == 0:
                probs.append(0.0)
            elif not calibration:
                probs.append(plan.error_prob[t])
            elif (s, tok.index) in real:
                probs.append(1.0 if plan.mode == GROW else plan.expected_errors[t] / model.errors[t])
            else:
                probs.append(plan.extra_prob.get(t, 0.0) if plan.mode == GROW else 0.0)
    return np.asarray(probs, dtype=float)


def tagging_accuracy(gold: Treebank, other: Treebank | Sequence[Sequence[str]]) -> float:
    """Fraction of syntactic words whose UPOS matches."""
    check_aligned(gold, other)
    other_tags = other.upos() if isinstance(other, Treebank) else other
    n = same = 0
    for sent, tags in zip(gold, other_tags):
        for tok, tag in zip(sent.tokens, tags):
            n += 1
            same += tok.upos == tag
    if n == 0:
        raise ValueError("cannot compute accuracy of an empty treebank")
    return same / n


def _sample(tb: Treebank, model: ErrorModel, probs: np.ndarray, rng: np.random.Generator) -> list[list[str]]:
    flat = [tok.upos for sent in tb for tok in sent.tokens]
    hit = rng.random(len(flat)) < probs
    new = list(flat)
    by_tag: dict[str, list[int]] = {}
    for k in np.flatnonzero(hit):
        by_tag.setdefault(flat[k], []).append(int(k))
    for t in sorted(by_tag):
        wrong, p = model.error_types(t)
        picks = rng.choice(len(wrong), size=len(by_tag[t]), p=p)
        for k, w in zip(by_tag[t], picks):
            new[k] = wrong[w]
    out, pos = [], 0
    for sent in tb:
        out.append(new[pos:pos + len(sent)])
        pos += len(sent)
    return out


def corrupt(tb: Treebank, model: ErrorModel, plan: CorruptionPlan, seed: int = 0, *,
            calibration: bool = True, tolerance: float = 0.05,
            max_attempts: int = 20) -> tuple[Treebank, float]:
    """Rewrite UPOS tags of ``tb`` to approach ``plan.target_accuracy``.

    ``calibration`` says whether ``tb`` is the treebank ``model`` was fitted
    on; only then are the recorded real-error positions meaningful. An
    attempt is accepted when its error count is within ``tolerance``
    (relative) of the target; otherwise the draw is repeated with a derived
    seed, up to ``max_attempts`` times.
    """
    tb = check_treebank(tb, allow_empty=True)
    n = tb.n_tokens
    if calibration:
        if n != model.n_tokens:
            raise ValueError(f"treebank has {n} words but the error model was fitted on {model.n_tokens}; "
                             "pass calibration=False for other splits")
        target = plan.target_errors
    else:
        target = target_error_count(plan.target_accuracy, n)
    if target == 0 or n == 0:
        return tb, 1.0

    probs = token_probabilities(tb, model, plan, calibration)
    allowed = tolerance * target
    best = None
    for attempt in range(max_attempts):
        rng = np.random.default_rng([seed, attempt])
        tags = _sample(tb, model, probs, rng)
        acc = tagging_accuracy(tb, tags)
        miss = abs(round((1.0 - acc) * n) - target)
        if best is None or miss < best[0]:
            best = (miss, acc, tags)
        if miss <= allowed:
            return tb.with_upos(tags), acc
    raise ToleranceError(
        f"could not reach {target} errors within {tolerance:.1%} after {max_attempts} attempts "
        f"(best accuracy {best[1]:.4f}, target {plan.target_accuracy:.4f})", best[1])


class TagCorruptor(TransformerMixin, BaseEstimator):
    """Estimator wrapper: fit on gold trees plus a tagger's predictions.

    ``fit_transform`` corrupts the calibration treebank itself, using the
    recorded real-error positions; ``transform`` applies the fitted per-tag
    rates to other treebanks (train/dev splits).
    """

    def __init__(self, target_accuracy: float = 0.9, seed: int = 0, tolerance: float = 0.05,
                 max_attempts: int = 20):
        self.target_accuracy = target_accuracy
        self.seed = seed
        self.tolerance = tolerance
        self.max_attempts = max_attempts

    def fit(self, X, y):
        X = check_treebank(X)
        self.error_model_ = fit_error_model(X, y)
        self.plan_ = build_plan(self.error_model_, self.target_accuracy)
        return self

    def _corrupt(self, X, calibration):
        out, acc = corrupt(X, self.error_model_, self.plan_, self.seed, calibration=calibration,
                           tolerance=self.tolerance, max_attempts=self.max_attempts)
        self.achieved_accuracy_ = acc
        return out

    def fit_transform(self, X, y=None, **fit_params):
        if y is None:
            raise ValueError("TagCorruptor needs predicted tags as y")
        X = check_treebank(X)
        return self.fit(X, y)._corrupt(X, calibration=True)

    def transform(self, X):
        check_is_fitted(self, "error_model_")
        return self._corrupt(check_treebank(X, allow_empty=True), calibration=False)
