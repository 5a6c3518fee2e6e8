from collections import Counter

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from depseq.conllu import DepTree, Treebank, write_conllu
from depseq.corruption import (GROW, SHRINK, ErrorModel, PlanError, TagCorruptor, ToleranceError,
                               build_plan, corrupt, fit_error_model, tagging_accuracy,
                               token_probabilities)
from depseq.synthetic import synthetic_corpus

from oracles import expected_errors_by_bisection


def flat_treebank(tags, per_sentence=10):
    sents = []
    for k in range(0, len(tags), per_sentence):
        chunk = tags[k:k + per_sentence]
        sents.append(DepTree.from_heads([0] * len(chunk), upos=chunk, forms=[f"w{k + i}" for i in range(len(chunk))]))
    return Treebank(tuple(sents))


def model_from_counts(counts, errors, confusion=None):
    confusion = confusion or {t: {"ZZZ": e} for t, e in errors.items() if e}
    return ErrorModel(counts=counts, errors=errors, confusion=confusion)


@pytest.fixture(scope="module")
def corpus():
    return synthetic_corpus(20_000, seed=3)


def test_fit_single_confusion():
    gold = flat_treebank(["NOUN"] * 100)
    pred = [s.upos for s in gold]
    for k in range(10):
        pred[k][0] = "VERB"
    model = fit_error_model(gold, pred)
    assert model.counts == {"NOUN": 100}
    assert model.errors == {"NOUN": 10}
    assert model.confusion == {"NOUN": {"VERB": 10}}
    assert model.error_rate("NOUN") == pytest.approx(0.1)
    assert len(model.real_error_positions) == 10


def test_fit_no_errors():
    gold = flat_treebank(["NOUN", "VERB"] * 20)
    model = fit_error_model(gold, gold.upos())
    assert model.total_errors == 0
    assert set(model.errors.values()) == {0}


def test_fit_invariants_by_recount():
    rng = np.random.default_rng(1)
    gold_tags = [str(t) for t in rng.choice(["A", "B"], size=300)]
    pred_tags = [t if rng.random() < 0.7 else str(rng.choice(["A", "B", "C"])) for t in gold_tags]
    gold = flat_treebank(gold_tags)
    pred = [pred_tags[k:k + 10] for k in range(0, 300, 10)]
    model = fit_error_model(gold, pred)
    recount = Counter((g, p) for g, p in zip(gold_tags, pred_tags) if g != p)
    for t in ("A", "B"):
        assert sum(model.confusion.get(t, {}).values()) == model.errors[t]
        assert model.errors[t] == sum(c for (g, _), c in recount.items() if g == t)
        assert model.counts[t] == gold_tags.count(t)
    assert model.n_tokens == 300


def test_fit_length_mismatch():
    gold = flat_treebank(["A"] * 10)
    with pytest.raises(ValueError):
        fit_error_model(gold, [["A"] * 9])


def test_model_json_round_trip(corpus):
    model = fit_error_model(*corpus)
    again = ErrorModel.from_json(model.to_json())
    assert again == model
    assert '"format": 1' in model.to_json()


def test_gamma_is_ratio():
    plan = build_plan(model_from_counts({"A": 500}, {"A": 50}), 0.8)
    assert plan.target_errors == 100
    assert plan.gamma == 2.0
    assert plan.mode == GROW


def test_capping_worked_example():
    model = model_from_counts({"t1": 10, "t2": 100}, {"t1": 8, "t2": 2})
    plan = build_plan(model, 1 - 15 / 110)
    assert plan.target_errors == 15
    assert plan.gamma == 2.5
    assert plan.iterations == 1
    assert plan.capped == {"t1"}
    assert plan.expected_errors == {"t1": 10.0, "t2": 5.0}


def test_gold_accuracy_plan():
    plan = build_plan(model_from_counts({"A": 10}, {"A": 3}), 1.0)
    assert plan.target_errors == 0
    assert set(plan.error_prob.values()) == {0.0}


def test_no_error_evidence():
    with pytest.raises(PlanError, match="no error evidence"):
        build_plan(model_from_counts({"A": 10}, {"A": 0}), 0.9)


def test_unreachable_target_when_grow_domain_empty():
    # 10 words, the tagger only ever confused X (3 words, all wrong)
    model = model_from_counts({"X": 3, "Y": 7}, {"X": 3, "Y": 0})
    with pytest.raises(PlanError, match="no error evidence"):
        build_plan(model, 0.5)


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.sampled_from("ABCDEFG"), st.tuples(st.integers(1, 200), st.integers(0, 200)),
                       min_size=1),
       st.floats(0.0, 1.0))
def test_plan_matches_bisection_oracle(table, accuracy):
    counts = {t: c for t, (c, _) in table.items()}
    errors = {t: min(c, e) for t, (c, e) in table.items()}
    assume(sum(errors.values()) > 0)
    model = model_from_counts(counts, errors)
    try:
        plan = build_plan(model, accuracy)
    except PlanError:
        reachable = sum(c for t, c in counts.items() if errors[t] > 0)
        assert plan_target(accuracy, sum(counts.values())) > reachable
        return
    assert plan.iterations <= len(counts)
    assert all(0.0 <= p <= 1.0 for p in plan.error_prob.values())
    assert all(0.0 <= p <= 1.0 for p in plan.extra_prob.values())
    assert sum(plan.expected_errors.values()) == pytest.approx(plan.target_errors, abs=1e-6)
    oracle = expected_errors_by_bisection(counts, errors, plan.target_errors)
    for t in counts:
        assert plan.expected_errors[t] == pytest.approx(oracle[t], abs=1e-6)


def plan_target(accuracy, n):
    return int(np.floor((1 - accuracy) * n + 1e-9 + 0.5))


def test_expected_errors_over_eligible_words(corpus):
    gold, pred = corpus
    model = fit_error_model(gold, pred)
    for acc in (0.75, 0.85, 0.95, 0.99):
        plan = build_plan(model, acc)
        probs = token_probabilities(gold, model, plan)
        assert abs(probs.sum() - plan.target_errors) <= 1


def test_corrupt_identity_at_full_accuracy(corpus):
    gold, pred = corpus
    model = fit_error_model(gold, pred)
    out, acc = corrupt(gold, model, build_plan(model, 1.0), seed=1)
    assert acc == 1.0
    assert out.upos() == gold.upos()


def test_corrupt_thousand_tokens():
    gold, pred = synthetic_corpus(1000, seed=8)
    model = fit_error_model(gold, pred)
    plan = build_plan(model, 0.90)
    assert plan.target_errors == 100
    out, acc = corrupt(gold, model, plan, seed=4)
    assert abs((1 - acc) * 1000 - 100) <= 5
    assert tagging_accuracy(gold, out) == acc


def test_point_mass_confusion():
    gold = flat_treebank(["NOUN"] * 50 + ["DET"] * 50)
    pred = gold.upos()
    for s in range(5):
        pred[s][0] = "VERB"  # sentences 0-4 are all NOUN
    model = fit_error_model(gold, pred)
    out, acc = corrupt(gold, model, build_plan(model, 0.8), seed=2)
    changed = [(g, o) for gs, os in zip(gold.upos(), out.upos()) for g, o in zip(gs, os) if g != o]
    assert changed and all(pair == ("NOUN", "VERB") for pair in changed)


def test_shrink_only_touches_real_errors(corpus):
    gold, pred = corpus
    model = fit_error_model(gold, pred)
    plan = build_plan(model, 0.97)
    assert plan.mode == SHRINK
    out, _ = corrupt(gold, model, plan, seed=5)
    for s, (g, o) in enumerate(zip(gold, out)):
        for gt, ot in zip(g.tokens, o.tokens):
            if gt.upos != ot.upos:
                assert (s, gt.index) in model.real_error_positions


def test_grow_keeps_every_real_error(corpus):
    gold, pred = corpus
    model = fit_error_model(gold, pred)
    plan = build_plan(model, 0.8)
    assert plan.mode == GROW
    out, _ = corrupt(gold, model, plan, seed=6)
    for s, i in model.real_error_positions:
        assert out[s].tokens[i - 1].upos != gold[s].tokens[i - 1].upos


def test_determinism_and_seed_sensitivity(corpus):
    gold, pred = corpus
    model = fit_error_model(gold, pred)
    plan = build_plan(model, 0.85)
    a = corrupt(gold, model, plan, seed=9)
    b = corrupt(gold, model, plan, seed=9)
    c = corrupt(gold, model, plan, seed=10)
    assert write_conllu(a[0]) == write_conllu(b[0])
    assert a[0].upos() != c[0].upos()


def test_only_upos_column_changes(corpus):
    gold, pred = corpus
    model = fit_error_model(gold, pred)
    out, _ = corrupt(gold, model, build_plan(model, 0.75), seed=1)
    for g, o in zip(gold, out):
        for gt, ot in zip(g.tokens, o.tokens):
            assert (gt.index, gt.form, gt.head, gt.deprel, gt.lemma) == (ot.index, ot.form, ot.head, ot.deprel, ot.lemma)


def test_monotone_in_target(corpus):
    gold, pred = corpus
    model = fit_error_model(gold, pred)
    means = []
    for acc in (0.75, 0.80, 0.85, 0.90, 0.95, 0.975, 1.0):
        plan = build_plan(model, acc)
        means.append(np.mean([corrupt(gold, model, plan, seed=s)[1] for s in range(10)]))
    assert means == sorted(means)


def test_other_split_uses_all_words(corpus):
    gold, pred = corpus
    model = fit_error_model(gold, pred)
    other, _ = synthetic_corpus(20_000, seed=4)
    plan = build_plan(model, 0.85)
    out, acc = corrupt(other, model, plan, seed=1, calibration=False)
    assert abs(acc - 0.85) < 0.01
    with pytest.raises(ValueError, match="calibration=False"):
        corrupt(synthetic_corpus(5_000, seed=4)[0], model, plan, seed=1)


def test_tolerance_failure_reports_best_accuracy():
    model = model_from_counts({"A": 10, "B": 10}, {"A": 10, "B": 0})
    plan = build_plan(model, 0.5)
    only_b = flat_treebank(["B"] * 20)
    with pytest.raises(ToleranceError) as info:
        corrupt(only_b, model, plan, seed=0, calibration=False, max_attempts=3)
    assert info.value.best_accuracy == 1.0


def test_tagging_accuracy_examples():
    gold = flat_treebank(["A", "B", "C", "D"])
    assert tagging_accuracy(gold, gold) == 1.0
    assert tagging_accuracy(gold, [["A", "B", "C", "X"]]) == 0.75
    with pytest.raises(ValueError):
        tagging_accuracy(gold, [["A"]])


def test_tag_corruptor_estimator(corpus):
    gold, pred = corpus
    est = TagCorruptor(target_accuracy=0.85, seed=3)
    assert est.get_params()["target_accuracy"] == 0.85
    out = est.fit_transform(gold, pred)
    assert est.achieved_accuracy_ == pytest.approx(tagging_accuracy(gold, out))
    assert abs(est.achieved_accuracy_ - 0.85) < 0.01
    other, _ = synthetic_corpus(10_000, seed=5)
    est.transform(other)
    assert abs(est.achieved_accuracy_ - 0.85) < 0.015
