import pytest

from depseq.conllu import Treebank
from depseq.encodings import encode
from depseq.sweep import SweepConfig, cell_seed, sweep
from depseq.synthetic import synthetic_corpus


@pytest.fixture(scope="module")
def small():
    return synthetic_corpus(3_000, seed=12)


def test_cell_seed_depends_on_every_coordinate():
    base = cell_seed(0, "tb", 0.9, 1)
    assert base == cell_seed(0, "tb", 0.9, 1)
    assert len({base, cell_seed(1, "tb", 0.9, 1), cell_seed(0, "tc", 0.9, 1),
                cell_seed(0, "tb", 0.95, 1), cell_seed(0, "tb", 0.9, 2)}) == 5


def test_rows_sorted_and_complete(small):
    tb, pred = small
    rep = sweep(tb, pred, name="s", grid=[1.0, 0.8], seeds=[2, 1])
    assert len(rep.rows) == 4 * 2 * 2
    keys = [(r.encoding, r.target_acc, r.seed) for r in rep.rows]
    assert keys == sorted(keys)
    for r in rep.rows:
        if r.target_acc == 1.0 and r.encoding in ("rp_h", "c_tb"):
            assert r.las == 1.0


def test_tag_independent_encodings_are_flat(small):
    tb, pred = small
    rep = sweep(tb, pred, name="s", grid=[0.75, 0.9, 1.0], seeds=[1])
    for enc in ("2p_b", "ah_tb", "c_tb"):
        assert len({r.las for r in rep.rows if r.encoding == enc}) == 1
    rph = {r.target_acc: r.las for r in rep.rows if r.encoding == "rp_h"}
    assert rph[0.75] < rph[0.9] < rph[1.0]


def test_failed_plan_becomes_error_rows():
    tb, pred = synthetic_corpus(500, seed=1)
    rep = sweep(tb, [s.upos for s in tb], name="s", grid=[0.9, 1.0], seeds=[1], encodings=["c_tb"])
    err = [r for r in rep.rows if r.error]
    assert len(err) == 1 and "no error evidence" in err[0].error
    assert "error: no error evidence" in rep.to_csv()
    ok = [r for r in rep.rows if not r.error]
    assert ok[0].las == 1.0


def test_external_labels(small):
    tb, pred = small
    # a "parser" that predicts every word attaches to the root
    flat = [encode(Treebank((s.with_heads([0] * len(s)),))[0], "c_tb") for s in tb]
    rep = sweep(tb, pred, name="s", grid=[1.0], seeds=[1], encodings=["c_tb"], external={"c_tb": flat})
    root_share = sum(h == 0 for s in tb for h in s.heads) / tb.n_tokens
    assert rep.rows[0].uas == pytest.approx(root_share)


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(test="x", encodings=[])
    with pytest.raises(ValueError):
        SweepConfig(test="x", grid=[1.5])
    with pytest.raises(ValueError):
        SweepConfig(test="x", seeds=[])
    with pytest.raises(ValueError):
        SweepConfig.from_dict({"test": "x", "bogus": 1})


def test_json_curves(small):
    tb, pred = small
    rep = sweep(tb, pred, name="s", grid=[0.9, 1.0], seeds=[1, 2], encodings=["rp_h"])
    curve = rep.curves()["rp_h"]
    assert [c["target_acc"] for c in curve] == [0.9, 1.0]
    assert all(c["n_seeds"] == 2 for c in curve)
    assert rep.to_json() == rep.to_json()
