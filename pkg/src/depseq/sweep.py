"""Accuracy-grid sweeps: corrupt test tags, decode every encoding, score.

Decoding uses gold-derived labels by default (an oracle parser), so the
scores isolate how much each encoding depends on tag quality. Externally
predicted label files can be substituted per encoding.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import zlib
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .conllu import Treebank, read_conllu
from .corruption import PlanError, build_plan, corrupt, fit_error_model
from .encodings import AH_TB, ENCODINGS, EncodedSentence, check_encoding, decode, encode
from .io import parse_labels, parse_predictions
from .metrics import attachment_scores
from .tagger import BaselineTagger
from .validation import check_accuracy, check_aligned

log = logging.getLogger(__name__)

DEFAULT_GRID = (0.75, 0.80, 0.85, 0.90, 0.95, 0.975, 1.0)
CSV_COLUMNS = ("treebank", "encoding", "target_acc", "achieved_acc", "seed", "uas", "las", "repairs")


@dataclass
class SweepConfig:
    test: str
    train: str | None = None
    dev: str | None = None
    name: str | None = None
    encodings: list[str] = field(default_factory=lambda: list(ENCODINGS))
    grid: list[float] = field(default_factory=lambda: list(DEFAULT_GRID))
    seeds: list[int] = field(default_factory=lambda: [1])
    tolerance: float = 0.05
    max_attempts: int = 20
    master_seed: int = 0
    # "baseline" or the path of a prediction file aligned with the test set
    calibration: str = "baseline"
    labels: dict[str, str] = field(default_factory=dict)
    output: str | None = None

    def __post_init__(self):
        if not self.encodings:
            raise ValueError("at least one encoding is required")
        for e in self.encodings:
            check_encoding(e)
        for a in self.grid:
            check_accuracy(a, "grid value")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        for e in self.labels:
            check_encoding(e)

    @classmethod
    def from_dict(cls, data: dict) -> SweepConfig:
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def from_json(cls, path) -> SweepConfig:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        base = Path(path).parent
        for key in ("test", "train", "dev", "output"):
            if data.get(key):
                data[key] = str(base / data[key])
        if data.get("calibration", "baseline") != "baseline":
            data["calibration"] = str(base / data["calibration"])
        data["labels"] = {k: str(base / v) for k, v in data.get("labels", {}).items()}
        return cls.from_dict(data)


@dataclass
class SweepRow:
    treebank: str
    encoding: str
    target_acc: float
    achieved_acc: float | None
    seed: int
    uas: float | None
    las: float | None
    repairs: dict[str, int] = field(default_factory=dict)
    error: str | None = None

    def csv_fields(self) -> list[str]:
        def num(x):
            return "" if x is None else f"{x:.6f}"
        if self.error is not None:
            rep = f"error: {self.error}"
        else:
            rep = ";".join(f"{k}={v}" for k, v in sorted(self.repairs.items()))
        return [self.treebank, self.encoding, f"{self.target_acc:g}", num(self.achieved_acc),
                str(self.seed), num(self.uas), num(self.las), rep]


@dataclass
class SweepReport:
    rows: list[SweepRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.csv_fields())
        return buf.getvalue()

    def curves(self) -> dict[str, list[dict]]:
        """Per-encoding means over seeds for every grid point."""
        groups = defaultdict(list)
        for r in self.rows:
            if r.error is None:
                groups[(r.treebank, r.encoding, r.target_acc)].append(r)
        out: dict[str, list[dict]] = defaultdict(list)
        for (tb, enc, acc), rows in sorted(groups.items()):
            out[enc].append({
                "treebank": tb,
                "target_acc": acc,
                "achieved_acc": round(float(np.mean([r.achieved_acc for r in rows])), 6),
                "uas": round(float(np.mean([r.uas for r in rows])), 6),
                "las": round(float(np.mean([r.las for r in rows])), 6),
                "n_seeds": len(rows),
            })
        return dict(out)

    def to_dict(self) -> dict:
        rows = []
        for r in self.rows:
            d = asdict(r)
            for k in ("achieved_acc", "uas", "las"):
                if d[k] is not None:
                    d[k] = round(d[k], 6)
            rows.append(d)
        return {"columns": list(CSV_COLUMNS), "rows": rows, "curves": self.curves()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


def cell_seed(master_seed: int, treebank: str, accuracy: float, seed: int) -> int:
    """Independent RNG seed for one sweep cell, stable across schedules."""
    entropy = [master_seed, zlib.crc32(treebank.encode("utf-8")), round(accuracy * 1_000_000), seed]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def _gold_labels(test: Treebank, encoding: str) -> list[EncodedSentence]:
    return [encode(t, encoding, strict=encoding != AH_TB) for t in test]


def sweep(test: Treebank, calibration_tags: Sequence[Sequence[str]], *, name: str,
          encodings: Sequence[str] = ENCODINGS, grid: Sequence[float] = DEFAULT_GRID,
          seeds: Sequence[int] = (1,), tolerance: float = 0.05, max_attempts: int = 20,
          master_seed: int = 0, external: dict[str, list[EncodedSentence]] | None = None) -> SweepReport:
    """Run the accuracy grid on ``test``.

    ``calibration_tags`` are a tagger's predictions for ``test``; they fix
    the error model. Non-projective trees are encoded for ``ah_tb`` through
    a projective approximation, so its gold-tag scores reflect coverage.
    """
    check_aligned(test, calibration_tags)
    model = fit_error_model(test, calibration_tags)
    external = external or {}
    labels = {}
    for enc in encodings:
        labels[enc] = external.get(enc) or _gold_labels(test, enc)
        check_aligned(test, labels[enc])

    rows: list[SweepRow] = []
    for acc in grid:
        try:
            plan = build_plan(model, acc)
        except PlanError as exc:
            rows.extend(SweepRow(name, enc, acc, None, s, None, None, error=str(exc))
                        for enc in encodings for s in seeds)
            continue
        for s in seeds:
            try:
                corrupted, achieved = corrupt(test, model, plan, cell_seed(master_seed, name, acc, s),
                                              tolerance=tolerance, max_attempts=max_attempts)
            except (ValueError, RuntimeError) as exc:
                log.warning("corruption failed for %s A=%g seed=%d: %s", name, acc, s, exc)
                rows.extend(SweepRow(name, enc, acc, None, s, None, None, error=str(exc)) for enc in encodings)
                continue
            tags = corrupted.upos()
            for enc in encodings:
                try:
                    stats: Counter = Counter()
                    decoded = Treebank(tuple(decode(sent, t, stats) for sent, t in zip(labels[enc], tags)))
                    res = attachment_scores(test, decoded, stats)
                    rows.append(SweepRow(name, enc, acc, achieved, s, res.uas, res.las, res.repairs))
                except (ValueError, RuntimeError) as exc:
                    rows.append(SweepRow(name, enc, acc, achieved, s, None, None, error=str(exc)))
    rows.sort(key=lambda r: (r.treebank, r.encoding, r.target_acc, r.seed))
    return SweepReport(rows)


def run_sweep(config: SweepConfig) -> SweepReport:
    """Load the files named in ``config`` and run :func:`sweep`."""
    test = read_conllu(config.test)
    name = config.name or Path(config.test).stem
    if config.calibration == "baseline":
        if not config.train:
            raise ValueError("baseline calibration needs a training treebank")
        tagger = BaselineTagger().fit(read_conllu(config.train))
        calib = tagger.predict(test)
    else:
        calib = parse_predictions(Path(config.calibration).read_text(encoding="utf-8"))
    external = {enc: parse_labels(Path(p).read_text(encoding="utf-8"), enc) for enc, p in config.labels.items()}
    return sweep(test, calib, name=name, encodings=config.encodings, grid=config.grid, seeds=config.seeds,
                 tolerance=config.tolerance, max_attempts=config.max_attempts,
                 master_seed=config.master_seed, external=external)
