"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 tolerance failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .conllu import ConlluError, TreeValidationError, read_conllu, resplit, write_conllu
from .corruption import ErrorModel, PlanError, ToleranceError, build_plan, corrupt, fit_error_model
from .encodings import AH_TB, ENCODINGS, NonProjectiveError
from .io import parse_labels, parse_predictions, write_labels, write_predictions
from .linearizer import TreeLinearizer
from .metrics import attachment_scores
from .sweep import DEFAULT_GRID, SweepConfig, run_sweep
from .tagger import BaselineTagger
from .trees import crossing_arc_pairs, is_projective

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_TOLERANCE = 0, 1, 2, 3

log = logging.getLogger("depseq")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_split(args):
    tb = read_conllu(args.file)
    parts = resplit(tb, tuple(args.ratios), seed=args.seed)
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.file).stem
    for part, label in zip(parts, ("train", "dev", "test")):
        path = out_dir / f"{stem}-{label}.conllu"
        path.write_text(write_conllu(part), encoding="utf-8")
        print(f"{label}\t{len(part)}\t{path}")


def cmd_tag(args):
    tagger = BaselineTagger().fit(read_conllu(args.train))
    tb = read_conllu(args.file)
    tags = tagger.predict(tb)
    if args.format == "conllu":
        _emit(write_conllu(tb.with_upos(tags)), args.out)
    else:
        _emit(write_predictions(tb, tags), args.out)


def cmd_fit_errors(args):
    gold = read_conllu(args.gold)
    model = fit_error_model(gold, parse_predictions(_read_text(args.predictions)))
    _emit(model.to_json() + "\n", args.out)
    print(f"N={model.n_tokens} E={model.total_errors} accuracy={model.accuracy:.4f}", file=sys.stderr)


def cmd_corrupt(args):
    gold = read_conllu(args.gold)
    if args.predictions:
        model = fit_error_model(gold, parse_predictions(_read_text(args.predictions)))
        calibration = True if args.calibration is None else args.calibration
    else:
        model = ErrorModel.from_json(_read_text(args.model))
        calibration = bool(args.calibration)
    plan = build_plan(model, args.accuracy)
    out, achieved = corrupt(gold, model, plan, args.seed, calibration=calibration,
                            tolerance=args.tolerance, max_attempts=args.max_attempts)
    _emit(write_conllu(out), args.out)
    report = {"target_acc": args.accuracy, "achieved_acc": round(achieved, 6), "target_errors": plan.target_errors,
              "gamma": round(plan.gamma, 6), "mode": plan.mode, "capped": sorted(plan.capped), "seed": args.seed}
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    if args.format == "json":
        print(json.dumps(report, sort_keys=True), file=stream)
    else:
        print(f"target={args.accuracy:g} achieved={achieved:.4f} E_A={plan.target_errors} "
              f"gamma={plan.gamma:.4f} mode={plan.mode}", file=stream)


def cmd_encode(args):
    tb = read_conllu(args.file)
    if args.encoding == AH_TB and not args.skip_nonprojective:
        for k, tree in enumerate(tb, start=1):
            if not is_projective(tree):
                pair = crossing_arc_pairs(tree)[0]
                (h1, d1), (h2, d2) = pair.first, pair.second
                raise NonProjectiveError(
                    f"sentence {k}: not projective (token {d1} <- {h1} crosses token {d2} <- {h2}); "
                    "use --skip-nonprojective")
    lin = TreeLinearizer(args.encoding, nonprojective="skip" if args.skip_nonprojective else "raise")
    encoded = lin.transform(tb)
    for k in lin.skipped_:
        print(f"skipped non-projective sentence {k}", file=sys.stderr)
    _emit(write_labels(encoded), args.out)


def cmd_decode(args):
    encoded = parse_labels(_read_text(args.labels), args.encoding)
    tags = None
    if args.tags:
        text = _read_text(args.tags)
        tags = parse_predictions(text)
    lin = TreeLinearizer(args.encoding)
    tb = lin.inverse_transform(encoded, tags)
    _emit(write_conllu(tb), args.out)
    if lin.repairs_:
        print("repairs: " + " ".join(f"{k}={v}" for k, v in sorted(lin.repairs_.items()) if v), file=sys.stderr)


def cmd_eval(args):
    res = attachment_scores(read_conllu(args.gold), read_conllu(args.predicted))
    if args.format == "json":
        text = res.to_json() + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["uas", "las", "n"])
        w.writerow([f"{res.uas:.6f}", f"{res.las:.6f}", res.n])
        text = buf.getvalue()
    else:
        text = str(res) + "\n"
    _emit(text, args.out)


def cmd_sweep(args):
    if args.config:
        config = SweepConfig.from_json(args.config)
    elif args.test:
        config = SweepConfig(test=args.test, train=args.train,
                             calibration=args.predictions or "baseline")
    else:
        raise UsageError("sweep needs --config or --test")
    overrides = {"encodings": args.encodings, "grid": args.grid, "seeds": args.seeds,
                 "tolerance": args.tolerance, "master_seed": args.seed, "output": args.out}
    for key, value in overrides.items():
        if value is not None:
            setattr(config, key, value)
    config.__post_init__()
    report = run_sweep(config)
    if config.output and config.output != "-":
        out = Path(config.output)
        out.write_text(report.to_csv(), encoding="utf-8")
        out.with_suffix(".json").write_text(report.to_json() + "\n", encoding="utf-8")
        print(f"wrote {len(report.rows)} rows to {out} and {out.with_suffix('.json')}", file=sys.stderr)
    else:
        sys.stdout.write(report.to_json() + "\n" if args.format == "json" else report.to_csv())


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="depseq", description="Dependency linearizations under controlled PoS-tag noise.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("split", help="re-split a treebank 60/10/30")
    s.add_argument("file")
    s.add_argument("--ratios", type=float, nargs=3, default=[0.6, 0.1, 0.3])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="output directory")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("tag", help="tag a treebank with the baseline tagger")
    s.add_argument("file")
    s.add_argument("--train", required=True)
    s.add_argument("--format", choices=("pred", "conllu"), default="pred")
    s.add_argument("--out")
    s.set_defaults(func=cmd_tag)

    s = sub.add_parser("fit-errors", help="estimate an error model from gold and predicted tags")
    s.add_argument("gold")
    s.add_argument("--predictions", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_fit_errors)

    s = sub.add_parser("corrupt", help="corrupt UPOS tags to a target accuracy")
    s.add_argument("gold")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--predictions", help="calibration predictions for GOLD")
    src.add_argument("--model", help="error model JSON from fit-errors")
    s.add_argument("--accuracy", "-A", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tolerance", type=float, default=0.05)
    s.add_argument("--max-attempts", type=int, default=20)
    cal = s.add_mutually_exclusive_group()
    cal.add_argument("--calibration", dest="calibration", action="store_true", default=None,
                     help="GOLD is the treebank the error model was fitted on")
    cal.add_argument("--no-calibration", dest="calibration", action="store_false")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--out")
    s.set_defaults(func=cmd_corrupt)

    s = sub.add_parser("encode", help="write a label file")
    s.add_argument("file")
    s.add_argument("--encoding", "-e", choices=ENCODINGS, required=True)
    s.add_argument("--skip-nonprojective", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", help="decode a label file to CoNLL-U")
    s.add_argument("labels")
    s.add_argument("--encoding", "-e", choices=ENCODINGS, required=True)
    s.add_argument("--tags", help="tags to decode against (CoNLL-U or prediction file)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("eval", help="UAS/LAS of a prediction against gold")
    s.add_argument("gold")
    s.add_argument("predicted")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.add_argument("--out")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("sweep", help="run the accuracy-grid experiment")
    s.add_argument("--config")
    s.add_argument("--test")
    s.add_argument("--train")
    s.add_argument("--predictions")
    s.add_argument("--encodings", nargs="+", choices=ENCODINGS)
    s.add_argument("--grid", type=float, nargs="+", help=f"default {' '.join(map(str, DEFAULT_GRID))}")
    s.add_argument("--seeds", type=int, nargs="+")
    s.add_argument("--seed", type=int, help="master seed")
    s.add_argument("--tolerance", type=float)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"depseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceError as exc:
        print(f"depseq: tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (ConlluError, TreeValidationError, PlanError, NonProjectiveError, ValueError, OSError) as exc:
        print(f"depseq: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
