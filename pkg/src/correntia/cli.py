"""Command-line interface: train, predict, eval, experiment, synth.

Exit code is 0 on success; on failure a single machine-parsable line
``error: <message>`` goes to stderr and the exit code is 1.  Output CSVs
use ``.`` decimals and LF line endings.
"""

import argparse
import csv
import sys

import numpy as np

from .dataset import load_csv
from .evaluation import accuracy, auc, multiclass_binary_scores, pr_curve, roc_curve
from .harness import (
    MethodSpec,
    SyntheticSpec,
    build_representation,
    emit_reports,
    generate_synthetic,
    load_config,
    run_experiment,
    select_alpha_by_cv,
    train_method,
)
from .regmaxcem import TrainConfig, load_model, predict_labels, save_model, score_matrix, train

__all__ = ["main"]


def _bandwidth_arg(text: str):
    return "median" if text == "median" else float(text)


def _sigma_arg(text: str):
    return "adaptive" if text == "adaptive" else float(text)


def _alpha_arg(text: str):
    return "grid" if text == "grid" else float(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="correntia", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("train", help="train one method on a CSV dataset")
    t.add_argument("--data", required=True)
    t.add_argument("--label-col", required=True)
    t.add_argument("--method", required=True, choices=("regmaxcem", "square", "hinge", "logistic"))
    t.add_argument("--model-out", required=True)
    t.add_argument("--representation", default="linear", choices=("linear", "kernel"))
    t.add_argument("--kernel", default="rbf", choices=("linear", "rbf"))
    t.add_argument("--bandwidth", default="median", type=_bandwidth_arg)
    t.add_argument("--alpha", default=0.01, type=_alpha_arg,
                   help="tradeoff parameter, or 'grid' for inner-CV selection over 1e-4..1")
    t.add_argument("--iters", default=20, type=int)
    t.add_argument("--tol", default=1e-6, type=float)
    t.add_argument("--step-size", default=1.0, type=float)
    t.add_argument("--sigma", default="adaptive", type=_sigma_arg)
    t.add_argument("--sigma-floor", default=1e-8, type=float)
    t.add_argument("--trace-out", default=None,
                   help="write per-round objective/sigma/param-change CSV (regmaxcem only)")

    p = sub.add_parser("predict", help="predict labels for a CSV of features")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--label-col", default=None, help="column to ignore if present")

    e = sub.add_parser("eval", help="evaluate a saved model on a labeled CSV")
    e.add_argument("--model", required=True)
    e.add_argument("--data", required=True)
    e.add_argument("--label-col", required=True)
    e.add_argument("--positive-class", default="1",
                   help="class index (1..L) or original class name for the ROC/PR curves")
    e.add_argument("--out-dir", default=None)

    x = sub.add_parser("experiment", help="run a config-driven experiment sweep")
    x.add_argument("--config", required=True)
    x.add_argument("--out", required=True)
    x.add_argument("--seed", default=None, type=int, help="override the config seed")

    s = sub.add_parser("synth", help="generate a synthetic Gaussian-blob CSV")
    s.add_argument("--out", required=True)
    s.add_argument("--means", required=True, help="per-class means, e.g. '2,0;-2,0'")
    s.add_argument("--std", default=1.0, type=float)
    s.add_argument("--per-class", default=100, type=int)
    s.add_argument("--seed", default=0, type=int)
    s.add_argument("--label-col", default="label")
    return parser


def _cmd_train(args) -> int:
    ds = load_csv(args.data, args.label_col)
    rep = build_representation(ds.features, args.representation, args.kernel, args.bandwidth)
    method = MethodSpec(
        name=args.method,
        alpha=0.01 if args.alpha == "grid" else args.alpha,
        iters=args.iters,
        tol=args.tol,
        step_size=args.step_size,
        sigma=args.sigma,
        sigma_floor=args.sigma_floor,
    )
    if args.alpha == "grid":
        from dataclasses import replace

        selected = select_alpha_by_cv(
            method, ds, args.representation, args.kernel, args.bandwidth
        )
        method = replace(method, alpha=selected)
        print(f"alpha selected by inner cross-validation: {selected!r}")
    if args.method == "regmaxcem" and args.trace_out:
        cfg = TrainConfig(
            alpha=method.alpha,
            max_iters=args.iters,
            tol=args.tol,
            sigma_policy=method.sigma_policy(),
            representation=rep,
            trace=True,
        )
        model, trace = train(ds, cfg)
        with open(args.trace_out, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["iteration", "objective", "sigma", "max_param_change"])
            for i, record in enumerate(trace.records, start=1):
                writer.writerow(
                    [i, repr(record.objective), repr(record.sigma), repr(record.max_param_change)]
                )
    else:
        model = train_method(method, ds, rep)
    save_model(model, args.model_out)
    print(f"model written to {args.model_out}")
    return 0


def _read_features(path, label_col):
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"empty file: {path}")
        keep = [i for i, name in enumerate(header) if name != label_col]
        if not keep:
            raise ValueError("no feature columns")
        rows = []
        for row_no, row in enumerate(reader, start=1):
            try:
                rows.append([float(row[i]) for i in keep])
            except (ValueError, IndexError):
                raise ValueError(f"row {row_no}: cannot parse feature values") from None
    if not rows:
        raise ValueError(f"no data rows in {path}")
    return np.array(rows, dtype=np.float64)


def _cmd_predict(args) -> int:
    model = load_model(args.model)
    features = _read_features(args.data, args.label_col)
    scores = score_matrix(model, features)
    labels = np.argmax(scores, axis=1)
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["label"] + [f"score_{name}" for name in model.class_map])
        for k, row in zip(labels, scores):
            writer.writerow([model.class_map[k]] + [repr(float(v)) for v in row])
    print(f"predictions written to {args.out}")
    return 0


def _resolve_class(model, text: str) -> int:
    if text in model.class_map:
        return model.class_map.index(text) + 1
    try:
        index = int(text)
    except ValueError:
        raise ValueError(
            f"positive class {text!r} is neither a class name {model.class_map} nor an index"
        ) from None
    if not 1 <= index <= model.num_classes:
        raise ValueError(f"positive class index {index} out of range 1..{model.num_classes}")
    return index


def _align_to_model(ds, model):
    """Remap a freshly loaded dataset into the model's class-index space.

    Label files list classes in their own first-appearance order; the model's
    class map is authoritative at evaluation time.
    """
    from .dataset import Dataset

    if ds.label_names == model.class_map:
        return ds
    mapping = {}
    for k, name in enumerate(ds.label_names, start=1):
        if name not in model.class_map:
            raise ValueError(f"label {name!r} in the data is unknown to the model {model.class_map}")
        mapping[k] = model.class_map.index(name) + 1
    labels = np.array([mapping[int(l)] for l in ds.labels], dtype=np.int64)
    return Dataset(ds.features, labels, model.num_classes, model.class_map)


def _cmd_eval(args) -> int:
    model = load_model(args.model)
    ds = _align_to_model(load_csv(args.data, args.label_col), model)
    positive = _resolve_class(model, args.positive_class)
    acc = accuracy(predict_labels(model, ds.features), ds.labels)
    print(f"accuracy={acc!r}")
    try:
        scores, truth = multiclass_binary_scores(model, ds, positive)
        roc = roc_curve(scores, truth)
        pr = pr_curve(scores, truth)
        print(f"auc={auc(roc)!r}")
        if args.out_dir:
            from pathlib import Path

            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            for name, points in (("roc.csv", roc), ("pr.csv", pr)):
                with open(out / name, "w", encoding="utf-8", newline="") as handle:
                    writer = csv.writer(handle, lineterminator="\n")
                    writer.writerow(["threshold", "x", "y"])
                    for point in points:
                        writer.writerow([repr(point.threshold), repr(point.x), repr(point.y)])
            print(f"curves written to {out}")
    except ValueError as exc:
        print(f"curves skipped: {exc}")
    return 0


def _cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        from dataclasses import replace

        cfg = replace(cfg, seed=args.seed)
    reports = run_experiment(cfg)
    paths = emit_reports(reports, args.out)
    print(f"{len(reports)} reports; {len(paths)} files written to {args.out}")
    return 0


def _cmd_synth(args) -> int:
    means = tuple(
        tuple(float(v) for v in chunk.split(",")) for chunk in args.means.split(";") if chunk
    )
    spec = SyntheticSpec(
        means=means, std=args.std, samples_per_class=args.per_class, seed=args.seed
    )
    ds = generate_synthetic(spec)
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        dim = ds.n_features
        writer.writerow([f"f{j + 1}" for j in range(dim)] + [args.label_col])
        for row, label in zip(ds.features, ds.labels):
            writer.writerow([repr(float(v)) for v in row] + [ds.label_names[label - 1]])
    print(f"{ds.n_samples} samples written to {args.out}")
    return 0


_COMMANDS = {
    "train": _cmd_train,
    "predict": _cmd_predict,
    "eval": _cmd_eval,
    "experiment": _cmd_experiment,
    "synth": _cmd_synth,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except Exception as exc:
        message = str(exc).replace("\n", " ")
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
