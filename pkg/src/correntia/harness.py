"""Config-driven experiment runner: method x noise-rate x split sweeps.

A run is a deterministic function of (config, seed).  For every noise
rate, label noise is injected into each training portion only (the test
portions stay pristine, and the runner asserts as much); every method then
trains on the identical noisy training sets, which is what makes the
per-split accuracies a matched sample for the pairwise paired t-tests.
Failures inside one cell are caught and recorded on that method's report
instead of aborting the sweep.  Cells are mutually independent; this
implementation runs them sequentially, and report order always follows the
config regardless of how cells would be scheduled.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .baselines import BaselineConfig, train_hinge, train_logistic, train_square
from .correntropy import DEFAULT_SIGMA_FLOOR, SigmaPolicy
from .dataset import Dataset, SplitSpec, inject_label_noise, kfold, load_csv, split
from .evaluation import (
    CurvePoint,
    DegenerateDifferencesError,
    accuracy,
    auc,
    multiclass_binary_scores,
    paired_ttest,
    pr_curve,
    roc_curve,
)
from .kernels import (
    KernelSpec,
    Representation,
    kernel_representation,
    linear_representation,
    median_bandwidth,
)
from .regmaxcem import TrainConfig, predict_labels, train
from .seeding import child_seed, make_rng

__all__ = [
    "SyntheticSpec",
    "MethodSpec",
    "ProtocolSpec",
    "TTestResult",
    "EvalReport",
    "ExperimentConfig",
    "generate_synthetic",
    "run_experiment",
    "emit_reports",
    "select_alpha_by_cv",
    "load_config",
    "config_from_dict",
    "config_to_dict",
]

ALPHA_GRID = tuple(float(a) for a in np.logspace(-4, 0, 9))

METHOD_NAMES = ("regmaxcem", "square", "hinge", "logistic")


@dataclass(frozen=True)
class SyntheticSpec:
    """Gaussian-blob generator: one isotropic blob per class."""

    means: tuple[tuple[float, ...], ...]
    std: float
    samples_per_class: int
    seed: int

    def __post_init__(self):
        means = tuple(tuple(float(v) for v in row) for row in self.means)
        if len(means) < 1 or len({len(row) for row in means}) != 1:
            raise ValueError("means must be a nonempty list of equal-length vectors")
        if len(set(means)) != len(means):
            raise ValueError("class means must be pairwise distinct")
        if self.std <= 0:
            raise ValueError(f"std must be > 0, got {self.std}")
        if self.samples_per_class < 1:
            raise ValueError(f"samples_per_class must be >= 1, got {self.samples_per_class}")
        object.__setattr__(self, "means", means)


@dataclass(frozen=True)
class MethodSpec:
    """One classifier entry of an experiment: a method name plus hyperparameters."""

    name: str
    alpha: float = 0.01
    iters: int = 20
    tol: float = 1e-6
    step_size: float = 1.0
    sigma: float | str = "adaptive"
    sigma_floor: float = DEFAULT_SIGMA_FLOOR

    def __post_init__(self):
        if self.name not in METHOD_NAMES:
            raise ValueError(f"unknown method {self.name!r}; expected one of {METHOD_NAMES}")

    def sigma_policy(self) -> SigmaPolicy:
        if self.sigma == "adaptive":
            return SigmaPolicy.adaptive(self.sigma_floor)
        return SigmaPolicy.fixed(float(self.sigma), self.sigma_floor)


@dataclass(frozen=True)
class ProtocolSpec:
    """Evaluation protocol: repeated random splits or k-fold cross-validation."""

    kind: str
    times: int = 10
    fraction: float = 0.5
    k: int = 10

    def __post_init__(self):
        if self.kind not in ("repeated-split", "kfold"):
            raise ValueError(f"unknown protocol {self.kind!r}")
        if self.kind == "repeated-split" and self.times < 1:
            raise ValueError(f"times must be >= 1, got {self.times}")


@dataclass(frozen=True)
class TTestResult:
    other: str
    statistic: float | None
    p_value: float | None
    degenerate: bool = False


@dataclass(frozen=True)
class EvalReport:
    """Aggregated metrics for one (method, noise rate) cell of the sweep.

    ``accuracy`` is the mean of ``per_split_accuracies``; the ROC/PR curves
    and AUC are computed over the test scores pooled across splits, one-vs-
    rest for the configured positive class.  ``ttests`` holds paired
    comparisons of this method against every other method at the same noise
    rate.
    """

    method: str
    noise_rate: float
    accuracy: float
    per_split_accuracies: tuple[float, ...]
    roc: tuple[CurvePoint, ...]
    pr: tuple[CurvePoint, ...]
    auc: float | None
    ttests: tuple[TTestResult, ...] = ()
    errors: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a sweep needs; see README for the JSON schema."""

    methods: tuple[MethodSpec, ...]
    protocol: ProtocolSpec
    noise_rates: tuple[float, ...]
    seed: int
    data_path: str | None = None
    label_column: str | None = None
    synthetic: SyntheticSpec | None = None
    representation: str = "linear"
    kernel: str = "rbf"
    bandwidth: float | str = "median"
    positive_class: int = 1

    def __post_init__(self):
        if not self.methods:
            raise ValueError("method list must be nonempty")
        if (self.data_path is None) == (self.synthetic is None):
            raise ValueError("exactly one of data_path and synthetic must be given")
        if self.data_path is not None and self.label_column is None:
            raise ValueError("data_path requires label_column")
        for rate in self.noise_rates:
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"noise rates must be in [0, 1], got {rate}")
        if self.representation not in ("linear", "kernel"):
            raise ValueError(f"unknown representation {self.representation!r}")


def generate_synthetic(spec: SyntheticSpec) -> Dataset:
    """Sample the Gaussian blobs described by ``spec``; deterministic per seed."""
    rng = make_rng(spec.seed)
    means = np.asarray(spec.means, dtype=np.float64)
    num_classes, dim = means.shape
    blocks = [
        means[l] + spec.std * rng.standard_normal((spec.samples_per_class, dim))
        for l in range(num_classes)
    ]
    features = np.vstack(blocks)
    labels = np.repeat(np.arange(1, num_classes + 1), spec.samples_per_class)
    return Dataset(features, labels, num_classes)


def build_representation(
    train_features: np.ndarray, mode: str, kernel_kind: str, bandwidth: float | str
) -> Representation:
    """Concrete representation for one training set (anchors in kernel mode)."""
    if mode == "linear":
        return linear_representation()
    if kernel_kind == "rbf":
        width = median_bandwidth(train_features) if bandwidth == "median" else float(bandwidth)
        spec = KernelSpec("rbf", width)
    else:
        spec = KernelSpec("linear")
    return kernel_representation(train_features, spec)


def train_method(method: MethodSpec, ds: Dataset, rep: Representation):
    """Train one method on one (already noisy) training set."""
    if method.name == "regmaxcem":
        cfg = TrainConfig(
            alpha=method.alpha,
            max_iters=method.iters,
            tol=method.tol,
            sigma_policy=method.sigma_policy(),
            representation=rep,
        )
        model, _ = train(ds, cfg)
        return model
    if method.name == "square":
        return train_square(ds, rep, method.alpha)
    cfg = BaselineConfig(
        loss=method.name,
        alpha=method.alpha,
        max_iters=method.iters,
        step_size=method.step_size,
        tol=method.tol,
    )
    if method.name == "hinge":
        return train_hinge(ds, rep, cfg)
    return train_logistic(ds, rep, cfg)


def select_alpha_by_cv(
    method: MethodSpec,
    ds: Dataset,
    representation: str = "linear",
    kernel: str = "rbf",
    bandwidth: float | str = "median",
    folds: int = 5,
    seed: int = 0,
    grid: tuple[float, ...] = ALPHA_GRID,
) -> float:
    """Pick the tradeoff parameter by inner cross-validated accuracy.

    Evaluates ``method`` at every alpha in ``grid`` (default nine log-spaced
    values in [1e-4, 1]) over a k-fold split of ``ds`` and returns the alpha
    with the best mean accuracy; ties go to the smallest alpha.
    """
    from dataclasses import replace

    pairs = kfold(ds, min(folds, ds.n_samples), child_seed(seed, 3))
    best_alpha, best_score = None, -np.inf
    for alpha in grid:
        candidate = replace(method, alpha=float(alpha))
        scores = []
        for inner_train, inner_test in pairs:
            rep = build_representation(inner_train.features, representation, kernel, bandwidth)
            model = train_method(candidate, inner_train, rep)
            scores.append(accuracy(predict_labels(model, inner_test.features), inner_test.labels))
        mean_score = float(np.mean(scores))
        if mean_score > best_score:
            best_alpha, best_score = float(alpha), mean_score
    return best_alpha


def _load_dataset(cfg: ExperimentConfig) -> Dataset:
    if cfg.synthetic is not None:
        return generate_synthetic(cfg.synthetic)
    return load_csv(cfg.data_path, cfg.label_column)


def _make_folds(ds: Dataset, cfg: ExperimentConfig):
    if cfg.protocol.kind == "repeated-split":
        return [
            split(ds, SplitSpec(cfg.protocol.fraction, child_seed(cfg.seed, 1, s)))
            for s in range(cfg.protocol.times)
        ]
    return kfold(ds, cfg.protocol.k, child_seed(cfg.seed, 1, 0))


def run_experiment(cfg: ExperimentConfig) -> list[EvalReport]:
    """Run the full sweep and return reports in config order.

    Order: for each noise rate (config order), one report per method
    (config order).  When two or more methods are present, each report
    carries pairwise paired t-tests on the per-split accuracies.
    """
    ds = _load_dataset(cfg)
    folds = _make_folds(ds, cfg)
    # pristine test labels, used to assert noise never leaks into test data
    test_fingerprints = [test.labels.tobytes() for _, test in folds]

    reports: list[EvalReport] = []
    for r_idx, rate in enumerate(cfg.noise_rates):
        noisy_trains = [
            inject_label_noise(tr, rate, child_seed(cfg.seed, 2, r_idx, s))
            for s, (tr, _) in enumerate(folds)
        ]
        rate_reports: list[EvalReport] = []
        for method in cfg.methods:
            per_split: list[float] = []
            pooled_scores: list[np.ndarray] = []
            pooled_truth: list[np.ndarray] = []
            errors: list[str] = []
            for s, (noisy, (_, test)) in enumerate(zip(noisy_trains, folds)):
                try:
                    rep = build_representation(
                        noisy.features, cfg.representation, cfg.kernel, cfg.bandwidth
                    )
                    model = train_method(method, noisy, rep)
                    per_split.append(accuracy(predict_labels(model, test.features), test.labels))
                    scores, truth = multiclass_binary_scores(model, test, cfg.positive_class)
                    pooled_scores.append(scores)
                    pooled_truth.append(truth)
                except Exception as exc:  # cell isolation: record, keep sweeping
                    errors.append(f"method={method.name} noise={rate} split={s}: {exc}")
                assert test.labels.tobytes() == test_fingerprints[s], "test labels were mutated"
            roc_points: tuple[CurvePoint, ...] = ()
            pr_points: tuple[CurvePoint, ...] = ()
            area = None
            if pooled_scores:
                all_scores = np.concatenate(pooled_scores)
                all_truth = np.concatenate(pooled_truth)
                try:
                    roc_points = tuple(roc_curve(all_scores, all_truth))
                    pr_points = tuple(pr_curve(all_scores, all_truth))
                    area = auc(list(roc_points))
                except ValueError as exc:
                    errors.append(f"method={method.name} noise={rate} curves: {exc}")
            rate_reports.append(
                EvalReport(
                    method=method.name,
                    noise_rate=float(rate),
                    accuracy=float(np.mean(per_split)) if per_split else float("nan"),
                    per_split_accuracies=tuple(per_split),
                    roc=roc_points,
                    pr=pr_points,
                    auc=area,
                    errors=tuple(errors),
                )
            )
        reports.extend(_attach_ttests(rate_reports))
    return reports


def _attach_ttests(rate_reports: list[EvalReport]) -> list[EvalReport]:
    if len(rate_reports) < 2:
        return rate_reports
    out = []
    for i, report in enumerate(rate_reports):
        comparisons = []
        for j, other in enumerate(rate_reports):
            if j == i:
                continue
            a, b = report.per_split_accuracies, other.per_split_accuracies
            if len(a) != len(b) or len(a) < 2:
                continue
            try:
                t, p = paired_ttest(np.array(a), np.array(b))
                comparisons.append(TTestResult(other.method, t, p))
            except DegenerateDifferencesError:
                comparisons.append(TTestResult(other.method, None, None, degenerate=True))
        out.append(
            EvalReport(
                method=report.method,
                noise_rate=report.noise_rate,
                accuracy=report.accuracy,
                per_split_accuracies=report.per_split_accuracies,
                roc=report.roc,
                pr=report.pr,
                auc=report.auc,
                ttests=tuple(comparisons),
                errors=report.errors,
            )
        )
    return out


def _curve_filename(method: str, noise_rate: float, which: str) -> str:
    return f"{method}_noise{noise_rate:g}_{which}.csv"


def _write_curve(path, points) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["threshold", "x", "y"])
        for point in points:
            writer.writerow([repr(point.threshold), repr(point.x), repr(point.y)])


def emit_reports(reports: list[EvalReport], out_dir) -> list[str]:
    """Write one JSON summary plus per-report ROC/PR CSVs into ``out_dir``.

    File names are deterministic functions of method and noise rate, and
    identical inputs always produce byte-identical files.  Returns the
    written paths (summary first).
    """
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = {
        "reports": [
            {
                "method": r.method,
                "noise_rate": r.noise_rate,
                # a method whose every cell failed has no accuracy, not NaN
                "accuracy": None if np.isnan(r.accuracy) else r.accuracy,
                "per_split_accuracies": list(r.per_split_accuracies),
                "auc": r.auc,
                "ttests": [
                    {
                        "other": t.other,
                        "statistic": t.statistic,
                        "p_value": t.p_value,
                        "degenerate": t.degenerate,
                    }
                    for t in r.ttests
                ],
                "errors": list(r.errors),
            }
            for r in reports
        ]
    }
    paths = [out / "summary.json"]
    with open(paths[0], "w", encoding="utf-8", newline="\n") as handle:
        json.dump(summary, handle, indent=2, sort_keys=True)
        handle.write("\n")
    for report in reports:
        if not report.roc:
            continue
        roc_path = out / _curve_filename(report.method, report.noise_rate, "roc")
        pr_path = out / _curve_filename(report.method, report.noise_rate, "pr")
        _write_curve(roc_path, report.roc)
        _write_curve(pr_path, report.pr)
        paths.extend([roc_path, pr_path])
    return [str(p) for p in paths]


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from parsed JSON (see README schema)."""
    methods = tuple(MethodSpec(**entry) for entry in raw["methods"])
    protocol = ProtocolSpec(**raw["protocol"])
    synthetic = None
    data_path = None
    label_column = None
    if "synthetic" in raw:
        synth = dict(raw["synthetic"])
        synth["means"] = tuple(tuple(row) for row in synth["means"])
        synthetic = SyntheticSpec(**synth)
    if "data" in raw:
        data_path = raw["data"]["path"]
        label_column = raw["data"]["label_column"]
    rep = raw.get("representation", {})
    return ExperimentConfig(
        methods=methods,
        protocol=protocol,
        noise_rates=tuple(float(r) for r in raw.get("noise_rates", (0.0,))),
        seed=int(raw["seed"]),
        data_path=data_path,
        label_column=label_column,
        synthetic=synthetic,
        representation=rep.get("mode", "linear"),
        kernel=rep.get("kernel", "rbf"),
        bandwidth=rep.get("bandwidth", "median"),
        positive_class=int(raw.get("positive_class", 1)),
    )


def config_to_dict(cfg: ExperimentConfig) -> dict:
    raw = {
        "seed": cfg.seed,
        "methods": [
            {
                "name": m.name,
                "alpha": m.alpha,
                "iters": m.iters,
                "tol": m.tol,
                "step_size": m.step_size,
                "sigma": m.sigma,
                "sigma_floor": m.sigma_floor,
            }
            for m in cfg.methods
        ],
        "protocol": {
            "kind": cfg.protocol.kind,
            "times": cfg.protocol.times,
            "fraction": cfg.protocol.fraction,
            "k": cfg.protocol.k,
        },
        "noise_rates": list(cfg.noise_rates),
        "representation": {
            "mode": cfg.representation,
            "kernel": cfg.kernel,
            "bandwidth": cfg.bandwidth,
        },
        "positive_class": cfg.positive_class,
    }
    if cfg.synthetic is not None:
        raw["synthetic"] = {
            "means": [list(row) for row in cfg.synthetic.means],
            "std": cfg.synthetic.std,
            "samples_per_class": cfg.synthetic.samples_per_class,
            "seed": cfg.synthetic.seed,
        }
    else:
        raw["data"] = {"path": cfg.data_path, "label_column": cfg.label_column}
    return raw


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return config_from_dict(json.load(handle))
