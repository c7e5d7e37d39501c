"""Synthetic generation, the experiment sweep, and report emission."""

import json
import math

import numpy as np
import pytest

from correntia import (
    ExperimentConfig,
    MethodSpec,
    ProtocolSpec,
    SplitSpec,
    SyntheticSpec,
    accuracy,
    auc,
    child_seed,
    emit_reports,
    generate_synthetic,
    inject_label_noise,
    linear_representation,
    predict_labels,
    run_experiment,
    split,
    train_square,
)
from correntia.harness import (
    ALPHA_GRID,
    config_from_dict,
    config_to_dict,
    load_config,
    select_alpha_by_cv,
)


def blob_config(**overrides):
    base = dict(
        methods=(MethodSpec("regmaxcem"), MethodSpec("square")),
        protocol=ProtocolSpec("repeated-split", times=4, fraction=0.5),
        noise_rates=(0.0, 0.2),
        seed=5,
        synthetic=SyntheticSpec(((3.0, 0.0), (-3.0, 0.0)), 0.5, 30, seed=1),
    )
    base.update(overrides)
    return ExperimentConfig(**base)


class TestGenerateSynthetic:
    def test_tiny_std_collapses_to_means(self):
        spec = SyntheticSpec(((1.0, 2.0), (-4.0, 0.5)), 1e-9, 5, seed=0)
        ds = generate_synthetic(spec)
        means = np.array(spec.means)
        for l in (1, 2):
            block = ds.features[ds.labels == l]
            np.testing.assert_allclose(block, np.tile(means[l - 1], (5, 1)), atol=1e-6)

    def test_deterministic(self):
        spec = SyntheticSpec(((0.0,), (5.0,)), 1.0, 20, seed=9)
        a, b = generate_synthetic(spec), generate_synthetic(spec)
        np.testing.assert_array_equal(a.features, b.features)
        np.testing.assert_array_equal(a.labels, b.labels)

    def test_separated_blobs_are_nearly_perfectly_classifiable(self):
        spec = SyntheticSpec(((5.0, 0.0), (-5.0, 0.0)), 0.5, 100, seed=2)
        ds = generate_synthetic(spec)
        train_ds, test_ds = split(ds, SplitSpec(0.5, seed=3))
        model = train_square(train_ds, linear_representation(), 0.01)
        assert accuracy(predict_labels(model, test_ds.features), test_ds.labels) > 0.99

    def test_validation(self):
        with pytest.raises(ValueError, match="distinct"):
            SyntheticSpec(((1.0,), (1.0,)), 1.0, 5, seed=0)
        with pytest.raises(ValueError, match="std"):
            SyntheticSpec(((1.0,), (2.0,)), 0.0, 5, seed=0)


class TestRunExperiment:
    def test_clean_separable_kfold_is_nearly_perfect(self):
        cfg = ExperimentConfig(
            methods=(MethodSpec("square"),),
            protocol=ProtocolSpec("kfold", k=5),
            noise_rates=(0.0,),
            seed=2,
            synthetic=SyntheticSpec(((4.0, 0.0), (-4.0, 0.0)), 0.5, 40, seed=7),
        )
        reports = run_experiment(cfg)
        assert len(reports) == 1
        report = reports[0]
        assert len(report.per_split_accuracies) == 5
        assert report.accuracy > 0.99
        assert report.auc is not None and report.auc > 0.99
        assert report.auc == pytest.approx(auc(list(report.roc)), abs=1e-12)
        assert not report.errors

    def test_identical_methods_yield_degenerate_ttest(self):
        cfg = blob_config(
            methods=(MethodSpec("square"), MethodSpec("square")),
            noise_rates=(0.0,),
        )
        reports = run_experiment(cfg)
        assert len(reports) == 2
        for report in reports:
            assert len(report.ttests) == 1
            assert report.ttests[0].degenerate
            assert report.ttests[0].p_value is None

    def test_noise_counts_match_contract(self):
        cfg = blob_config(noise_rates=(0.0, 0.2), methods=(MethodSpec("square"),))
        run_experiment(cfg)  # must not raise; now replicate its noise stream
        ds = generate_synthetic(cfg.synthetic)
        for s in range(cfg.protocol.times):
            train_ds, _ = split(ds, SplitSpec(0.5, child_seed(cfg.seed, 1, s)))
            clean = inject_label_noise(train_ds, 0.0, child_seed(cfg.seed, 2, 0, s))
            noisy = inject_label_noise(train_ds, 0.2, child_seed(cfg.seed, 2, 1, s))
            assert int(np.sum(clean.labels != train_ds.labels)) == 0
            assert int(np.sum(noisy.labels != train_ds.labels)) == math.floor(0.2 * train_ds.n_samples)

    def test_report_order_follows_config(self):
        cfg = blob_config()
        reports = run_experiment(cfg)
        expected = [
            (rate, m.name) for rate in cfg.noise_rates for m in cfg.methods
        ]
        assert [(r.noise_rate, r.method) for r in reports] == expected

    def test_cell_failures_are_isolated(self):
        # a fixed sigma of 1e-8 underflows every auxiliary weight after round 1
        cfg = blob_config(
            methods=(MethodSpec("regmaxcem", sigma=1e-8), MethodSpec("square")),
            noise_rates=(0.0,),
            protocol=ProtocolSpec("repeated-split", times=2, fraction=0.5),
        )
        reports = run_experiment(cfg)
        broken, healthy = reports
        assert broken.method == "regmaxcem"
        assert len(broken.errors) == 2 and "auxiliary weights" in broken.errors[0]
        assert not broken.per_split_accuracies
        assert healthy.method == "square"
        assert not healthy.errors
        assert len(healthy.per_split_accuracies) == 2

    def test_pipeline_is_deterministic(self):
        cfg = blob_config()
        a = run_experiment(cfg)
        b = run_experiment(cfg)
        assert a == b

    def test_kernel_representation_runs(self):
        cfg = blob_config(
            representation="kernel",
            kernel="rbf",
            bandwidth="median",
            protocol=ProtocolSpec("repeated-split", times=2, fraction=0.5),
            noise_rates=(0.0,),
        )
        reports = run_experiment(cfg)
        assert all(r.accuracy > 0.9 for r in reports)


class TestSelectAlphaByCv:
    def test_returns_grid_member_deterministically(self):
        ds = generate_synthetic(SyntheticSpec(((2.0, 0.0), (-2.0, 0.0)), 1.0, 25, seed=4))
        picked = select_alpha_by_cv(MethodSpec("square"), ds)
        assert picked in ALPHA_GRID
        assert picked == select_alpha_by_cv(MethodSpec("square"), ds)

    def test_ties_go_to_smallest_alpha(self):
        # fully separable: every alpha scores 1.0, so the grid's head wins
        ds = generate_synthetic(SyntheticSpec(((8.0,), (-8.0,)), 0.2, 20, seed=5))
        assert select_alpha_by_cv(MethodSpec("square"), ds) == ALPHA_GRID[0]


class TestEmitReports:
    def test_empty_reports(self, tmp_path):
        paths = emit_reports([], tmp_path)
        assert len(paths) == 1
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary == {"reports": []}
        assert sorted(p.name for p in tmp_path.iterdir()) == ["summary.json"]

    def test_two_by_two_file_count(self, tmp_path):
        reports = run_experiment(blob_config())
        paths = emit_reports(reports, tmp_path)
        names = sorted(p.name for p in tmp_path.iterdir())
        assert len([n for n in names if n.endswith("_roc.csv")]) == 4
        assert len([n for n in names if n.endswith("_pr.csv")]) == 4
        assert names.count("summary.json") == 1
        assert len(paths) == 9

    def test_rerun_is_byte_identical(self, tmp_path):
        reports = run_experiment(blob_config())
        dir_a, dir_b = tmp_path / "a", tmp_path / "b"
        emit_reports(reports, dir_a)
        emit_reports(run_experiment(blob_config()), dir_b)
        for path_a in sorted(dir_a.iterdir()):
            path_b = dir_b / path_a.name
            assert path_a.read_bytes() == path_b.read_bytes()

    def test_failed_method_serializes_as_null_accuracy(self, tmp_path):
        cfg = blob_config(
            methods=(MethodSpec("regmaxcem", sigma=1e-8),),
            noise_rates=(0.0,),
            protocol=ProtocolSpec("repeated-split", times=2, fraction=0.5),
        )
        emit_reports(run_experiment(cfg), tmp_path)
        summary = json.loads((tmp_path / "summary.json").read_text())
        entry = summary["reports"][0]
        assert entry["accuracy"] is None
        assert entry["per_split_accuracies"] == []
        assert len(entry["errors"]) == 2

    def test_curve_csv_shape(self, tmp_path):
        reports = run_experiment(blob_config(noise_rates=(0.0,), methods=(MethodSpec("square"),)))
        emit_reports(reports, tmp_path)
        lines = (tmp_path / "square_noise0_roc.csv").read_text().splitlines()
        assert lines[0] == "threshold,x,y"
        assert len(lines) == len(reports[0].roc) + 1


class TestConfigIO:
    def test_dict_roundtrip(self):
        cfg = blob_config()
        assert config_from_dict(config_to_dict(cfg)) == cfg

    def test_csv_source_roundtrip(self, tmp_path):
        raw = {
            "seed": 3,
            "data": {"path": "some.csv", "label_column": "y"},
            "methods": [{"name": "hinge", "step_size": 0.5}],
            "protocol": {"kind": "kfold", "k": 3},
            "noise_rates": [0.1],
        }
        cfg = config_from_dict(raw)
        assert cfg.data_path == "some.csv" and cfg.label_column == "y"
        assert cfg.methods[0].step_size == 0.5
        assert config_from_dict(config_to_dict(cfg)) == cfg

    def test_load_config_file(self, tmp_path):
        cfg = blob_config()
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(config_to_dict(cfg)))
        assert load_config(path) == cfg

    def test_validation(self):
        with pytest.raises(ValueError, match="nonempty"):
            blob_config(methods=())
        with pytest.raises(ValueError, match="exactly one"):
            blob_config(data_path="x.csv", label_column="y")
        with pytest.raises(ValueError, match="unknown method"):
            MethodSpec("perceptron")
        with pytest.raises(ValueError, match="unknown protocol"):
            ProtocolSpec("bootstrap")
