import numpy as np
import pytest

from scorekit.data import Dataset, Feature, NUMERIC
from scorekit.metrics import MetricReport, SplitMetrics
from scorekit.selection import (
    feature_ks,
    ks_filter,
    preselect_by_boosting,
    reject_models,
    run_selection,
    split_by_unique_count,
)

from conftest import numeric_dataset


def dataset_with_cardinalities(n=600, seed=0):
    rng = np.random.default_rng(seed)
    return Dataset(
        [
            Feature("exact300", NUMERIC, np.tile(np.arange(300.0), 2)),
            Feature("many", NUMERIC, np.arange(float(n)) + rng.random(n)),
            Feature("binary", NUMERIC, (np.arange(n) % 2).astype(float)),
        ],
        np.arange(n) % 2,
    )


class TestSplitByUniqueCount:
    def test_boundary_inclusive_low(self):
        d = dataset_with_cardinalities()
        low, high = split_by_unique_count(d, 300)
        assert "exact300" in low      # exactly at the threshold stays low
        assert "many" in high         # 600 unique values
        assert "binary" in low

    def test_extreme_thresholds(self):
        d = dataset_with_cardinalities()
        low, high = split_by_unique_count(d, 1)
        assert low == [] and set(high) == {"exact300", "many", "binary"}
        low, high = split_by_unique_count(d, 10_000)
        assert high == []

    def test_bad_threshold(self):
        with pytest.raises(ValueError):
            split_by_unique_count(dataset_with_cardinalities(), 0)


def informative_fixture(seed=0, n=1500):
    rng = np.random.default_rng(seed)
    signal = rng.normal(size=n)
    y = (signal + 0.3 * rng.normal(size=n) > 0).astype(int)
    return numeric_dataset(
        {
            "signal": signal,
            "noise_a": rng.normal(size=n),
            "noise_b": rng.normal(size=n),
            "flat": np.zeros(n),
        },
        y,
    )


class TestPreselectByBoosting:
    def test_predictive_feature_ranked_first(self):
        d = informative_fixture()
        survivors, importance = preselect_by_boosting(
            d, [d.feature_names], top_k=4, seed=0)
        assert survivors[0] == "signal"
        assert importance["signal"] > max(importance["noise_a"], importance["noise_b"])

    def test_never_split_feature_excluded(self):
        d = informative_fixture()
        survivors, importance = preselect_by_boosting(
            d, [d.feature_names], top_k=4, seed=0)
        assert importance["flat"] == 0.0
        assert "flat" not in survivors

    def test_top_k_larger_than_nonzero(self):
        d = informative_fixture()
        survivors, importance = preselect_by_boosting(
            d, [d.feature_names], top_k=50, seed=0)
        assert all(importance[name] > 0 for name in survivors)

    def test_top_k_cuts(self):
        d = informative_fixture()
        survivors, _ = preselect_by_boosting(d, [d.feature_names], top_k=1, seed=0)
        assert survivors == ["signal"]


class TestKsFilter:
    def test_constant_feature_removed(self):
        d = numeric_dataset({"c": np.zeros(40)}, np.arange(40) % 2)
        survivors, ks = ks_filter(d, ["c"], min_ks=0.1)
        assert ks["c"] == 0.0 and survivors == []

    def test_target_equal_feature_kept(self):
        y = np.arange(40) % 2
        d = numeric_dataset({"t": y.astype(float)}, y)
        survivors, ks = ks_filter(d, ["t"], min_ks=1.0)
        assert ks["t"] == 1.0 and survivors == ["t"]

    def test_ks_just_below_threshold_removed(self):
        # goods and bads share 19 of 20 values; one bad nudged: K-S = 1/20
        goods = np.arange(20.0)
        bads = np.arange(20.0)
        bads[5] = 5.5
        d = numeric_dataset({"x": np.r_[goods, bads]},
                            np.r_[np.zeros(20, int), np.ones(20, int)])
        survivors, ks = ks_filter(d, ["x"], min_ks=0.1)
        assert ks["x"] == pytest.approx(0.05, abs=1e-12)
        assert survivors == []

    def test_orientation_free(self, rng):
        values = rng.normal(size=200)
        y = rng.integers(0, 2, 200)
        y[:2] = [0, 1]
        d = numeric_dataset({"x": values, "neg": -values}, y)
        assert feature_ks(d, "x") == feature_ks(d, "neg")

    def test_bad_min_ks(self):
        d = numeric_dataset({"x": [0.0, 1.0]}, [0, 1])
        with pytest.raises(ValueError):
            ks_filter(d, ["x"], min_ks=1.5)


class TestRunSelection:
    def test_pipeline_monotone_and_deterministic(self):
        d = informative_fixture(seed=3)
        r1 = run_selection(d, unique_threshold=300, top_k=3, min_ks=0.1, seed=1)
        r2 = run_selection(d, unique_threshold=300, top_k=3, min_ks=0.1, seed=1)
        sizes = r1.stage_sizes()
        assert sizes["after_ks"] <= sizes["after_preselect"] <= sizes["input"]
        assert set(r1.survivors_ks) <= set(r1.survivors_preselect)
        assert r1.to_dict() == r2.to_dict()

    def test_every_feature_in_exactly_one_partition(self):
        d = dataset_with_cardinalities()
        report = run_selection(d, unique_threshold=300, top_k=3, min_ks=0.0, seed=0)
        assert sorted(report.partitions) == sorted(d.feature_names)


def report_with_test_gini(name, value):
    return MetricReport(model_name=name,
                        splits=[SplitMetrics(split="test", auc=(value + 1) / 2, gini=value)])


class TestRejectModels:
    def test_below_threshold_rejected(self):
        r = report_with_test_gini("m", 0.59)
        accepted = reject_models([r], min_gini=0.6)
        assert accepted == [] and r.rejected

    def test_boundary_kept(self):
        r = report_with_test_gini("m", 0.60)
        accepted = reject_models([r], min_gini=0.6)
        assert accepted == [r] and not r.rejected

    def test_empty_list(self):
        assert reject_models([], min_gini=0.6) == []

    def test_missing_split_not_rejected(self):
        r = MetricReport(model_name="m")
        assert reject_models([r], min_gini=0.6) == [r]
