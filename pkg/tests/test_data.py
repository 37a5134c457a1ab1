import numpy as np
import pytest

from fairweigh.data import (
    DataError,
    Dataset,
    DatasetSchema,
    generate_synthetic,
    load_csv,
    split,
    standardize,
    subgroup_stats,
    write_csv,
)


def make_csv(tmp_path, text, name="data.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestLoadCsv:
    def test_three_row_csv(self, tmp_path):
        p = make_csv(tmp_path, "age,sex,income\n25,Male,<=50K\n40,Female,>50K\n33,Male,>50K\n")
        schema = DatasetSchema(
            label_column="income",
            sensitive_column="sex",
            positive_label_value=">50K",
            privileged_group_value="Male",
            numeric_columns=["age"],
        )
        ds = load_csv(p, schema)
        assert ds.m == 3
        assert list(ds.labels) == [0, 1, 1]
        assert list(ds.sensitive) == [1, 0, 1]
        # age column plus the appended sensitive input
        assert ds.feature_names[0] == "age"
        assert ds.n_features == 2
        np.testing.assert_allclose(ds.features[:, 0], [25, 40, 33])

    def test_non_binary_label_errors(self, tmp_path):
        p = make_csv(tmp_path, "age,sex,income\n25,Male,low\n40,Female,mid\n33,Male,high\n")
        schema = DatasetSchema("income", "sex", "high", "Male", numeric_columns=["age"])
        with pytest.raises(DataError, match="non-binary label"):
            load_csv(p, schema)

    def test_missing_file(self, tmp_path):
        schema = DatasetSchema("y", "a", "1", "1")
        with pytest.raises(DataError, match="not found"):
            load_csv(tmp_path / "nope.csv", schema)

    def test_missing_schema_column(self, tmp_path):
        p = make_csv(tmp_path, "age,sex\n25,Male\n")
        schema = DatasetSchema("income", "sex", ">50K", "Male", numeric_columns=["age"])
        with pytest.raises(DataError, match="income"):
            load_csv(p, schema)

    def test_missing_values_dropped_and_counted(self, tmp_path):
        p = make_csv(
            tmp_path,
            "age,sex,income\n25,Male,>50K\n?,Female,<=50K\n31,,>50K\n40,Female,<=50K\n",
        )
        schema = DatasetSchema("income", "sex", ">50K", "Male", numeric_columns=["age"])
        ds = load_csv(p, schema)
        assert ds.m == 2
        assert ds.load_report.rows_read == 4
        assert ds.load_report.rows_dropped == 2
        assert ds.load_report.final_m == 2

    def test_one_hot_encoding_order(self, tmp_path):
        p = make_csv(
            tmp_path,
            "job,sex,income\nb,Male,>50K\na,Female,<=50K\nc,Male,>50K\n",
        )
        schema = DatasetSchema(
            "income", "sex", ">50K", "Male", categorical_columns=["job"]
        )
        ds = load_csv(p, schema)
        assert ds.feature_names[:3] == ["job=a", "job=b", "job=c"]
        np.testing.assert_allclose(ds.features[0, :3], [0, 1, 0])

    def test_exclude_sensitive_feature(self, tmp_path):
        p = make_csv(tmp_path, "age,sex,income\n25,Male,>50K\n40,Female,<=50K\n")
        schema = DatasetSchema(
            "income", "sex", ">50K", "Male",
            numeric_columns=["age"], include_sensitive_feature=False,
        )
        ds = load_csv(p, schema)
        assert ds.feature_names == ["age"]

    def test_round_trip(self, tmp_path):
        ds = generate_synthetic(50, 0.5, seed=3)
        path = tmp_path / "rt.csv"
        write_csv(ds, path)
        schema = DatasetSchema(
            label_column="label",
            sensitive_column="sensitive",
            positive_label_value="1",
            privileged_group_value="1",
            numeric_columns=list(ds.feature_names),
            include_sensitive_feature=False,
        )
        back = load_csv(path, schema)
        assert back.m == ds.m
        np.testing.assert_allclose(back.features, ds.features, atol=1e-9)
        assert list(back.labels) == list(ds.labels)
        assert list(back.sensitive) == list(ds.sensitive)


class TestSplit:
    def test_sizes_and_determinism(self):
        ds = generate_synthetic(10, 0.0, seed=0)
        tr1, te1 = split(ds, 0.3, seed=7)
        tr2, te2 = split(ds, 0.3, seed=7)
        assert (tr1.m, te1.m) == (7, 3)
        np.testing.assert_array_equal(tr1.features, tr2.features)
        np.testing.assert_array_equal(te1.features, te2.features)

    def test_seed_sensitivity(self):
        ds = generate_synthetic(10, 0.0, seed=0)
        _, te7 = split(ds, 0.3, seed=7)
        _, te8 = split(ds, 0.3, seed=8)
        assert not np.array_equal(te7.features, te8.features)

    def test_half_up_rounding(self):
        # 0.05 * 10 = 0.5 rounds half-up to test size 1
        ds = generate_synthetic(10, 0.0, seed=0)
        tr, te = split(ds, 0.05, seed=0)
        assert (tr.m, te.m) == (9, 1)

    def test_degenerate_fraction(self):
        ds = generate_synthetic(10, 0.0, seed=0)
        with pytest.raises(DataError):
            split(ds, 0.01, seed=0)
        with pytest.raises(DataError):
            split(ds, 1.5, seed=0)

    def test_partition_exhaustive_disjoint(self):
        ds = generate_synthetic(37, 0.3, seed=5)
        tagged = Dataset(
            np.arange(37, dtype=float).reshape(-1, 1), ds.sensitive, ds.labels, ["id"]
        )
        tr, te = split(tagged, 0.25, seed=2)
        ids = np.concatenate([tr.features[:, 0], te.features[:, 0]])
        assert sorted(ids) == list(range(37))


class TestSubgroupStats:
    def test_hand_counts(self):
        s = subgroup_stats([1, 0, 1, 1], [0, 0, 1, 1])
        assert s.counts == {(1, 0): 1, (0, 0): 1, (1, 1): 2, (0, 1): 0}
        assert s.proportions[(1, 1)] == 0.5
        assert s.row_totals == {0: 1, 1: 3}
        assert s.col_totals == {0: 2, 1: 2}

    def test_single_cell(self):
        s = subgroup_stats([1] * 5, [0] * 5)
        assert s.counts[(1, 0)] == 5
        assert sum(s.counts.values()) == 5

    def test_diagonal(self):
        s = subgroup_stats([0, 1], [0, 1])
        assert s.counts[(0, 0)] == 1 and s.counts[(1, 1)] == 1
        assert s.row_totals == {0: 1, 1: 1}
        assert s.col_totals == {0: 1, 1: 1}

    def test_errors(self):
        with pytest.raises(DataError):
            subgroup_stats([1, 0], [1])
        with pytest.raises(DataError):
            subgroup_stats([], [])


class TestStandardize:
    def _two(self, train_col, test_col):
        def mk(col):
            col = np.asarray(col, dtype=float)
            n = len(col)
            return Dataset(col.reshape(-1, 1), [0, 1] * (n // 2) + [0] * (n % 2), [1, 0] * (n // 2) + [1] * (n % 2), ["x"])

        return mk(train_col), mk(test_col)

    def test_population_variance(self):
        tr, te = self._two([1, 2, 3], [1, 2, 3])
        tr2, _ = standardize(tr, te)
        np.testing.assert_allclose(
            tr2.features[:, 0], [-1.224744871391589, 0.0, 1.224744871391589]
        )

    def test_constant_column_untouched(self):
        tr, te = self._two([5, 5, 5], [5, 5, 5])
        tr2, te2 = standardize(tr, te)
        np.testing.assert_allclose(tr2.features[:, 0], [5, 5, 5])
        np.testing.assert_allclose(te2.features[:, 0], [5, 5, 5])

    def test_test_uses_train_stats(self):
        tr, te = self._two([0, 2], [10, 10])
        _, te2 = standardize(tr, te)
        # train mean 1, std 1; test transformed with those, not its own
        np.testing.assert_allclose(te2.features[:, 0], [9, 9])

    def test_layout_mismatch(self):
        tr, te = self._two([1, 2], [1, 2])
        te = Dataset(te.features, te.sensitive, te.labels, ["other"])
        with pytest.raises(DataError):
            standardize(tr, te)


class TestGenerateSynthetic:
    def test_zero_bias_small_gap(self):
        ds = generate_synthetic(1000, 0.0, seed=1)
        gap = abs(
            ds.labels[ds.sensitive == 0].mean() - ds.labels[ds.sensitive == 1].mean()
        )
        assert gap <= 0.05

    def test_large_bias_large_gap(self):
        ds = generate_synthetic(1000, 0.8, seed=1)
        gap = abs(
            ds.labels[ds.sensitive == 0].mean() - ds.labels[ds.sensitive == 1].mean()
        )
        assert gap >= 0.15

    def test_determinism(self):
        a = generate_synthetic(200, 0.4, seed=9)
        b = generate_synthetic(200, 0.4, seed=9)
        np.testing.assert_array_equal(a.features, b.features)
        np.testing.assert_array_equal(a.labels, b.labels)
        np.testing.assert_array_equal(a.sensitive, b.sensitive)

    def test_bias_ordering(self):
        def gap(bias):
            ds = generate_synthetic(4000, bias, seed=2)
            return abs(
                ds.labels[ds.sensitive == 0].mean() - ds.labels[ds.sensitive == 1].mean()
            )

        assert gap(0.0) < gap(0.8) + 0.05
        assert gap(0.8) > gap(0.0)

    def test_too_small(self):
        with pytest.raises(DataError):
            generate_synthetic(3, 0.0, seed=0)


class TestDatasetInvariants:
    def test_non_binary_label_rejected(self):
        with pytest.raises(DataError):
            Dataset(np.zeros((2, 1)), [0, 1], [0, 2], ["x"])

    def test_length_mismatch_rejected(self):
        with pytest.raises(DataError):
            Dataset(np.zeros((2, 1)), [0, 1, 1], [0, 1], ["x"])

    def test_schema_same_columns_rejected(self):
        with pytest.raises(DataError):
            DatasetSchema("y", "y", "1", "1")
