"""
Tests for CSV ingestion, dataset views and fold partitions
"""
import numpy as np
import pytest

from modules.dataio import (Schema, load_csv, load_dataset, write_csv, kfold_partition, FoldAssignment, Task,
                            SchemaError, IngestionError, EmptyDataError, FoldError, DataError)
from tests.factories import build_dataset

SCHEMA_TEXT = "age:numeric\ncity:categorical\ny:response-binary\n"

@pytest.fixture
def people(tmp_path):
    def write(body: str):
        data = tmp_path / "people.csv"
        data.write_text("age,city,y\n" + body)
        schema = tmp_path / "people.schema"
        schema.write_text(SCHEMA_TEXT)
        return str(data), str(schema)
    return write

class TestSchema:
    def test_parse_round_trip(self):
        schema = Schema.parse(SCHEMA_TEXT)
        assert schema.names == ["age", "city", "y"]
        assert schema.dumps() == SCHEMA_TEXT

    def test_needs_exactly_one_response(self):
        with pytest.raises(SchemaError):
            Schema.parse("a:numeric\nb:numeric\n")

    def test_unknown_kind(self):
        with pytest.raises(SchemaError):
            Schema.parse("a:text\ny:response-numeric\n")

    def test_fingerprint_ignores_response_kind(self):
        binary = Schema.parse(SCHEMA_TEXT)
        numeric = Schema.parse(SCHEMA_TEXT.replace("response-binary", "response-numeric"))
        assert binary.fingerprint == numeric.fingerprint
        assert binary.fingerprint != Schema.parse("age:numeric\ny:response-binary\n").fingerprint

class TestLoadCsv:
    def test_three_rows(self, people):
        d = load_dataset(*people("30,Paris,yes\n41,Rome,no\n25,Paris,yes\n"))
        assert d.n == 3
        assert d.p == 2
        assert d.task == Task.CLASSIFICATION
        assert d.column(1).categories == ("Paris", "Rome")
        assert d.column(1).n_categories == 2
        assert list(d.y) == [1.0, 0.0, 1.0]
        assert d.response_labels == ("no", "yes")

    def test_zero_one_labels_keep_their_values(self, people):
        d = load_dataset(*people("30,Paris,1\n41,Rome,1\n25,Paris,0\n"))
        assert list(d.y) == [1.0, 1.0, 0.0]

    def test_missing_cell_drops_row(self, people):
        d = load_dataset(*people("30,,yes\n41,Rome,no\n25,Paris,yes\n"))
        assert d.n == 2

    def test_na_token_drops_row(self, people):
        d = load_dataset(*people("NA,Rome,yes\n41,Rome,no\n"))
        assert d.n == 1

    def test_unparseable_number_names_row_and_column(self, people):
        with pytest.raises(IngestionError) as info:
            load_dataset(*people("30,Paris,yes\nabc,Rome,no\n"))
        assert info.value.row == 3
        assert info.value.column == "age"

    def test_header_mismatch(self, people, tmp_path):
        data, _ = people("30,Paris,yes\n")
        with pytest.raises(SchemaError):
            load_csv(data, Schema.parse("age:numeric\ntown:categorical\ny:response-binary\n"))

    def test_all_rows_missing(self, people):
        with pytest.raises(EmptyDataError):
            load_dataset(*people(",Paris,yes\n"))

    def test_three_binary_labels_rejected(self, people):
        with pytest.raises(IngestionError):
            load_dataset(*people("30,Paris,yes\n41,Rome,no\n25,Paris,maybe\n"))

    def test_write_csv_round_trip(self, people, tmp_path):
        data, schema = people("30.5,Paris,yes\n41,Rome,no\n25,Oslo,yes\n")
        d = load_dataset(data, schema)
        out = tmp_path / "copy.csv"
        write_csv(d, str(out))
        again = load_dataset(str(out), schema)
        np.testing.assert_array_equal(again.feature(0), d.feature(0))
        np.testing.assert_array_equal(again.feature(1), d.feature(1))
        assert again.column(1).categories == d.column(1).categories
        np.testing.assert_array_equal(again.y, d.y)

class TestDatasetViews:
    def setup_method(self):
        self.d = build_dataset({"x": [1.0, 2.0, 3.0, 4.0], "c": [0, 1, 1, 2]}, [0.0, 1.0, 2.0, 3.0],
                               categories={"c": 3})

    def test_subset_of_all_rows(self):
        view = self.d.subset(range(self.d.n))
        np.testing.assert_array_equal(view.y, self.d.y)
        np.testing.assert_array_equal(view.feature(1), self.d.feature(1))

    def test_empty_subset(self):
        assert self.d.subset([]).n == 0

    def test_out_of_range(self):
        with pytest.raises(DataError):
            self.d.subset([0, 4])

    def test_repeats_need_permission(self):
        with pytest.raises(DataError):
            self.d.subset([0, 0])
        assert self.d.subset([0, 0, 3], allow_repeats=True).n == 3

    def test_removed_category_keeps_dictionary(self):
        view = self.d.subset([0, 3])
        assert view.column(1).n_categories == 3
        assert np.bincount(view.feature(1), minlength=3)[1] == 0

    def test_nested_views_index_the_base(self):
        view = self.d.subset([1, 2, 3]).subset([2])
        assert list(view.y) == [3.0]

    def test_nested_views_compose(self):
        rng = np.random.default_rng(8)
        d = build_dataset({"x": rng.standard_normal(40), "c": rng.integers(0, 6, 40)}, rng.standard_normal(40),
                          categories={"c": 6})
        for _ in range(25):
            a = rng.choice(d.n, size=int(rng.integers(1, d.n + 1)), replace=False)
            b = rng.choice(a.size, size=int(rng.integers(0, a.size + 1)), replace=False)
            nested, direct = d.subset(a).subset(b), d.subset(a[b])
            np.testing.assert_array_equal(nested.y, direct.y)
            np.testing.assert_array_equal(nested.feature(0), direct.feature(0))
            np.testing.assert_array_equal(nested.feature(1), direct.feature(1))

    def test_drop_features(self):
        reduced = self.d.drop_features(["c"])
        assert reduced.feature_names == ["x"]
        assert reduced.schema.names == ["x", "y"]

    def test_recode_gives_unseen_labels_fresh_codes(self):
        query = build_dataset({"x": [0.0, 0.0], "c": [0, 1]}, [0.0, 0.0], labels={"c": ("c2", "new")})
        recoded = query.recode(self.d.dictionaries)
        assert list(recoded.feature(1)) == [2, 3]
        assert recoded.column(1).categories == ("c0", "c1", "c2", "new")

class TestFolds:
    def test_singleton_folds(self):
        folds = kfold_partition(10, 10, seed=3)
        assert list(folds.fold_sizes()) == [1] * 10

    def test_sizes_differ_by_at_most_one(self):
        folds = kfold_partition(10, 3, seed=3)
        assert sorted(folds.fold_sizes().tolist()) == [3, 3, 4]

    def test_deterministic(self):
        np.testing.assert_array_equal(kfold_partition(50, 7, 11).folds, kfold_partition(50, 7, 11).folds)

    def test_more_folds_than_rows(self):
        with pytest.raises(FoldError):
            kfold_partition(3, 4, 0)

    def test_splits_cover_every_row_once(self):
        folds = kfold_partition(23, 5, 1)
        tested = np.concatenate([test for _, _, test in folds.splits()])
        assert sorted(tested.tolist()) == list(range(23))

    def test_explicit_assignment(self):
        folds = FoldAssignment.from_folds([0, 1, 0, 1])
        assert folds.k == 2
        assert list(folds.test_rows(1)) == [1, 3]
        with pytest.raises(FoldError):
            FoldAssignment.from_folds([0, 2])
