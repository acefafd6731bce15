"""Round-trip and contract tests for the table CSV and bundle formats."""

import json

import numpy as np
import pytest

from sharpdr.dataio import (
    DataTable,
    Embedding,
    LabelAssignment,
    read_bundle,
    read_label_csv,
    read_table,
    write_bundle,
    write_label_csv,
    write_table,
)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


class TestDataTable:
    def test_basic_construction(self):
        t = DataTable(np.zeros((3, 2)))
        assert t.n_rows == 3 and t.n_cols == 2
        assert t.labels is None

    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="non-finite"):
            DataTable(np.array([[0.0, np.nan]]))

    def test_rejects_inf(self):
        with pytest.raises(ValueError, match="non-finite"):
            DataTable(np.array([[np.inf, 1.0]]))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            DataTable(np.zeros((0, 2)))

    def test_rejects_label_count_mismatch(self):
        with pytest.raises(ValueError, match="labels"):
            DataTable(np.zeros((3, 2)), labels=["a", "b"])

    def test_rejects_name_count_mismatch(self):
        with pytest.raises(ValueError, match="names"):
            DataTable(np.zeros((3, 2)), names=["x"])

    def test_checksum_stable_and_content_sensitive(self):
        a = DataTable(np.arange(6, dtype=float).reshape(3, 2), labels=list("abc"))
        b = DataTable(np.arange(6, dtype=float).reshape(3, 2), labels=list("abc"))
        assert a.checksum() == b.checksum()
        c = DataTable(np.arange(6, dtype=float).reshape(3, 2), labels=list("abd"))
        assert a.checksum() != c.checksum()


class TestTableCsv:
    def test_parse_three_rows(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("f0,f1\n0,0\n1,0\n0,1\n")
        t = read_table(p)
        assert t.n_rows == 3 and t.n_cols == 2
        assert t.labels is None
        np.testing.assert_array_equal(t.points, [[0, 0], [1, 0], [0, 1]])

    def test_label_column_extracted(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("f0,label\n1,a\n2,a\n3,b\n")
        t = read_table(p)
        assert t.n_cols == 1
        assert t.labels == ["a", "a", "b"]

    def test_non_numeric_cell_errors(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("f0,f1\n1,abc\n")
        with pytest.raises(ValueError, match="non-numeric"):
            read_table(p)

    def test_ragged_rows_error(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("f0,f1\n1,2\n3\n")
        with pytest.raises(ValueError, match="expected 2 cells"):
            read_table(p)

    def test_empty_file_errors(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("")
        with pytest.raises(ValueError, match="empty"):
            read_table(p)

    def test_header_only_errors(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("f0,f1\n")
        with pytest.raises(ValueError, match="no data rows"):
            read_table(p)

    def test_round_trip_values(self, tmp_path, rng):
        t = DataTable(rng.normal(size=(5, 3)) * 1e3)
        p = tmp_path / "t.csv"
        write_table(t, p)
        back = read_table(p)
        assert np.abs(back.points - t.points).max() < 1e-12
        # shortest round-trip serialization is in fact exact
        np.testing.assert_array_equal(back.points, t.points)

    def test_round_trip_labels_and_names(self, tmp_path, rng):
        t = DataTable(rng.normal(size=(4, 2)), labels=list("abba"),
                      names=["alpha", "beta"])
        p = tmp_path / "t.csv"
        write_table(t, p)
        back = read_table(p)
        assert back.labels == ["a", "b", "b", "a"]
        assert back.names == ["alpha", "beta"]

    def test_write_unwritable_path_errors(self, tmp_path, rng):
        t = DataTable(rng.normal(size=(2, 2)))
        with pytest.raises(OSError):
            write_table(t, tmp_path / "no_such_dir" / "t.csv")


class TestBundle:
    def _bundle(self, tmp_path, labels=("x", "y", "z", "w")):
        rng = np.random.default_rng(7)
        t = DataTable(rng.normal(size=(4, 3)),
                      labels=list(labels) if labels else None)
        e = Embedding.for_table(t, rng.normal(size=(4, 2)), "rp", {"seed": 1})
        p = tmp_path / "b.json"
        write_bundle(t, e, p)
        return t, e, p

    def test_round_trip(self, tmp_path):
        t, e, p = self._bundle(tmp_path)
        table, emb, labels = read_bundle(p)
        assert np.abs(emb.coords - e.coords).max() < 1e-9
        np.testing.assert_array_equal(table.points, t.points)
        assert labels == t.labels
        assert emb.method == "rp"
        assert emb.params == {"seed": 1}
        assert emb.source_checksum == t.checksum()

    def test_labels_key_absent_when_unlabeled(self, tmp_path):
        _, _, p = self._bundle(tmp_path, labels=None)
        doc = json.loads(p.read_text())
        assert "labels" not in doc
        _, _, labels = read_bundle(p)
        assert labels is None

    def test_row_mismatch_errors(self, tmp_path):
        rng = np.random.default_rng(0)
        t = DataTable(rng.normal(size=(4, 3)))
        e = Embedding(rng.normal(size=(3, 2)), "import")
        with pytest.raises(ValueError, match="rows"):
            write_bundle(t, e, tmp_path / "b.json")

    def test_malformed_json_errors(self, tmp_path):
        p = tmp_path / "b.json"
        p.write_text('{"format_version": 1, "coords": [[')
        with pytest.raises(ValueError, match="malformed"):
            read_bundle(p)

    def test_missing_key_errors(self, tmp_path):
        p = tmp_path / "b.json"
        p.write_text('{"format_version": 1}')
        with pytest.raises(ValueError, match="missing required key"):
            read_bundle(p)

    def test_partial_labels_returned_but_not_on_table(self, tmp_path):
        _, _, p = self._bundle(tmp_path)
        doc = json.loads(p.read_text())
        doc["labels"] = ["x", None, "y", None]
        p.write_text(json.dumps(doc))
        table, _, labels = read_bundle(p)
        assert labels == ["x", None, "y", None]
        assert table.labels is None  # a table is all-or-none about labels

    def test_label_length_mismatch_errors(self, tmp_path):
        _, _, p = self._bundle(tmp_path)
        doc = json.loads(p.read_text())
        doc["labels"] = ["x"]
        p.write_text(json.dumps(doc))
        with pytest.raises(ValueError, match="labels"):
            read_bundle(p)

    def test_row_order_is_point_identity(self, tmp_path):
        t, e, p = self._bundle(tmp_path)
        table, emb, _ = read_bundle(p)
        for i in range(t.n_rows):
            np.testing.assert_array_equal(table.points[i], t.points[i])
            assert np.abs(emb.coords[i] - e.coords[i]).max() < 1e-9


class TestLabelCsv:
    def test_round_trip_sparse(self, tmp_path):
        a = LabelAssignment({0: "a", 2: "b"})
        p = tmp_path / "l.csv"
        write_label_csv(a, p)
        back = read_label_csv(p)
        assert back.entries == {0: "a", 2: "b"}

    def test_full_export_has_empty_fields(self, tmp_path):
        a = LabelAssignment({1: "z"})
        p = tmp_path / "l.csv"
        write_label_csv(a, p, n_rows=3)
        assert p.read_text() == "row_index,label\n0,\n1,z\n2,\n"

    def test_duplicate_index_errors(self, tmp_path):
        p = tmp_path / "l.csv"
        p.write_text("row_index,label\n1,a\n1,b\n")
        with pytest.raises(ValueError, match="duplicate"):
            read_label_csv(p)

    def test_wrong_header_errors(self, tmp_path):
        p = tmp_path / "l.csv"
        p.write_text("idx,lab\n1,a\n")
        with pytest.raises(ValueError, match="header"):
            read_label_csv(p)

    def test_out_of_range_index_rejected_on_validate(self):
        a = LabelAssignment({5: "a"})
        with pytest.raises(ValueError, match="5"):
            a.validate_for(3)

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            LabelAssignment({-1: "a"})
