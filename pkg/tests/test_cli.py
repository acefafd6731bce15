"""End-to-end subcommand tests through the public CLI entry point."""

import json

import numpy as np
import pytest

from sharpdr.cli import main
from sharpdr.dataio import read_bundle, read_table, write_label_csv, \
    LabelAssignment
from sharpdr.sharpen import normalize_minmax


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def mixture_csv(tmp_path):
    path = tmp_path / "d.csv"
    assert run("generate", "--preset", "type1", "--seed", "1",
               "--n-points", "400", "-o", path) == 0
    return path


class TestGenerate:
    def test_preset_writes_expected_shape(self, tmp_path):
        out = tmp_path / "d.csv"
        assert run("generate", "--preset", "type1", "--seed", "1",
                   "--n-points", "500", "-o", out) == 0
        t = read_table(out)
        assert t.n_rows == 500 and t.n_cols == 20
        assert len(set(t.labels)) == 5

    def test_kind_uniform_cube(self, tmp_path):
        out = tmp_path / "u.csv"
        assert run("generate", "--kind", "uniform_cube", "--seed", "2",
                   "--params", '{"n_points": 300}', "-o", out) == 0
        t = read_table(out)
        assert t.n_rows == 300 and t.n_cols == 20

    def test_unknown_preset_exits_with_usage(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            run("generate", "--preset", "bogus", "-o", tmp_path / "x.csv")
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err

    def test_preset_and_kind_conflict(self, tmp_path, capsys):
        assert run("generate", "--preset", "type1", "--kind", "uniform_cube",
                   "-o", tmp_path / "x.csv") == 1
        assert "exactly one" in capsys.readouterr().err


class TestSharpen:
    def test_same_shape_output(self, tmp_path, mixture_csv):
        out = tmp_path / "ds.csv"
        assert run("sharpen", "-i", mixture_csv, "--ks", "20", "-T", "3",
                   "--alpha", "0.1", "-o", out) == 0
        t_in = read_table(mixture_csv)
        t_out = read_table(out)
        assert t_out.points.shape == t_in.points.shape
        assert t_out.labels == t_in.labels

    def test_zero_iterations_equals_normalized_input(self, tmp_path,
                                                     mixture_csv):
        out = tmp_path / "ds.csv"
        assert run("sharpen", "-i", mixture_csv, "-T", "0", "--ks", "10",
                   "-o", out) == 0
        want, _ = normalize_minmax(read_table(mixture_csv))
        got = read_table(out)
        np.testing.assert_array_equal(got.points, want.points)

    def test_ks_too_large_fails(self, tmp_path, mixture_csv, capsys):
        assert run("sharpen", "-i", mixture_csv, "--ks", "6000",
                   "-o", tmp_path / "x.csv") == 1
        assert "N <= ks" in capsys.readouterr().err


class TestProject:
    def test_lmds_bundle(self, tmp_path, mixture_csv):
        out = tmp_path / "p.json"
        assert run("project", "-i", mixture_csv, "-m", "lmds",
                   "--ratio", "0.05", "--seed", "7", "-o", out) == 0
        table, emb, labels = read_bundle(out)
        assert emb.n_dims == 2 and emb.n_rows == 400
        assert emb.method == "lmds"
        assert labels is not None

    def test_rp_deterministic_bundles(self, tmp_path, mixture_csv):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run("project", "-i", mixture_csv, "-m", "rp", "--seed", "7",
                   "-o", a) == 0
        assert run("project", "-i", mixture_csv, "-m", "rp", "--seed", "7",
                   "-o", b) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_import_external_embedding(self, tmp_path, mixture_csv):
        coords = tmp_path / "coords.csv"
        rng = np.random.default_rng(0)
        lines = ["x,y"] + [f"{u},{v}" for u, v in rng.normal(size=(400, 2))]
        coords.write_text("\n".join(lines) + "\n")
        out = tmp_path / "p.json"
        assert run("project", "-i", mixture_csv, "--import", coords,
                   "-o", out) == 0
        _, emb, _ = read_bundle(out)
        assert emb.method == "import"

    def test_import_row_mismatch_fails(self, tmp_path, mixture_csv, capsys):
        coords = tmp_path / "coords.csv"
        coords.write_text("x,y\n1,2\n3,4\n")
        assert run("project", "-i", mixture_csv, "--import", coords,
                   "-o", tmp_path / "p.json") == 1
        assert "rows" in capsys.readouterr().err

    def test_attrs_table_used_for_bundle(self, tmp_path, mixture_csv):
        sharp = tmp_path / "ds.csv"
        assert run("sharpen", "-i", mixture_csv, "--ks", "20", "-T", "2",
                   "--alpha", "0.05", "-o", sharp) == 0
        out = tmp_path / "p.json"
        assert run("project", "-i", sharp, "-m", "rp", "--seed", "1",
                   "--attrs", mixture_csv, "-o", out) == 0
        table, _, _ = read_bundle(out)
        np.testing.assert_array_equal(table.points,
                                      read_table(mixture_csv).points)


class TestEvaluate:
    def test_identity_import_gives_perfect_scores(self, tmp_path):
        data = tmp_path / "d.csv"
        assert run("generate", "--preset", "type1", "--seed", "3",
                   "--n-points", "200", "-o", data) == 0
        # wrap the first two data columns as "the embedding" of a 2-col table
        t = read_table(data)
        two_col = tmp_path / "two.csv"
        from sharpdr.dataio import DataTable, write_table
        write_table(DataTable(t.points[:, :2], labels=t.labels), two_col)
        coords = tmp_path / "c.csv"
        write_table(DataTable(t.points[:, :2]), coords)
        bundle = tmp_path / "p.json"
        assert run("project", "-i", two_col, "--import", coords,
                   "-o", bundle) == 0
        report = tmp_path / "r.csv"
        assert run("evaluate", "-i", two_col, "-b", bundle, "--k", "5,10",
                   "-o", report) == 0
        lines = report.read_text().strip().split("\n")
        assert lines[0] == "k,Qt,Qc,Qj,Qh"
        for line in lines[1:]:
            cells = line.split(",")
            assert float(cells[1]) == 1.0
            assert float(cells[2]) == 1.0
            assert float(cells[3]) == 1.0

    def test_report_files_written(self, tmp_path, mixture_csv):
        bundle = tmp_path / "p.json"
        assert run("project", "-i", mixture_csv, "-m", "rp", "--seed", "5",
                   "-o", bundle) == 0
        csv_out = tmp_path / "r.csv"
        json_out = tmp_path / "r.json"
        assert run("evaluate", "-i", mixture_csv, "-b", bundle,
                   "--k", "10,25", "-o", csv_out, "--json", json_out) == 0
        doc = json.loads(json_out.read_text())
        assert [row["k"] for row in doc["values"]] == [10, 25]
        assert all(0 <= row["Qh"] <= 1 for row in doc["values"])

    def test_large_k_clamped_with_warning(self, tmp_path, mixture_csv,
                                          capsys):
        bundle = tmp_path / "p.json"
        assert run("project", "-i", mixture_csv, "-m", "rp", "--seed", "5",
                   "-o", bundle) == 0
        assert run("evaluate", "-i", mixture_csv, "-b", bundle,
                   "--k", "10,399,1000") == 0
        err = capsys.readouterr().err
        assert "dropping k values" in err
        assert "trustworthiness/continuity" in err

    def test_qh_on_data_without_bundle(self, tmp_path, mixture_csv, capsys):
        assert run("evaluate", "-i", mixture_csv, "--k", "10") == 0
        out = capsys.readouterr().out
        row = [line for line in out.splitlines() if line.strip().startswith("10")]
        assert row and "-" in row[0]  # Qt/Qc/Qj empty in data-only mode

    def test_label_file_overrides_and_subsets(self, tmp_path, mixture_csv,
                                              capsys):
        labels = tmp_path / "l.csv"
        t = read_table(mixture_csv)
        assignment = LabelAssignment({i: "x" for i in range(300)})
        write_label_csv(assignment, labels, n_rows=t.n_rows)
        assert run("evaluate", "-i", mixture_csv, "--labels", labels,
                   "--k", "10") == 0
        captured = capsys.readouterr()
        assert "unlabeled" in captured.err
        # all labeled rows share one label, so Qh must be exactly 1
        row = [line for line in captured.out.splitlines()
               if line.strip().startswith("10")]
        assert "1.000000" in row[0]


class TestTraitsCommand:
    def test_json_output(self, tmp_path, mixture_csv, capsys):
        assert run("traits", "-i", mixture_csv, "--json") == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["n_rows"] == 400
        assert doc["class_count"] == 5

    def test_unlabeled_omits_class_fields(self, tmp_path, capsys):
        out = tmp_path / "u.csv"
        assert run("generate", "--kind", "uniform_cube", "--seed", "1",
                   "--params", '{"n_points": 200}', "-o", out) == 0
        assert run("traits", "-i", out) == 0
        assert "classes" not in capsys.readouterr().out


class TestDatasetCommand:
    def test_materialize_wifi(self, tmp_path):
        out = tmp_path / "wifi.csv"
        assert run("dataset", "wifi", "-o", out) == 0
        t = read_table(out)
        assert t.n_rows == 2000 and t.n_cols == 7


class TestPipeline:
    def _config(self, tmp_path, workdir):
        return {
            "stages": [
                {"name": "gen", "args": ["generate", "--preset", "type1",
                                         "--seed", "1", "--n-points", "300",
                                         "-o", str(workdir / "d.csv")]},
                {"name": "sharpen", "args": ["sharpen", "-i",
                                             str(workdir / "d.csv"),
                                             "--ks", "20", "-T", "2",
                                             "--alpha", "0.05", "-o",
                                             str(workdir / "ds.csv")]},
                {"name": "project", "args": ["project", "-i",
                                             str(workdir / "ds.csv"),
                                             "-m", "lmds", "--seed", "7",
                                             "-o", str(workdir / "p.json")]},
            ]
        }

    def test_pipeline_runs_and_is_reproducible(self, tmp_path):
        runs = []
        for tag in ("one", "two"):
            workdir = tmp_path / tag
            workdir.mkdir()
            cfg = tmp_path / f"{tag}.json"
            cfg.write_text(json.dumps(self._config(tmp_path, workdir)))
            assert run("pipeline", cfg) == 0
            runs.append((workdir / "p.json").read_bytes())
        assert runs[0] == runs[1]

    def test_failing_stage_named(self, tmp_path, capsys):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"stages": [
            {"name": "boom", "args": ["sharpen", "-i",
                                      str(tmp_path / "missing.csv"),
                                      "-o", str(tmp_path / "x.csv")]},
        ]}))
        assert run("pipeline", cfg) == 1
        assert "boom" in capsys.readouterr().err

    def test_empty_config_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "empty.json"
        cfg.write_text("{}")
        assert run("pipeline", cfg) == 1
        assert "stages" in capsys.readouterr().err
