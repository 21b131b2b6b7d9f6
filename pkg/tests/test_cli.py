"""Runner behavior: record persistence, determinism, config, exit codes."""

import csv
import json

from kfractions.cli import main
from kfractions.records import CSV_COLUMNS, ExperimentRecord, derive_rng, write_csv, write_json


class TestRecords:
    def test_id_deterministic_and_rows(self, tmp_path):
        rec = ExperimentRecord("demo", {"x": 1, "y": "a"}, seed=3,
                               values={"v": 0.1}, assertions={"ok": True})
        rec2 = ExperimentRecord("demo", {"y": "a", "x": 1}, seed=3)
        assert rec.experiment_id == rec2.experiment_id
        assert rec.passed
        rows = rec.rows()
        assert all(len(r) == len(CSV_COLUMNS) for r in rows)
        path = tmp_path / "r.csv"
        write_csv(path, [rec])
        with open(path) as fh:
            got = list(csv.reader(fh))
        assert got[0] == CSV_COLUMNS
        write_csv(path, [rec])  # append keeps single header
        with open(path) as fh:
            assert sum(1 for row in csv.reader(fh) if row == CSV_COLUMNS) == 1

    def test_float_formatting_17_digits(self):
        rec = ExperimentRecord("demo", {}, seed=0, values={"v": 1 / 3})
        row = [r for r in rec.rows() if r[6] == "v"][0]
        assert row[7] == format(1 / 3, ".17g")

    def test_json_mirror(self, tmp_path):
        rec = ExperimentRecord("demo", {"x": 1}, seed=3, values={"v": 0.5},
                               assertions={"ok": False})
        path = tmp_path / "r.json"
        write_json(path, [rec])
        data = json.loads(path.read_text())
        assert data[0]["assertions"] == {"ok": False}

    def test_derive_rng_reproducible(self):
        a = derive_rng(5, 2).integers(0, 10**9)
        b = derive_rng(5, 2).integers(0, 10**9)
        c = derive_rng(5, 3).integers(0, 10**9)
        assert a == b and a != c


def _strip_wall_clock(path):
    """Drop the timestamp column and runtime rows (the only wall-clock data)."""
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return [
        [c for i, c in enumerate(row) if i != 1]
        for row in rows
        if "runtime" not in row[5:6]
    ]


class TestCli:
    def test_identities_run_exit_zero_and_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["--seed", "11", "identities", "--trials", "60", "--max-n", "5000"]
        assert main(["--out", str(out1)] + args) == 0
        assert main(["--out", str(out2)] + args) == 0
        assert _strip_wall_clock(out1) == _strip_wall_clock(out2)

    def test_global_flags_accepted_after_subcommand(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(["identities", "--trials", "60", "--seed", "11", "--out", str(out1)]) == 0
        assert main(["--seed", "11", "--out", str(out2), "identities", "--trials", "60"]) == 0
        assert _strip_wall_clock(out1) == _strip_wall_clock(out2)

    def test_json_mirror_written(self, tmp_path):
        out = tmp_path / "a.csv"
        js = tmp_path / "a.json"
        code = main(["--out", str(out), "--json", str(js), "--seed", "2",
                     "compdiv-check", "--m-scale", "16", "--n-scale", "16", "--l-scale", "4"])
        assert code == 0
        data = json.loads(js.read_text())
        assert data[0]["subcommand"] == "compdiv-check"
        assert data[0]["assertions"]["bijection"] is True

    def test_unknown_flag_exit_2(self, tmp_path, capsys):
        assert main(["--out", str(tmp_path / "x.csv"), "identities", "--bogus"]) == 2

    def test_unknown_subcommand_exit_2(self, tmp_path):
        assert main(["--out", str(tmp_path / "x.csv"), "no-such-thing"]) == 2

    def test_assertion_failure_exit_1(self, tmp_path):
        # a flat ladder cannot satisfy the strict endpoint decrease
        code = main(["--out", str(tmp_path / "x.csv"), "equidist", "--n-list", "64,64"])
        assert code == 1

    def test_config_file_with_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("trials=40\nmax-n=999\n# comment\n")
        out = tmp_path / "c.csv"
        code = main(["--config", str(cfg), "--out", str(out), "--seed", "4",
                     "identities", "--trials", "25"])
        assert code == 0
        rows = _strip_wall_clock(out)
        params = {row[3] for row in rows[1:]}
        assert params == {"max_n=999;trials=25"}  # flag beats config, config beats default

    def test_bad_config_exit_2(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("this is not a key value line\n")
        assert main(["--config", str(cfg), "--out", str(tmp_path / "x.csv"), "identities"]) == 2

    def test_invalid_parameter_exit_2(self, tmp_path):
        code = main(["--out", str(tmp_path / "x.csv"), "compdiv-check", "--l-scale", "1.0"])
        assert code == 2

    def test_module_entry_point_subprocess(self, tmp_path):
        import subprocess
        import sys

        out = tmp_path / "sp.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "kfractions.cli", "--out", str(out), "--seed", "3",
             "identities", "--trials", "20", "--max-n", "500"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "[PASS] identities: two_term_exact" in proc.stdout
        assert out.exists()
