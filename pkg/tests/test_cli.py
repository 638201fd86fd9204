import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ptatom.cli import main
from ptatom.hamiltonian import SymbolicElement
from ptatom.surd import QuadraticSurd


def run(*args: str, env: dict | None = None) -> subprocess.CompletedProcess:
    full_env = {**os.environ, **(env or {})}
    return subprocess.run(
        [sys.executable, "-m", "ptatom", *args], capture_output=True, text=True, encoding="utf-8", env=full_env
    )


def run_inline(capsys, *args: str) -> tuple[int, str]:
    code = main(list(args))
    return code, capsys.readouterr().out


class TestExamples:
    def test_neon_levels(self):
        cp = run("levels", "--n", "10", "--z", "10")
        assert cp.returncode == 0, cp.stderr
        lines = cp.stdout.splitlines()
        assert len(lines) == 3
        row = lines[2]
        assert row.startswith("¹S")
        assert "-2*Z^2 + 2455271/279936*Z" in row
        assert row.rstrip().endswith("-112.2917")

    def test_integrals_csv(self):
        cp = run("integrals", "--format", "csv")
        assert cp.returncode == 0, cp.stderr
        lines = cp.stdout.splitlines()
        assert len(lines) == 12
        assert lines[-1].startswith("(34|43),27/2560,")

    def test_nitrogen_ground_state(self):
        cp = run("ground-state", "--n", "7")
        assert cp.returncode == 0, cp.stderr
        row = cp.stdout.splitlines()[2].split()
        assert row[1:3] == ["⁴S°", "4"]


class TestErrors:
    def test_missing_n(self):
        cp = run("levels")
        assert cp.returncode == 2
        assert "usage" in cp.stderr

    @pytest.mark.parametrize("args", [["levels", "--n", "11"], ["levels", "--n", "3", "--z", "0"],
                                      ["levels", "--n", "3", "--format", "xml"], ["nonsense"],
                                      ["levels", "--n", "3", "--z", "abc"]])
    def test_bad_arguments(self, args):
        assert run(*args).returncode == 2

    def test_bad_data_file(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("not,a,header\n", encoding="utf-8")
        cp = run("compare", "--n", "4", "--experiment", str(bad))
        assert cp.returncode == 3
        assert "data error" in cp.stderr

    def test_bad_data_dir(self, tmp_path):
        (tmp_path / "experiment.csv").write_text("N,Z,term,energy_hartree,source\n4,4,1S,oops,x\n", encoding="utf-8")
        cp = run("compare", env={"PTATOM_DATA_DIR": str(tmp_path)})
        assert cp.returncode == 3


class TestFormats:
    def test_json_round_trip(self, capsys):
        code, out = run_inline(capsys, "levels", "--n", "6", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 12
        for row in rows:
            linear = row["energy"].split("*Z^2 + ")[1].removesuffix("*Z")
            if linear.startswith("("):
                linear = linear[1:-1]
            assert str(QuadraticSurd.parse(linear)) == linear
            if row["c"]:
                c = row["c"]
                if c.startswith("sqrt("):
                    root, _, inner = c.partition(")*(")
                    c = inner[:-1]
                assert str(QuadraticSurd.parse(c)) == c

    def test_vee_json_round_trip(self, capsys):
        code, out = run_inline(capsys, "vee-matrix", "--n", "4", "--format", "json")
        rows = json.loads(out)
        for row in rows:
            assert str(SymbolicElement.parse(row["vee"])) == row["vee"]
        assert {"term": "¹S", "entry": "cross"}.items() <= next(r for r in rows if r["entry"] == "cross").items()

    def test_csv_matches_json(self, capsys):
        _, as_csv = run_inline(capsys, "sectors", "--n", "5", "--format", "csv")
        _, as_json = run_inline(capsys, "sectors", "--n", "5", "--format", "json")
        assert list(csv.DictReader(io.StringIO(as_csv))) == json.loads(as_json)

    def test_deterministic_bytes(self):
        first = run("levels", "--n", "5", "--format", "csv")
        second = run("levels", "--n", "5", "--format", "csv")
        assert first.stdout == second.stdout

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "gaps.csv"
        code, out = run_inline(capsys, "gaps", "--n", "4", "--z-values", "4,8", "--format", "csv", "--out", str(target))
        assert code == 0 and out == ""
        lines = target.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "inv_Z,term,reduced_gap"
        assert len(lines) == 1 + 2 * 5


class TestCommands:
    def test_hund(self, capsys):
        _, out = run_inline(capsys, "hund", "--format", "json")
        (row,) = json.loads(out)
        assert row["symbolic"] == "(23|32) - 3(34|43)"
        assert row["value"] == "-3/1280*Z"
        assert row["from_levels"] == row["value"]
        assert row["sign"] == "negative"

    def test_compare_summary(self, capsys):
        _, out = run_inline(capsys, "compare", "--format", "json")
        rows = json.loads(out)
        assert [r["atom"] for r in rows] == ["Li", "Be", "B", "C", "N", "O", "F", "Ne"]
        assert [r["error_percent"] for r in rows] == ["5.6", "6.2", "7.8", "9.0", "10.0", "11.2", "12.2", "13.0"]
        assert rows[1]["inversions"] == "³P/¹D"

    def test_compare_single_atom(self, capsys):
        _, out = run_inline(capsys, "compare", "--n", "6", "--format", "json")
        rows = json.loads(out)
        flagged = {r["term"] for r in rows if r["order"] == "inverted"}
        assert flagged == {"³S°", "¹D°"}

    def test_sectors_table(self, capsys):
        _, out = run_inline(capsys, "sectors", "--n", "6", "--format", "json")
        rows = json.loads(out)
        assert sum(int(r["dimension"]) for r in rows) == 70

    def test_default_gap_range(self, capsys):
        _, out = run_inline(capsys, "gaps", "--n", "3", "--format", "json")
        rows = json.loads(out)
        assert [r["inv_Z"] for r in rows][:2] == ["1/2", "1/3"]

    def test_rational_charge(self, capsys):
        _, out = run_inline(capsys, "levels", "--n", "3", "--z", "7/2", "--format", "json")
        assert json.loads(out)[0]["term"] == "²S"
