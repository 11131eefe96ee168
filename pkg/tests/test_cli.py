"""CLI surface: subcommands, exit codes, JSON round trips, bench CSV."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from fairchores import builtin_fixtures, run_cli
from fairchores.instances import instance_to_json


def write_json(path, obj) -> str:
    path.write_text(json.dumps(obj))
    return str(path)


def fixture_file(tmp_path, index):
    fixture = builtin_fixtures()[index]
    return write_json(tmp_path / f"{fixture.name}.json", instance_to_json(fixture.instance))


class TestExitCodes:
    def test_usage_errors(self):
        assert run_cli([]) == 1
        assert run_cli(["solve"]) == 1
        assert run_cli(["solve", "--input", "x.json", "--algo", "nope"]) == 1

    def test_help_is_success(self, capsys):
        assert run_cli(["--help"]) == 0
        capsys.readouterr()

    def test_missing_input_file(self, tmp_path):
        assert run_cli(["solve", "--input", str(tmp_path / "absent.json")]) == 2

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run_cli(["mms", "--input", str(bad)]) == 2

    def test_schema_violation(self, tmp_path):
        path = write_json(tmp_path / "neg.json", {"agents": 1, "chores": 1, "valuations": [[-3]]})
        assert run_cli(["mms", "--input", path]) == 2

    def test_oracle_limit(self, tmp_path):
        inst = {"agents": 2, "chores": 30, "valuations": [[1] * 30] * 2}
        path = write_json(tmp_path / "big.json", inst)
        assert run_cli(["mms", "--input", path]) == 4


class TestSolveAndVerify:
    def test_poly_54_round_trips_through_verify(self, tmp_path, capsys):
        inst_path = fixture_file(tmp_path, 2)
        out_path = tmp_path / "alloc.json"
        code = run_cli(
            ["solve", "--input", inst_path, "--algo", "poly-54", "--output", str(out_path)]
        )
        assert code == 0
        report = capsys.readouterr().out
        assert "certified true" in report
        assert "complete true" in report
        alloc = json.loads(out_path.read_text())
        assert sorted(c for b in alloc["bundles"] for c in b) + alloc["leftover"] == list(range(17))

        code = run_cli(
            ["verify", "--instance", inst_path, "--allocation", str(out_path), "--alpha", "5/4"]
        )
        assert code == 0
        assert "alpha check at 5/4: pass" in capsys.readouterr().out

    def test_exact_119_with_trace(self, tmp_path, capsys):
        inst_path = fixture_file(tmp_path, 0)
        trace_path = tmp_path / "trace.jsonl"
        code = run_cli(
            [
                "solve",
                "--input",
                inst_path,
                "--algo",
                "exact-119",
                "--output",
                str(tmp_path / "a.json"),
                "--trace",
                str(trace_path),
            ]
        )
        assert code == 0
        assert "max ratio 20/17" in capsys.readouterr().out
        lines = trace_path.read_text().splitlines()
        assert lines
        entry = json.loads(lines[0])
        assert set(entry) == {"round", "chore", "witness", "load"}

    def test_allocation_to_stdout_without_output(self, tmp_path, capsys):
        inst_path = fixture_file(tmp_path, 0)
        assert run_cli(["solve", "--input", inst_path, "--algo", "poly-54"]) == 0
        out = capsys.readouterr().out
        alloc = json.loads(out)
        assert set(alloc) == {"bundles", "leftover"}

    def test_verify_alpha_failure_exits_2(self, tmp_path, capsys):
        inst_path = write_json(
            tmp_path / "inst.json",
            {"agents": 2, "chores": 2, "valuations": [[5, 5], [5, 5]]},
        )
        alloc_path = write_json(
            tmp_path / "alloc.json", {"bundles": [[0, 1], []], "leftover": []}
        )
        assert run_cli(["verify", "--instance", inst_path, "--allocation", alloc_path]) == 0
        assert (
            run_cli(
                ["verify", "--instance", inst_path, "--allocation", alloc_path, "--alpha", "3/2"]
            )
            == 2
        )
        capsys.readouterr()

    def test_verify_rejects_mismatched_allocation(self, tmp_path):
        inst_path = write_json(
            tmp_path / "inst.json",
            {"agents": 2, "chores": 3, "valuations": [[1, 2, 3], [1, 2, 3]]},
        )
        alloc_path = write_json(
            tmp_path / "alloc.json", {"bundles": [[0], [1]], "leftover": []}
        )
        assert run_cli(["verify", "--instance", inst_path, "--allocation", alloc_path]) == 2


class TestMms:
    def test_table(self, tmp_path, capsys):
        inst_path = fixture_file(tmp_path, 0)
        assert run_cli(["mms", "--input", inst_path]) == 0
        out = capsys.readouterr().out
        assert out.count("mms 17") == 4

    def test_witness_flag(self, tmp_path, capsys):
        inst_path = write_json(
            tmp_path / "inst.json",
            {"agents": 2, "chores": 2, "valuations": [[3, 3], [3, 3]]},
        )
        assert run_cli(["mms", "--input", inst_path, "--witness"]) == 0
        assert "witness" in capsys.readouterr().out


class TestSchedule:
    def test_greedy_119(self, tmp_path, capsys):
        jobs_path = write_json(tmp_path / "jobs.json", [3, 3, 2, 2, 2])
        assert run_cli(["schedule", "--input", jobs_path, "--machines", "2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["makespan"] == 6
        assert payload["threshold"] == 6
        assert sorted(payload["loads"]) == [6, 6]

    def test_lpt_and_jobs_object(self, tmp_path, capsys):
        jobs_path = write_json(tmp_path / "jobs.json", {"jobs": [3, 3, 2, 2, 2]})
        assert run_cli(
            ["schedule", "--input", jobs_path, "--machines", "2", "--algo", "lpt"]
        ) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["makespan"] == 7
        assert "threshold" not in payload

    def test_bad_jobs_payload(self, tmp_path):
        jobs_path = write_json(tmp_path / "jobs.json", {"work": []})
        assert run_cli(["schedule", "--input", jobs_path, "--machines", "2"]) == 2


class TestGenAndFixtures:
    def test_gen_stdout_deterministic(self, capsys):
        args = ["gen", "--seed", "42", "--count", "5"]
        assert run_cli(args) == 0
        first = capsys.readouterr().out
        assert run_cli(args) == 0
        assert capsys.readouterr().out == first
        for line in first.splitlines():
            obj = json.loads(line)
            assert obj["agents"] <= len(obj["valuations"][0])

    def test_gen_output_dir(self, tmp_path, capsys):
        out_dir = tmp_path / "corpus"
        assert (
            run_cli(
                ["gen", "--seed", "1", "--count", "3", "--output-dir", str(out_dir)]
            )
            == 0
        )
        capsys.readouterr()
        files = sorted(p.name for p in out_dir.iterdir())
        assert files == ["instance_000.json", "instance_001.json", "instance_002.json"]

    def test_fixtures_table(self, capsys):
        assert run_cli(["fixtures"]) == 0
        out = capsys.readouterr().out
        for name in ("lower-bound-20-17", "non-monotone", "trial-fails"):
            assert name in out

    def test_fixtures_export_and_name(self, tmp_path, capsys):
        out_dir = tmp_path / "fx"
        assert run_cli(["fixtures", "--export", str(out_dir)]) == 0
        capsys.readouterr()
        assert sorted(p.name for p in out_dir.iterdir()) == [
            "lower-bound-20-17.json",
            "non-monotone.json",
            "trial-fails.json",
        ]
        assert run_cli(["fixtures", "--name", "absent"]) == 2


class TestBench:
    def test_csv_schema_and_bounds(self, tmp_path):
        out_path = tmp_path / "bench.csv"
        code = run_cli(
            ["bench", "--seed", "11", "--count", "4", "--output", str(out_path)]
        )
        assert code == 0
        with open(out_path, newline="") as handle:
            reader = csv.DictReader(handle)
            assert reader.fieldnames == [
                "instance_id",
                "n",
                "m",
                "algo",
                "max_ratio_num",
                "max_ratio_den",
                "mms_oracle_ms",
                "solver_ms",
                "complete",
            ]
            rows = list(reader)
        # Default chore cap keeps only the 14-chore fixture plus the
        # generated corpus; two algo rows per instance.
        assert len(rows) == 2 * (1 + 4)
        for row in rows:
            assert row["complete"] == "true"
            ratio = Fraction(int(row["max_ratio_num"]), int(row["max_ratio_den"]))
            bound = Fraction(11, 9) if row["algo"] == "exact-119" else Fraction(5, 4)
            assert ratio <= bound
