"""Command-line interface: subcommands, output shapes, exit codes."""

import json

import pytest

from framequest.cli import EXIT_IO, EXIT_OK, main
from framequest.store import RecordStore


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSimulate:
    def test_writes_records_and_reports(self, tmp_path, capsys):
        out = tmp_path / "records.jsonl"
        code, stdout, _ = run(
            capsys, "simulate", "--n", "4", "--p-pos", "0.3", "--p-neg", "0.7", "--seed", "42", "--out", str(out)
        )
        assert code == EXIT_OK
        assert "4 V1 + 4 V2" in stdout
        assert len(RecordStore.open(out)) == 8

    def test_rerun_same_seed_is_idempotent(self, tmp_path, capsys):
        out = tmp_path / "records.jsonl"
        argv = ["simulate", "--n", "3", "--p-pos", "0.5", "--p-neg", "0.5", "--seed", "1", "--out", str(out)]
        assert main(argv) == EXIT_OK
        size = out.stat().st_size
        assert main(argv) == EXIT_OK
        assert out.stat().st_size == size

    def test_bad_policy_is_validation_failure(self, tmp_path, capsys):
        code, _, stderr = run(
            capsys, "simulate", "--n", "3", "--p-pos", "1.5", "--p-neg", "0.5", "--seed", "1",
            "--out", str(tmp_path / "r.jsonl"),
        )
        assert code == 2
        assert "error" in stderr


class TestReport:
    def test_markdown_report(self, tmp_path, capsys):
        out = tmp_path / "records.jsonl"
        main(["simulate", "--n", "5", "--p-pos", "0.2", "--p-neg", "0.8", "--seed", "3", "--out", str(out)])
        capsys.readouterr()
        code, stdout, _ = run(capsys, "report", "--store", str(out))
        assert code == EXIT_OK
        assert "## Question 7" in stdout

    def test_structured_report_parses(self, tmp_path, capsys):
        out = tmp_path / "records.jsonl"
        main(["simulate", "--n", "5", "--p-pos", "0.2", "--p-neg", "0.8", "--seed", "3", "--out", str(out)])
        capsys.readouterr()
        code, stdout, _ = run(capsys, "report", "--store", str(out), "--format", "structured")
        assert code == EXIT_OK
        assert json.loads(stdout)["counts"]["total"] == 10

    def test_corrupt_store_is_io_error(self, tmp_path, capsys):
        store = tmp_path / "records.jsonl"
        store.write_text("garbage\n", encoding="utf-8")
        code, _, stderr = run(capsys, "report", "--store", str(store))
        assert code == EXIT_IO
        assert "line 1" in stderr


class TestAllais:
    def test_demo_output(self, capsys):
        code, stdout, _ = run(capsys, "allais")
        assert code == EXIT_OK
        assert "EV 139M" in stdout
        assert "(1B, 2A): violates expected utility" in stdout


class TestValidateBank:
    def test_all_quantified_questions_pass(self, capsys):
        code, stdout, _ = run(capsys, "validate-bank")
        assert code == EXIT_OK
        assert stdout.count("EV equal") == 4
        assert stdout.count("not quantified") == 3
        assert "bank checksum:" in stdout


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_report_on_missing_store_is_io_error(tmp_path, capsys):
    code = main(["report", "--store", str(tmp_path / "absent.jsonl")])
    assert code == EXIT_IO
    assert "does not exist" in capsys.readouterr().err
