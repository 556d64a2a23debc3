"""End-to-end tests for the command-line interface.

Most cases drive main() in process and capture stdout; one subprocess
test confirms the installed console script resolves.  Expected strings
are frozen byte-for-byte where the output format is part of the
contract.
"""

import json
import os
import subprocess
import sys

import pytest

from binowords.cli import (
    EXIT_OK,
    EXIT_STABILIZATION,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    ExperimentConfig,
    main,
    parse_batch_config,
)
from binowords.errors import GeneratorSpecError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenerate:
    def test_thue_morse_prefix(self, capsys):
        code, out, _ = run_cli(capsys, "generate", "tm", "8")
        assert code == EXIT_OK
        assert out == "01101001\n"

    def test_fibonacci_prefix(self, capsys):
        code, out, _ = run_cli(capsys, "generate", "fib", "19")
        assert code == EXIT_OK
        assert out == "0100101001001010010\n"

    def test_ternary_prefix(self, capsys):
        code, out, _ = run_cli(capsys, "generate", "h", "22")
        assert code == EXIT_OK
        assert out == "0112122122212222122222\n"

    def test_sturmian_spec(self, capsys):
        code, out, _ = run_cli(capsys, "generate", "sturmian:1,1", "19")
        assert code == EXIT_OK
        assert out == "0100101001001010010\n"

    def test_image_spec(self, capsys):
        code, out, _ = run_cli(capsys, "generate", "image(phi^1, tm)", "8")
        assert code == EXIT_OK
        assert out == "01101001\n"

    def test_unknown_spec_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "generate", "nosuch", "5")
        assert code == EXIT_USAGE
        assert "error:" in err


class TestComplexity:
    def test_binomial2_thue_morse_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, "complexity", "tm", "--binomial", "2", "--n-max", "16"
        )
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "n,value,prefix_used"
        values = {}
        for line in lines[1:]:
            n, value, _ = line.split(",")
            values[int(n)] = int(value)
        assert values[8] == 9
        assert values[6] == 8
        assert values[16] == 9
        assert values[0] == 1

    def test_champernowne_abelian_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, "complexity", "champ", "--binomial", "1",
            "--n-max", "10"
        )
        assert code == EXIT_OK
        for line in out.splitlines()[1:]:
            n, value, _ = line.split(",")
            assert int(value) == int(n) + 1

    def test_json_format_matches_csv(self, capsys):
        code, out_csv, _ = run_cli(
            capsys, "complexity", "fib", "--factor", "--n-max", "6"
        )
        assert code == EXIT_OK
        code, out_json, _ = run_cli(
            capsys, "complexity", "fib", "--factor", "--n-max", "6",
            "--format", "json"
        )
        assert code == EXIT_OK
        payload = json.loads(out_json)
        csv_values = [
            int(line.split(",")[1]) for line in out_csv.splitlines()[1:]
        ]
        json_values = [payload["values"][str(n)] for n in range(7)]
        assert json_values == csv_values
        assert csv_values == [1, 2, 3, 4, 5, 6, 7]

    def test_requires_exactly_one_kind(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["complexity", "tm", "--n-max", "4"])
        assert info.value.code == EXIT_USAGE
        capsys.readouterr()

    def test_stabilization_exit_code(self, capsys, monkeypatch):
        monkeypatch.setenv("BINOWORDS_PREFIX_CAP", "1024")
        code, _, err = run_cli(
            capsys, "complexity", "tm", "--factor", "--n-max", "500"
        )
        assert code == EXIT_STABILIZATION
        assert "error:" in err


class TestClasses:
    def test_thue_morse_length4_level2(self, capsys):
        code, out, _ = run_cli(capsys, "classes", "tm", "4", "--k", "2")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "representative,size"
        rows = [line.split(",") for line in lines[1:]]
        assert len(rows) == 9
        assert sum(int(size) for _, size in rows) == 10
        assert ["0110", "2"] in rows

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(
            capsys, "classes", "tm", "4", "--k", "2", "--format", "json"
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["generator"] == "tm"
        assert payload["length"] == 4
        assert payload["k"] == 2
        assert len(payload["classes"]) == 9

    def test_level1_merges_reversals(self, capsys):
        code, out, _ = run_cli(capsys, "classes", "tm", "2", "--k", "1")
        assert code == EXIT_OK
        rows = [line.split(",") for line in out.splitlines()[1:]]
        assert rows == [["00", "1"], ["01", "2"], ["11", "1"]]


class TestRauzy:
    def test_thue_morse_dot_shape(self, capsys):
        code, out, _ = run_cli(capsys, "rauzy", "tm", "6", "--dot")
        assert code == EXIT_OK
        assert out.startswith("digraph")
        vertex_lines = [
            line for line in out.splitlines()
            if "label=" in line and "->" not in line
        ]
        edge_lines = [line for line in out.splitlines() if "->" in line]
        assert len(vertex_lines) == 3
        assert len(edge_lines) == 6

    def test_fibonacci_json_shape(self, capsys):
        code, out, _ = run_cli(capsys, "rauzy", "fib", "5", "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["order"] == 5
        assert len(payload["vertices"]) == 2
        assert len(payload["edges"]) == 4

    def test_dot_is_default(self, capsys):
        code, out, _ = run_cli(capsys, "rauzy", "tm", "3")
        assert code == EXIT_OK
        assert out.startswith("digraph")


class TestMorphism:
    def test_classify_square_free_preserver(self, capsys, tmp_path):
        path = tmp_path / "phi.txt"
        path.write_text("0 -> 01\n1 -> 10\n")
        code, out, _ = run_cli(capsys, "morphism", str(path))
        assert code == EXIT_OK
        assert "rank: 1" in out
        assert "parikh-collinear: yes" in out
        assert "parikh-constant: yes" in out
        assert "totally-erasing: no" in out
        assert "prolongable-on: 0" in out
        assert "0 -> 01" in out

    def test_rank_two_morphism(self, capsys, tmp_path):
        path = tmp_path / "f.txt"
        path.write_text("0 -> 001\n1 -> 11\n")
        code, out, _ = run_cli(capsys, "morphism", str(path))
        assert code == EXIT_OK
        assert "rank: 2" in out
        assert "parikh-collinear: no" in out

    def test_missing_file_is_usage_error(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "morphism", str(tmp_path / "absent.txt")
        )
        assert code == EXIT_USAGE
        assert "error:" in err

    def test_malformed_file_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 = 01\n")
        code, _, err = run_cli(capsys, "morphism", str(path))
        assert code == EXIT_USAGE
        assert "error:" in err


class TestFactorize:
    def test_exact_image(self, capsys):
        code, out, _ = run_cli(capsys, "factorize", "01101001", "--j", "2")
        assert code == EXIT_OK
        assert out == "factorizations: 1\np=- ancestor=01 s=-\n"

    def test_degenerate_word_has_two_splits(self, capsys):
        code, out, _ = run_cli(capsys, "factorize", "0101", "--j", "1")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "factorizations: 2"
        assert len(lines) == 3

    def test_non_factor_has_none(self, capsys):
        code, out, _ = run_cli(capsys, "factorize", "000", "--j", "1")
        assert code == EXIT_OK
        assert out == "factorizations: 0\n"


class TestDecode:
    def test_all_solutions(self, capsys):
        code, out, _ = run_cli(
            capsys, "decode", "01" * 6, "--k", "1", "--all"
        )
        assert code == EXIT_OK
        assert out == "u=- y=000000\nu=0 y=11111\n"

    def test_single_solution(self, capsys):
        code, out, _ = run_cli(capsys, "decode", "011010011001", "--k", "1")
        assert code == EXIT_OK
        assert out == "u=- y=011010\n"

    def test_undecodable_prefix_fails(self, capsys):
        prefix = "".join(
            format(j, "b") for j in range(32)
        )[:64]
        code, _, err = run_cli(capsys, "decode", prefix, "--k", "2")
        assert code == EXIT_VERIFICATION
        assert "error:" in err

    def test_too_short_prefix_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "decode", "01101001", "--k", "9")
        assert code == EXIT_USAGE
        assert "error:" in err


class TestVerify:
    def test_quick_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "ochsenschlager",
                               "--quick")
        assert code == EXIT_OK
        assert out.startswith("suite ochsenschlager (quick): PASS")

    def test_unknown_suite_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "nosuite")
        assert code == EXIT_USAGE
        assert "ochsenschlager" in err


class TestOutputFiles:
    def test_atomic_write_and_determinism(self, capsys, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "nested" / "b.csv"
        for path in (a, b):
            code, out, _ = run_cli(
                capsys, "complexity", "tm", "--factor", "--n-max", "8",
                "-o", str(path)
            )
            assert code == EXIT_OK
            assert out == ""
        assert a.read_bytes() == b.read_bytes()

    def test_timestamp_header_is_opt_in(self, capsys, tmp_path):
        path = tmp_path / "t.csv"
        code, _, _ = run_cli(
            capsys, "complexity", "tm", "--factor", "--n-max", "4",
            "-o", str(path), "--timestamp"
        )
        assert code == EXIT_OK
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# written ")
        assert lines[1] == "n,value,prefix_used"
        headers = [ln for ln in lines if ln.startswith("# written ")]
        assert len(headers) == 1


class TestBatchConfig:
    def test_parse_minimal(self):
        config = parse_batch_config(
            "[batch]\ngenerator = tm\n\n"
            "[t1]\ntype = complexity\nkind = factor\nn_max = 8\n"
        )
        assert isinstance(config, ExperimentConfig)
        assert config.generator == "tm"
        assert config.formats == frozenset({"csv"})
        assert config.tasks[0][0] == "t1"

    def test_missing_batch_section(self):
        with pytest.raises(GeneratorSpecError):
            parse_batch_config("[t1]\ntype = rauzy\nn = 3\n")

    def test_unknown_format_rejected(self):
        with pytest.raises(GeneratorSpecError):
            parse_batch_config(
                "[batch]\ngenerator = tm\nformats = yaml\n"
            )

    def test_unknown_task_type_rejected(self):
        with pytest.raises(GeneratorSpecError):
            parse_batch_config(
                "[batch]\ngenerator = tm\n\n[t]\ntype = frobnicate\n"
            )

    def test_run_writes_all_outputs(self, capsys, tmp_path):
        out_dir = tmp_path / "results"
        config = tmp_path / "run.cfg"
        config.write_text(
            "[batch]\n"
            "generator = tm\n"
            f"output = {out_dir}\n"
            "formats = csv, json, dot\n\n"
            "[profile]\n"
            "type = complexity\n"
            "kind = binomial\n"
            "k = 2\n"
            "n_max = 8\n\n"
            "[graphs]\n"
            "type = rauzy\n"
            "n = 4..5\n\n"
            "[check]\n"
            "type = verify\n"
            "suite = ochsenschlager\n\n"
            "[dec]\n"
            "type = decode\n"
            "k = 1\n"
            "prefix = 12\n\n"
            "[other]\n"
            "type = complexity\n"
            "generator = fib\n"
            "kind = factor\n"
            "n_max = 6\n"
        )
        code, _, _ = run_cli(capsys, "batch", str(config))
        assert code == EXIT_OK
        names = sorted(p.name for p in out_dir.iterdir())
        assert names == [
            "check.txt", "dec.txt", "graphs-4.dot", "graphs-4.json",
            "graphs-5.dot", "graphs-5.json", "other.csv", "other.json",
            "profile.csv", "profile.json",
        ]
        assert out_dir.joinpath("dec.txt").read_text() == "u=- y=011010\n"
        profile = out_dir.joinpath("profile.csv").read_text()
        assert profile.splitlines()[0] == "n,value,prefix_used"
        other = out_dir.joinpath("other.csv").read_text()
        assert other.splitlines()[6] == "5,6,4096"
        assert "PASS" in out_dir.joinpath("check.txt").read_text()

    def test_run_is_deterministic(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        snapshots = []
        for tag in ("one", "two"):
            out_dir = tmp_path / tag
            config.write_text(
                "[batch]\n"
                "generator = fib\n"
                f"output = {out_dir}\n"
                "formats = json\n\n"
                "[p]\ntype = complexity\nkind = abelian\nn_max = 10\n"
            )
            code, _, _ = run_cli(capsys, "batch", str(config))
            assert code == EXIT_OK
            snapshots.append(out_dir.joinpath("p.json").read_bytes())
        assert snapshots[0] == snapshots[1]

    def test_cap_guard_on_n_max(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text(
            "[batch]\ngenerator = tm\n"
            f"output = {tmp_path / 'x'}\n\n"
            "[p]\ntype = complexity\nkind = factor\nn_max = 99999999\n"
        )
        code, _, err = run_cli(capsys, "batch", str(config))
        assert code == EXIT_USAGE
        assert "error:" in err


class TestConsoleScript:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "binowords.cli", "generate", "tm", "8"],
            capture_output=True, text=True,
            env={**os.environ},
        )
        assert proc.returncode == 0
        assert proc.stdout == "01101001\n"
