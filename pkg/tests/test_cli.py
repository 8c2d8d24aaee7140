"""CLI dispatch, exit codes, and report determinism."""

import json
import pathlib

import pytest

from invring.cli import EXIT_CLAIM_FAILED, EXIT_OK, EXIT_USAGE, run

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "groups"


def _capture(capsys):
    out = capsys.readouterr().out
    return json.loads(out)


def test_invariants_report(capsys):
    code = run(
        ["invariants", "--group", str(FIXTURES / "swap.json"), "--max-degree", "10"]
    )
    assert code == EXIT_OK
    payload = _capture(capsys)
    assert payload["hilbert"] == [1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6]
    assert payload["generators"] == [
        {"degree": 1, "poly": "X + Y"},
        {"degree": 2, "poly": "X*Y"},
    ]
    assert payload["version"]
    assert payload["seed"] == 0
    assert payload["group_file_sha256"]


def test_report_determinism(capsys, tmp_path):
    args = [
        "cm-search",
        "--group",
        str(FIXTURES / "minus-identity.json"),
        "--l-max",
        "4",
        "--max-degree",
        "12",
    ]
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert run(args + ["--output", str(out1)]) == EXIT_OK
    assert run(args + ["--output", str(out2)]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["first_certified_l"] == 2


def test_veronese_report(capsys):
    code = run(
        [
            "veronese",
            "--group",
            str(FIXTURES / "minus-identity.json"),
            "--m",
            "2",
            "--max-degree",
            "12",
        ]
    )
    assert code == EXIT_OK
    payload = _capture(capsys)
    assert payload["hilbert"][:4] == [1, 3, 5, 7]
    assert payload["standard_graded"]["standard"] is True


def test_transfer_check(capsys):
    code = run(
        [
            "transfer-check",
            "--group",
            str(FIXTURES / "s3.json"),
            "--subgroup",
            str(FIXTURES / "a3.json"),
            "--p",
            "3",
            "--max-degree",
            "4",
        ]
    )
    assert code == EXIT_OK
    payload = _capture(capsys)
    assert payload["splitting_identity"] is True
    assert payload["checked"] > 0


def test_cohomology_lemma_fuzz(capsys):
    code = run(
        [
            "cohomology",
            "verify-lemma-g2",
            "--p",
            "2",
            "--rank",
            "3",
            "--trials",
            "50",
            "--seed",
            "0",
        ]
    )
    assert code == EXIT_OK
    assert _capture(capsys)["holds"] is True


def test_cohomology_compute(capsys):
    code = run(
        [
            "cohomology",
            "compute",
            "--group",
            str(FIXTURES / "minus-identity.json"),
            "--i",
            "2",
            "--max-degree",
            "4",
        ]
    )
    assert code == EXIT_OK
    payload = _capture(capsys)
    assert payload["pieces"][2] == {
        "degree": 2,
        "i": 2,
        "free_rank": 0,
        "torsion": [2, 2, 2],
    }


def test_dedekind_factor(capsys):
    code = run(["dedekind", "factor", "--d", "-1", "--element", "5"])
    assert code == EXIT_OK
    payload = _capture(capsys)
    assert [e["coeff"] for e in payload["divisor"]] == [1, 1]


def test_dedekind_class_group(capsys):
    code = run(["dedekind", "class-group", "--d", "-5"])
    assert code == EXIT_OK
    assert _capture(capsys)["invariant_factors"] == [2]


def test_dedekind_div_check(capsys):
    code = run(["dedekind", "div-check", "--d", "-5", "--count", "25", "--seed", "1"])
    assert code == EXIT_OK
    assert _capture(capsys)["holds"] is True


def test_lemma_suite(capsys):
    code = run(["lemma-suite", "--trials", "5"])
    assert code == EXIT_OK
    payload = _capture(capsys)
    assert all(payload["results"].values())


def test_unknown_subcommand_exits_2(capsys):
    assert run(["not-a-command"]) == EXIT_USAGE


def test_missing_group_file_exits_2(capsys):
    assert run(["invariants", "--group", "/nonexistent.json"]) == EXIT_USAGE


def test_malformed_group_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "coefficients": "Z"}')
    assert run(["invariants", "--group", str(bad)]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "generators" in err


def test_invalid_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["invariants", "--group", str(bad)]) == EXIT_USAGE


def test_text_and_tsv_formats(capsys):
    assert (
        run(
            [
                "dedekind",
                "class-group",
                "--d",
                "-1",
                "--format",
                "text",
            ]
        )
        == EXIT_OK
    )
    out = capsys.readouterr().out
    assert "invariant_factors" in out
    assert (
        run(["dedekind", "class-group", "--d", "-1", "--format", "tsv"]) == EXIT_OK
    )
    out = capsys.readouterr().out
    assert "\t" in out


def test_gorenstein_command(capsys):
    code = run(
        [
            "gorenstein",
            "--group",
            str(FIXTURES / "minus-identity.json"),
            "--l",
            "2",
            "--max-degree",
            "12",
        ]
    )
    assert code == EXIT_OK
    payload = _capture(capsys)
    assert payload["symmetric"] is True
