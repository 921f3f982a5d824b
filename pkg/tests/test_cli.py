import json

import pytest

from normgrowth import tolerances as tol
from normgrowth.cli import main
from normgrowth.reports import CSV_COLUMNS


def test_group_summary(capsys):
    assert main(["group", "--group", "A:5"]) == 0
    out = capsys.readouterr().out
    assert "60" in out and "A5" in out


def test_lambda_both_routes(capsys):
    assert main(["lambda", "--group", "A:5", "--subset", "all-nonid"]) == 0
    out = capsys.readouterr().out
    assert "agree" in out.lower() or "lambda" in out.lower()


def test_chartable_verify_export_import(tmp_path, capsys):
    assert main(["chartable", "--group", "A:5", "--verify"]) == 0
    path = tmp_path / "a5.json"
    assert main(["chartable", "--group", "A:5", "--export", str(path)]) == 0
    assert path.exists()
    assert main(["chartable", "--group", "A:5", "--import", str(path)]) == 0
    # a corrupted table must fail certification, not load quietly
    blob = json.loads(path.read_text())
    blob["characters"][1][1][0] += 0.5
    path.write_text(json.dumps(blob))
    assert main(["chartable", "--group", "A:5", "--import", str(path)]) == 1


def test_growth_check_and_csv_output(tmp_path):
    out = tmp_path / "report.csv"
    code = main(
        [
            "growth",
            "--group",
            "A:5",
            "--check",
            "2step",
            "--trials",
            "2",
            "--format",
            "csv",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    header = out.read_text().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)


def test_growth_gluck_wrong_group_exits_1(capsys):
    assert main(["growth", "--group", "A:5", "--check", "gluck"]) == 1
    assert "NotLieType" in capsys.readouterr().err


def test_growth_words_and_survey(capsys):
    assert (
        main(
            [
                "growth",
                "--group",
                "A:5",
                "--check",
                "words",
                "--words",
                "xx",
                "xyXY",
            ]
        )
        == 0
    )
    assert main(["growth", "--group", "A:5", "--check", "survey"]) == 0


def test_dist_checks(capsys):
    assert main(["dist", "--group", "A:5", "--check", "bnp", "--trials", "3"]) == 0
    assert main(["dist", "--group", "A:5", "--check", "wlambda", "--trials", "2"]) == 0


def test_tolerance_override_roundtrip():
    old = tol.LAMBDA_AGREE
    try:
        assert (
            main(
                [
                    "lambda",
                    "--group",
                    "A:5",
                    "--subset",
                    "class:1",
                    "--tolerance",
                    "lambda-agree=1e-3",
                ]
            )
            == 0
        )
        assert tol.LAMBDA_AGREE == 1e-3
    finally:
        tol.LAMBDA_AGREE = old


def test_bad_tolerance_name_exits_2(capsys):
    code = main(["group", "--group", "A:5", "--tolerance", "no-such=1"])
    assert code == 2
    assert "unknown tolerance" in capsys.readouterr().err


def test_bad_group_spec_exits_2(capsys):
    assert main(["group", "--group", "Q:9"]) == 2
    assert main(["group", "--group", "S:x"]) == 2


def test_bad_subset_exits_2(capsys):
    assert main(["lambda", "--group", "A:5", "--subset", "word:"]) == 1
    assert main(["lambda", "--group", "A:5", "--subset", "classes:0,99"]) == 2


def test_missing_arguments_exit_2(capsys):
    assert main(["lambda", "--group", "A:5"]) == 2
    assert main(["growth", "--group", "A:5"]) == 2
    assert main([]) == 2
    assert main(["--help"]) == 0


def test_generator_file_group(tmp_path, capsys):
    gens = tmp_path / "k4.txt"
    gens.write_text("(0 1) (2 3)\n(0 2) (1 3)\n")
    assert main(["group", "--group", str(gens)]) == 0
    out = capsys.readouterr().out
    assert "4" in out and "k4" in out


def test_out_env_fallback(tmp_path, monkeypatch):
    target = tmp_path / "reports"
    monkeypatch.setenv("NORMGROWTH_OUT", str(target))
    assert (
        main(["growth", "--group", "A:5", "--check", "dichotomy", "--out", ""]) == 0
    )
    written = list(target.glob("*.json"))
    assert len(written) == 1


def test_report_bodies_deterministic(tmp_path):
    paths = []
    for name in ("one.json", "two.json"):
        p = tmp_path / name
        args = [
            "growth",
            "--group",
            "A:5",
            "--check",
            "asymp",
            "--trials",
            "4",
            "--seed",
            "7",
            "--out",
            str(p),
        ]
        assert main(args) == 0
        paths.append(p)
    docs = [json.loads(p.read_text()) for p in paths]
    for doc in docs:
        doc.pop("header")
    assert docs[0] == docs[1]
