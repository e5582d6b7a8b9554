import io
import json
import subprocess
import sys

from cubiccf.cli import run_cli


def run(*argv):
    out = io.StringIO()
    code = run_cli(list(argv), out)
    return code, out.getvalue()


def test_expand_case_a_letters():
    code, text = run("expand", "--cubic", "A", "--field", "gf4", "--lead", "t", "--n", "20", "--letters")
    assert code == 0
    lines = text.splitlines()
    assert lines[:8] == list("abcdefcb")
    assert lines[-1].startswith("# status=probable_bounded")


def test_expand_json_and_pqs_file(tmp_path):
    path = tmp_path / "pqs.txt"
    code, text = run("expand", "--cubic", "B", "--n", "16", "--format", "json", "--pqs-path", str(path))
    assert code == 0
    summary = json.loads(text)
    assert set(summary) == {"cubic", "field", "root", "n", "status", "ht", "pairs", "pqs_path"}
    assert summary["field"] == "gf8" and summary["n"] == 16
    assert path.read_text().split()[:4] == ["2", "13", "13", "01"]


def test_expand_csv():
    code, text = run("expand", "--cubic", "01,11,0,01", "--field", "gf8", "--lead", "2", "--n", "3",
                     "--format", "csv")
    assert code == 0
    assert text.splitlines() == ["index,quotient,degree", "0,2,0", "1,17,1", "2,52,1"]


def test_expect_bounded_fails_on_unbounded_root():
    code, _ = run("expand", "--cubic", "1,0,01,1", "--n", "1e4", "--expect-bounded")
    assert code == 1
    code, _ = run("expand", "--cubic", "A", "--n", "1e4", "--expect-bounded")
    assert code == 0


def test_usage_errors_exit_2():
    assert run("expand", "--cubic", "Q")[0] == 2
    assert run("expand", "--cubic", "A", "--field", "gf16")[0] == 2
    assert run("bogus")[0] == 2
    assert run("verify-c", "--n", "2000")[0] == 2


def test_verify_commands():
    code, text = run("verify-c", "--n", "1000")
    assert code == 0 and text.strip() == "PASS case C table: 1000/1000 tokens"
    code, text = run("verify-a", "--n", "5000", "--fold-n", "2000")
    assert code == 0 and text.count("PASS") == 2
    # 5000 quotients are too few to see all 63 quadruples, so only the table check fails
    code, text = run("verify-b", "--n", "5000")
    assert code == 1
    assert "PASS case B seeds" in text and "FAIL case B table" in text
    assert "PASS case B generator vs engine" in text


def test_verify_b_full_scale():
    code, text = run("verify-b", "--n", "1e5")
    assert code == 0, text
    assert "63 rows derived, 63 in fixture" in text


def test_verify_c_detects_a_tampered_fixture(tmp_path, monkeypatch):
    from cubiccf import patterns
    lines = patterns.read_fixture("table2.txt").splitlines()
    lines[0] = lines[0].replace("17", "71", 1)
    (tmp_path / "table2.txt").write_text("\n".join(lines) + "\n")
    monkeypatch.setenv(patterns.FIXTURE_ENV, str(tmp_path))
    monkeypatch.setitem(patterns.FIXTURE_SHA256, "table2.txt", None)
    code, text = run("verify-c")
    assert code == 1 and text.startswith("FAIL")
    monkeypatch.setenv(patterns.FIXTURE_ENV, str(tmp_path / "missing"))
    assert run("verify-c")[0] == 2


def test_stats_and_bench():
    code, text = run("stats", "--cubic", "C", "--lead", "2", "--n", "2000")
    assert code == 0 and "input-state pairs" in text
    code, text = run("bench", "--cubic", "A", "--n", "20000")
    assert code == 0 and "PASS linear scaling" in text


def test_output_is_deterministic():
    args = ("expand", "--cubic", "C", "--field", "gf8", "--lead", "2", "--n", "500")
    assert run(*args) == run(*args)


def test_survey_footer():
    code, text = run("survey", "--threshold", "1e4")
    assert code == 0
    assert text.splitlines()[-1] == "256 total, 96 irreducible, 36 probable-bounded, 3 orbits"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubiccf", "expand", "--cubic", "A", "--n", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[:3] == ["1", "01", "11"]
