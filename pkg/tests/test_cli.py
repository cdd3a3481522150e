import csv
import io
import json
import random
import subprocess
import sys

import pytest

from lapsep.cli import CENSUS_CSV_COLUMNS, EX_USAGE, main, render_json
from lapsep.criteria import Kind, classify
from lapsep.graph_core import LabeledGraph, num_pairs
from lapsep.tensor_ops import FactorShape


def run(capsys, *argv):
    code = main(["--no-timing", *argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_entangled(capsys):
    code, out, _ = run(capsys, "classify", "--p", "2", "--q", "2", "--edges", "2 3")
    rec = json.loads(out)
    assert code == 1
    assert rec["results"]["verdict"] == "Entangled"
    assert rec["results"]["certificate"] == "PtRowSumNonzero"
    assert rec["results"]["pt_row_sums"] == "-1 1 1 -1"
    assert rec["results"]["lss_1_2"] == "false"


def test_classify_separable(capsys):
    code, out, _ = run(capsys, "classify", "--p", "2", "--q", "2", "--edges", "1 2")
    assert code == 0
    assert json.loads(out)["results"]["certificate"] == "ExactTwoByQ"


def test_classify_empty_graph_is_usage_error(capsys):
    code, out, err = run(capsys, "classify", "--p", "2", "--q", "2", "--edges", "")
    assert code >= 64
    assert out == ""
    assert "trace 0" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--p", "2", "--q", "2", "--edges", "1 5"],
        ["classify", "--p", "2", "--q", "2", "--edges", "1 x"],
        ["classify", "--p", "2", "--q", "2", "--edges", "1 1"],
        ["classify", "--p", "2", "--q", "2", "--edges", "1 2,2 1"],
        ["classify", "--p", "2", "--q", "2", "--mask", "40"],
        ["classify", "--p", "1", "--q", "4", "--edges", "1 2"],
        ["classify", "--p", "2", "--q", "2"],
        ["classify", "--p", "2", "--q", "2", "--edges", "1 2", "--mask", "1"],
        ["census", "--p", "3", "--q", "3"],
        ["count", "ns", "--n", "6"],
        ["bounds", "--p", "9", "--q", "2"],
        ["nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code >= 64


def test_classify_mask_and_graph_file(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("n 4\n2 3\n")
    code_f, out_f, _ = run(capsys, "classify", "--p", "2", "--q", "2", "--graph-file", str(f))
    code_m, out_m, _ = run(capsys, "classify", "--p", "2", "--q", "2", "--mask", "8")
    assert code_f == code_m == 1
    assert json.loads(out_f)["results"] == json.loads(out_m)["results"]
    f.write_text("n 6\n2 3\n")
    code, _, err = run(capsys, "classify", "--p", "2", "--q", "2", "--graph-file", str(f))
    assert code == EX_USAGE and "p*q" in err


def test_classify_exit_codes_match_library(capsys):
    rng = random.Random(20140723)
    expected_code = {Kind.SEPARABLE: 0, Kind.ENTANGLED: 1, Kind.UNDETERMINED: 2}
    for _ in range(100):
        p, q = rng.choice([(2, 2), (2, 3), (3, 2), (3, 3)])
        n = p * q
        mask = rng.randrange(1, 1 << num_pairs(n))
        code, out, _ = run(capsys, "classify", "--p", str(p), "--q", str(q), "--mask", f"{mask:x}")
        verdict = classify(LabeledGraph(n, mask), FactorShape(p, q))
        assert code == expected_code[verdict.kind]
        assert json.loads(out)["results"]["verdict"] == verdict.kind.value


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--p", "2", "--q", "2", "--workers", "1")
    res = json.loads(out)["results"]
    assert code == 0
    assert res["total"] == "63"
    assert res["separable_exact"] == "31"
    assert res["entangled_exact"] == "32"
    assert all(v == "true" for k, v in res.items() if k.startswith("check_"))


def test_census_3_2(capsys):
    code, out, _ = run(capsys, "census", "--p", "3", "--q", "2", "--workers", "1")
    res = json.loads(out)["results"]
    assert code == 0
    assert res["thm3_count"] == "4095"
    assert res["pattern_deg1_count"] == "24576"


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--p", "2", "--q", "2", "--workers", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert tuple(rows[0]) == CENSUS_CSV_COLUMNS
    row = dict(zip(rows[0], rows[1]))
    assert row["total"] == "63"
    assert row["separable_exact"] == "31"
    assert out.endswith("\r\n")


def test_census_3_3_skip_ppt(capsys):
    code, out, _ = run(capsys, "census", "--p", "3", "--q", "3", "--skip-ppt", "--workers", "1", "--range", "0:0x400")
    res = json.loads(out)["results"]
    assert code == 0
    assert "ppt_count" not in res
    assert res["total"] == str(0x400 - 1)
    assert res["complete"] == "false"


def test_count_commands(capsys):
    _, out, _ = run(capsys, "count", "ns", "--n", "2")
    assert json.loads(out)["results"] == {"N_s": "8", "N_e": "8"}
    _, out, _ = run(capsys, "count", "mni", "--n", "6", "--i", "6")
    assert json.loads(out)["results"]["M"] == "4410"
    code, out, _ = run(capsys, "count", "mni", "--n", "5", "--i", "7")
    res = json.loads(out)["results"]
    assert code == 0
    assert res == {"M": "20", "closed_form": "20", "closed_form_agrees": "true"}
    _, out, _ = run(capsys, "count", "ls2q", "--q", "2")
    assert json.loads(out)["results"] == {"L_s": "31", "L_e": "32", "L": "63"}


def test_bounds_command(capsys):
    _, out, _ = run(capsys, "bounds", "--p", "3", "--q", "2")
    res = json.loads(out)["results"]
    assert res["ls_lower"] == "4095"
    assert res["le_lower"] == "24576"


def test_big_integers_rendered_exactly(capsys):
    _, out, _ = run(capsys, "bounds", "--p", "7", "--q", "5")
    res = json.loads(out)["results"]
    assert res["total"] == str(2 ** (35 * 34 // 2) - 1)
    assert all(v.lstrip("-").isdigit() for v in res.values())


def test_verify_table1_max_n(capsys):
    code, out, err = run(capsys, "verify-table1", "--max-n", "4")
    res = json.loads(out)["results"]
    assert code == 0
    assert res["cells"] == "7"
    assert {k.split("(")[0] for k in res if k.startswith("M_")} == {"M_2", "M_3", "M_4"}
    assert err.count("PASS") == 7


def test_verify_table1_injected_failure(capsys):
    code, out, err = run(capsys, "verify-table1", "--max-n", "4", "--inject", "4,3=17")
    res = json.loads(out)["results"]
    assert code == 1
    assert res["M_4(3)"] == "FAIL expected=17 got=16"
    assert res["failed"] == "1"
    assert "FAIL n=4 i=3" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--p", "2", "--q", "3", "--edges", "1 4,2 5"],
        ["census", "--p", "2", "--q", "2", "--workers", "1"],
        ["bounds", "--p", "4", "--q", "3"],
        ["verify-table1", "--max-n", "3"],
    ],
)
def test_json_round_trip(capsys, argv):
    main(argv)
    out = capsys.readouterr().out
    assert render_json(json.loads(out)) == out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lapsep", "classify", "--p", "2", "--q", "2", "--edges", "2 3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["results"]["verdict"] == "Entangled"


def test_help_documents_csv_columns():
    proc = subprocess.run([sys.executable, "-m", "lapsep", "census", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert ",".join(CENSUS_CSV_COLUMNS) in proc.stdout.replace("\n  ", "")
