from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from cyclic_cubics.cli import PLOTSCAN_HEADER, SCAN_HEADER, main
from cyclic_cubics.family import LAMBDA_ERRATUM_NOTE


def run(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv: str):
    code, text = run(*argv)
    assert code == 0, text
    return json.loads(text)


def run_csv(*argv: str) -> list[list[str]]:
    code, text = run(*argv)
    assert code == 0
    return list(csv.reader(io.StringIO(text)))


def test_validate_lecacheux():
    d = run_json("validate", "-f", "-1", "-g", "-n")
    assert d["lambda"] == "-n^2"
    assert d["name"] == "L_n"


def test_validate_degenerate_pair():
    code, text = run("validate", "-f", "n", "-g", "n")
    assert code == 1 and text == ""


def test_validate_not_a_family():
    code, _ = run("validate", "-f", "n", "-g", "n+1")
    assert code == 1


def test_validate_b_family_with_erratum():
    d = run_json("validate", "-f", "-n^2", "-g", "n^3-1")
    assert d["lambda"] == "-n^4+3*n"
    assert LAMBDA_ERRATUM_NOTE in d["notes"]


def test_usage_errors_exit_1():
    assert run("disc", "--name", "B_n")[0] == 1  # no --n
    assert run("disc", "--name", "nope", "--n", "2")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_disc_values():
    assert run_json("disc", "--name", "B_n", "--n", "2")["D"] == "1054729"
    assert run_json("disc", "--name", "B_n", "--n", "3")["D"] == str(81 * 79**2)


def test_disc_range_agreement():
    d = run_json("disc", "--name", "B_n", "--range", "1..200")
    assert d["summary"]["closed_form_agreement"] == "200/200"


def test_strict_incomplete_factorization():
    args = ["disc", "--name", "B_n", "--n", str(10**9), "--factor-budget", "1"]
    code, text = run(*args)
    assert code == 0 and "incomplete" in json.loads(text)
    assert run(*args, "--strict")[0] == 2


def test_units():
    d = run_json("units", "--name", "B_n", "--n", "2")
    assert d["verdict"] == "fundamental" and abs(float(d["R_P"]) - 24.733) < 1e-3
    assert run_json("units", "--name", "B_n", "--n", "-1")["verdict"] != "fundamental"
    assert run_json("units", "--name", "L_n", "--n", "1")["skipped"] == "reducible"


def test_scan_rows_and_summary(capsys):
    rows = run_csv("scan", "--name", "S_n", "--range", "1..100")
    assert rows[0] == SCAN_HEADER
    assert [int(r[0]) for r in rows[1:]] == list(range(1, 101))
    # 64 squarefree values for 1..99; n = 100 gives 10309 = 13^2 * 61
    assert sum(r[2] == "yes" for r in rows[1:]) == 64
    assert "squarefree 64/100" in capsys.readouterr().err


def test_scan_empty_range():
    assert run_csv("scan", "--name", "B_n", "--range", "5..4") == [SCAN_HEADER]


def test_scan_threads_are_deterministic():
    a = run("scan", "--name", "B_n", "--range", "1..40")
    b = run("scan", "--name", "B_n", "--range", "1..40", "--threads", "2")
    assert a == b


def test_iterate():
    d = run_json("iterate", "--name", "L_n", "--steps", "1")
    assert (d["chain"][1]["f"], d["chain"][1]["g"]) == ("-n", "n^3-1")
    d = run_json("iterate", "--name", "K_n", "--steps", "-1")
    last = d["chain"][1]
    assert (last["f"], last["g"], last["lambda"]) == ("n-1", "-n", "3")
    assert d["unit_certificate_applicable"] == [True, False]
    d = run_json("iterate", "--name", "B_n", "--steps", "3")
    assert [g for _, g in d["degrees"]] == [3, 7, 18, 47]


def test_surface():
    d = run_json("surface", "--name", "S_n")
    assert d["X3_expected"]["coords"] == ["0", "-1", "1"]
    d = run_json("surface", "--name", "K_n", "--n", "2")
    x, y, z, lam = (int(t) for t in d["at_n"]["X3"])
    assert x * (-4 - 2 - 1) == y * (-2)  # proportional to [-n : -n^2-n-1 : 1]
    assert run("surface", "--point", "1,2,3", "--lambda", "5")[0] == 2
    assert run("surface", "--w-point", "1,1,1", "--lambda", "0")[0] == 2
    d = run_json("surface", "--point", "1,2,3", "--lambda", "6")
    assert d["X3"]["coords"] == ["1", "2", "3"]


def test_plotscan_window():
    rows = run_csv("plotscan", "--a-range=-120..0", "--lambda-range", "0..110")
    assert rows[0] == PLOTSCAN_HEADER
    hits = {(int(r[0]), int(r[1])) for r in rows[1:]}
    for k in range(2, 11):
        assert (-k * k + 2 * k - 6, k * k + 5) in hits
    rows = run_csv("plotscan", "--a-range", "0..20", "--lambda-range", "0..20")
    hits = {(int(r[0]), int(r[1])) for r in rows[1:]}
    assert all((k + 3, k) in hits for k in range(0, 18))


def test_plotscan_empty():
    assert run_csv("plotscan", "--a-range", "1..0", "--lambda-range", "0..3") == [PLOTSCAN_HEADER]


def test_registry_and_text_format():
    d = run_json("registry")
    assert [f["name"] for f in d] == ["S_n", "L_n", "K_n", "K'_n", "B_n", "K_{-n,n-1}"]
    code, text = run("family", "--name", "B_n", "--n", "2", "--format", "text")
    assert code == 0 and "cubic: X^3+309*X^2-10*X-1" in text


def test_module_entry_point_is_byte_identical():
    cmd = [sys.executable, "-m", "cyclic_cubics", "units", "--name", "B_n", "--n", "2"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and b"fundamental" in first
