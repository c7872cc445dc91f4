import json
import subprocess
import sys

import pytest

from qvariant.cli import main
from qvariant.solutions import list_catalog


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_matches_library(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert [r["id"] for r in json.loads(out)] == [str(r["id"]) for r in list_catalog()]


def test_catalog_csv(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("id,mu,basis")
    assert len(out.splitlines()) == len(list_catalog()) + 1


def test_verify_single_id_with_params(tmp_path, capsys):
    params = {"family": "C12", "q": "1/9", "s": "1/3", "t1": "2", "t2": "-1/2", "A1": "3", "A2": "5/4",
              "L1": "2/3", "a1": "7/5", "Lam": "1/2"}
    path = tmp_path / "custom.json"
    path.write_text(json.dumps(params))
    code, out, _ = run(capsys, "verify", "--id", "C12:T31-ii", "--params", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["checked"] == 1 and doc["reports"][0]["id"] == "C12:T31-ii"


def test_malformed_rational(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"family": "C12", "q": "1/0", "s": "1", "t1": "1", "t2": "1"}))
    code, _, err = run(capsys, "verify", "--id", "C12:T31-ii", "--params", str(path))
    assert code == 2 and "1/0" in err


def test_params_family_mismatch(tmp_path, capsys):
    path = tmp_path / "b02.json"
    path.write_text(json.dumps({"family": "B02", "q": "1/9", "s": "1/3", "t1": "2", "t2": "1", "A1": "3",
                                "A2": "5", "a1": "2", "Lam": "1"}))
    code, _, err = run(capsys, "verify", "--id", "C12:T31-ii", "--params", str(path))
    assert code == 2 and "C12" in err


def test_unknown_id(capsys):
    code, _, err = run(capsys, "verify", "--id", "Q9:nope")
    assert code == 2


def test_verify_trials(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--id", "B20:T53-iii:21", "--id", "D2:P21-i", "--trials", "3",
                     "--seed", "5", "--out", str(out))
    doc = json.loads(out.read_text())
    assert code == 0 and doc["checked"] == 6 and doc["pass"]


def test_deterministic_reports(tmp_path, capsys):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    args = ["verify", "--id", "C21:T52-i", "--id", "B02:T41-ii:21", "--trials", "4", "--seed", "9"]
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    main(args + ["--out", str(c), "--workers", "2"])
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_degenerate_one_arrow(capsys):
    code, out, _ = run(capsys, "degenerate", "--arrow", "D2-C12", "--trials", "2")
    doc = json.loads(out)
    assert code == 0 and [s["arrow"] for s in doc["arrows"]] == ["D2-C12"]


def test_degenerate_all_sections(capsys):
    code, out, _ = run(capsys, "degenerate", "--arrow", "all", "--trials", "1", "--no-solutions")
    doc = json.loads(out)
    assert code == 0 and len(doc["arrows"]) == 4


def test_unknown_arrow(capsys):
    code, _, err = run(capsys, "degenerate", "--arrow", "D2-B02")
    assert code == 2 and "unknown arrow" in err


def test_limit_kummer(capsys):
    code, out, _ = run(capsys, "limit", "kummer", "--T", "1", "--eps", "1/10,1/100,1/1000", "--K", "8")
    rows = out.splitlines()[1:]
    diffs = [float(r.split(",")[1]) for r in rows]
    assert code == 0 and diffs == sorted(diffs, reverse=True)


def test_limit_kummer_failing_gate(capsys):
    code, _, _ = run(capsys, "limit", "kummer-c21", "--sign", "1")
    assert code == 1


def test_limit_hermite_report_only(capsys):
    code, out, _ = run(capsys, "limit", "hermite", "--B", "2", "--m", "10,100")
    assert code == 0 and out.startswith("m,n,solution")


def test_limit_hermite_b20(capsys):
    code, out, _ = run(capsys, "limit", "hermite-b20", "--format", "json")
    assert code == 0 and json.loads(out)["matches"] is True


def test_limit_bad_exponent(capsys):
    code, _, err = run(capsys, "limit", "kummer", "--lam", "1/3")
    assert code == 2 and "half-integer" in err


def test_gauge_check(capsys):
    code, out, _ = run(capsys, "gauge-check", "--trials", "3")
    doc = json.loads(out)
    assert code == 0 and doc["correspondences"]["C12-C21"] and doc["correspondences"]["B02-B20"]
    flagged = {r["id"]: r["printed_form_matches"] for r in doc["partners"]}
    assert flagged == {"C12:P63-g2": True, "C21:P63-g3": True, "B02:P65-g2": False, "B20:P65-g3": False}


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--order", "many"])
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qvariant", "catalog", "--format", "csv"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "C12:T31-ii" in res.stdout
