import csv
import io
import json
import subprocess
import sys

import pytest

from killtensors.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dim_text(capsys):
    assert run(capsys, "dim", "cpn", "--n", "2", "--k", "3") == (0, "119\n", "")
    assert run(capsys, "dim", "sphere", "--n", "2", "--k", "0")[1] == "1\n"


def test_dim_json_uses_decimal_string(capsys):
    code, out, _ = run(capsys, "dim", "cpn", "--n", "7", "--k", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data == {"space": "cpn", "n": 7, "k": 5, "dim": "6246072"}
    assert json.loads(json.dumps(data)) == data


def test_global_format_before_subcommand(capsys):
    _, out, _ = run(capsys, "--format", "json", "dim", "sphere", "--n", "3", "--k", "1")
    assert json.loads(out)["dim"] == "6"


def test_dim_rejects_bad_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dim", "cpn", "--n", "0", "--k", "1"])
    assert exc.value.code != 0
    with pytest.raises(SystemExit):
        main(["dim", "torus", "--n", "1", "--k", "1"])


def test_table_csv_defaults(capsys):
    code, out, _ = run(capsys, "table", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["n", "k", "dim"]
    assert len(rows) == 36
    table = {(int(n), int(k)): int(d) for n, k, d in rows[1:]}
    assert table[(2, 3)] == 119 and table[(4, 4)] == 15600 and table[(7, 5)] == 6246072
    assert "\r" not in out


def test_table_small_and_zero_column(capsys):
    _, out, _ = run(capsys, "table", "--max-n", "1", "--max-k", "1", "--format", "csv")
    assert out == "n,k,dim\n1,1,3\n"
    _, out, _ = run(capsys, "table", "--max-k", "0", "--format", "csv")
    assert [r[2] for r in csv.reader(io.StringIO(out))][1:] == ["1"] * 7


def test_table_text(capsys):
    _, out, _ = run(capsys, "table")
    assert "6246072" in out and len(out.splitlines()) == 8


def test_series(capsys):
    code, out, _ = run(capsys, "series", "--n", "3")
    assert code == 0
    assert "1+4t+10t^2+4t^3+t^4" in out and "(1-t)^11" in out
    _, out, _ = run(capsys, "series", "--n", "4", "--format", "json")
    assert json.loads(out)["numerator"] == "1+9t+45t^2+65t^3+45t^4+9t^5+t^6"


def test_series_check(capsys):
    code, out, _ = run(capsys, "series", "--n", "2", "--check", "--terms", "100")
    assert code == 0 and "verified to 100 terms" in out
    code, out, _ = run(capsys, "series", "--space", "sphere", "--n", "7", "--check", "--terms", "40")
    assert code == 0 and "1+15t+50t^2+50t^3+15t^4+t^5" in out


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--kind", "cpn", "--n", "1", "--k", "2")
    assert (code, out) == (0, "dim=6 (closed form 6: AGREE)\n")
    code, out, _ = run(capsys, "oracle", "--kind", "generate", "--n", "1", "--k", "2")
    assert code == 0 and out.startswith("source=6 target=6 rank=6 SURJECTIVE")
    code, out, _ = run(capsys, "oracle", "--kind", "sphere", "--n", "3", "--k", "1", "--format", "json")
    assert json.loads(out)["verdict"] == "AGREE"


def test_oracle_budget(capsys, monkeypatch):
    code, _, err = run(capsys, "oracle", "--kind", "cpn", "--n", "5", "--k", "4")
    assert code == 2 and "too large" in err and "70000" in err
    monkeypatch.setenv("KILLTENSORS_ORACLE_BUDGET", "10")
    code, _, err = run(capsys, "oracle", "--n", "1", "--k", "1")
    assert code == 2 and "cap 10" in err


def test_geom_all_pass(capsys):
    code, out, _ = run(capsys, "geom", "--space", "cpn", "--n", "2", "--samples", "3", "--tol", "1e-8")
    assert code == 0
    assert "FAIL" not in out
    assert "ktractor-curvature: PASS" in out


def test_geom_sphere_names_flatness(capsys):
    code, out, _ = run(capsys, "geom", "--space", "sphere", "--n", "2", "--samples", "2")
    assert code == 0 and "killing-connection-flat: PASS" in out


def test_geom_tolerance_failure(capsys):
    code, out, _ = run(capsys, "geom", "--space", "sphere", "--n", "2", "--samples", "2", "--tol", "1e-30")
    assert code == 1 and "FAIL" in out


def test_geom_unsupported(capsys):
    code, _, err = run(capsys, "geom", "--space", "cpn", "--n", "5")
    assert code == 2 and "supports" in err


def test_geom_json_deterministic(capsys):
    args = ("--seed", "11", "geom", "--space", "sphere", "--n", "3", "--samples", "2", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert all(r["passed"] for r in json.loads(first))


def test_csv_only_for_table(capsys):
    with pytest.raises(SystemExit):
        main(["dim", "cpn", "--n", "1", "--k", "1", "--format", "csv"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "killtensors", "dim", "cpn", "--n", "3", "--k", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2850\n"
