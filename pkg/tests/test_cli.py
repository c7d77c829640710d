import json
import subprocess
import sys

import pytest

from kahlerstar.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_star_trunc_example(capsys):
    code, out, _ = run(["star", "--space", "cpn", "--dim", "1", "--order", "2", "zb[1]", "z[1]"], capsys)
    assert code == 0
    assert out.strip() == "-1 + B(1,0) + h*(B(2,0)) + h^2*(-2*B(2,0) + 2*B(3,0))"


def test_star_pointwise_example(capsys):
    code, out, _ = run(["star", "--space", "cpn", "--dim", "2", "--order", "0", "z[1]", "zb[2]"], capsys)
    assert code == 0 and out.strip() == "z[1]*zb[2]"


def test_star_exact_example(capsys):
    code, out, _ = run(["star", "--space", "cpn", "--dim", "1", "--L", "2", "--json", "B(0,-1)", "B(0,-1)"], capsys)
    assert code == 0
    text, payload = out.split("\n", 1)
    assert text == "B(-2,0)"
    data = json.loads(payload)
    assert data["report"]["mode"] == "exact"
    assert data["result"]["terms"] == [{"B": [-2, 0], "coeff": "1", "z": [0], "zb": [0]}]


def test_expand_examples(capsys):
    code, out, _ = run(["expand", "--what", "alpha", "--m", "3", "--order", "6"], capsys)
    assert code == 0 and "series: h^3 + 3*h^4 + 7*h^5 + 15*h^6 + O(h^7)" in out
    code, out, _ = run(["expand", "--what", "c", "--m", "1", "--space", "cpn"], capsys)
    assert "closed form: h" in out
    code, out, _ = run(["expand", "--what", "bordemann", "--kind", "1", "--order", "2"], capsys)
    assert code == 0 and "F1 = 1 + x*h + (x + 2*x^2)*h^2" in out


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--suite", "nonexistent"],
        ["star", "--dim", "1", "zb[2]", "z[1]"],
        ["star", "--dim", "1", "z[1] +", "z[1]"],
        ["star", "--space", "chn", "--L", "2", "vac", "vac"],
        ["expand", "--what", "alpha"],
    ],
)
def test_errors_exit_2(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 2 and err.startswith("error:")


def test_verify_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(["verify", "--suite", "bordemann", "--order", "4", "--out", str(out), "--quiet"], capsys)
    data = json.loads(out.read_text())
    assert code == 0 and data["status"] == "pass"
    assert {"check", "mode", "params", "status", "witness"} <= set(data["checks"][0])
    assert "timing" not in data["checks"][0]


def test_fock_commands(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("STAR_CACHE_DIR", str(tmp_path))
    code, out, _ = run(["fock", "--what", "matrix", "--dim", "1", "--L", "1", "--gen", "z[1]"], capsys)
    assert code == 0 and json.loads(out)["matrix"] == [["0", "0"], ["1", "0"]]
    code, out, _ = run(["fock", "--what", "ladder", "--gen", "zb[1]", "--label", "1;"], capsys)
    assert json.loads(out)["result"] == {";": "sqrt(h)"}
    code, out, _ = run(["cache", "build", "--dim", "2", "--max-size", "1"], capsys)
    assert code == 0 and list(tmp_path.glob("*.json"))
    code, out, _ = run(["cache", "clear"], capsys)
    assert "removed 1" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "kahlerstar", "expand", "--what", "beta", "--m", "2", "--order", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and "h^2 - h^3" in res.stdout
