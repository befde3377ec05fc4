import json
import subprocess
import sys

import pytest

from hwdesign import verifier
from hwdesign.assembler import feasible_r
from hwdesign.cli import main, table_rows


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("n", [21, 63])
def test_generate_verify_round_trip(tmp_path, capsys, n):
    for r in sorted(feasible_r(n)):
        path = tmp_path / f"hw_{n}_{r}.json"
        code, out, _ = run(capsys, "generate", "--n", n, "--r", r, "--out", path)
        assert code == 0 and out.startswith(f"HW({n};{r},")
        code, out, _ = run(capsys, "verify", path, "--n", n, "--r", r)
        assert code == 0 and "ACCEPTED" in out


def test_generate_is_byte_identical(capsys):
    _, a, _ = run(capsys, "generate", "--n", 63, "--r", 17)
    _, b, _ = run(capsys, "generate", "--n", 63, "--r", 17)
    assert a == b and verifier.verify(json.loads(a)).accepted


def test_generate_text_format(capsys):
    code, out, _ = run(capsys, "generate", "--n", 21, "--r", 1, "--format", "text")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "HW(21;1,9;3,7)" and len(lines) == 11


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "generate", "--n", 21, "--r", 4)[0] == 4
    code, _, err = run(capsys, "generate", "--n", 22, "--r", 1)
    assert code == 3 and "infeasible" in err
    assert run(capsys, "generate", "--n", 63, "--r", 40)[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 21, "factors": [')
    assert run(capsys, "verify", bad)[0] == 2
    bad.write_text('{"n": 21}')
    assert run(capsys, "verify", bad)[0] == 2
    good = tmp_path / "good.json"
    run(capsys, "generate", "--n", 21, "--r", 3, "--out", good)
    cert = json.loads(good.read_text())
    cert["factors"][0], cert["factors"][1] = cert["factors"][1], cert["factors"][0]
    cert["factors"][2]["kind"] = "C3" if cert["factors"][2]["kind"] == "C7" else "C7"
    bad.write_text(json.dumps(cert))
    code, out, err = run(capsys, "verify", bad)
    assert code == 1 and "REJECTED" in out and "kind" in err


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--n", 63)
    rows = out.splitlines()
    assert code == 0 and len(rows) == 32
    assert "r=9 a=1 b=2 γ=1 α=[1,7,0] checksum=9" in rows
    assert rows[23].startswith("r=23 a=3 b=2 γ=8 α=[1,7,7] checksum=23 (repaired")
    assert rows[30].startswith("r=30 a=4 b=2 γ=9 α=[7,7,7] checksum=30 (repaired")
    assert table_rows(21)[0] == "r=0 a=0 b=0 γ=0 α=[] checksum=0"
    assert run(capsys, "table", "--n", 50)[0] == 3


def test_search_command(tmp_path, capsys):
    out = tmp_path / "o21.json"
    code, stdout, _ = run(capsys, "search", "open21", "--r", 6, "--node-cap", 2000, "--out", out)
    assert code == 1 and "inconclusive" in stdout
    side = json.loads((tmp_path / "o21.json.sidecar.json").read_text())
    assert side["nodes_expanded"] == 2000 and side["seed"] == 0
    assert not out.exists()
    code, stdout, _ = run(capsys, "search", "kts", "--v", 9, "--seed", 1, "--out", tmp_path / "k9.json")
    assert code == 0 and verifier.verify_kts(json.loads((tmp_path / "k9.json").read_text())).accepted
    assert run(capsys, "search", "open21", "--r", 3)[0] == 2


def test_kts_command(tmp_path, capsys):
    path = tmp_path / "k15.json"
    assert run(capsys, "kts", "--v", 15, "--out", path)[0] == 0
    assert run(capsys, "kts", "--in", path)[0] == 0
    data = json.loads(path.read_text())
    data["classes"][0][0] = [0, 1, 3]
    path.write_text(json.dumps(data))
    assert run(capsys, "kts", "--in", path)[0] == 1
    assert run(capsys, "verify", path, "--kts")[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hwdesign", "table", "--n", "21"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 8
