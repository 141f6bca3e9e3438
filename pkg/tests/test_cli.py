import io
import json
import subprocess
import sys

import pytest

from qhill.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def keys(tmp_path):
    prefix = tmp_path / "bob"
    code, _ = run("keygen", "--prime", "37", "--private", "13", "--alpha", "5", "--out", str(prefix))
    assert code == 0
    return tmp_path


def test_keygen_files(keys):
    assert (keys / "bob.pub").read_text() == '{"v":1,"p":37,"e1":5,"e2":13}\n'
    assert (keys / "bob.key").read_text() == '{"v":1,"p":37,"e1":5,"d":13}\n'
    assert sorted(p.name for p in keys.iterdir()) == ["bob.key", "bob.pub"]


def test_golden_flow(keys):
    env = keys / "msg.env"
    code, _ = run("encrypt", "--pub", str(keys / "bob.pub"), "--ephemeral", "22",
                  "--shift", "31,13,19", "--text", "HELLO2019", "--out", str(env))
    assert code == 0
    obj = json.loads(env.read_text())
    assert obj["cipher"] == "HP393IVY1" and obj["k"] == 4
    before = {p.name: p.read_bytes() for p in keys.iterdir()}
    code, out = run("decrypt", "--key", str(keys / "bob.key"), "--envelope", str(env))
    assert (code, out) == (0, "HELLO2019\n")
    assert {p.name: p.read_bytes() for p in keys.iterdir()} == before


def test_encrypt_from_file(keys):
    (keys / "plain.txt").write_text("HELLO2019\n")
    code, _ = run("encrypt", "--pub", str(keys / "bob.pub"), "--ephemeral", "22",
                  "--shift", "31,13,19", "--infile", str(keys / "plain.txt"), "--out", str(keys / "m.env"))
    assert code == 0
    assert json.loads((keys / "m.env").read_text())["cipher"] == "HP393IVY1"


def test_random_ephemeral_is_reported(keys):
    env = keys / "r.env"
    code, out = run("encrypt", "--pub", str(keys / "bob.pub"), "--ephemeral", "random",
                    "--shift", "1,2,3", "--text", "RANDOM MODE", "--out", str(env))
    assert code == 0
    e = int(out.strip().split("=")[1])
    code, out = run("session", "--pub", str(keys / "bob.pub"), "--ephemeral", str(e))
    assert out.endswith("lambda=3\n")
    assert run("decrypt", "--key", str(keys / "bob.key"), "--envelope", str(env)) == (0, "RANDOM MODE\n")


def test_session(keys):
    assert run("session", "--pub", str(keys / "bob.pub"), "--ephemeral", "22") == (0, "k=4 lambda=3\n")
    assert run("session", "--key", str(keys / "bob.key"), "--signature", "4") == (0, "lambda=3\n")


def test_inspect_qmatrix():
    assert run("inspect", "qmatrix", "--lambda", "3", "--power", "-4", "--mod", "37") == (
        0, "[36 2 0]\n[0 36 2]\n[2 35 34]\n")


def test_inspect_sequence():
    code, out = run("inspect", "sequence", "--lambda", "3", "--lo", "-8", "--hi", "-6")
    assert (code, out) == (0, "-8 -8\n-7 4\n-6 1\n")


def test_analyze_keyspace():
    code, out = run("analyze", "keyspace", "--prime", "37", "--lambda", "2", "--kmax", "10000")
    obj = json.loads(out)
    assert code == 0
    assert obj["gl_order"] == "1822176" and obj["structured_count"] == 76 and obj["period"] == 76


def test_attack_from_pairs_and_envelope(keys):
    code, out = run("attack", "--prime", "37", "--pair", "HEL:HP3", "--pair", "LO2:93I", "--pair", "019:VY1",
                    "--shift", "31,13,19")
    assert code == 0 and [3, 4] in json.loads(out)["candidates"]
    run("encrypt", "--pub", str(keys / "bob.pub"), "--ephemeral", "22", "--shift", "31,13,19",
        "--text", "HELLO", "--out", str(keys / "m.env"))
    code, out = run("attack", "--envelope", str(keys / "m.env"), "--plain", "HELLO")
    assert code == 0 and [3, 4] in json.loads(out)["candidates"]


@pytest.mark.parametrize("argv", [
    ["session", "--key", "missing.key", "--signature", "4"],
    ["keygen", "--prime", "36", "--private", "13", "--out", "x"],
    ["inspect", "qmatrix", "--lambda", "1", "--mod", "37"],
    ["attack", "--prime", "37", "--pair", "HEL:HP3"],
])
def test_domain_errors_exit_1(argv, tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert run(*argv)[0] == 1
    assert capsys.readouterr().err.startswith("qhill: ")


def test_error_names_in_message(keys, capsys):
    code, _ = run("session", "--key", str(keys / "bob.key"), "--signature", "1")
    assert code == 1
    assert "lambda-degenerate" in capsys.readouterr().err
    code, _ = run("encrypt", "--pub", str(keys / "bob.pub"), "--ephemeral", "22", "--shift", "1,2",
                  "--text", "HI", "--out", str(keys / "x.env"))
    assert code == 1
    assert "derived lambda is 3" in capsys.readouterr().err
    assert not (keys / "x.env").exists()


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["keygen", "--prime", "37"],
    ["inspect", "qmatrix", "--lambda", "three", "--mod", "37"],
    ["encrypt", "--pub", "a", "--ephemeral", "22", "--shift", "1,x", "--text", "A", "--out", "b"],
    ["keygen", "--prime", "37", "--private", "13", "--out", "x", "--unknown", "1"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(*argv)[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qhill", "inspect", "qmatrix", "--lambda", "3", "--power", "4",
                           "--mod", "37"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "[7 6 4]\n[4 3 2]\n[2 2 1]\n"
