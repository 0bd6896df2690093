import json
import subprocess
import sys

import pytest

from vanishing_torus.cli import main


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture(scope="module")
def constructed(tmp_path_factory):
    out = tmp_path_factory.mktemp("construct") / "f.json"
    assert run("construct", "--d", 2, "--N", 5, "--out", out) == 0
    return out


def test_shell(capsys):
    assert run("shell", "--d", 2, "--lambda", 5) == 0
    out = capsys.readouterr().out
    assert "count: 8" in out and "r2 formula: 8" in out and "-2 -1" in out
    assert run("shell", "--d", 2, "--lambda", 3) == 0
    assert "count: 0" in capsys.readouterr().out
    assert run("shell", "--d", 2, "--lambda", 0) == 0
    assert capsys.readouterr().out.startswith("0 0\ncount: 1")


def test_lambda(capsys):
    assert run("lambda", "--d", 2, "--N", 5) == 0
    assert "lambda: 3125" in capsys.readouterr().out
    assert run("lambda", "--d", 2, "--required", 22, "--policy", "minimal") == 0
    assert "lambda: 325" in capsys.readouterr().out
    assert run("lambda", "--d", 2) == 2


def test_construct_files(constructed, capsys):
    cert = json.loads(constructed.with_suffix(".cert.json").read_text())
    assert cert["verified"] is True and len(cert["moments"]) == 21
    data = json.loads(constructed.read_text())
    assert data["lambda"] == 3125 and len(data["modes"]) == 24


def test_construct_dimension_one(tmp_path, capsys):
    assert run("construct", "--d", 1, "--N", 2, "--out", tmp_path / "x.json") == 2
    assert "impossible in dimension 1" in capsys.readouterr().err
    assert not (tmp_path / "x.json").exists()


def test_construct_order_zero(tmp_path):
    out = tmp_path / "f0.json"
    assert run("construct", "--d", 2, "--N", 0, "--out", out) == 0
    assert run("verify", out) == 0


def test_invalid_flags():
    with pytest.raises(SystemExit) as exc:
        run("construct", "--d", 2, "--N", -1)
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("ucp", "f.json", "--deltas", 4)
    assert exc.value.code == 2


def test_verify_fresh_process(constructed):
    proc = subprocess.run(
        [sys.executable, "-m", "vanishing_torus", "verify", str(constructed)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert proc.stdout.startswith("OK")


def test_verify_rejects_every_single_mutation(constructed, tmp_path, capsys):
    data = json.loads(constructed.read_text())
    for i in range(len(data["modes"])):
        mutated = json.loads(constructed.read_text())
        mutated["modes"][i]["mu"]["re"]["num"] += 1
        path = tmp_path / f"m{i}.json"
        path.write_text(json.dumps(mutated))
        assert run("verify", path) == 1
        assert "FAIL moment alpha=[0, 0]" in capsys.readouterr().out


def test_verify_mode_discipline(constructed, tmp_path, capsys):
    data = json.loads(constructed.read_text())
    data["modes"][0]["k"] = [55, 11]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert run("verify", path) == 1
    assert "mode discipline" in capsys.readouterr().out


def test_verify_malformed(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{")
    assert run("verify", path) == 2
    assert run("verify", tmp_path / "missing.json") == 2


def test_ucp_default(constructed, tmp_path):
    out = tmp_path / "t.csv"
    assert run("ucp", constructed, "--out", out, "--json", tmp_path / "t.json") == 0
    rows = out.read_text().splitlines()[1:]
    ratios = [float(r.split(",")[-1]) for r in rows]
    assert len(ratios) == 4 and ratios == sorted(ratios, reverse=True)
    assert all(r.split(",")[3] == "10" for r in rows)
    assert json.loads((tmp_path / "t.json").read_text())["ratio_strictly_decreasing"]


def test_ucp_single_row(constructed, capsys):
    assert run("ucp", constructed, "--M", 0, "--deltas", 3.14159) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert float(lines[1].split(",")[-1]) <= 1 + 1e-9


def test_ucp_constant_file(tmp_path, capsys):
    path = tmp_path / "one.json"
    path.write_text(
        json.dumps(
            {
                "format_version": 1, "d": 2, "lambda": 0, "N": None, "mode": "rational",
                "modes": [{"k": [0, 0], "mu": {"re": {"num": 1, "den": 1}, "im": {"num": 0, "den": 1}}}],
            }
        )
    )
    assert run("ucp", path, "--M", 0, "--deltas", 1.0, 0.5) == 0
    import math

    for line in capsys.readouterr().out.splitlines()[1:]:
        delta, *_, ratio = map(float, line.split(","))
        assert ratio == pytest.approx(math.pi * delta**2 / (2 * math.pi) ** 2, rel=2e-3)


def test_ucp_refuses_uncertified(constructed, tmp_path):
    data = json.loads(constructed.read_text())
    data["modes"][0]["mu"]["re"]["num"] += 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert run("ucp", path) == 1


def test_counterexample(tmp_path):
    out = tmp_path / "bundle.json"
    assert run("counterexample", "--d", 2, "--N-list", 1, 2, "--w", 1, "--out", out) == 0
    bundle = json.loads(out.read_text())
    assert [e["M"] for e in bundle["entries"]] == [2, 4]
    assert run("counterexample", "--d", 1, "--N-list", 2, "--out", out) == 2
