import os
import subprocess

import pytest

CLI = os.environ.get("OSNSAMPLE_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="CLI not built")

SMALL = """[matrix]
variants = all
fractions = 0.5,1.0
iterations = 2
base_seed = 3
[tg]
name = small
model = preferential-attachment
nodes = 2000
edges_per_node = 4
seed = 1
"""


def run(*args, cwd):
    return subprocess.run([CLI, *args], cwd=cwd, capture_output=True, text=True)


def test_generate_regular(tmp_path):
    r = run("generate", "--model", "regular", "--nodes", "10", "--degree", "2", "-o", "g.txt", cwd=tmp_path)
    assert r.returncode == 0
    assert len((tmp_path / "g.txt").read_text().splitlines()) == 20


def test_exit_codes(tmp_path):
    assert run("generate", "--nodes", "1", "-o", "x.txt", cwd=tmp_path).returncode == 1
    assert run("sample", "--tg", "missing.txt", "-o", "s.txt", cwd=tmp_path).returncode == 2
    run("generate", "--nodes", "500", "-o", "g.txt", cwd=tmp_path)
    r = run("sample", "--tg", "g.txt", "--fraction", "0.5", "--budget", "10", "-o", "s.txt", cwd=tmp_path)
    assert r.returncode == 3


def test_sample_is_reproducible(tmp_path):
    run("generate", "--nodes", "3000", "-m", "4", "--seed", "3", "-o", "g.txt", cwd=tmp_path)
    for name in ("a.txt", "b.txt"):
        r = run("sample", "--tg", "g.txt", "--variant", "rnse-80-20", "--fraction", "0.2",
                "--seed", "5", "-o", name, cwd=tmp_path)
        assert r.returncode == 0, r.stderr
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_evaluate_and_report(tmp_path):
    (tmp_path / "m.cfg").write_text(SMALL)
    r = run("evaluate", "--config", "m.cfg", "-o", "out", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    rows = (tmp_path / "out" / "errors.csv").read_text().splitlines()
    assert len(rows) == 1 + 8 * 2
    header = rows[0].split(",")
    col = header.index("mean_err_3")
    identity = 0
    for row in rows[1:]:
        cells = row.split(",")
        if cells[0] in ("rns", "rnse") and float(cells[header.index("fraction")]) == 1.0:
            assert float(cells[col]) == 0.0
            identity += 1
    assert identity == 2
    r = run("report", "out", cwd=tmp_path)
    assert r.returncode == 0
    assert "rnse-85-15" in r.stdout
