from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qmdsconv import __version__
from qmdsconv.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_qmds_one_report(capsys):
    status, out, _ = run(capsys, "qmds", "one", "--q", "5", "--n", "24", "--k", "21", "--t0", "2")
    assert status == 0
    assert "[(24,20,1;1,4)]_5 MDS: yes" in out.splitlines()
    assert out.startswith(f"# qmdsconv {__version__} seed=0 ")


def test_qmds_two_report(capsys):
    status, out, _ = run(capsys, "qmds", "two", "--q", "5", "--n", "24", "--k", "21")
    assert status == 0
    assert "[(24,22,2;2,4)]_5 MDS: yes" in out


def test_t0_equal_to_redundancy_names_the_constraint(capsys):
    status, _, err = run(capsys, "qmds", "one", "--q", "5", "--n", "24", "--k", "21", "--t0", "3")
    assert status == 1
    assert "t0 < n-k" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["qmds", "one", "--q", "5"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["selfcheck", "--budget", "0"])
    assert exc.value.code == 2
    status, _, _ = run(capsys, "qmds", "one", "--t0", "1")
    assert status == 2


def test_json_report_embeds_version_seed_and_budgets(capsys):
    status, out, _ = run(capsys, "qmds", "one", "--q", "4", "--n", "8", "--k", "6", "--t0", "1",
                         "--format", "json", "--seed", "3", "--budget", "4096")
    assert status == 0
    rec = json.loads(out)
    assert rec["version"] == __version__ and rec["seed"] == 3
    assert rec["budgets"]["enumeration"] == 4096
    assert rec["result"]["k"] == 6 and rec["result"]["mds"] is True


def test_reports_are_byte_identical(capsys):
    argv = ["search-witness", "--q", "4", "--n", "7", "--k", "5", "--seed", "9"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


def test_grs_and_conv_pipeline_through_files(tmp_path, capsys):
    w = tmp_path / "w.txt"
    g = tmp_path / "g.txt"
    assert run(capsys, "search-witness", "--q", "4", "--n", "8", "--k", "6", "--out", str(w))[0] == 0
    status, out, _ = run(capsys, "grs", "verify", str(w))
    assert status == 0 and "Hermitian dual-containing: yes" in out and "minimum distance: 3" in out
    assert run(capsys, "conv", "build", "--grs", str(w), "--split", "1,1", "--out", str(g))[0] == 0
    status, out, _ = run(capsys, "conv", "distance", str(g))
    assert status == 0 and "free distance: 16 (exact state search)" in out
    status, out, _ = run(capsys, "qmds", "one", "--grs", str(w), "--t0", "1")
    assert status == 0 and "[(8,6,1;1,3)]_4 MDS: yes" in out


def test_non_dual_containing_input_fails_verification(tmp_path, capsys):
    path = tmp_path / "c.txt"
    assert run(capsys, "grs", "build", "--q", "2", "--k", "1", "--a", "1,2,3", "--out", str(path))[0] == 0
    status, out, _ = run(capsys, "grs", "verify", str(path))
    assert status == 1 and "C^perpH <= C does not hold" in out
    status, _, err = run(capsys, "qmds", "two", "--grs", str(path))
    assert status == 1 and "precondition failed" in err


def test_malformed_record_is_a_usage_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("garbage\n")
    assert run(capsys, "grs", "verify", str(path))[0] == 2
    assert run(capsys, "conv", "distance", str(tmp_path / "missing.txt"))[0] == 2


def test_families_commands(tmp_path, capsys):
    status, out, _ = run(capsys, "families", "tables", "--format", "csv")
    assert status == 0
    assert "q,a,b,c,n,k,mu,gamma,dfree,s_min,s_max,t0_rule,verdict" in out
    assert out.count("mismatch") == 4
    target = tmp_path / "t.md"
    assert run(capsys, "families", "tables", "--out", str(target))[0] == 0
    assert "Table 2" in target.read_text()
    status, out, _ = run(capsys, "families", "validate")
    assert status == 0 and out.count(": match") == 8
    cfg = tmp_path / "grid.txt"
    cfg.write_text("mu1 1 17 a=1 b=2\nmu2 9 5 parts=4,4,3\n")
    status, out, _ = run(capsys, "families", "enumerate", "--config", str(cfg))
    assert status == 1 and "[(288,288-2t0,1;s-t0,s+1)]_17" in out and "rejected mu2 9 5" in out
    status, out, _ = run(capsys, "families", "enumerate", "--q-max", "5", "--construction", "mu2", "--format", "csv")
    assert status == 0 and out.splitlines()[1].startswith("construction,")


def test_selfcheck_command(capsys):
    status, out, _ = run(capsys, "selfcheck")
    assert status == 0
    assert out.count("PASS") == 5 and "FAIL" not in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qmdsconv.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
