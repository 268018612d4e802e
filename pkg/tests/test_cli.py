import json
import os
import subprocess
import sys

import pytest

from peterson_schubert.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_roots(capsys):
    data = run_json(capsys, "roots", "--type", "G2")
    assert len(data["positive_roots"]) == 6 and data["exponents"] == [1, 5]
    assert len(run_json(capsys, "roots", "--type", "A1")["positive_roots"]) == 1
    assert len(run_json(capsys, "roots", "--type", "E8")["positive_roots"]) == 120


def test_roots_csv(capsys):
    code, out, _ = run(capsys, "roots", "--type", "B2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["root,height", "0 1,1", "1 0,1", "1 1,2", "1 2,3"]


def test_multiplicity(capsys):
    assert run_json(capsys, "multiplicity", "--type", "F4", "--subset", "1,2,3,4")["multiplicity"] == 48
    assert run_json(capsys, "multiplicity", "--type", "D5", "--subset", "1,2,3,4,5")["multiplicity"] == 8
    assert run_json(capsys, "multiplicity", "--type", "A2", "--subset", "1")["multiplicity"] == 1
    data = run_json(capsys, "multiplicity", "--type", "A3", "--word", "1,3,2", "--heights", "--conjecture")
    assert data["multiplicity"] == 2
    assert data["conjecture"]["via_highest_root"] == 2
    assert data["heights"]["value"] == "2"


def test_multiplicity_table_output(capsys):
    code, out, _ = run(capsys, "multiplicity", "--type", "B3")
    assert code == 0
    assert any(line.split() == ["m", "4"] for line in out.splitlines())


def test_expand_golden(capsys):
    here = os.path.dirname(__file__)
    want = json.load(open(os.path.join(here, "golden", "b2_expand.json")))
    assert run_json(capsys, "expand", "--type", "B2", "--subset", "1,2") == want
    code, out, _ = run(capsys, "expand", "--type", "B2", "--subset", "1,2")
    assert code == 0
    assert out.splitlines()[2:] == [
        "1,2      2      0", "2,1      2      0", "1,2,1    2      1",
        "2,1,2    2      1", "1,2,1,2  2      2",
    ]


def test_expand_other_coxeter(capsys):
    data = run_json(capsys, "expand", "--type", "A3", "--word", "1,3,2")
    assert data["basis"]["coxeter"] == [1, 3, 2]
    coeffs = {tuple(e["u"]): e["coeff"] for e in data["expansion"]}
    assert coeffs[(1, 3, 2)] == "2"


def test_multiply(capsys):
    data = run_json(capsys, "multiply", "--type", "B2", "--I", "1", "--J", "2")
    assert data["expansion"]
    for e in data["expansion"]:
        assert set(e["K"]) >= {1, 2} and int(e["coeff"]) > 0
    data = run_json(capsys, "multiply", "--type", "B3", "--I", "3", "--J", "2,3")
    assert {tuple(e["K"]): e["coeff"] for e in data["expansion"]}[(1, 2, 3)] == "3/2"


def test_localize(capsys):
    data = run_json(capsys, "localize", "--type", "B2", "--v", "1", "--w", "1,2,1,2")
    assert (data["coeff"], data["deg"]) == ("4", 1)
    data = run_json(capsys, "localize", "--type", "B2", "--v", "2,1,2", "--w", "1,2")
    assert (data["coeff"], data["deg"]) == ("0", 0)


def test_weyl_info(capsys):
    data = run_json(capsys, "weyl-info", "--type", "A3")
    assert data["order"] == 24
    assert len(data["coxeter_elements"]) == 4
    assert data["longest"]["length"] == 6


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A3", "--suite", "duality,positivity,conjecture,stability")
    assert code == 0
    assert out.count("PASS") == 4


def test_conjecture(capsys):
    data = run_json(capsys, "conjecture", "--type", "G2")
    assert data["ok"]
    data = run_json(capsys, "conjecture", "--type", "E6", "--default-only", "--subset", "1,2,3,4,5,6")
    assert data["results"][0]["multiplicity"] == 72 == data["results"][0]["via_highest_root"]


def test_exit_codes(capsys):
    code, _, err = run(capsys, "multiplicity", "--type", "A3", "--word", "1,2")
    assert code == 3
    code, _, err = run(capsys, "expand", "--type", "A4", "--cap", "100")
    assert code == 4 and "cap" in err.lower()
    code, _, err = run(capsys, "roots", "--type", "Q7")
    assert code == 2 and "--type" in err
    code, _, err = run(capsys, "multiplicity", "--type", "A3", "--subset", "1,9")
    assert code == 2 and "--subset" in err
    code, _, err = run(capsys, "verify", "--type", "A2", "--suite", "nonsense")
    assert code == 2 and "--suite" in err
    code, _, err = run(capsys, "roots", "--type", "A2", "--cap", "0")
    assert code == 2 and "--cap" in err


def test_verify_failure_exit(capsys, monkeypatch):
    from peterson_schubert import cli
    from peterson_schubert.peterson import Report

    def broken(rs, suites, cap, store=None):
        rep = Report("fake")
        rep.check(False, "deliberate")
        return [rep]

    monkeypatch.setattr(cli, "run_suites", broken)
    code, out, err = run(capsys, "verify", "--type", "A1")
    assert code == 5 and "deliberate" in err


def test_explicit_cartan(tmp_path, capsys):
    p = tmp_path / "b2.json"
    p.write_text("[[2, -1], [-2, 2]]")
    data = run_json(capsys, "multiplicity", "--type", str(p))
    assert data["multiplicity"] == 2


def test_output_is_deterministic(capsys):
    argv = ("verify", "--type", "B2", "--format", "json")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_cold_and_warm_cache_agree(tmp_path, capsys):
    argv = ("expand", "--type", "B3", "--subset", "1,2,3", "--format", "json",
            "--cache-dir", str(tmp_path))
    _, cold, _ = run(capsys, *argv)
    files = os.listdir(tmp_path)
    assert len(files) == 1
    stamp = os.path.getmtime(tmp_path / files[0])
    _, warm, _ = run(capsys, *argv)
    assert cold == warm
    assert os.path.getmtime(tmp_path / files[0]) == stamp
    _, uncached, _ = run(capsys, *argv[:-2])
    assert uncached == cold


def test_env_overrides(tmp_path):
    env = dict(os.environ, PETERSON_SCHUBERT_CAP="100", PETERSON_SCHUBERT_CACHE_DIR=str(tmp_path))
    proc = subprocess.run([sys.executable, "-m", "peterson_schubert", "expand", "--type", "A4"],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 4
    proc = subprocess.run([sys.executable, "-m", "peterson_schubert", "localize", "--type", "A2",
                           "--v", "1", "--w", "1,2,1"], env=env, capture_output=True, text=True)
    assert proc.returncode == 0 and os.listdir(tmp_path)
