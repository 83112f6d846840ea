import json
import subprocess
import sys
from importlib import resources

import pytest

from figmod.cli import main


def data(name):
    return str(resources.files("figmod") / "data" / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", data("t0.json"))
    assert code == 0
    assert "depth" in out and "certified" in out


def test_analyze_json_matches_fixture(capsys):
    for name in ("t0", "m0", "m1", "m0_plus_m1", "depth1_kernel", "z2_sign"):
        code, out, _ = run(capsys, "analyze", data(name + ".json"),
                           "--format", "json")
        assert code == 0
        with open(data(name + ".expected.json"), "rb") as fh:
            assert out.encode() == fh.read(), name


def test_analyze_invariant_subset(capsys):
    code, out, _ = run(capsys, "analyze", data("m1.json"),
                       "--invariants", "depth,torsion", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc["invariants"]) == {"depth", "torsion"}


def test_analyze_unknown_invariant(capsys):
    code, _, err = run(capsys, "analyze", data("m1.json"),
                       "--invariants", "bogus")
    assert code == 2 and "bogus" in err


def test_hilbert_command(capsys):
    code, out, _ = run(capsys, "hilbert", data("m1.json"), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["invariants"]["hilbert"]["polynomial"] == [0, 1]


def test_filtration_success_and_obstruction(capsys):
    code, out, _ = run(capsys, "filtration", data("m0_plus_m1.json"))
    assert code == 0 and "filtration" in out
    code, out, _ = run(capsys, "filtration", data("t0.json"),
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["invariants"]["sharp_filtered"]["obstruction_degrees"] == [1]


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 2
    bad.write_text(json.dumps({"field": "Q"}))
    assert run(capsys, "analyze", str(bad))[0] == 2


def test_insufficient_truncation_exit_code(capsys):
    code, _, err = run(capsys, "analyze", data("t0.json"), "--truncation", "1")
    assert code == 3
    assert "required truncation" in err


def test_truncation_defaults_to_requirement(tmp_path, capsys):
    # a file with a tiny truncation still analyzes: the certified
    # requirement wins
    doc = json.load(open(data("t0.json")))
    doc["truncation"] = 0
    small = tmp_path / "small.json"
    small.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "analyze", str(small), "--format", "json")
    assert code == 0
    assert json.loads(out)["truncation"] >= 2


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "0", "--count", "2")
    assert code == 0
    assert "overall: pass" in out


def test_random_roundtrip(capsys):
    code, out, _ = run(capsys, "random", "--seed", "5")
    assert code == 0
    from figmod import io as fio
    pres, truncation = fio.parse_description(json.loads(out))
    assert truncation == 8


def test_field_and_group_overrides(capsys):
    code, out, _ = run(capsys, "analyze", data("m1.json"),
                       "--field", "Fp:3", "--group", "Z2",
                       "--invariants", "hilbert", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["field"] == "F3" and doc["group"] == "Z2"


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "figmod.cli", "analyze",
                           data("t0.json"), "--format", "json"],
                          capture_output=True)
    assert proc.returncode == 0
    json.loads(proc.stdout)
