import json
import subprocess
import sys

import pytest

from littelmann.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_summary(capsys):
    code, out, _ = run(capsys, "generate", "--type", "C2", "--weight", "1,0")
    assert code == 0 and out.startswith("4 nodes")
    code, out, _ = run(capsys, "generate", "--type", "C2", "--weight", "0,0")
    assert code == 0 and out.startswith("1 node\n")


def test_generate_projected(capsys):
    code, out, _ = run(capsys, "generate", "--type", "C2~", "--weight-level0", "1,0")
    assert code == 0 and out.startswith("4 nodes")


def test_generate_formats_deterministic(capsys, tmp_path):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "generate", "--type", "G2", "--weight", "1,0", "--format", "json")
        outs.append(out)
    assert code == 0 and outs[0] == outs[1] and len(json.loads(outs[0])["nodes"]) == 7
    target = tmp_path / "g.dot"
    code, out, _ = run(capsys, "generate", "--type", "C2", "--weight", "1,0", "--format", "dot",
                       "--out", str(target))
    assert code == 0 and out == "" and target.read_text().count("->") == 3


@pytest.mark.parametrize("argv", [
    ["generate", "--type", "C2", "--weight", "1"],
    ["generate", "--type", "H3", "--weight", "1,0,0"],
    ["generate", "--type", "C2", "--weight", "1,0", "--weight-level0", "1,0"],
    ["generate", "--type", "C2", "--weight", "x,y"],
    ["generate", "--type", "A1~", "--weight", "1,0", "--cap", "50"],
    ["verify", "--folding", "C2~>A3~", "--check", "kr", "--weight-level0", "0,1"],
    ["verify", "--check", "conditions"],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["generate"])
    assert info.value.code == 2


def test_unknown_folding_lists_catalog(capsys):
    code, _, err = run(capsys, "verify", "--folding", "A3>B7")
    assert code == 2 and "C2~>A3~" in err


def test_verify_conditions(capsys):
    code, out, _ = run(capsys, "verify", "--folding", "A3>C2", "--check", "conditions")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = run(capsys, "verify", "--folding", "A3>C2", "--gamma", "1,1", "--check", "conditions")
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] == "fail" and doc["counterexample"]["condition"] == "II"


def test_verify_multiple_checks(capsys):
    code, out, _ = run(capsys, "verify", "--folding", "C2~>A3~", "--check", "conditions",
                       "--check", "psi-delta", "--check", "kr", "--weight-level0", "1,0")
    doc = json.loads(out)
    assert code == 0 and [d["check"] for d in doc] == ["conditions", "psi-delta", "kr"]


def test_verify_virtualization_and_tensor(capsys):
    code, out, _ = run(capsys, "verify", "--folding", "C2>A3", "--check", "virtualization",
                       "--weight", "3,1")
    assert code == 0 and json.loads(out)["sizes"]["source_nodes"] == 64
    code, out, _ = run(capsys, "verify", "--type", "A1~", "--check", "tensor-factorization",
                       "--weight-level0", "2")
    assert code == 0 and json.loads(out)["sizes"]["crystal"] == 4
    code, out, _ = run(capsys, "verify", "--folding", "C2>A3", "--gamma", "1,1",
                       "--check", "virtualization", "--weight", "1,0")
    assert code == 1


def test_psi_delta_failure(capsys):
    code, out, _ = run(capsys, "verify", "--folding", "C2~>A3~", "--gamma", "1,1,1",
                       "--check", "psi-delta")
    assert code == 1 and "lhs" in json.loads(out)["counterexample"]


@pytest.mark.parametrize("name", ["s3-folding", "appendix-sage", "s2-figure"])
def test_examples_match(capsys, name):
    code, out, _ = run(capsys, "example", name)
    assert code == 0 and out.rstrip().endswith("verdict: match")
    assert "MISMATCH" not in out


def test_example_s3_values(capsys):
    _, out, _ = run(capsys, "example", "s3-folding")
    assert "f_2 pi: (5*Lambda[1] - Lambda[2],)" in out


def test_unknown_example(capsys):
    code, _, err = run(capsys, "example", "nope")
    assert code == 2 and "s2-figure" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "littelmann", "generate", "--type", "A2",
                          "--weight", "1,1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("8 nodes")
