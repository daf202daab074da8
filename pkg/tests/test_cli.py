import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from superdecomp.cli import main, run

GOLDEN = Path(__file__).resolve().parent.parent / "golden"


def invoke(*args):
    return CliRunner().invoke(main, list(args))


@pytest.mark.parametrize(
    "args,name",
    [
        (["catalog"], "catalog.json"),
        (["cohomology", "--algebra", "sl11", "--module", "trivial", "--degree", "2"], "cohomology.json"),
        (["--out", "tsv", "forms"], "forms.tsv"),
        (["zigzag", "--p", "2", "--q", "2", "--k", "1"], "zigzag.json"),
    ],
)
def test_golden(args, name):
    res = invoke(*args)
    assert res.exit_code == 0
    assert res.output == (GOLDEN / name).read_text()


def test_cohomology_values():
    for degree, want in ((0, (1, 0)), (1, (0, 2)), (2, (2, 0))):
        out = json.loads(invoke("cohomology", "--degree", str(degree)).output)
        assert (out["even"], out["odd"]) == want


def test_deterministic_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        res = invoke("--seed", "7", "sum", "Vh(2/1,2)", "free(2)[0]", "-o", str(path))
        assert res.exit_code == 0
    assert a.read_bytes() == b.read_bytes()
    first = invoke("--seed", "7", "identify", "--in", str(a)).output
    second = invoke("--seed", "7", "identify", "--in", str(a)).output
    assert first == second


def test_sum_then_identify(tmp_path):
    path = tmp_path / "m.json"
    assert invoke("sum", "Vh(2/1,2)", "free(2)[0]", "-o", str(path)).exit_code == 0
    out = json.loads(invoke("identify", "--in", str(path)).output)
    assert out["seed"] == 0
    assert "Vh(2/1,2)" in json.dumps(out)
    assert "free(2)[0]" in json.dumps(out)


def test_module_build_and_verify(tmp_path):
    path = tmp_path / "m.json"
    assert invoke("module", "build", "omega:1", "-o", str(path)).exit_code == 0
    res = invoke("module", "verify", "--in", str(path))
    assert res.exit_code == 0
    assert json.loads(res.output)["ok"] is True


def test_decompose_witness(tmp_path):
    path = tmp_path / "m.json"
    invoke("sum", "I(2+2e,out)", "trivial", "-o", str(path))
    out = json.loads(invoke("decompose", "--in", str(path)).output)
    assert out["witness_ok"] is True


def test_ext():
    out = json.loads(invoke("ext", "--sub", "i:1", "--quot", "i:2").output)
    assert out["dim"] == 1
    out = json.loads(invoke("ext", "--sub", "i:1", "--quot", "i:3").output)
    assert out["dim"] == 0


def test_missing_file_is_bad_input():
    assert run(["identify", "--in", "/nonexistent/file.json"]) == 2


def test_malformed_file_is_bad_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(["module", "verify", "--in", str(path)]) == 2


def test_unknown_command():
    assert run(["frobnicate"]) == 2


def test_bad_spec():
    assert run(["module", "build", "nonsense:3"]) == 2


def test_zigzag_mismatch_exit_code():
    assert run(["zigzag", "--p", "1", "--q", "0", "--k", "1"]) == 1
    assert run(["zigzag", "--p", "1", "--q", "1", "--k", "2"]) == 0


def test_accept_subset():
    res = invoke("accept", "--only", "10")
    assert res.exit_code == 0
    assert json.loads(res.output)[0]["ok"] is True
    res = invoke("--out", "tsv", "accept", "--only", "10")
    assert res.output.startswith("[PASS] criterion 10")
