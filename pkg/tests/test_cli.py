import io
import json
import subprocess
import sys

import pytest

from dgdescent.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_check_ainfty_dual_numbers(data_path):
    code, out, err = run("check", "ainfty", "--input", data_path("dual_numbers.json"),
                         "--max-arity", "4")
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] and rep["truncation"] == {"max_m": 4}
    assert "ok" in err


def test_cech_dimensions():
    code, out, _ = run("cech", "--points", "3", "--cover", "1,2;2,3", "--levels", "2", "--emit")
    assert code == 0
    rep = json.loads(out)
    assert rep["data"]["dims"] == [4, 6, 10]
    assert rep["data"]["document"]["systems"]["cech"]["levels"] == 2


def test_emitted_cech_document_loads():
    from dgdescent import io as dio
    _, out, _ = run("cech", "--points", "2", "--cover", "1,2;2", "--levels", "1", "--emit")
    doc = dio.load_obj(json.loads(out)["data"]["document"])
    assert [L.dim for L in doc.systems["cech"].levels] == [3, 5]


def test_selftest_deterministic():
    a = run("selftest", "--seed", "7", "--iters", "50")
    b = run("selftest", "--seed", "7", "--iters", "50")
    assert a[0] == 0 and a == b
    assert json.loads(a[1])["seed"] == 7


def test_failure_exit_code(data_path):
    code, out, _ = run("check", "complex", "--input", data_path("complex.json"))
    assert code == 1
    rep = json.loads(out)
    assert [c["status"] for c in rep["checks"]] == ["fail", "pass"]


def test_named_entry(data_path):
    code, _, _ = run("check", "complex", "--input", data_path("complex.json"), "--name", "good")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("frobnicate",),
    ("check",),
    ("check", "ainfty"),
    ("cech", "--points", "3", "--cover", "1,x"),
    ("cech", "--points", "3", "--cover", "1,2"),
    ("holim", "validate", "--levels", "0"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_io_errors(tmp_path):
    assert run("check", "ainfty", "--input", str(tmp_path / "missing.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"kind": "QQ"}, "spaces": {"V": {"basis": 3}}}')
    code, _, err = run("check", "ainfty", "--input", str(bad))
    assert code == 3 and "spaces/V/basis" in err


def test_human_output(data_path):
    code, out, _ = run("bar", "--input", data_path("dual_numbers.json"), "--length", "3",
                       "--human")
    assert code == 0 and out.startswith("bar: ok")


@pytest.mark.parametrize("argv", [
    ("check", "coalgebra", "--input", "coalgebra.json"),
    ("check", "comodule", "--input", "coalgebra.json"),
    ("cobar", "--input", "coalgebra.json"),
    ("check", "dgcat", "--input", "path_category.json"),
    ("holim", "validate", "--input", "cover3.json"),
    ("holim", "crosscheck", "--input", "cover3.json", "--name", "free"),
    ("descent", "check", "--input", "cover3.json"),
    ("descent", "to-comodule", "--input", "cover3.json"),
    ("descent", "iso-unit", "--input", "cover3.json"),
    ("descent", "descend", "--input", "cover3.json"),
])
def test_document_commands(data_path, argv):
    argv = [data_path(a) if a.endswith(".json") else a for a in argv]
    code, out, err = run(*argv)
    assert code == 0, err


@pytest.mark.parametrize("argv", [
    ("simplex-cat", "--levels", "3", "--emit"),
    ("afun", "validate", "--levels", "2"),
    ("afun", "compose", "--levels", "2", "--iters", "6"),
    ("afun", "diff", "--levels", "3", "--iters", "10"),
    ("holim", "compose", "--iters", "5"),
    ("holim", "diff", "--iters", "5", "--nilpotent"),
    ("holim", "to-comodule", "--iters", "5"),
    ("descent", "iso-unit"),
    ("descent", "descend"),
])
def test_builtin_commands(argv):
    code, out, err = run(*argv)
    assert code == 0, err


def test_descended_dimension(data_path):
    _, out, _ = run("descent", "descend", "--input", data_path("cover3.json"))
    assert json.loads(out)["data"]["descended_dim"] == {"can(skyscraper)": 1, "can(free)": 3}


def test_module_entry_point(data_path):
    p = subprocess.run([sys.executable, "-m", "dgdescent", "check", "ainfty", "--input",
                        data_path("dual_numbers.json")], capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["ok"]
