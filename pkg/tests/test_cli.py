import json
import shutil
from types import SimpleNamespace

import pytest

import cli
from algebra_files import BUNDLED_DIR, bundled_path
from config import get_config


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_hh_report(capsys):
    code, out = run(capsys, "hh", str(bundled_path("triangle_zero_relation")), "--max-degree", "3")
    assert code == 0
    report = json.loads(out.out)
    assert report["results"]["dims"] == [1, 1, 1, 0]
    assert report["results"]["dim_algebra"] == 6
    assert len(report["input_hash"]) == 64
    assert "timing" not in report


def test_hh_methods_agree(capsys):
    path = str(bundled_path("cycle2_nakayama"))
    dims = []
    for method in ("normalized", "bar", "minres"):
        code, out = run(capsys, "hh", path, "--max-degree", "1", "--method", method)
        assert code == 0
        dims.append(json.loads(out.out)["results"]["dims"])
    assert dims == [[1, 1]] * 3


def test_hh_representatives_and_timing(capsys):
    code, out = run(capsys, "hh", str(bundled_path("triangle_path")), "--max-degree", "1", "--reps", "--timing")
    report = json.loads(out.out)
    assert code == 0
    assert len(report["results"]["representatives"]["1"]) == 2
    assert "seconds" in report["timing"]


def test_phi_on_the_loop_triangle(capsys):
    split = bundled_path("triangle_loop_split")
    code, out = run(capsys, "phi", str(bundled_path("triangle_path")), "--module", f"file:{split}", "--degree", "1")
    results = json.loads(out.out)["results"]
    assert code == 0
    assert (results["HH(B)"], results["HH(C)"], results["rank"]) == (3, 2, 1)
    assert results["surjective"] is False


def test_phi_on_the_dual_extension(capsys):
    code, out = run(capsys, "phi", str(bundled_path("cycle2_nakayama")), "--bimodule", "dual")
    results = json.loads(out.out)["results"]
    assert code == 0
    assert results["dim_B"] == 8
    assert results["surjective"] is True


def test_relext_writes_the_algebra_file(capsys, tmp_path):
    target = tmp_path / "relext.json"
    code, out = run(capsys, "relext", str(bundled_path("triangle_zero_relation")), "--names", "delta",
                    "--output", str(target))
    results = json.loads(out.out)["results"]
    assert code == 0
    assert results["potential"] == "alpha*beta*delta"
    assert results["dimension_check"] and results["round_trip"]
    assert results["hh_B"] == [2, 2]
    assert json.loads(target.read_text(encoding="utf-8")) == results["algebra_file"]


def test_verify_single_block(capsys):
    code, out = run(capsys, "verify", "--only", "loop-triangle", "--verbose")
    report = json.loads(out.out)
    assert code == 0
    assert list(report["results"]) == ["loop-triangle", "summary"]
    assert report["results"]["summary"]["failed"] == []
    assert "checks passed" in out.err


@pytest.mark.slow
@pytest.mark.parametrize("block", ["cycle-pair", "cale", "relation-extension"])
def test_verify_blocks(capsys, block):
    code, out = run(capsys, "verify", "--only", block)
    assert code == 0, out.out


@pytest.mark.parametrize("argv", [
    ["hh", "no_such_file.json"],
    ["hh", str(bundled_path("cycle2_nakayama")), "--module", "bogus"],
    ["hh", str(bundled_path("triangle_path")), "--field", "Fp:2"],
    ["hh", str(bundled_path("triangle_path")), "--max-degree", "-1"],
    ["hh", str(bundled_path("commutative_square")), "--method", "minres"],
    ["relext", str(bundled_path("cycle2_nakayama"))],
    ["hh", str(bundled_path("triangle_path")), "--cap", "0"],
])
def test_input_errors_exit_with_two(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert out.out == ""


def test_cap_is_restored(capsys):
    before = get_config().BAR_CAP
    code, _ = run(capsys, "hh", str(bundled_path("triangle_path")), "--method", "bar", "--max-degree", "2",
                  "--cap", "50")
    assert code == 2
    assert get_config().BAR_CAP == before


def test_unknown_block_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["verify", "--only", "nope"])
    assert excinfo.value.code == 2


def test_relext_dimension_mismatch_exits_with_one(capsys, monkeypatch):
    monkeypatch.setattr(cli, "ext_dc_c", lambda C, m: SimpleNamespace(dim=0))
    code, out = run(capsys, "relext", str(bundled_path("triangle_zero_relation")))
    results = json.loads(out.out)["results"]
    assert code == 1
    assert results["dimension_check"] is False
    assert results["round_trip"] is True


def test_verify_reports_a_corrupted_relation(capsys, tmp_path):
    for source in BUNDLED_DIR.glob("*.json"):
        shutil.copy(source, tmp_path / source.name)
    target = tmp_path / "triangle_zero_relation.json"
    data = json.loads(target.read_text(encoding="utf-8"))
    data["relations"] = []
    target.write_text(json.dumps(data), encoding="utf-8")

    code, out = run(capsys, "verify", "--only", "relation-extension", "--algebras", str(tmp_path))
    failed = json.loads(out.out)["results"]["summary"]["failed"]
    assert code == 1
    assert {"presented relation extension", "relation-extension block"} & set(failed)


@pytest.mark.parametrize("argv", [
    ["hh", str(bundled_path("triangle_zero_relation")), "--max-degree", "2", "--reps"],
    ["phi", str(bundled_path("cycle2_nakayama")), "--module", "dual"],
    ["verify", "--only", "loop-triangle"],
])
def test_reports_are_byte_identical_across_runs(capsys, argv):
    first_code, first = run(capsys, *argv)
    second_code, second = run(capsys, *argv)
    assert first_code == second_code == 0
    assert first.out == second.out


def test_default_environment_keeps_stderr_quiet(capsys, monkeypatch):
    monkeypatch.delenv("HOCHPROJ_ENV", raising=False)
    monkeypatch.delenv("HOCHPROJ_LOG_LEVEL", raising=False)
    code, out = run(capsys, "hh", str(bundled_path("triangle_path")), "--max-degree", "1")
    assert code == 0
    assert "DEBUG" not in out.err and "INFO" not in out.err
