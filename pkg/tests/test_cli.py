import json
from pathlib import Path

import pytest

from visicube.cli import RunConfig, UsageError, dispatch, main
from visicube.fileformat import parse_vertex_file

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def stable(report: dict) -> dict:
    """Drop the fields that legitimately vary between runs."""
    report = json.loads(json.dumps(report))
    report.pop("timings")
    report["config"].pop("out")
    report["config"].pop("threads")
    report["files"] = [Path(f).name for f in report["files"]]
    report["results"].pop("nodes_explored", None)
    return report


@pytest.mark.parametrize("name,argv", [
    ("build_mv_n7_l1", ["build-mv", "--n", "7", "--d", "3", "--lambda", "1", "--verify", "exhaustive"]),
    ("turan_7_3_6_3", ["turan", "--n", "7", "--r", "3", "--s", "6", "--t", "3"]),
    ("total_hamming3", ["total", "--hamming-m", "3", "--verify", "exhaustive"]),
    ("solve_mut_5", ["solve", "--param", "mut", "--n", "5"]),
])
def test_golden_reports(capsys, tmp_path, name, argv):
    code, out, _ = run(capsys, *argv, "--out", str(tmp_path))
    assert code == 0
    got = stable(json.loads(out))
    path = GOLDEN / f"{name}.json"
    if not path.exists():
        path.write_text(json.dumps(got, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    assert got == json.loads(path.read_text(encoding="utf-8"))


def test_build_mv_writes_verified_set(capsys, tmp_path):
    code, out, _ = run(capsys, "build-mv", "--n", "7", "--lambda", "1", "--verify", "exhaustive",
                       "--out", str(tmp_path))
    report = json.loads(out)
    assert code == 0 and report["verified"] and report["verification"]["mv"]
    vs = parse_vertex_file(report["files"][0])
    assert len(vs) == report["results"]["size"]


def test_malformed_file_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0001\n01x1\n")
    code, _, err = run(capsys, "witness", "--set", str(bad), "--a", "0000", "--b", "1111")
    assert code == 2 and "line 2, column 3" in err


def test_witness_prints_path(capsys, tmp_path):
    run(capsys, "build-mv", "--n", "6", "--lambda", "0", "--out", str(tmp_path))
    f = tmp_path / "mv_n6_d3_lambda0.txt"
    code, out, _ = run(capsys, "witness", "--set", str(f), "--a", "000000", "--b", "111111")
    lines = out.split()
    assert code == 0 and lines[0] == "000000" and lines[-1] == "111111" and len(lines) == 7


def test_witness_without_path_exits_one(capsys, tmp_path):
    f = tmp_path / "l1.txt"
    f.write_text("100\n010\n001\n")
    code, out, _ = run(capsys, "witness", "--set", str(f), "--a", "000", "--b", "110")
    assert code == 1 and out.startswith("#")


def test_exhaustive_cap_is_usage_error(capsys):
    code, _, err = run(capsys, "solve", "--param", "mu", "--n", "12", "--verify", "exhaustive")
    assert code == 2 and "capped" in err


def test_unknown_command_and_bad_flags(capsys):
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "build-mv")[0] == 2
    with pytest.raises(UsageError):
        dispatch(RunConfig("nope"))


def test_threads_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("VISICUBE_THREADS", "2")
    code, out, _ = run(capsys, "build-mv", "--n", "8", "--verify", "exhaustive", "--out", str(tmp_path))
    report = json.loads(out)
    assert code == 0 and report["config"]["threads"] == 2


def test_color_class_files(capsys, tmp_path):
    code, out, _ = run(capsys, "color", "--n", "8", "--seed", "1", "--verify", "exhaustive",
                       "--out", str(tmp_path))
    report = json.loads(out)
    assert code == 0 and report["results"]["nonempty_classes"] <= 6
    assert len(report["files"]) == 6
    assert all(Path(f).stem.endswith(("-1", "-2")) for f in report["files"])


def test_total_partition(capsys, tmp_path):
    code, out, _ = run(capsys, "total", "--n", "6", "--partition", "--out", str(tmp_path))
    report = json.loads(out)
    assert code == 0 and report["results"]["partition_classes"] <= 12


def test_repro_subset(capsys, tmp_path):
    code, out, err = run(capsys, "repro", "--only", "3", "6")
    report = json.loads(out)
    assert code == 0 and len(report["results"]["criteria"]) == 2
    assert "[PASS]" in err


def test_reports_deterministic(tmp_path):
    cfg = dict(n=8, out=str(tmp_path), extra={"max_rounds": 1000})
    a = dispatch(RunConfig("color", seed=3, **cfg)).to_dict()
    b = dispatch(RunConfig("color", seed=3, **cfg)).to_dict()
    a.pop("timings"), b.pop("timings")
    assert a == b
