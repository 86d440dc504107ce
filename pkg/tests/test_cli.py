"""End-to-end command-line checks, run in process via main(argv)."""

import json

import pytest

from qcjkls.cli import main
from qcjkls.cocycle import build_s4_cocycle, save_cocycle
from qcjkls.quandle import build_s4, save_quandle


@pytest.fixture(autouse=True)
def _no_ambient_cache(monkeypatch):
    monkeypatch.delenv("QCJKLS_CACHE", raising=False)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariant_pretty(capsys):
    code, out, err = run(capsys, ["invariant", "s1^3"])
    assert code == 0
    assert "braid: B2: s1^3" in out
    assert "Z: 4*1 + 12*t" in out
    assert "colorings: 16" in out
    assert "crossing_number: 3" in out
    assert "f: (0.46209812037329684, 0.8283022165960001)" in out


def test_invariant_json(capsys):
    code, out, err = run(capsys, ["invariant", "s1^3", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["braid"] == "B2: s1^3"
    assert doc["Z"]["coeffs"] == ["4", "12"]
    assert doc["coloring_count"] == 16
    assert doc["crossing_number"] == 3
    assert doc["f"] == [0.46209812037329684, 0.8283022165960001]


def test_invariant_csv(capsys):
    code, out, err = run(capsys, ["invariant", "s1^3", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "braid,coloring_count,crossing_number,z[1],z[t],f_1,f_2"
    assert lines[1].startswith("B2: s1^3,16,3,4,12,0.4620981203732968")


def test_invariant_without_crossing_number(capsys):
    code, out, err = run(capsys, ["invariant", "B3: s1 s2"])
    assert code == 0
    assert "crossing_number: unknown" in out
    assert "--assume-crossing-number" in out
    assert "f: unavailable" in out


def test_invariant_assumed_crossing_number(capsys):
    code, out, err = run(capsys, ["invariant", "B3: s1 s2", "--assume-crossing-number", "2"])
    assert code == 0
    assert "crossing_number: 2" in out


def test_invariant_mirror(capsys):
    code, out, err = run(capsys, ["invariant", "s1^-3", "--format", "json"])
    assert code == 0
    assert json.loads(out)["Z"]["coeffs"] == ["4", "12"]


def test_braid_syntax_error_exits_2(capsys):
    code, out, err = run(capsys, ["invariant", "s1^"])
    assert code == 2
    assert "position" in err


def test_budget_error_exits_1(capsys):
    code, out, err = run(capsys, ["invariant", "B13:", "--budget", "1000"])
    assert code == 1
    assert "budget" in err


def test_colorings_pretty(capsys):
    code, out, err = run(capsys, ["colorings", "B2: s1^3"])
    assert code == 0
    assert "colorings: 16" in out
    assert "  (0, T)" in out


def test_colorings_affine_csv_matches_brute(capsys):
    code, brute, _ = run(capsys, ["colorings", "B3: s2^-3 s1^3 s2^-3", "--format", "csv"])
    assert code == 0
    code, affine, _ = run(
        capsys, ["colorings", "B3: s2^-3 s1^3 s2^-3", "--affine", "--format", "csv"]
    )
    assert code == 0
    assert affine == brute
    assert brute.splitlines()[0] == "strand_1,strand_2,strand_3"
    assert len(brute.strip().splitlines()) == 65  # header + 4^3 colorings


def test_colorings_alexander_options(capsys):
    code, out, err = run(capsys, ["colorings", "s1^3", "--mod", "3", "--poly", "T-2"])
    assert code == 0
    assert "colorings: 9" in out  # 3-colorings of the trefoil
    code, out, err = run(capsys, ["colorings", "s1^3", "--mod", "3"])
    assert code == 2
    assert "--poly" in err


def test_quandle_build_pretty(capsys):
    code, out, err = run(capsys, ["quandle", "build", "s4"])
    assert code == 0
    assert "4-element quandle" in out
    assert "T+1" in out


def test_quandle_build_json(capsys):
    code, out, err = run(capsys, ["quandle", "build", "s4", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 4
    assert doc["op"][0] == [0, 3, 1, 2]


def test_quandle_build_check_cycle(capsys, tmp_path):
    path = tmp_path / "r3.json"
    code, out, err = run(
        capsys, ["quandle", "build", "alexander", "--mod", "3", "--poly", "T-2", "--out", str(path)]
    )
    assert code == 0
    assert path.exists()
    code, out, err = run(capsys, ["quandle", "check", str(path)])
    assert code == 0
    assert "ok" in out


def test_quandle_build_alexander_needs_args(capsys):
    code, out, err = run(capsys, ["quandle", "build", "alexander"])
    assert code == 2
    assert "--mod" in err


def test_quandle_build_rejects_bad_ring(capsys):
    code, out, err = run(capsys, ["quandle", "build", "alexander", "--mod", "4", "--poly", "T-2"])
    assert code == 2
    assert "not invertible" in err


def test_quandle_check_reports_violations(capsys, tmp_path):
    q = build_s4()
    doc = q.to_json()
    op = [list(row) for row in doc["op"]]
    op[0][1], op[3][1] = op[3][1], op[0][1]  # keeps columns bijective
    doc["op"] = op
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, ["quandle", "check", str(path)])
    assert code == 1
    assert "violated" in out


def test_quandle_check_load_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"size": 2, "op": [[0, 0], [1, 0]], "labels": ["a", "b"]}')
    code, out, err = run(capsys, ["quandle", "check", str(path)])
    assert code == 1
    assert "load error" in out


def test_cocycle_check(capsys, tmp_path):
    path = tmp_path / "phi.json"
    save_cocycle(build_s4_cocycle(), path)
    code, out, err = run(capsys, ["cocycle", "check", str(path)])
    assert code == 0
    assert "ok" in out

    doc = json.loads(path.read_text())
    doc["table"][0][0] = 1
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, ["cocycle", "check", str(path)])
    assert code == 1


def test_invariant_with_quandle_file_uses_trivial_cocycle(capsys, tmp_path):
    path = tmp_path / "s4.json"
    save_quandle(build_s4(), path)
    code, out, err = run(capsys, ["invariant", "s1^3", "--quandle", str(path), "--format", "json"])
    assert code == 0
    assert json.loads(out)["Z"]["coeffs"] == ["16", "0"]


def test_family_sweep_verify_csv(capsys):
    code, out, err = run(capsys, ["family", "Kn", "--n", "1..3", "--verify", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family,m,n,strands,crossings,z_1,z_2,f_1,f_2,check"
    assert lines[1].startswith("Kn,,1,2,3,4,12,")
    assert lines[1].endswith("agree")
    assert lines[3].startswith("Kn,,3,4,15,64,192,")
    assert lines[4].startswith("# limit ")
    report = json.loads(lines[4].removeprefix("# limit "))
    assert report["family"] == "Kn"


def test_family_sweep_pretty(capsys):
    code, out, err = run(capsys, ["family", "KPrime", "--n", "1..4"])
    assert code == 0
    assert "n=3 strands=4 crossings=18 Z=160*1 + 96*t" in out
    assert "limit[KPrime]" in out


def test_family_with_parameter(capsys):
    code, out, err = run(capsys, ["family", "Km:2", "--n", "1..3", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "Km(2)"
    assert [p["n"] for p in doc["points"]] == [1, 2, 3]
    assert doc["points"][0]["crossings"] == 15

    code, out, err = run(capsys, ["family", "Km", "--n", "1..3", "--m", "2", "--format", "json"])
    assert code == 0
    assert json.loads(out)["family"] == "Km(2)"


def test_family_parameter_conflict(capsys):
    code, out, err = run(capsys, ["family", "Km:2", "--n", "1..3", "--m", "1"])
    assert code == 2


def test_family_bad_range(capsys):
    code, out, err = run(capsys, ["family", "Kn", "--n", "3..1"])
    assert code == 2


def test_limits_json(capsys):
    code, out, err = run(
        capsys,
        ["limits", "--families", "Kn,K0,KPrime", "--n", "10..200", "--tolerance", "0.02",
         "--format", "json"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["families"] == ["Kn", "K0", "KPrime"]
    assert len(doc["reports"]) == 3
    matrix = doc["matrix"]
    for i in range(3):
        for j in range(3):
            assert matrix[i][j] == ("OVERLAPPING" if i == j else "DISTINCT")
    kn = doc["reports"][0]
    assert kn["converged"] is True
    assert kn["closed_form"] == [0.23104906018664842, 0.23104906018664842]


def test_limits_pretty_matrix(capsys):
    code, out, err = run(capsys, ["limits", "--families", "Kn,K0", "--n", "10..100"])
    assert code == 0
    assert "limit[Kn]" in out
    assert "DISTINCT" in out
    assert "OVERLAPPING" in out


def test_limits_needs_enough_samples(capsys):
    code, out, err = run(capsys, ["limits", "--families", "Kn", "--n", "1..2"])
    assert code == 2
    assert "3 samples" in err


def test_cache_file_round_trip(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    code, first, _ = run(capsys, ["invariant", "s1^3", "--cache", str(cache), "--format", "json"])
    assert code == 0
    assert len(cache.read_text().strip().splitlines()) == 1
    code, second, _ = run(capsys, ["invariant", "s1^3", "--cache", str(cache), "--format", "json"])
    assert code == 0
    assert second == first
    assert len(cache.read_text().strip().splitlines()) == 1


def test_cache_env_var_overrides_flag(capsys, tmp_path, monkeypatch):
    flag_cache = tmp_path / "flag.jsonl"
    env_cache = tmp_path / "env.jsonl"
    monkeypatch.setenv("QCJKLS_CACHE", str(env_cache))
    code, out, err = run(capsys, ["invariant", "s1^3", "--cache", str(flag_cache)])
    assert code == 0
    assert env_cache.exists()
    assert not flag_cache.exists()
