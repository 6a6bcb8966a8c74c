"""End-to-end CLI tests: flag handling, JSON schemas, exit codes."""

import json

import pytest

from tstar.cli import main
from tstar.core import Family, GroundSet, parse_family, read_family, write_family
from tstar.shifting import is_shifted
from tstar.verify import is_t_intersecting


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_bound_block(capsys):
    code, data = run_json(capsys, "bound", "--n", "8,10", "--k", "4,4", "--t", "2")
    assert code == 0
    assert data["value"] == "3150"
    assert data["optimal_distributions"] == [[2, 0]]
    assert data["hypotheses"]["block_star"] is False


def test_bound_union(capsys):
    code, data = run_json(capsys, "bound", "--n", "6,6",
                          "--profiles", "2,2;3,2", "--t", "1")
    assert code == 0
    assert data["value"] == "225"
    assert data["optimal_distributions"] == [[1, 0]]
    assert data["hypotheses"]["t_le_c"] is True


def test_bound_ratio(capsys):
    code, data = run_json(capsys, "bound", "--n", "4,4", "--k", "2,2", "--ratio")
    assert code == 0
    assert data == {"ratio": "1/2", "value": "18", "space": "36",
                    "hypotheses": {"ratio_bound": True}}


def test_bound_table_format(capsys):
    code, out = run(capsys, "bound", "--n", "5", "--k", "2", "--t", "1",
                    "--format", "table")
    assert code == 0
    assert "value: 4" in out
    assert "hypotheses.ratio_bound: true" in out


def test_bound_flag_conflicts(capsys):
    code, _ = run(capsys, "bound", "--n", "5", "--k", "2",
                  "--profiles", "2;3", "--t", "1")
    assert code == 2
    code, _ = run(capsys, "bound", "--n", "5", "--k", "2")
    assert code == 2


def test_bound_length_mismatch_exits_2(capsys):
    code, _ = run(capsys, "bound", "--n", "8", "--k", "4,4", "--t", "2")
    assert code == 2


def test_malformed_vector_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["bound", "--n", "8,x", "--k", "4", "--t", "1"])
    assert err.value.code == 2


def test_search_block(tmp_path, capsys):
    out_file = tmp_path / "w.fam"
    code, data = run_json(capsys, "search", "--n", "5", "--k", "2",
                          "--t", "1", "--witness-out", str(out_file))
    assert code == 0
    assert data["max_size"] == "4"
    assert data["gap"] == "0"
    assert data["witness_center"] == [1]
    assert data["consistent"] is True
    witness = read_family(str(out_file))
    assert len(witness.members) == 4
    assert is_t_intersecting(witness, 1)


def test_search_shifted(tmp_path, capsys):
    out_file = tmp_path / "w.fam"
    code, data = run_json(capsys, "search", "--n", "4,4", "--k", "2,2",
                          "--t", "1", "--shifted", "--witness-out", str(out_file))
    assert code == 0
    assert data["max_size"] == "18"
    witness = read_family(str(out_file))
    assert is_shifted(witness)
    assert is_t_intersecting(witness, 1)


def test_search_quota(capsys):
    code, data = run_json(capsys, "search", "--n", "4,4", "--k", "4",
                          "--quota", "1,1")
    assert code == 0
    assert data["max_size"] == "34"
    assert data["star_size"] == "34"
    assert data["verdict"] == "trivial"
    assert data["hypotheses"]["applies"] is True


def test_search_quota_flag_conflicts(capsys):
    code, _ = run(capsys, "search", "--n", "4,4", "--k", "4",
                  "--quota", "1,1", "--t", "2")
    assert code == 2
    code, _ = run(capsys, "search", "--n", "4,4", "--k", "4",
                  "--quota", "1,1", "--shifted")
    assert code == 2
    code, _ = run(capsys, "search", "--n", "4,4", "--k", "2,2",
                  "--quota", "1,1")
    assert code == 2


def test_search_cap_exit_3(capsys):
    code, _ = run(capsys, "search", "--n", "4,4", "--k", "2,2", "--t", "1",
                  "--search-cap", "10")
    assert code == 3


def test_shift_stdout_reparses(tmp_path, capsys):
    g = GroundSet((4,))
    path = tmp_path / "in.fam"
    write_family(Family.from_iterables(g, [[2, 3]]), str(path))
    code, out = run(capsys, "shift", str(path), "--all")
    assert code == 0
    assert out.endswith("# steps: 2\n")
    closed = parse_family(out)
    assert closed.members == Family.from_iterables(g, [[1, 2]]).members


def test_shift_part_out_file(tmp_path, capsys):
    g = GroundSet((3, 3))
    path = tmp_path / "in.fam"
    out_path = tmp_path / "out.fam"
    write_family(Family.from_iterables(g, [[2, 5]]), str(path))
    code, data = run_json(capsys, "shift", str(path), "--part", "2",
                          "--out", str(out_path))
    assert code == 0
    assert data["out"] == str(out_path)
    closed = read_family(str(out_path))
    assert closed.members == Family.from_iterables(g, [[2, 4]]).members
    code, _ = run(capsys, "shift", str(path), "--part", "3")
    assert code == 2


def test_verify_exit_codes(tmp_path, capsys):
    g = GroundSet((5,))
    fam = tmp_path / "fam.fam"
    write_family(Family.from_iterables(g, [[1, 2], [1, 3], [2, 3]]), str(fam))
    code, data = run_json(capsys, "verify", "t-intersecting", str(fam), "--t", "1")
    assert code == 0 and data["holds"] is True
    code, data = run_json(capsys, "verify", "t-intersecting", str(fam), "--t", "2")
    assert code == 1 and data["holds"] is False


def test_verify_cross_and_star(tmp_path, capsys):
    g = GroundSet((5,))
    a = tmp_path / "a.fam"
    b = tmp_path / "b.fam"
    space = tmp_path / "space.fam"
    star = tmp_path / "star.fam"
    write_family(Family.from_iterables(g, [[1, 2], [1, 3]]), str(a))
    write_family(Family.from_iterables(g, [[1, 4], [1, 5]]), str(b))
    code, _ = run(capsys, "verify", "cross", str(a), str(b), "--t", "1")
    assert code == 0
    full = [[x, y] for x in range(1, 6) for y in range(x + 1, 6)]
    write_family(Family.from_iterables(g, full), str(space))
    write_family(Family.from_iterables(g, [m for m in full if 1 in m]), str(star))
    code, data = run_json(capsys, "verify", "star", str(star),
                          "--space", str(space), "--t", "1")
    assert code == 0
    assert data["center"] == [1]
    code, _ = run(capsys, "verify", "cross", str(a), "--t", "1")
    assert code == 2


def test_verify_prefix_hypothesis_exit_2(tmp_path, capsys):
    g = GroundSet((6,))
    a = tmp_path / "a.fam"
    b = tmp_path / "b.fam"
    # {2,3} is not shifted, so the window check must refuse to run
    write_family(Family.from_iterables(g, [[2, 3]]), str(a))
    write_family(Family.from_iterables(g, [[1, 2]]), str(b))
    code, _ = run(capsys, "verify", "prefix", str(a), str(b),
                  "--t", "1", "--r", "2", "--s", "2")
    assert code == 2


def test_kneser_cli(capsys):
    code, data = run_json(capsys, "kneser", "--params", "5:2,7:3")
    assert code == 0
    assert data == {"connected": True, "vertices": "350"}
    code, data = run_json(capsys, "kneser", "--params", "4:2")
    assert code == 0
    assert data["connected"] is False


def test_enumerate_stdout(capsys):
    code, out = run(capsys, "enumerate", "--n", "4,4", "--k", "2,2")
    assert code == 0
    fam = parse_family(out)
    assert len(fam.members) == 36


def test_enumerate_quota_and_errors(tmp_path, capsys):
    out_file = tmp_path / "q.fam"
    code, data = run_json(capsys, "enumerate", "--n", "4,4", "--k", "4",
                          "--quota", "1,1", "--out", str(out_file))
    assert code == 0
    assert data["size"] == "68"
    assert len(read_family(str(out_file)).members) == 68
    code, _ = run(capsys, "enumerate", "--n", "4,4", "--k", "2,2",
                  "--profiles", "2,2")
    assert code == 2
    code, _ = run(capsys, "enumerate", "--n", "4,4", "--k", "2,2",
                  "--enum-cap", "10")
    assert code == 3


def test_missing_file_exit_2(capsys):
    code, _ = run(capsys, "verify", "t-intersecting", "/nonexistent.fam",
                  "--t", "1")
    assert code == 2


def test_repro_subset(capsys):
    code, out = run(capsys, "repro", "--only", "10")
    assert code == 0
    assert "criterion 10: PASS" in out
