import json

import pytest

import cli
from src.model.schema import InstanceModel, SeedingModel, dumps, parse_json, save_json
from src.solvers.matching import make_tight_instance

PHI_CNF = "c (x1 or x2) and (not x1 or x2)\np cnf 2 2\n1 2 0\n-1 2 0\n"


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    for name in ("BRACKETOPT_BRUTE_CAP", "BRACKETOPT_LOG_LEVEL", "BRACKETOPT_FPT_MAX_K", "BRACKETOPT_RNG_SEED"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def tight_file(tmp_path):
    path = tmp_path / "tight.json"
    save_json(InstanceModel.from_domain(make_tight_instance(8, 10)).dump(), path)
    return path


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def test_generate_tight_matches_library(capsys):
    code, out = run(capsys, "generate", "--tight", "8", "10")
    assert code == 0
    assert out == dumps(InstanceModel.from_domain(make_tight_instance(8, 10)).dump())


def test_generate_is_deterministic(capsys):
    _, first = run(capsys, "generate", "--popularity", "8", "--values", "2", "--rng-seed", "7")
    _, second = run(capsys, "generate", "--popularity", "8", "--values", "2", "--rng-seed", "7")
    assert first == second
    instance = parse_json(InstanceModel, first).to_domain()
    assert instance.n == 8
    assert len(instance.values.distinct_values(8)) <= 2


def test_generate_random_writes_file(capsys, tmp_path):
    out_path = tmp_path / "out" / "random.json"
    code, out = run(capsys, "generate", "--random", "win_count", "4", "--low", "0", "--high", "3", "--out", str(out_path))
    assert code == 0 and out == ""
    instance = parse_json(InstanceModel, out_path.read_text()).to_domain()
    assert set(instance.values.table.values()) <= {1, 2, 3}


def test_generate_rejects_bad_kind(capsys):
    code, _ = run(capsys, "generate", "--random", "sometimes", "4")
    assert code == 2


def test_generate_reduction_nonneg(capsys, tmp_path):
    cnf = tmp_path / "phi.cnf"
    cnf.write_text(PHI_CNF)
    layout_path = tmp_path / "layout.json"
    code, out = run(
        capsys, "generate", "--reduce2", str(cnf), "--nonneg", "--clauses-target", "2", "--layout-out", str(layout_path)
    )
    assert code == 0
    instance = parse_json(InstanceModel, out).to_domain()
    assert instance.n == 32
    assert instance.values.distinct_values(32) == {1, 6, 7}
    assert instance.target == 4 + 31 * 6
    assert json.loads(layout_path.read_text())["shift"] == 6


def test_generate_reduction_of_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "generate", "--reduce1", str(tmp_path / "absent.cnf"))
    assert code == 2


def test_generate_reduction_of_non_utf8_file(capsys, tmp_path):
    cnf = tmp_path / "latin1.cnf"
    cnf.write_bytes(b"c caf\xe9\np cnf 2 2\n1 2 0\n-1 2 0\n")
    assert run(capsys, "generate", "--reduce1", str(cnf))[0] == 2


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def test_solve_brute(capsys, tight_file):
    code, out = run(capsys, "solve", str(tight_file), "--algorithm", "brute")
    assert code == 0
    document = json.loads(out)
    assert document["algorithm"] == "brute"
    assert document["value"] == 31


def test_solve_matching_with_tree(capsys, tight_file):
    code, out = run(capsys, "solve", str(tight_file), "--algorithm", "matching", "--tree")
    assert code == 0
    document = json.loads(out)
    assert document["value"] == 11
    assert document["order"] == [7, 8, 1, 2, 3, 4, 5, 6]
    assert document["tree"]["root"] == 8


def test_solve_target(capsys, tight_file):
    assert run(capsys, "solve", str(tight_file), "--algorithm", "matching", "--target", "31")[0] == 3
    assert run(capsys, "solve", str(tight_file), "--algorithm", "brute", "--target", "31")[0] == 0
    # the tight instance carries no target of its own
    assert run(capsys, "solve", str(tight_file), "--target")[0] == 2


def test_solve_auto_refuses_general_beyond_cap(capsys, tmp_path):
    path = tmp_path / "big.json"
    save_json({"n": 16, "kind": "general", "target": None, "entries": [{"i": 2, "j": 1, "r": 1, "v": 1}]}, path)
    code, _ = run(capsys, "solve", str(path))
    assert code == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify(capsys, tight_file, tmp_path, tight8_optimal_seeding):
    seeding_path = tmp_path / "seeding.json"
    save_json(SeedingModel.from_domain(tight8_optimal_seeding).dump(), seeding_path)

    code, out = run(capsys, "verify", str(tight_file), str(seeding_path), "31")
    assert code == 0
    assert out.splitlines()[-1] == "total: 31  claimed: 31"
    assert "champion: 8" in out

    assert run(capsys, "verify", str(tight_file), str(seeding_path), "30")[0] == 3


def test_verify_result_file(capsys, tight_file, tmp_path):
    result_path = tmp_path / "result.json"
    assert run(capsys, "solve", str(tight_file), "--algorithm", "matching", "--out", str(result_path))[0] == 0
    assert run(capsys, "verify", str(tight_file), "--result", str(result_path))[0] == 0
    assert run(capsys, "verify", str(tight_file), str(result_path), "11")[0] == 0


def test_verify_malformed_instance(capsys, tmp_path, tight8_optimal_seeding):
    broken = tmp_path / "broken.json"
    broken.write_text('{"n": 8, "kind": "general"')
    seeding_path = tmp_path / "seeding.json"
    save_json(SeedingModel.from_domain(tight8_optimal_seeding).dump(), seeding_path)
    assert run(capsys, "verify", str(broken), str(seeding_path), "31")[0] == 2


def test_verify_non_utf8_inputs(capsys, tight_file, tmp_path, tight8_optimal_seeding):
    garbage = tmp_path / "garbage.json"
    garbage.write_bytes(b"\xff\xfe\x00bad")
    seeding_path = tmp_path / "seeding.json"
    save_json(SeedingModel.from_domain(tight8_optimal_seeding).dump(), seeding_path)
    assert run(capsys, "verify", str(garbage), str(seeding_path), "31")[0] == 2
    assert run(capsys, "verify", str(tight_file), str(garbage), "31")[0] == 2
    assert run(capsys, "verify", str(tight_file), "--result", str(garbage))[0] == 2


def test_verify_needs_claimed_value(capsys, tight_file):
    assert run(capsys, "verify", str(tight_file))[0] == 2


# ---------------------------------------------------------------------------
# bench / usage
# ---------------------------------------------------------------------------


def test_bench_csv(capsys):
    code, out = run(capsys, "bench", "--family", "tight", "--n", "4", "--count", "2", "--no-timing")
    assert code == 0
    assert out.splitlines() == [
        "instance_id,n,kind,algorithm,value,optimum,ratio_num,ratio_den,wall_ms",
        "tight-0000,4,round_oblivious,matching,11,21,11,21,0.0",
        "tight-0000,4,round_oblivious,brute,21,21,1,1,0.0",
        "tight-0001,4,round_oblivious,matching,21,41,21,41,0.0",
        "tight-0001,4,round_oblivious,brute,41,41,1,1,0.0",
    ]


def test_bench_rejects_unknown_algorithm(capsys):
    assert run(capsys, "bench", "--family", "tight", "--algorithms", "magic")[0] == 2


def test_usage_errors(capsys):
    assert cli.main([]) == 2
    assert cli.main(["solve"]) == 2
    assert cli.main(["generate", "--tight", "8", "10", "--monotone", "8"]) == 2
