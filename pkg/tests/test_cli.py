"""
Test Command Line
=================

Integration tests through ``tropmod.cli.main``: exit codes, artifacts on
stdout and byte-identical output across runs.
"""

import json

import pytest

from tropmod.cli import main
from tropmod.modules.graph_core import theta_graph
from tropmod.modules.serialization import dumps, emit_graph
from tropmod.runner.command_runner import Command, CommandRunner, RunConfig
from tropmod.utils.errors import InputFormatError, IntegrityViolation


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for name in ("TROPMOD_MAX_EDGES", "TROPMOD_WORKERS", "TROPMOD_DATA_DIR", "TROPMOD_LOG_FILE",
                 "TROPMOD_LOG_LEVEL", "TROPMOD_TOLERANCE"):
        monkeypatch.delenv(name, raising=False)


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _point_file(tmp_path, name, e1, e2, e3):
    path = tmp_path / name
    path.write_text(json.dumps({"graph": emit_graph(theta_graph()), "coords": {"e1": e1, "e2": e2, "e3": e3}}))
    return str(path)


def test_gen_regular_emits_two_graphs(capsys):
    code, out, _ = _run(capsys, "gen-regular", "--genus", "2", "--leaves", "0", "--format", "json")
    assert code == 0
    assert json.loads(out)["count"] == 2


def test_output_is_byte_identical_across_runs(capsys):
    first = _run(capsys, "gen-stable", "--genus", "2", "--leaves", "0")[1]
    second = _run(capsys, "gen-stable", "--genus", "2", "--leaves", "0")[1]
    assert first == second
    assert json.loads(first)["count"] == 7


def test_strata_dot_for_theta(capsys, tmp_path):
    graph = tmp_path / "theta.json"
    graph.write_text(dumps(emit_graph(theta_graph())))
    code, out, _ = _run(capsys, "strata", "--graph", str(graph), "--format", "dot")
    assert code == 0
    assert out.count("[label=") == 4
    assert out.count("->") == 3
    assert 'label="dim=3, |witnesses|=1, |AutE|=6"' in out


def test_strata_side_files_and_store(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TROPMOD_DATA_DIR", str(tmp_path / "store"))
    code, out, _ = _run(capsys, "strata", "--graph", "dumbbell", "--dot", "d.dot", "--json", "d.json", "--store")
    assert code == 0
    assert (tmp_path / "d.dot").exists()
    assert json.loads((tmp_path / "d.json").read_text()) == json.loads(out)
    assert len(list((tmp_path / "store" / "strata").glob("*.json"))) == 1


def test_contract_reports_witness(capsys):
    code, out, _ = _run(capsys, "contract", "--graph", "theta", "--edges", "e1,e2")
    doc = json.loads(out)
    assert code == 0
    assert doc["graph"]["vertices"] == [{"id": "a+b", "weight": 1}]
    assert doc["witness"]["perVertexBetti"] == {"a+b": 1}
    assert doc["witness"]["vertexMap"] == {"a": "a+b", "b": "a+b"}


def test_unknown_edge_is_a_user_error(capsys):
    code, out, err = _run(capsys, "contract", "--graph", "theta", "--edges", "e9")
    assert code == 1
    assert out == ""
    last = err.strip().splitlines()[-1]
    assert last.startswith("tropmod: error: ") and "e9" in last


def test_aut(capsys):
    doc = json.loads(_run(capsys, "aut", "--graph", "theta")[1])
    assert (doc["order"], doc["edgeActionOrder"], doc["kernelSize"]) == (12, 6, 2)


def test_dist_of_a_point_with_itself_is_zero(capsys, tmp_path):
    a = _point_file(tmp_path, "a.json", "1", "2", "3")
    doc = json.loads(_run(capsys, "dist", "--p", a, "--q", a)[1])
    assert doc["product"]["turns"] == "0"
    assert doc["separation"]["turns"] == "0"
    assert doc["sameClass"] is True


def test_dist_of_permuted_points(capsys, tmp_path):
    a = _point_file(tmp_path, "a.json", "1", "2", "3")
    b = _point_file(tmp_path, "b.json", "2", "1", "3")
    doc = json.loads(_run(capsys, "dist", "--p", a, "--q", b)[1])
    assert doc["product"]["turns"] != "0"
    assert doc["separation"]["turns"] == "0"


def test_fiber_and_classify(capsys, tmp_path):
    p = _point_file(tmp_path, "p.json", "inf", "1", "2")
    fiber = json.loads(_run(capsys, "fiber", "--point", p)[1])
    assert (fiber["size"], fiber["byAutomorphism"], fiber["byFaceIsometry"]) == (6, 2, 4)
    located = json.loads(_run(capsys, "classify-point", "--point", p)[1])
    assert located["zeroSet"] == ["e1"]
    assert located["dimension"] == 2


def test_malformed_json_is_a_user_error(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, _, err = _run(capsys, "aut", "--graph", str(broken))
    assert code == 1
    assert "invalid JSON" in err


def test_scale_limit_names_the_override(capsys):
    code, _, err = _run(capsys, "gen-regular", "--genus", "4", "--leaves", "1")
    assert code == 1
    assert "TROPMOD_MAX_EDGES" in err


def test_unstable_type_is_a_user_error(capsys):
    assert _run(capsys, "gen-regular", "--genus", "1", "--leaves", "0")[0] == 1


def test_tolerance_needs_float_mode(capsys, tmp_path):
    p = _point_file(tmp_path, "p.json", "1", "2", "3")
    assert _run(capsys, "fiber", "--point", p, "--tolerance", "1e-6")[0] == 1
    assert _run(capsys, "fiber", "--point", p, "--float", "--tolerance", "1e-6")[0] == 0


def test_wrong_format_for_command(capsys):
    assert _run(capsys, "aut", "--graph", "theta", "--format", "csv")[0] == 1


def test_compare_csv(capsys, tmp_path):
    code, out, _ = _run(capsys, "compare", "--genus", "2", "--leaves", "0", "--format", "csv",
                        "--dot", "map.dot")
    lines = out.strip().split("\n")
    assert code == 0
    assert lines[0] == "base_key,stratum_key,dim,nodal_class_key,covered"
    assert len(lines) - 1 == (4 + 3) + (6 + 1)
    assert (tmp_path / "map.dot").read_text().count("digraph") == 2


def test_compare_json(capsys):
    doc = json.loads(_run(capsys, "compare", "--genus", "2", "--leaves", "0")[1])
    assert doc["union"] == 7 and doc["unionComplete"] is True
    assert sorted(len(b["hits"]) for b in doc["bases"]) == [4, 6]


def test_markdown_report_is_deterministic(capsys):
    first = _run(capsys, "report", "--genus", "1", "--leaves", "1")[1]
    second = _run(capsys, "report", "--genus", "1", "--leaves", "1")[1]
    assert first == second
    assert first.startswith("# Census for (g, n) = (1, 1)")


def test_yaml_config_with_flag_override(capsys, tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("command: gen-regular\ngenus: 2\nleaves: 0\n")
    code, out, _ = _run(capsys, "gen-regular", "--config", str(config), "--genus", "0", "--leaves", "4")
    assert code == 0
    assert json.loads(out)["count"] == 3


def test_output_file(capsys, tmp_path):
    code, out, _ = _run(capsys, "aut", "--graph", "dumbbell", "--output", "aut.json")
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "aut.json").read_text())["order"] == 2


def test_runner_maps_integrity_violations_to_exit_two(monkeypatch):
    def broken(config):
        raise IntegrityViolation("genus not preserved")

    runner = CommandRunner()
    monkeypatch.setitem(runner.handlers, Command.AUT, broken)
    outcome = runner.run(RunConfig(command=Command.AUT, graph="theta"))
    assert outcome.exit_code == 2
    assert outcome.error == "genus not preserved"


def test_run_config_validation():
    with pytest.raises(InputFormatError):
        RunConfig.from_sources({"command": "strata"})
    config = RunConfig.from_sources({"command": "contract", "graph": "theta", "edges": "e1, e2"})
    assert config.edges == ["e1", "e2"]


def test_stored_census_is_reused(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TROPMOD_DATA_DIR", str(tmp_path / "store"))
    first = _run(capsys, "gen-regular", "--genus", "2", "--leaves", "0", "--store")[1]
    assert first == _run(capsys, "gen-regular", "--genus", "2", "--leaves", "0", "--store")[1]

    stored = tmp_path / "store" / "regular" / "g2_n0.json"
    doc = json.loads(stored.read_text())
    doc["graphs"], doc["count"] = doc["graphs"][:1], 1
    stored.write_text(json.dumps(doc))
    assert json.loads(_run(capsys, "gen-regular", "--genus", "2", "--leaves", "0", "--store")[1])["count"] == 1
    assert json.loads(_run(capsys, "gen-regular", "--genus", "2", "--leaves", "0")[1])["count"] == 2
