"""
Test Settings, Result Store and Worker Pool
===========================================
"""

import json
from pathlib import Path

import pytest

from tropmod.utils.errors import InputFormatError, IntegrityViolation, ScaleLimitError
from tropmod.utils.parallel import WorkerPool
from tropmod.utils.result_store import ResultStore
from tropmod.utils.settings import DEFAULT_GENERATION_EDGES, DEFAULT_STRATA_EDGES, load_settings

ENV_NAMES = ("TROPMOD_MAX_EDGES", "TROPMOD_WORKERS", "TROPMOD_DATA_DIR", "TROPMOD_LOG_FILE",
             "TROPMOD_LOG_LEVEL", "TROPMOD_TOLERANCE")


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_default_settings(clean_env):
    settings = load_settings()
    assert settings.max_generation_edges == DEFAULT_GENERATION_EDGES
    assert settings.max_strata_edges == DEFAULT_STRATA_EDGES
    assert settings.workers == 1
    assert settings.data_dir == Path("data")
    assert settings.log_file is None


def test_environment_overrides(clean_env):
    clean_env.setenv("TROPMOD_MAX_EDGES", "12")
    clean_env.setenv("TROPMOD_WORKERS", "4")
    clean_env.setenv("TROPMOD_LOG_LEVEL", "debug")
    clean_env.setenv("TROPMOD_TOLERANCE", "1e-6")
    settings = load_settings()
    assert (settings.max_generation_edges, settings.max_strata_edges) == (12, 12)
    assert settings.workers == 4
    assert settings.log_level == "DEBUG"
    assert settings.tolerance == 1e-6


def test_dotenv_file_does_not_beat_the_environment(clean_env, tmp_path):
    env_file = tmp_path / "custom.env"
    env_file.write_text("TROPMOD_WORKERS=3\nTROPMOD_DATA_DIR=from_file\n")
    clean_env.setenv("TROPMOD_WORKERS", "2")
    # registers TROPMOD_DATA_DIR with monkeypatch so the value dotenv exports is undone
    clean_env.setenv("TROPMOD_DATA_DIR", "")
    clean_env.delenv("TROPMOD_DATA_DIR")
    settings = load_settings(env_file)
    assert settings.workers == 2
    assert settings.data_dir == Path("from_file")


@pytest.mark.parametrize("name, value", [("TROPMOD_WORKERS", "many"), ("TROPMOD_MAX_EDGES", "-1"),
                                         ("TROPMOD_TOLERANCE", "tiny")])
def test_bad_environment_values(clean_env, name, value):
    clean_env.setenv(name, value)
    with pytest.raises(InputFormatError):
        load_settings()


def test_error_rendering():
    error = ScaleLimitError("edge count", limit=9, actual=12)
    assert error.one_line() == "edge count: 12 exceeds the limit of 9 (raise TROPMOD_MAX_EDGES to override)"
    assert error.exit_code == 1
    assert IntegrityViolation("x").exit_code == 2


def test_store_census_round_trip(tmp_path):
    store = ResultStore(tmp_path)
    graphs = [{"vertices": [{"id": "a", "weight": 2}], "edges": [], "leaves": []}]
    path = store.save_census("stable", 2, 0, graphs)
    assert path == tmp_path / "stable" / "g2_n0.json"
    doc = store.get("stable", "g2_n0")
    assert doc["count"] == 1 and doc["graphs"] == graphs
    assert store.get("regular", "g2_n0") is None


def test_store_strata_keeps_the_hasse_diagram(tmp_path):
    store = ResultStore(tmp_path)
    store.save_strata("abc", 2, 0, [{}, {}], [[1, 0]])
    assert store.get("strata", "abc")["extra"] == {"hasse": [[1, 0]]}


def test_store_rejects_unknown_kinds_and_corrupt_files(tmp_path):
    store = ResultStore(tmp_path)
    with pytest.raises(ValueError):
        store.get("points", "x")
    (tmp_path / "regular").mkdir()
    (tmp_path / "regular" / "bad.json").write_text("{")
    with pytest.raises(InputFormatError):
        store.get("regular", "bad")


def _square(x):
    return x * x


def test_worker_pool_preserves_order():
    items = list(range(20))
    assert WorkerPool(workers=1).map(_square, items) == [x * x for x in items]
    assert WorkerPool(workers=2, chunksize=3).map(_square, items, label="squares") == [x * x for x in items]
    assert WorkerPool(workers=0).workers == 1


def test_inline_pool_accepts_closures():
    offset = 5
    assert WorkerPool().map(lambda x: x + offset, [1, 2]) == [6, 7]


def test_stored_document_is_json(tmp_path):
    path = ResultStore(tmp_path).save_census("regular", 0, 3, [])
    assert json.loads(path.read_text())["kind"] == "regular"
