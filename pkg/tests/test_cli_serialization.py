import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodge_limits.cli import run
from hodge_limits.linalg import Matrix, Scalar
from hodge_limits.models import index_one_model, two_dim_family, weight_one_model
from hodge_limits.schemas import SCHEMAS, SchemaError, validate_instance
from hodge_limits.serialization import (canonical_dumps, digest, limit_instance_to_json,
                                        load_limit_instance, matrix_from_json, matrix_to_json)
from hodge_limits.severi import CATALOGUE_ENV, build_catalogue_json

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


@pytest.fixture
def limit_file(tmp_path):
    def write(obj, name="inst.json"):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return write


@given(st.lists(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
                         min_size=2, max_size=2), min_size=2, max_size=2))
def test_matrix_json_roundtrip(rows):
    M = Matrix([[Scalar(a, b) for a, b in r] for r in rows])
    assert matrix_from_json(matrix_to_json(M)) == M


def test_limit_instance_roundtrip():
    M = index_one_model(3, {3: 1})
    obj = limit_instance_to_json(M.S, M.N, M.W, M.F, 3)
    validate_instance("limit_instance", obj)
    back = load_limit_instance(obj)
    assert back["W"] == M.W and back["F"] == M.F and back["S"].gram == M.S.gram


def test_schema_rejects():
    with pytest.raises(SchemaError):
        validate_instance("limit_instance", {"dim": "two"})
    with pytest.raises(SchemaError):
        validate_instance("cs_instance", {})


def test_digest_is_order_independent():
    assert digest({"a": 1, "b": [1, 2]}) == digest({"b": [1, 2], "a": 1})
    assert canonical_dumps({"b": 1, "a": 2}) == '{"a":2,"b":1}'


@pytest.mark.parametrize("argv,golden", [
    (["severi", "limit-mhs", "Segre"], [1, 83]),
    (["severi", "limit-mhs", "Gr26"], [0, 1, 455, 5004]),
    (["severi", "limit-mhs", "OP2"], [0, 0, 0, 1, 2925, 296010, 4686825, 17383859]),
])
def test_limit_mhs_command(argv, golden):
    rep, code, _ = run(argv + ["--json"])
    assert code == 0
    assert rep.result["V_hodge_vector"] == golden


def test_ring_commands():
    rep, code, _ = run(["ring", "mult", "Gr26", "s3", "s1"])
    assert code == 0 and rep.result["product"] == "s4+s31"
    rep, code, _ = run(["ring", "chern", "P2xP2", "3*H1+3*H2"])
    assert code == 0 and rep.result["euler"] == -162
    rep, code, _ = run(["ring", "coker-rho", "P2xP2", "3*H1+3*H2"])
    assert code == 0 and rep.result["rank"] == 1


def test_repdim_golden():
    rep, code, text = run(["repdim", "E6", "3w1"])
    assert code == 0 and rep.result["dim"] == 3003
    assert "golden" in text.lower() or "3003" in text


def test_exit_codes(limit_file, tmp_path):
    assert run([])[1] == 2
    assert run(["bogus"])[1] == 2
    assert run(["repdim", "A2", "1,2,3"])[1] == 2
    assert run(["mwf", str(tmp_path / "missing.json")])[1] == 4
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["mwf", str(bad)])[1] == 4
    assert run(["mwf", limit_file({"dim": "x"})])[1] == 3
    assert run(["boundary", "from-limit", str(INSTANCES / "rank_two_m3.json")])[1] == 1


def test_failing_validation_exit_one(limit_file):
    M = weight_one_model()
    obj = limit_instance_to_json(M.S, M.N, M.W, M.F, 1)
    obj["S"]["matrix"] = [["0", "-1"], ["1", "0"]]
    assert run(["mhs", "validate", limit_file(obj)])[1] == 1


def test_json_is_deterministic():
    a = run(["severi", "verify-all", "--json", "--workers", "4"])[2]
    assert a == run(["severi", "verify-all", "--json", "--workers", "4"])[2]
    c = run(["severi", "verify-all", "--json", "--workers", "1"])[2]
    assert json.loads(a)["result"] == json.loads(c)["result"]
    assert json.loads(a)["exit_status"] == 0


def test_schema_flag():
    rep, code, text = run(["--schema"])
    assert code == 0 and set(json.loads(text)) == set(SCHEMAS)
    assert run(["--schema", "nope"])[1] == 2
    assert json.loads(run(["--schema", "report"])[2]) == SCHEMAS["report"]


def test_report_validates_against_schema():
    text = run(["severi", "limit-mhs", "Segre", "--json"])[2]
    validate_instance("report", json.loads(text))


def test_delta_command(limit_file):
    mhs = two_dim_family(0, 3)
    rep, code, _ = run(["mhs", "delta", limit_file(limit_instance_to_json(None, None, mhs.W,
                                                                         mhs.F, 1))])
    assert code == 0
    assert matrix_from_json(rep.result["delta"]) == Matrix([[0, 3], [0, 0]])


def test_orbit_eval_z(limit_file):
    M = weight_one_model()
    f = limit_file(limit_instance_to_json(M.S, M.N, M.W, M.F, 1))
    assert run(["sl2", "orbit-eval", f, "--z", "2*i"])[1] == 0
    assert run(["sl2", "orbit-eval", f, "--z", "3"])[1] == 1


@pytest.mark.parametrize("argv", [
    ["mwf", "weight_one.json", "--verify"], ["mhs", "split", "reverse_engineered.json"],
    ["sl2", "verify", "index_one_m3.json"], ["sl2", "complete", "index_one_m3.json"],
    ["boundary", "from-limit", "index_one_m3.json"], ["cs-check", "segre_cs.json"],
    ["snc-e2", "segre_snc_fiber.json"],
])
def test_shipped_instances(argv):
    argv = [str(INSTANCES / a) if a.endswith(".json") else a for a in argv]
    assert run(argv)[1] == 0


def test_assemble_command():
    rep, code, _ = run(["severi", "assemble", "Segre", "--json"])
    assert code == 0
    assert rep.result["cs_instance"]["ranks"]["N"] == 1


def test_catalogue_env_var(tmp_path):
    bad = build_catalogue_json()
    bad["version"] = 99
    p = tmp_path / "cat.json"
    p.write_text(json.dumps(bad))
    env = {**os.environ, CATALOGUE_ENV: str(p)}
    out = subprocess.run([sys.executable, "-m", "hodge_limits", "severi", "limit-mhs", "Segre"],
                         env=env, capture_output=True, text=True)
    assert out.returncode == 4
    env[CATALOGUE_ENV] = str(tmp_path / "absent.json")
    out = subprocess.run([sys.executable, "-m", "hodge_limits", "severi", "verify-all"],
                         env=env, capture_output=True, text=True)
    assert out.returncode == 4


def test_stdin(monkeypatch):
    M = weight_one_model()
    obj = limit_instance_to_json(M.S, M.N, M.W, M.F, 1)
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(obj)))
    assert run(["mhs", "validate", "-"])[1] == 0

