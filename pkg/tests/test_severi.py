import json

import pytest

from hodge_limits.severi import (CATALOGUE_ENV, CatalogueError, build_catalogue_json,
                                 cubic_hodge_numbers, default_catalogue_path, get_datum,
                                 limit_mhs_summary, load_catalogue, luna_slice_check,
                                 segre_cy_crosscheck, validate_datum, verify_all)

from oracles import cubic_middle_betti, fermat_cubic_hodge


@pytest.mark.parametrize("m", [3, 5, 7, 13, 25])
def test_cubic_numbers_against_oracles(m):
    h = cubic_hodge_numbers(m)
    assert h.total == cubic_middle_betti(m)
    if m <= 13:
        assert h.nonzero() == fermat_cubic_hodge(m)
    assert h.is_symmetric()


def test_cubic_rejects_even():
    with pytest.raises(ValueError):
        cubic_hodge_numbers(4)


@pytest.mark.parametrize("name,vec", [
    ("Segre", (1, 83)), ("Gr26", (0, 1, 455, 5004)),
    ("OP2", (0, 0, 0, 1, 2925, 296010, 4686825, 17383859)),
])
def test_limit_vectors(name, vec):
    s = limit_mhs_summary(get_datum(name))
    assert s.V_hodge_vector == vec
    assert s.weight_filtration_dims[0] == 1
    assert s.weight_filtration_dims[2] == s.cubic.total


def test_veronese_excluded():
    with pytest.raises(ValueError):
        limit_mhs_summary(get_datum("Veronese"))


def test_segre_crosscheck():
    v = segre_cy_crosscheck()
    assert v.passed
    assert (v.data["chi"], v.data["h21"]) == (-162, 83)


@pytest.mark.parametrize("name,identity", [
    ("Segre", (165, 64, 100)), ("Gr26", (680, 189, 490)), ("OP2", (3654, 650, 3003)),
])
def test_luna(name, identity):
    v = luna_slice_check(get_datum(name))
    assert v.passed
    assert (v.data["sym3"], v.data["orbit_codim_term"], v.data["sections"]) == identity


def test_polarization_signs():
    assert [get_datum(n).polarization_sign for n in ("Segre", "Gr26", "OP2")] == [1, -1, -1]
    assert [get_datum(n).quadric_n for n in ("Segre", "Gr26", "OP2")] == [2, 3, 5]


def test_aliases():
    assert get_datum("P2xP2").name == "Segre"
    with pytest.raises(CatalogueError):
        get_datum("nope")


def test_catalogue_file_is_reproducible():
    stored = json.loads(default_catalogue_path().read_text())
    assert stored == build_catalogue_json()


def test_verify_all():
    out = verify_all(workers=3)
    assert all(v.passed for v in out.values())
    assert "Segre cross-check" in out


def test_env_override(tmp_path, monkeypatch):
    data = build_catalogue_json()
    data["entries"] = [e for e in data["entries"] if e["name"] != "Veronese"]
    p = tmp_path / "cat.json"
    p.write_text(json.dumps(data))
    monkeypatch.setenv(CATALOGUE_ENV, str(p))
    assert "Veronese" not in load_catalogue()


def test_tampered_record_rejected(tmp_path):
    data = build_catalogue_json()
    for e in data["entries"]:
        if e["name"] == "Gr26":
            e["sections_dim"] = 491
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    with pytest.raises(CatalogueError):
        load_catalogue(p)


def test_missing_catalogue(tmp_path):
    with pytest.raises(CatalogueError):
        load_catalogue(tmp_path / "absent.json")


def test_validate_each_record():
    for s in load_catalogue().values():
        assert validate_datum(s).passed
