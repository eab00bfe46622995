import json

import pytest
from hypothesis import given, settings, strategies as st

from dgdescent import io as dio


MINIMAL = {"field": {"kind": "QQ"}, "spaces": {"V": {"basis": [{"name": "v", "deg": 0}]}}}


def test_minimal_document_loads():
    doc = dio.load_obj(MINIMAL)
    assert doc.spaces["V"].dim == 1
    assert doc.maps == {}


def test_degree_violation_names_the_entry():
    raw = json.loads(json.dumps(MINIMAL))
    raw["spaces"]["V"]["basis"].append({"name": "w", "deg": 2})
    raw["maps"] = {"d": {"from": "V", "to": "V", "deg": 1, "entries": [
        {"src": "v", "dst": "v", "coeff": "0"},
        {"src": "v", "dst": "w", "coeff": "3"}]}}
    with pytest.raises(dio.SchemaError) as exc:
        dio.load_obj(raw)
    assert exc.value.path == "maps/d/entries/1"
    assert "v -> w" in str(exc.value)


def test_schema_error_is_path_addressed():
    raw = {"field": {"kind": "QQ"}, "spaces": {"V": {"basis": [{"name": "v", "deg": "x"}]}}}
    with pytest.raises(dio.SchemaError) as exc:
        dio.load_obj(raw)
    assert exc.value.path == "spaces/V/basis/0/deg"


def test_dangling_reference():
    raw = dict(MINIMAL, maps={"f": {"from": "V", "to": "W", "deg": 0, "entries": []}})
    with pytest.raises(dio.SchemaError) as exc:
        dio.load_obj(raw)
    assert "W" in str(exc.value) and exc.value.path == "maps/f/to"


def test_invalid_json():
    with pytest.raises(dio.SchemaError):
        dio.loads("{not json")


def test_bad_prime():
    with pytest.raises(dio.SchemaError):
        dio.load_obj({"field": {"kind": "GF", "p": 4}})


def test_invalid_algebra_rejected_on_load(data_path):
    raw = json.load(open(data_path("dual_numbers.json"), encoding="utf-8"))
    # 1·x = 0 breaks the unit law
    raw["maps"]["mu"]["entries"] = [e for e in raw["maps"]["mu"]["entries"] if e["src"] != "1⊗x"]
    with pytest.raises(dio.SchemaError) as exc:
        dio.load_obj(raw)
    assert exc.value.path == "algebras/dual"


@pytest.mark.parametrize("name", ["dual_numbers.json", "coalgebra.json", "complex.json",
                                  "path_category.json", "cover3.json"])
def test_fixture_round_trip(data_path, name):
    text = open(data_path(name), encoding="utf-8").read()
    doc = dio.loads(text)
    out = dio.save(doc)
    assert out == dio.canonical(text)
    assert dio.save(dio.loads(out)) == out


def test_gf_coefficients_are_reduced(data_path):
    doc = dio.load(data_path("complex.json"))
    saved = json.loads(dio.save(doc))
    coeffs = [e["coeff"] for e in saved["maps"]["bad"]["entries"]]
    assert coeffs == ["1", "2"]


names = st.sampled_from(["a", "b", "c", "d"])


@st.composite
def documents(draw):
    p = draw(st.sampled_from([None, 2, 3, 7]))
    field = {"kind": "QQ"} if p is None else {"kind": "GF", "p": p}
    basis = [{"name": n, "deg": draw(st.integers(-2, 2))}
             for n in draw(st.lists(names, min_size=1, max_size=4, unique=True))]
    entries = []
    for s in basis:
        for t in basis:
            if t["deg"] - s["deg"] == 1 and draw(st.booleans()):
                num = draw(st.integers(-9, 9))
                den = draw(st.sampled_from([1, 1, 5, 11]))
                entries.append({"src": s["name"], "dst": t["name"],
                                "coeff": "%d/%d" % (num, den) if den != 1 else str(num)})
    draw(st.randoms()).shuffle(entries)
    return {"field": field, "spaces": {"V": {"basis": basis}},
            "maps": {"d": {"from": "V", "to": "V", "deg": 1, "entries": entries}}}


@given(documents())
@settings(max_examples=60, deadline=None)
def test_round_trip_is_canonical(raw):
    text = json.dumps(raw)
    doc = dio.loads(text)
    assert dio.save(doc) == dio.canonical(text)
