import json
from pathlib import Path

import pytest

from svconvex import fileio
from svconvex import instances as I
from svconvex.errors import InputError

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = sorted((ROOT / "fixtures").glob("*.json"))


def doc(**over):
    d = {"version": 1,
         "space": {"m": 2, "cone_rays": [["1", "0"], ["0", "1"]]},
         "objects": {"g": {"kind": "setfn", "n": 1,
                           "epi": {"dim": 3, "A": [["-1", "1", "0"]], "b": ["0"]}}}}
    d.update(over)
    return d


def code_of(d, **kw):
    with pytest.raises(InputError) as err:
        fileio.parse(json.dumps(d) if not isinstance(d, str) else d, **kw)
    return err.value


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_fixture_roundtrip_is_byte_stable(path):
    text = path.read_text()
    assert fileio.emit(fileio.parse(text)) == text


def test_schema_copy_in_docs_matches_package():
    assert json.loads((ROOT / "docs" / "schema-v1.json").read_text()) == fileio.schema()


def test_parse_fixture_objects():
    prob = fileio.parse((ROOT / "fixtures" / "abs2.json").read_text())
    assert prob.get("setfn") == I.abs2()
    assert prob.space == I.orthant2()


def test_graph_form_is_lifted():
    d = doc()
    d["objects"]["g"] = {"kind": "setfn", "n": 1,
                         "graph": {"dim": 3, "vertices": [["0", "0", "1"], ["1", "1", "0"]]}}
    assert fileio.parse(json.dumps(d)).get("setfn") == I.staircase()


def test_triples_and_directions():
    d = doc(triples=[{"xstar": ["0"], "zstar": ["0", "-1"], "r": "-inf"}],
            directions=[["-1", "-1"]])
    prob = fileio.parse(json.dumps(d))
    xs, zs, r = prob.triples[0]
    assert zs == [0, -1] and r.is_neg_inf
    assert fileio.parse(fileio.emit(prob)).triples == prob.triples


def test_bad_rational():
    d = doc()
    d["objects"]["g"]["epi"]["b"] = ["1/0"]
    e = code_of(d)
    assert e.code == fileio.E_RAT and e.pointer == "/objects/g/epi/b/0"


def test_trivial_cone():
    e = code_of(doc(space={"m": 2, "cone_rays": [["0", "0"]]}))
    assert e.code == fileio.E_CONE


def test_missing_cone_block():
    d = doc()
    del d["space"]
    assert code_of(d).code == fileio.E_CONE


def test_dimension_mismatch():
    d = doc()
    d["objects"]["g"]["epi"]["A"] = [["1", "0"]]
    e = code_of(d)
    assert e.code == fileio.E_DIM and e.pointer == "/objects/g/epi/A/0"


def test_dimension_cap():
    assert code_of(doc(), max_dim=2).code == fileio.E_DIM


def test_schema_violation_carries_pointer():
    d = doc()
    d["objects"]["g"]["epi"]["b"] = [0]
    e = code_of(d)
    assert e.code == fileio.E_SCHEMA and e.pointer == "/objects/g/epi/b/0"


def test_invalid_json():
    assert code_of("{not json").code == fileio.E_JSON


def test_epigraph_not_upward_closed():
    d = doc()
    d["objects"]["g"]["epi"] = {"dim": 3, "vertices": [["0", "0", "0"]]}
    assert code_of(d).code == fileio.E_SCHEMA
