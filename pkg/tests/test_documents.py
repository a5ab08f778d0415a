import json

import pytest
from hypothesis import given

from flatcomp import documents as docs
from flatcomp.enriched import LeftModule, RightModule, SpaceError, yoneda
from flatcomp.filters import PrincipalFilter
from flatcomp.preorders import validate_preorder

from strategies import spaces


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


@given(spaces)
def test_space_round_trip(sp):
    assert docs.space_from_doc(json.loads(docs.dumps(docs.space_to_doc(sp)))) == sp


def test_costs_may_be_integers_or_strings():
    sp = docs.space_from_doc({"objects": ["a", "b"], "dist": [[0, "1/2"], ["inf", 0]]})
    assert str(sp.d("a", "b")) == "1/2"


@pytest.mark.parametrize(
    "doc",
    [
        {"objects": ["a"]},
        {"objects": ["a"], "dist": [[0, 1]]},
        {"objects": ["a"], "dist": [[True]]},
        {"objects": ["a"], "dist": [[-1]]},
        {"objects": ["a"], "dist": [["x"]]},
        {"objects": [1], "dist": [[0]]},
        [],
    ],
)
def test_bad_space_documents(doc):
    with pytest.raises(docs.DocumentError):
        docs.space_from_doc(doc)


def test_invalid_space_raises_space_error():
    with pytest.raises(SpaceError):
        docs.space_from_doc({"objects": ["a", "b"], "dist": [[0, 1], [2, 1]]})


def test_malformed_json_reports_position(tmp_path):
    p = write(tmp_path, "bad.json", '{"objects": [\n  "a",\n  ]\n}')
    with pytest.raises(docs.DocumentError) as e:
        docs.load_json(p)
    assert "line 3" in str(e.value) and "column" in str(e.value)


def test_space_by_relative_path(tmp_path):
    write(tmp_path, "A2.json", {"objects": ["a", "b"], "dist": [["0", "1"], ["2", "0"]]})
    p = write(tmp_path, "f.json", {"space": "A2.json", "base": ["b", "a"]})
    f = docs.filter_from_doc(docs.load_json(p), str(tmp_path))
    assert f.base == ("a", "b")
    assert docs.filter_to_doc(f)["base"] == ["a", "b"]


def test_module_round_trip(a2):
    m = yoneda(a2, "a")
    assert docs.module_from_doc(docs.module_to_doc(m)) == m
    r = RightModule(a2, m.values[::-1])
    back = docs.module_from_doc(json.loads(docs.dumps(docs.module_to_doc(r))))
    assert isinstance(back, RightModule) and back == r
    with pytest.raises(docs.DocumentError):
        docs.module_from_doc({"space": docs.space_to_doc(a2), "values": {"a": "0", "b": "2"}, "side": "up"})


def test_map_round_trip(a2, z2):
    d = {"source": docs.space_to_doc(a2), "target": docs.space_to_doc(z2), "map": {"a": "u", "b": "u"}}
    g = docs.map_from_doc(d)
    assert docs.map_to_doc(g) == d


def test_preorder_round_trip(p3):
    back = docs.preorder_from_doc(docs.preorder_to_doc(p3))
    assert back.le == p3.le and back.objects == p3.objects
    with pytest.raises(docs.DocumentError):
        docs.preorder_from_doc({"objects": ["x"], "le": [["x"]]})


def test_bool_members(p3):
    pdoc = docs.preorder_to_doc(p3)
    p, m = docs.bool_members_from_doc({"space": pdoc, "values": {"x": 1, "y": 1, "z": 0}})
    assert m == ("x", "y")
    _, m = docs.bool_members_from_doc({"space": pdoc, "members": ["z"]})
    assert m == ("z",)
    with pytest.raises(docs.DocumentError):
        docs.bool_members_from_doc({"space": pdoc, "values": {"x": 2, "y": 1, "z": 0}})
    with pytest.raises(docs.DocumentError):
        docs.bool_members_from_doc({"space": pdoc, "values": {"x": 1}})


def test_sequence_doc(z2):
    s = docs.sequence_from_doc({"space": docs.space_to_doc(z2), "prefix": ["u"], "cycle": ["v"]})
    assert s.prefix == ("u",) and s.cycle == ("v",)


def test_to_plain(a2):
    m = yoneda(a2, "a")
    assert docs.to_plain({"m": m.values, "k": ("a",)}) == {"m": ["0", "2"], "k": ["a"]}
