import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatcomp import completions as comp
from flatcomp import enriched as en
from flatcomp import filters as fl
from flatcomp.harness import enumerate_maps
from flatcomp.quantale import parse_cost

from strategies import spaces

c = parse_cost


def rows(cs):
    return [[str(v) for v in r] for r in cs.space.dist]


def test_a2_p1(a2):
    cs = comp.complete(a2, "p1")
    assert [p.base for p in cs.points] == [("a",), ("b",), ("a", "b")]
    assert rows(cs) == [["0", "1", "0"], ["2", "0", "0"], ["2", "1", "0"]]
    assert cs.space.objects == ("{a}", "{b}", "{a,b}")


def test_a2_p2_is_a2(a2):
    cs = comp.complete(a2, "p2")
    assert [p.base for p in cs.points] == [("a",), ("b",)]
    assert en.find_isometry(a2, cs.space) is not None


def test_z2_p1_and_cauchy(z2):
    assert [p.base for p in comp.complete(z2, "p1").points] == [("u",), ("u", "v")]
    # one point per object up to mutual zero distance; u and v are not isomorphic
    cs = comp.complete(z2, "cauchy")
    assert [p.base for p in cs.points] == [("u",), ("v",)]
    assert en.find_isometry(z2, cs.space) is not None


def test_is_complete_examples(a2):
    assert not comp.is_complete(a2, "p1")
    assert comp.first_unrepresented(a2, "p1").base == ("a", "b")
    assert comp.is_complete(a2, "p2")
    assert comp.is_complete(comp.complete(a2, "p1").space, "p1")


def test_extend_examples(a2, z2):
    const = en.NonexpansiveMap.from_mapping(a2, z2, {"a": "u", "b": "u"})
    ext = comp.extend(const, "p1")
    assert set(ext.assignment) == {0}
    with pytest.raises(comp.TargetNotComplete) as e:
        comp.extend(en.NonexpansiveMap.identity(a2), "p1")
    assert e.value.witness.base == ("a", "b")


def test_unknown_mode(a2):
    with pytest.raises(ValueError):
        comp.complete(a2, "p3")


def test_empty_space():
    e = en.validate_space([], [])
    for mode in comp.MODES:
        assert comp.complete(e, mode).points == ()


def test_report_shape(a2):
    rep = comp.complete(a2, "p1").as_report()
    assert rep == {
        "mode": "p1",
        "points": [["a"], ["b"], ["a", "b"]],
        "dist": [["0", "1", "0"], ["2", "0", "0"], ["2", "1", "0"]],
    }


@given(spaces, st.sampled_from(comp.MODES))
def test_embedding_is_isometric(sp, mode):
    cs = comp.complete(sp, mode)
    e = comp.embed(sp, mode, cs)
    for i in range(len(sp)):
        for j in range(len(sp)):
            assert cs.space.dist[e.assignment[i]][e.assignment[j]] == sp.dist[i][j]
    assert comp.closed_points_ok(cs)


@given(spaces, st.sampled_from(("p1", "p2")))
def test_completion_is_complete_and_retracts(sp, mode):
    cs = comp.complete(sp, mode)
    assert comp.is_complete(cs.space, mode)
    # the identity extends to a retraction of the second completion onto the first
    again = comp.complete(cs.space, mode)
    r = comp.extend(en.NonexpansiveMap.identity(cs.space), mode, again)
    e = comp.embed(cs.space, mode, again)
    assert all(r.assignment[e.assignment[i]] == i for i in range(len(cs.space)))


@given(spaces)
def test_cauchy_completion_is_idempotent(sp):
    cs = comp.complete(sp, "cauchy")
    again = comp.complete(cs.space, "cauchy")
    assert en.find_isometry(cs.space, again.space) is not None


def test_p1_completion_is_not_idempotent():
    # a complete space whose own completion is strictly larger
    sp = en.validate_space(["a", "b", "c"], [["0", "0", "0"], ["2", "0", "1/2"], ["2", "1/2", "0"]])
    once = comp.complete(sp, "p1")
    twice = comp.complete(once.space, "p1")
    assert comp.is_complete(once.space, "p1")
    assert (len(once.points), len(twice.points)) == (4, 5)


@given(spaces, st.sampled_from(("p1", "p2")))
def test_points_are_closed_and_distinct_classes(sp, mode):
    cs = comp.complete(sp, mode)
    for p in cs.points:
        assert fl.is_closed(p)
    for p in cs.points:
        for q in cs.points:
            if p != q:
                assert not (fl.filter_leq(p, q) and fl.filter_leq(q, p))


@given(spaces, spaces, st.sampled_from(comp.MODES), st.data())
def test_extension_restricts_to_map(a, b, mode, data):
    maps = list(enumerate_maps(a, b))
    if not maps or not comp.is_complete(b, mode):
        return
    f = data.draw(st.sampled_from(maps))
    cs = comp.complete(a, mode)
    ext = comp.extend(f, mode, cs)
    e = comp.embed(a, mode, cs)
    for i in range(len(a)):
        got, want = ext.assignment[e.assignment[i]], f.assignment[i]
        assert b.dist[got][want].num == 0 and b.dist[want][got].num == 0
