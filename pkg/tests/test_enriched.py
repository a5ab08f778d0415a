import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatcomp import enriched as en
from flatcomp.harness import enumerate_modules
from flatcomp.quantale import INF, ZERO, Cost, cost_hom, cost_meet, parse_cost

from conftest import space
from strategies import SPACES_3, spaces

c = parse_cost


def left(sp, *vals):
    return en.LeftModule(sp, [c(str(v)) for v in vals])


def right(sp, *vals):
    return en.RightModule(sp, [c(str(v)) for v in vals])


def test_a2_is_valid(a2):
    assert a2.d("a", "b") == c("1") and a2.d("b", "a") == c("2")
    assert not a2.is_symmetric()


def test_zero_diagonal_violation():
    with pytest.raises(en.ZeroDiagonalViolation) as e:
        space(["a", "b"], [[0, 1], [2, 1]])
    assert e.value.x == "b"


def test_triangle_violation():
    with pytest.raises(en.TriangleViolation) as e:
        space(["p", "q", "r"], [[0, 1, 5], [9, 0, 1], [9, 9, 0]])
    assert (e.value.x, e.value.y, e.value.z) == ("p", "q", "r")


def test_all_violations_listed():
    errs = en.space_violations(["p", "q"], [[c("1"), c("0")], [c("0"), c("1")]])
    assert [type(e) for e in errs[:2]] == [en.ZeroDiagonalViolation, en.ZeroDiagonalViolation]


def test_empty_and_unknown(a2):
    e = space([], [])
    assert len(e) == 0
    with pytest.raises(en.UnknownObject):
        a2.index("zz")


def test_duplicate_objects_rejected():
    with pytest.raises(ValueError):
        space(["a", "a"], [[0, 0], [0, 0]])


def test_hom_presheaf_examples(a2):
    assert en.hom_presheaf(left(a2, 0, 1), left(a2, 1, 0)) == c("1")
    m = left(a2, 0, 1)
    assert en.hom_presheaf(m, m) == ZERO
    assert en.hom_presheaf(en.yoneda(a2, "a"), left(a2, 1, 0)) == c("1")


def test_compose_examples(a2):
    assert en.compose_modules(right(a2, 0, 1), left(a2, 1, 0)) == c("1")
    assert en.compose_modules(en.co_yoneda(a2, "a"), en.yoneda(a2, "a")) == ZERO
    e = space([], [])
    assert en.compose_modules(en.RightModule(e, []), en.LeftModule(e, [])) == INF


def test_yoneda_examples(a2):
    assert en.yoneda(a2, "a").as_dict() == {"a": c("0"), "b": c("2")}
    assert en.yoneda(a2, "b").as_dict() == {"a": c("1"), "b": c("0")}
    assert en.co_yoneda(a2, "a").values == (c("0"), c("1"))


def test_module_laws_enforced(a2):
    with pytest.raises(en.ModuleViolation):
        left(a2, 0, 3)
    with pytest.raises(en.ModuleViolation):
        right(a2, 0, 2)
    with pytest.raises(en.ModuleViolation):
        left(a2, 2, 0)
    left(a2, 0, 2)
    right(a2, 2, 0)


def test_right_adjoint_examples(a2):
    n = en.right_adjoint_check(en.yoneda(a2, "a"))
    assert n is not None and n.values == en.co_yoneda(a2, "a").values
    assert en.right_adjoint_check(left(a2, 0, 0)) is None
    one = space(["i"], [[0]])
    assert en.right_adjoint_check(left(one, 0)).values == (ZERO,)


def test_lan_examples(a2, z2):
    g = en.NonexpansiveMap.from_mapping(a2, z2, {"a": "u", "b": "u"})
    assert en.lan(g, en.yoneda(a2, "a")).values == (c("0"), c("3"))
    ident = en.NonexpansiveMap.identity(a2)
    m = left(a2, 1, 0)
    assert en.lan(ident, m) == m
    for x in a2.objects:
        assert en.lan(g, en.yoneda(a2, x)) == en.yoneda(z2, g(x))


def test_weighted_colimit_examples(a2, z2):
    ident = en.NonexpansiveMap.identity(a2)
    assert en.weighted_colimit(en.yoneda(a2, "a"), ident) == "a"
    assert en.weighted_colimit(left(a2, 0, 0), ident) is None
    assert en.weighted_colimit(left(z2, 0, 0), en.NonexpansiveMap.identity(z2)) == "v"


def test_nonexpansive_map_rejects(a2, z2):
    with pytest.raises(en.NonexpansiveViolation):
        en.NonexpansiveMap.from_mapping(z2, a2, {"u": "a", "v": "b"})
    with pytest.raises(en.UnknownObject):
        en.NonexpansiveMap.from_mapping(a2, z2, {"a": "u", "b": "w"})


def test_p1_flat_examples(a2):
    assert en.is_p1_flat(en.yoneda(a2, "a"))
    assert en.is_p1_flat(left(a2, 0, 0))
    assert not en.is_p1_flat(left(a2, "1/2", "3/2"))


def test_p2_flat_examples(a2, z2):
    assert en.is_p2_flat(en.yoneda(a2, "b"))
    assert not en.is_p2_flat(left(a2, 0, 0))
    assert en.is_p2_flat(left(z2, 0, 0))


def test_falsify_examples(a2):
    fam = [en.co_yoneda(a2, "a"), en.co_yoneda(a2, "b")]
    r = en.falsify_flat_conditions(left(a2, 0, 0), ZERO, fam, conditions=("2",))
    assert r is not None and r.condition == "2"
    assert (r.lhs, r.rhs) == (c("1"), ZERO)
    assert en.falsify_flat_conditions(en.yoneda(a2, "a"), c("7"), [en.co_yoneda(a2, "b")]) is None


def test_falsify_empty_family_is_terminal_condition(a2):
    bad = left(a2, "1/2", "3/2")
    r = en.falsify_flat_conditions(bad, ZERO, [], conditions=("2",))
    assert r is not None and r.lhs == c("1/2") and r.rhs == ZERO
    assert en.falsify_flat_conditions(left(a2, 0, 0), ZERO, [], conditions=("2",)) is None


def test_find_isometry(a2):
    swapped = space(["b", "a"], [[0, 2], [1, 0]])
    assert en.find_isometry(a2, swapped) == {"a": "a", "b": "b"}
    assert en.find_isometry(a2, space(["a", "b"], [[0, 1], [1, 0]])) is None


@given(spaces, st.data())
def test_representables_are_modules_and_flat(sp, data):
    x = data.draw(st.sampled_from(sp.objects))
    y = en.yoneda(sp, x)
    assert y.violation() is None
    assert en.co_yoneda(sp, x).violation() is None
    assert en.is_p2_flat(y)
    assert en.right_adjoint_check(y) is not None


@given(spaces, st.data())
def test_yoneda_lemma(sp, data):
    # hom(yoneda(a), M) = M(a)
    mods = list(enumerate_modules(sp, (ZERO, c("1"), INF)))
    m = data.draw(st.sampled_from(mods))
    for x in sp.objects:
        assert en.hom_presheaf(en.yoneda(sp, x), m) == m[x]


@given(spaces)
def test_yoneda_is_isometric(sp):
    for x in sp.objects:
        for y in sp.objects:
            assert en.hom_presheaf(en.yoneda(sp, x), en.yoneda(sp, y)) == sp.d(x, y)


@given(spaces, st.data())
def test_p1_flat_means_distance_to_zero_set(sp, data):
    mods = list(enumerate_modules(sp, (ZERO, c("1/2"), c("1"), c("2"), INF)))
    m = data.draw(st.sampled_from(mods))
    z = en.zero_set(m)
    expect = bool(z) and all(m.values[i] == cost_meet(sp.dist[i][j] for j in z) for i in range(len(sp)))
    assert en.is_p1_flat(m) == expect
    if en.is_p2_flat(m):
        assert en.is_p1_flat(m)


def test_module_enumeration_respects_laws():
    for sp in SPACES_3[:40]:
        for m in enumerate_modules(sp, (ZERO, c("1"), INF)):
            assert m.violation() is None
