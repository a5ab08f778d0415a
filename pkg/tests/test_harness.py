import json

import pytest

from flatcomp import filters as fl
from flatcomp.documents import dumps
from flatcomp.enriched import validate_space
from flatcomp.harness import (
    InstanceGrid,
    UnknownSuite,
    enumerate_modules,
    enumerate_preorders,
    enumerate_right_modules,
    enumerate_spaces,
    get_suite,
    parse_grid,
    run_suite,
    suite_names,
)
from flatcomp.quantale import parse_cost

SMALL = {
    "quantale-laws": None,
    "rbar-3.53-finite": 3,
    "sym-3.33": 3,
    "sym-3.60": 3,
    "kan-2.17": 2,
    "extend-3.50": 2,
    "bool-4.2": 2,
    "bool-4.3": 2,
}


def grid(text):
    return parse_grid(text)


def test_space_counts_small_grids():
    assert len(list(enumerate_spaces(InstanceGrid(1, grid("0,1,inf")), sizes=[1]))) == 1
    assert len(list(enumerate_spaces(InstanceGrid(2), sizes=[2], values=grid("0,1")))) == 4
    assert len(list(enumerate_spaces(InstanceGrid(2, grid("0,1,2,inf")), sizes=[2]))) == 16


def test_space_counts_default_grid():
    g = InstanceGrid(3)
    labelled = [len(list(enumerate_spaces(g, sizes=[n]))) for n in range(4)]
    iso = [len(list(enumerate_spaces(g, sizes=[n], up_to_iso=True))) for n in range(4)]
    sym = [len(list(enumerate_spaces(g, sizes=[n], symmetric=True))) for n in range(4)]
    two = [len(list(enumerate_spaces(g, sizes=[n], bool_only=True))) for n in range(4)]
    assert labelled == [1, 1, 25, 2505]
    assert iso == [1, 1, 15, 469]
    assert sym == [1, 1, 5, 41]
    assert two == [1, 1, 4, 29]


def test_enumerated_spaces_are_valid_and_distinct():
    seen = set()
    for sp in enumerate_spaces(InstanceGrid(3), sizes=[3]):
        validate_space(sp.objects, sp.dist)
        seen.add(sp.dist)
    assert len(seen) == 2505


def test_grid_must_contain_zero_and_inf():
    with pytest.raises(ValueError):
        InstanceGrid(2, grid("0,1"))
    with pytest.raises(ValueError):
        InstanceGrid(2, grid("1,inf"))


def test_module_counts():
    one = validate_space(["i"], [["0"]])
    assert len(list(enumerate_modules(one, grid("0,1,inf")))) == 3
    a2 = validate_space(["a", "b"], [["0", "1"], ["2", "0"]])
    vals = [tuple(str(v) for v in m.values) for m in enumerate_modules(a2, grid("0,1,2"))]
    assert len(vals) == 8
    assert ("0", "2") in vals and ("2", "0") not in vals
    rvals = [tuple(str(v) for v in m.values) for m in enumerate_right_modules(a2, grid("0,1,2"))]
    assert len(rvals) == 8 and ("2", "0") in rvals and ("0", "2") not in rvals


def test_preorder_counts():
    per_size = [len(list(enumerate_preorders(n))) for n in range(5)]
    assert [b - a for a, b in zip([0] + per_size, per_size)] == [1, 1, 4, 29, 355]
    assert [len(list(enumerate_preorders(n, up_to_iso=True))) for n in range(5)] == [1, 2, 5, 14, 47]


def test_registry_lists_every_suite():
    names = suite_names()
    assert len(names) == 22 and len(set(names)) == 22
    assert {"inclusion-chain", "eq-3.21", "eq-3.43", "bool-4.1", "dm-cross"} <= set(names)
    with pytest.raises(UnknownSuite):
        get_suite("no-such-suite")


@pytest.mark.parametrize("name", sorted(SMALL), ids=lambda n: n.split("-")[0])
def test_fast_suites_pass_on_reduced_grids(name):
    n = SMALL[name]
    g = None if n is None else get_suite(name).default_instance_grid().with_max(n)
    rep = run_suite(name, grid=g)
    assert rep.passed and rep.instances > 0


def test_every_suite_sees_non_trivial_instances():
    singletons = 1
    for name in suite_names():
        s = get_suite(name)
        g = s.default_instance_grid().with_max(min(s.default_max, 2) if s.default_max else 0)
        if name in ("quantale-laws", "rbar-3.53-finite"):
            g = None
        rep = run_suite(name, grid=g)
        assert rep.passed, name
        assert rep.instances > singletons, name


def test_report_is_deterministic():
    g = InstanceGrid(2)
    a = dumps(run_suite("eq-3.21", grid=g).as_dict())
    b = dumps(run_suite("eq-3.21", grid=g).as_dict())
    assert a == b


def _flipped_is_flat(f):
    # the witness quantifier flipped: every base point has some zero-distance target
    d = f.space.dist
    return all(any(d[x][y].num == 0 for y in f.idx) for x in f.idx)


def test_mutation_is_caught_and_minimized(monkeypatch):
    monkeypatch.setattr(fl, "is_flat", _flipped_is_flat)
    rep = run_suite("inclusion-chain", grid=InstanceGrid(3))
    assert not rep.passed and rep.failure_count > 0
    doc = rep.failures[0]["counterexample"]
    assert len(doc["instance"]["space"]["objects"]) <= 3
    # the emitted document reproduces the failure on its own
    again = run_suite("inclusion-chain", instance=json.loads(json.dumps(doc)))
    assert again.instances == 1 and not again.passed


def test_mutated_bool_flatness_is_caught(monkeypatch):
    from flatcomp import preorders as po

    real = po.bool_flat_check

    def broken(p, members):
        r = real(p, members)
        return po.BoolFlat(p1=r.p1, p2=r.p1, module_ok=r.module_ok)

    monkeypatch.setattr(po, "bool_flat_check", broken)
    rep = run_suite("bool-4.1", grid=InstanceGrid(3))
    assert not rep.passed
    doc = rep.failures[0]["counterexample"]
    assert len(doc["instance"]["preorder"]["objects"]) <= 3
    assert not run_suite("bool-4.1", instance=doc).passed


def test_instance_rerun_of_passing_case():
    doc = {"suite": "eq-3.43", "grid": ["0", "1", "inf"], "instance": {"space": {"objects": ["a", "b"], "dist": [["0", "1"], ["inf", "0"]]}}}
    rep = run_suite("eq-3.43", instance=doc)
    assert rep.passed and rep.instances == 1


def test_failures_are_capped(monkeypatch):
    monkeypatch.setattr(fl, "is_flat", _flipped_is_flat)
    rep = run_suite("inclusion-chain", grid=InstanceGrid(3), max_reported=2)
    assert len(rep.failures) == 2 and rep.failure_count >= 2


@pytest.mark.parametrize("name", ["kan-2.17", "adjoint-2.6", "bool-bridge"], ids=["kan", "adjoint", "bridge"])
def test_remaining_suites_pass_at_default_size(name):
    rep = run_suite(name)
    assert rep.passed and rep.instances > 1, rep.as_dict()
