"""Named verification suites.

Each suite enumerates small instances, checks a family of claims on each
one, and reports failures together with a minimized instance document that
``run_suite(..., instance=doc)`` re-checks on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .. import completions as comp
from .. import enriched as en
from .. import filters as fl
from .. import preorders as po
from ..documents import preorder_from_doc, preorder_to_doc, space_from_doc, space_to_doc
from ..quantale import (
    INF,
    ZERO,
    Cost,
    cost_hom,
    cost_join,
    cost_meet,
    cost_tensor,
    parse_cost,
    truth_tensor,
)
from . import oracles as orc
from .enumeration import (
    DEFAULT_GRID,
    InstanceGrid,
    enumerate_maps,
    enumerate_modules,
    enumerate_monotone_maps,
    enumerate_preorders,
    enumerate_right_modules,
    enumerate_spaces,
)

__all__ = ["UnknownSuite", "Suite", "SuiteReport", "SUITES", "suite_names", "get_suite", "run_suite"]


class UnknownSuite(LookupError):
    pass


Failure = Tuple[str, Any]


# --------------------------------------------------------------------------
# instance kinds: encoding, decoding and shrinking


def _drop_object(space: en.QuasiMetricSpace) -> Iterator[en.QuasiMetricSpace]:
    for x in space.objects:
        yield space.subspace([y for y in space.objects if y != x])


def _drop_preorder_object(p: po.Preorder) -> Iterator[po.Preorder]:
    n = len(p)
    for k in range(n):
        keep = [i for i in range(n) if i != k]
        yield po.Preorder(
            tuple(p.objects[i] for i in keep), tuple(tuple(p.le[i][j] for j in keep) for i in keep), check=False
        )


def _pair_shrink(pair, drop):
    a, b = pair
    for a2 in drop(a):
        yield (a2, b)
    for b2 in drop(b):
        yield (a, b2)


@dataclass(frozen=True)
class Kind:
    encode: Callable[[Any], dict]
    decode: Callable[[dict], Any]
    shrink: Callable[[Any], Iterable[Any]]


KINDS: Dict[str, Kind] = {
    "cost": Kind(lambda x: {"x": str(x)}, lambda d: parse_cost(d["x"]), lambda x: ()),
    "cost-set": Kind(
        lambda s: {"values": [str(v) for v in s]},
        lambda d: tuple(parse_cost(v) for v in d["values"]),
        lambda s: (s[:k] + s[k + 1 :] for k in range(len(s))),
    ),
    "space": Kind(lambda s: {"space": space_to_doc(s)}, lambda d: space_from_doc(d["space"]), _drop_object),
    "space-pair": Kind(
        lambda p: {"source": space_to_doc(p[0]), "target": space_to_doc(p[1])},
        lambda d: (space_from_doc(d["source"]), space_from_doc(d["target"])),
        lambda p: _pair_shrink(p, _drop_object),
    ),
    "preorder": Kind(
        lambda p: {"preorder": preorder_to_doc(p)}, lambda d: preorder_from_doc(d["preorder"]), _drop_preorder_object
    ),
    "preorder-pair": Kind(
        lambda p: {"source": preorder_to_doc(p[0]), "target": preorder_to_doc(p[1])},
        lambda d: (preorder_from_doc(d["source"]), preorder_from_doc(d["target"])),
        lambda p: _pair_shrink(p, _drop_preorder_object),
    ),
}


# --------------------------------------------------------------------------
# suite plumbing


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    kind: str
    cases: Callable[[InstanceGrid], Iterable[Any]]
    check: Callable[[Any, Tuple[Cost, ...]], List[Failure]]
    default_max: int
    default_grid: Tuple[Cost, ...] = DEFAULT_GRID

    def default_instance_grid(self) -> InstanceGrid:
        return InstanceGrid(self.default_max, self.default_grid)


@dataclass
class SuiteReport:
    suite: str
    instances: int
    failures: List[dict] = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "pass": self.passed,
        }


SUITES: Dict[str, Suite] = {}


def register(suite: Suite) -> Suite:
    SUITES[suite.name] = suite
    return suite


def suite_names() -> List[str]:
    return list(SUITES)


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None


def _minimize(suite: Suite, case, claim: str, grid: Tuple[Cost, ...]):
    kind = KINDS[suite.kind]
    improved = True
    while improved:
        improved = False
        for smaller in kind.shrink(case):
            if any(c == claim for c, _ in suite.check(smaller, grid)):
                case = smaller
                improved = True
                break
    return case


def run_suite(
    name: str,
    grid: Optional[InstanceGrid] = None,
    instance: Optional[dict] = None,
    max_reported: int = 10,
) -> SuiteReport:
    """Check every instance; failures carry a minimized re-runnable document.

    ``instance`` is a counterexample document as emitted in a report; its
    grid is used unless ``grid`` is given.
    """
    suite = get_suite(name)
    kind = KINDS[suite.kind]
    if instance is not None:
        if grid is not None:
            values = grid.cost_grid
        elif "grid" in instance:
            values = tuple(parse_cost(v) for v in instance["grid"])
        else:
            values = suite.default_grid
        grid = InstanceGrid(0, values)
        cases: Iterable = [kind.decode(instance["instance"])]
    else:
        grid = grid or suite.default_instance_grid()
        cases = suite.cases(grid)
    report = SuiteReport(name, 0)
    for case in cases:
        report.instances += 1
        for claim, detail in suite.check(case, grid.cost_grid):
            report.failure_count += 1
            if len(report.failures) < max_reported:
                small = _minimize(suite, case, claim, grid.cost_grid)
                again = [d for c, d in suite.check(small, grid.cost_grid) if c == claim]
                report.failures.append(
                    {
                        "claim": claim,
                        "detail": _plain(again[0] if again else detail),
                        "counterexample": {
                            "suite": name,
                            "grid": [str(v) for v in grid.cost_grid],
                            "instance": kind.encode(small),
                        },
                    }
                )
    return report


def _plain(x):
    if isinstance(x, Cost):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, fl.PrincipalFilter):
        return list(x.base)
    if isinstance(x, (en.LeftModule, en.RightModule)):
        return {k: str(v) for k, v in x.as_dict().items()}
    if isinstance(x, frozenset):
        return sorted(x)
    return x


def _spaces(grid: InstanceGrid, **kw) -> Iterator[en.QuasiMetricSpace]:
    return enumerate_spaces(grid, up_to_iso=True, **kw)


def _sizes(grid: InstanceGrid, cap: Optional[int] = None) -> range:
    n = grid.max_objects if cap is None else min(cap, grid.max_objects)
    return range(n + 1)


# --------------------------------------------------------------------------
# quantale


def _check_quantale(x: Cost, grid) -> List[Failure]:
    out: List[Failure] = []
    if cost_tensor(x, ZERO) != x or cost_tensor(ZERO, x) != x:
        out.append(("unit", {"x": x}))
    for y in grid:
        if cost_tensor(x, y) != cost_tensor(y, x):
            out.append(("commutativity", {"x": x, "y": y}))
        for z in grid:
            if cost_tensor(cost_tensor(x, y), z) != cost_tensor(x, cost_tensor(y, z)):
                out.append(("associativity", {"x": x, "y": y, "z": z}))
            if not x.is_inf and (cost_tensor(x, z) >= y) != (z >= cost_hom(x, y)):
                out.append(("adjunction", {"x": x, "y": y, "z": z}))
    for k in range(1, len(grid) + 1):
        for s in combinations(grid, k):
            if cost_hom(x, cost_meet(s)) != cost_meet(cost_hom(x, v) for v in s):
                out.append(("hom-preserves-meets", {"x": x, "family": list(s)}))
            # a finite join is always attained by a member
            if cost_hom(cost_join(s), x) != cost_meet(cost_hom(v, x) for v in s):
                out.append(("hom-reverses-joins", {"v": x, "family": list(s)}))
    return out


register(Suite(
    "quantale-laws",
    "tensor/hom adjunction, monoid laws, hom against non-empty meets and attained joins",
    "cost",
    lambda grid: iter(grid.cost_grid),
    _check_quantale,
    0,
    tuple(parse_cost(t) for t in ("0", "1/3", "1/2", "1", "2", "inf")),
))


# --------------------------------------------------------------------------
# flatness decision procedures against the limit-preservation equations


def _pointwise_max(a: en.RightModule, b: en.RightModule) -> en.RightModule:
    return en.RightModule(a.space, tuple(max(x, y) for x, y in zip(a.values, b.values)), check=False)


def _check_flat_soundness(space: en.QuasiMetricSpace, grid) -> List[Failure]:
    out: List[Failure] = []
    reps = [en.co_yoneda(space, a) for a in space.objects]
    maxes = [_pointwise_max(a, b) for a, b in combinations(reps, 2)]
    rights = list(enumerate_right_modules(space, grid))
    pool = reps + maxes
    families: List[list] = [[n] for n in pool] + [list(p) for p in combinations(pool, 2)]
    families += [[r, n] for r in reps for n in rights]
    cot_members = reps + rights
    for m in enumerate_modules(space, grid):
        p1, p2 = en.is_p1_flat(m), en.is_p2_flat(m)
        w13 = en.falsify_flat_conditions(m, ZERO, [], ("1",))
        if w13 is None:
            for v in grid:
                w13 = en.falsify_flat_conditions(m, v, cot_members, ("3",))
                if w13 is not None:
                    break
        w2 = en.falsify_flat_conditions(m, ZERO, [], ("2",))
        if w2 is None:
            for fam in families:
                w2 = en.falsify_flat_conditions(m, ZERO, fam, ("2",))
                if w2 is not None:
                    break
        if p2 and not p1:
            out.append(("p2-implies-p1", {"module": m}))
        if p1 != (w13 is None):
            out.append(("p1-agrees-with-witnesses", {"module": m, "p1": p1, "witness": _report(w13)}))
        if p2 != (w13 is None and w2 is None):
            out.append(("p2-agrees-with-witnesses", {"module": m, "p2": p2, "witness": _report(w2 or w13)}))
    return out


def _report(r: Optional[en.CounterexampleReport]):
    if r is None:
        return None
    return {"condition": r.condition, "lhs": r.lhs, "rhs": r.rhs, "v": r.v, "member": r.member}


register(Suite(
    "flat-soundness",
    "closed-form P1/P2 flatness tests agree with sampled limit-preservation witnesses",
    "space",
    lambda grid: _spaces(grid),
    _check_flat_soundness,
    3,
))


# --------------------------------------------------------------------------
# filter equalities


def _filters_with_members(space):
    return [(f, orc.members(f)) for f in fl.all_filters(space)]


def _lim_minus(ms, fn) -> Cost:
    return cost_join(cost_meet(fn(x) for x in m) for m in ms)


def _lim_plus(ms, fn) -> Cost:
    return cost_meet(cost_join(fn(x) for x in m) for m in ms)


def _check_lower_composite(space, grid) -> List[Failure]:
    out: List[Failure] = []
    rights = list(enumerate_right_modules(space, grid))
    for f, ms in _filters_with_members(space):
        mm = fl.m_minus(f)
        for n in rights:
            lhs = en.compose_modules(n, mm)
            rhs = _lim_minus(ms, n.values.__getitem__)
            if lhs != rhs:
                out.append(("composite-is-lower-limit", {"filter": f, "right_module": n, "lhs": lhs, "rhs": rhs}))
    return out


def _check_hom_upper_limit(space, grid) -> List[Failure]:
    out: List[Failure] = []
    lefts = list(enumerate_modules(space, grid))
    for f, ms in _filters_with_members(space):
        mm = fl.m_minus(f)
        for m in lefts:
            lhs = en.hom_presheaf(mm, m)
            rhs = _lim_plus(ms, m.values.__getitem__)
            if lhs != rhs:
                out.append(("presheaf-hom-is-upper-limit", {"filter": f, "module": m, "lhs": lhs, "rhs": rhs}))
    return out


def _check_filter_distance(space, grid) -> List[Failure]:
    out: List[Failure] = []
    d = space.dist
    fs = _filters_with_members(space)
    for f1, ms1 in fs:
        for f2, ms2 in fs:
            a = fl.filter_distance(f1, f2)
            b = en.hom_presheaf(fl.m_minus(f1), fl.m_minus(f2))
            c = _lim_plus(ms1, lambda x: _lim_minus(ms2, lambda y: d[x][y]))
            if not (a == b == c):
                out.append(("filter-distance", {"f1": f1, "f2": f2, "formula": a, "presheaf": b, "limits": c}))
    return out


def _check_cauchy_commute(space, grid) -> List[Failure]:
    out: List[Failure] = []
    d = space.dist
    fs = _filters_with_members(space)
    for f1, ms1 in fs:
        if not fl.classify(f1).cauchy:
            continue
        for f2, ms2 in fs:
            a = fl.filter_distance(f1, f2)
            c = _lim_minus(ms2, lambda y: _lim_plus(ms1, lambda x: d[x][y]))
            if a != c:
                out.append(("limits-commute-for-cauchy", {"f1": f1, "f2": f2, "distance": a, "swapped": c}))
    return out


def _check_cauchy_lifting(space, grid) -> List[Failure]:
    out: List[Failure] = []
    lefts = list(enumerate_modules(space, grid))
    for f in fl.all_filters(space):
        if not fl.classify(f).cauchy:
            continue
        rp, rm = fl.m_r_plus(f), fl.m_r_minus(f)
        if rp != rm:
            out.append(("right-modules-coincide", {"filter": f, "plus": rp, "minus": rm}))
        mm = fl.m_minus(f)
        for n in lefts:
            a = en.hom_presheaf(mm, n)
            b = en.compose_modules(rp, n)
            if a != b:
                out.append(("lifting-is-composition", {"filter": f, "module": n, "hom": a, "composite": b}))
    return out


for _name, _desc, _fn in (
    ("eq-3.21", "composite with the lower module equals the lower filter limit", _check_lower_composite),
    ("eq-3.42", "presheaf hom out of the lower module equals the upper filter limit", _check_hom_upper_limit),
    ("eq-3.43", "filter distance equals the presheaf hom and the iterated limits", _check_filter_distance),
    ("eq-3.44", "for Cauchy first filters the iterated limits commute", _check_cauchy_commute),
    ("eq-3.45", "for Cauchy filters lifting equals composition with the right adjoint", _check_cauchy_lifting),
):
    register(Suite(_name, _desc, "space", lambda grid: _spaces(grid), _fn, 3))


# --------------------------------------------------------------------------
# Galois connection and reflection


def _check_galois(space, grid) -> List[Failure]:
    out: List[Failure] = []
    filters = _filters_with_members(space)
    for m in enumerate_modules(space, grid):
        if not en.is_p1_flat(m):
            continue
        g = fl.gamma(m)
        gms = orc.members(g)
        for f, _ in filters:
            contains = all(f.contains(tuple(space.objects[i] for i in x)) for x in gms)
            arrow = en.hom_presheaf(fl.m_minus(f), m).num == 0
            if contains != arrow:
                out.append(("galois", {"filter": f, "module": m, "contains": contains, "arrow": arrow}))
    return out


def _check_reflection(space, grid) -> List[Failure]:
    out: List[Failure] = []
    for m in enumerate_modules(space, grid):
        g = fl.gamma(m)
        round_trip = g is not None and fl.m_minus(g) == m
        if en.is_p1_flat(m) != round_trip:
            out.append(("p1-flat-iff-fixed", {"module": m, "p1": en.is_p1_flat(m), "round_trip": round_trip}))
    closed = []
    for f in fl.all_filters(space):
        mm = fl.m_minus(f)
        c = fl.closure(f)
        if fl.gamma(mm) != c:
            out.append(("gamma-of-lower-is-closure", {"filter": f}))
        if fl.closure(c) != c or not set(f.idx) <= set(c.idx) or fl.m_minus(c) != mm:
            out.append(("closure-laws", {"filter": f, "closure": c}))
        if not en.is_p1_flat(mm):
            out.append(("lower-module-is-p1-flat", {"filter": f}))
        if not (fl.filter_leq(f, c) and fl.filter_leq(c, f)):
            out.append(("closure-isomorphic", {"filter": f}))
        if fl.is_closed(f):
            closed.append(f)
    for f1, f2 in combinations(closed, 2):
        if fl.filter_distance(f1, f2).num == 0 and fl.filter_distance(f2, f1).num == 0:
            out.append(("closed-filters-separated", {"f1": f1, "f2": f2}))
    return out


register(Suite("galois-3.20", "filter contains the generated filter iff the lower module maps to the module",
               "space", lambda grid: _spaces(grid), _check_galois, 3))
register(Suite("reflection-3.15", "lower module and generated filter are mutually inverse up to closure",
               "space", lambda grid: _spaces(grid), _check_reflection, 3))


# --------------------------------------------------------------------------
# classification chain


def _check_chain(space, grid) -> List[Failure]:
    out: List[Failure] = []
    eps = orc.epsilon_for(space) if len(space) <= 3 else None
    for f in fl.all_filters(space):
        c = fl.classify(f)
        if (c.cauchy and not c.flat) or (c.flat and not c.weakly_flat):
            out.append(("cauchy-flat-weakly-flat", {"filter": f, "class": c.as_dict()}))
        if c.flat != en.is_p2_flat(fl.m_minus(f)):
            out.append(("flat-iff-lower-module-p2", {"filter": f}))
        if eps is not None:
            ref = (orc.cauchy_at(f, eps), orc.flat_at(f, eps), orc.weakly_flat_at(f, eps))
            if ref != (c.cauchy, c.flat, c.weakly_flat):
                out.append(("classification-matches-definition",
                            {"filter": f, "class": c.as_dict(), "epsilon": eps, "reference": list(ref)}))
    return out


register(Suite("inclusion-chain", "Cauchy implies flat implies weakly flat, cross-checked against the epsilon definitions",
               "space", lambda grid: _spaces(grid), _check_chain, 4))


# --------------------------------------------------------------------------
# symmetric spaces


def _check_sym_collapse(space, grid) -> List[Failure]:
    out: List[Failure] = []
    filters = fl.all_filters(space)
    cauchy = [f for f in filters if fl.is_cauchy(f)]
    for f in filters:
        if fl.is_flat(f) and not fl.is_cauchy(f):
            out.append(("flat-is-cauchy", {"filter": f}))
    mods = {fl.m_minus(f) for f in filters}
    if len(space) <= 4:
        mods.update(enumerate_modules(space, grid))
    for m in sorted(mods, key=lambda m: m.values):
        if en.is_p2_flat(m) and en.right_adjoint_check(m) is None:
            out.append(("p2-flat-is-left-adjoint", {"module": m}))
    closed = {f for f in cauchy if fl.is_closed(f)}
    minimal = {f for f in cauchy if not any(set(f.idx) < set(g.idx) for g in cauchy)}
    points = set(comp.complete(space, "cauchy").points)
    if not (closed == minimal == points):
        out.append(("closed-cauchy-are-minimal", {"closed": sorted(closed, key=lambda f: f.idx),
                                                  "minimal": sorted(minimal, key=lambda f: f.idx)}))
    pts = sorted(points, key=lambda f: f.idx)
    for p, q in combinations(pts, 2):
        if fl.filter_leq(p, q) or fl.filter_leq(q, p):
            out.append(("cauchy-points-discrete", {"p": p, "q": q}))
    return out


register(Suite("sym-3.33", "on symmetric spaces flat filters are Cauchy and P2-flat modules are left adjoints",
               "space", lambda grid: _spaces(grid, symmetric=True), _check_sym_collapse, 5))


def _hyperspace(c: en.QuasiMetricSpace) -> en.QuasiMetricSpace:
    subs = orc.closed_subsets(c)
    d = c.dist
    dist = [[cost_join(cost_meet(d[x][y] for y in t) for x in s) for t in subs] for s in subs]
    labels = ["{" + ",".join(str(c.objects[i]) for i in s) + "}" for s in subs]
    return en.validate_space(labels, dist)


def _check_sym_hyperspace(space, grid) -> List[Failure]:
    p1 = comp.complete(space, "p1").space
    hyper = _hyperspace(comp.complete(space, "cauchy").space)
    if en.find_isometry(p1, hyper) is None:
        return [("p1-is-closed-subsets-of-cauchy", {"p1_points": list(p1.objects), "subsets": list(hyper.objects)})]
    return []


register(Suite("sym-3.60", "P1 completion of a symmetric space is the closed-subset hyperspace of its Cauchy completion",
               "space", lambda grid: _spaces(grid, symmetric=True), _check_sym_hyperspace, 4,
               tuple(parse_cost(t) for t in ("0", "1", "2", "inf"))))


# --------------------------------------------------------------------------
# finite subspaces of the extended half-line

RBAR_SAMPLE = tuple(parse_cost(t) for t in ("0", "1/2", "1", "3/2", "2", "inf"))


def rbar_subspace(values: Sequence[Cost]) -> en.QuasiMetricSpace:
    vals = tuple(values)
    return en.validate_space([str(v) for v in vals], [[cost_hom(x, y) for y in vals] for x in vals])


def _check_rbar(values, grid) -> List[Failure]:
    out: List[Failure] = []
    sp = rbar_subspace(values)
    for mode in ("p1", "p2"):
        c = comp.complete(sp, mode)
        if en.find_isometry(c.space, sp) is None:
            out.append(("self-completion", {"mode": mode, "values": list(values)}))
        if not comp.is_complete(sp, mode):
            out.append(("subspace-complete", {"mode": mode, "values": list(values)}))
    return out


def _rbar_cases(grid: InstanceGrid):
    for k in range(0, min(grid.max_objects, len(RBAR_SAMPLE)) + 1):
        yield from combinations(RBAR_SAMPLE, k)


register(Suite("rbar-3.53-finite", "finite subspaces of the extended half-line are their own P1 and P2 completions",
               "cost-set", _rbar_cases, _check_rbar, 5))


# --------------------------------------------------------------------------
# forward Cauchy sequences


def _check_seq(space, grid) -> List[Failure]:
    out: List[Failure] = []
    n = len(space)
    d = space.dist
    fc_cycles = [c for k in range(1, n + 1) for c in combinations(range(n), k)
                 if all(d[x][y].num == 0 for x in c for y in c)]
    for f in fl.all_filters(space):
        if not fl.is_closed(f):
            continue
        seq = fl.flat_witness_sequence(f)
        if fl.is_flat(f):
            if seq is None:
                out.append(("flat-has-sequence", {"filter": f}))
                continue
            r = fl.seq_check(seq)
            if not (r.forward_cauchy and fl.filter_leq(f, r.filter) and fl.filter_leq(r.filter, f)):
                out.append(("flat-has-sequence", {"filter": f}))
        else:
            if seq is not None:
                out.append(("non-flat-has-no-sequence", {"filter": f}))
            for c in fc_cycles:
                g = fl.PrincipalFilter.from_indices(space, c)
                if fl.filter_leq(f, g) and fl.filter_leq(g, f):
                    out.append(("non-flat-has-no-sequence", {"filter": f, "cycle": list(g.base)}))
    if n <= 3:
        eps = orc.epsilon_for(space)
        for k in (1, 2, 3):
            for cyc in product(range(n), repeat=k):
                for pre in ((), (0,)):
                    s = fl.FwdSeq(space, [space.objects[i] for i in pre], [space.objects[i] for i in cyc])
                    if fl.seq_check(s).forward_cauchy != orc.forward_cauchy_at(space, pre, cyc, eps):
                        out.append(("forward-cauchy-matches-definition", {"prefix": list(s.prefix), "cycle": list(s.cycle)}))
    return out


register(Suite("seq-3.35", "closed flat filters are exactly those isomorphic to forward Cauchy sequence filters",
               "space", lambda grid: _spaces(grid), _check_seq, 4))


# --------------------------------------------------------------------------
# Kan extension along nonexpansive maps


def _pairs(grid: InstanceGrid, cap_target: Optional[int] = None):
    """Sources up to ``max_objects`` and targets up to ``cap_target``, both up to relabelling."""
    sources = list(_spaces(grid, sizes=_sizes(grid)))
    targets = list(_spaces(grid, sizes=_sizes(grid, cap_target)))
    for a in sources:
        for b in targets:
            yield (a, b)


def _iso(space, x, y) -> bool:
    return x is not None and y is not None and space.equivalent(x, y)


def _check_kan(pair, grid) -> List[Failure]:
    out: List[Failure] = []
    a, b = pair
    mods = list(enumerate_modules(a, grid))
    filters = fl.all_filters(a)
    for g in enumerate_maps(a, b):
        for m in mods:
            lm = en.lan(g, m)
            if lm.violation() is not None:
                out.append(("kan-is-module", {"map": g.as_dict(), "module": m}))
            if en.is_p1_flat(m) and not en.is_p1_flat(lm):
                out.append(("kan-preserves-p1", {"map": g.as_dict(), "module": m}))
            if en.is_p2_flat(m) and not en.is_p2_flat(lm):
                out.append(("kan-preserves-p2", {"map": g.as_dict(), "module": m}))
        for x in a.objects:
            if en.lan(g, en.yoneda(a, x)) != en.yoneda(b, g(x)):
                out.append(("kan-of-representable", {"map": g.as_dict(), "object": x}))
            if not _iso(b, en.weighted_colimit(en.yoneda(a, x), g), g(x)):
                out.append(("colimit-of-representable", {"map": g.as_dict(), "object": x}))
        for f in filters:
            im = fl.direct_image(g, f)
            if fl.m_minus(im) != en.lan(g, fl.m_minus(f)):
                out.append(("direct-image-is-kan", {"map": g.as_dict(), "filter": f}))
            c0, c1 = fl.classify(f), fl.classify(im)
            if (c0.flat and not c1.flat) or (c0.cauchy and not c1.cauchy):
                out.append(("direct-image-keeps-class", {"map": g.as_dict(), "filter": f}))
            if en.weighted_colimit(fl.m_minus(f), g) != fl.representative(im):
                out.append(("colimit-is-representative", {"map": g.as_dict(), "filter": f}))
    return out


register(Suite("kan-2.17", "left Kan extension along nonexpansive maps preserves P1/P2 flatness",
               "space-pair", lambda grid: _pairs(grid, 2), _check_kan, 3))


# --------------------------------------------------------------------------
# adjoint modules


def _is_adjoint_pair(m: en.LeftModule, n: en.RightModule) -> bool:
    if en.compose_modules(n, m).num != 0:
        return False
    d = m.space.dist
    k = len(d)
    return all(n.values[y] + m.values[x] >= d[x][y] for x in range(k) for y in range(k))


def _check_adjoint(space, grid) -> List[Failure]:
    out: List[Failure] = []
    rights = list(enumerate_right_modules(space, grid))
    for m in enumerate_modules(space, grid):
        n = en.right_adjoint_check(m)
        if n is not None:
            if not en.is_p2_flat(m):
                out.append(("left-adjoint-is-p2-flat", {"module": m}))
            g = fl.gamma_s(m)
            if g is None or not fl.is_cauchy(g) or fl.m_minus(g) != m:
                out.append(("cauchy-round-trip", {"module": m}))
        for r in rights:
            if _is_adjoint_pair(m, r) and (n is None or r != n):
                out.append(("adjoint-unique", {"module": m, "right_module": r, "candidate": n}))
    return out


register(Suite("adjoint-2.6", "left adjoint modules are P2-flat and their right adjoint is the unique candidate",
               "space", lambda grid: _spaces(grid), _check_adjoint, 3))


# --------------------------------------------------------------------------
# universal extension into complete targets

UNIQUENESS_LIMIT = 5


def _preserves_reps(h: en.NonexpansiveMap, filters) -> bool:
    src, tgt = h.source, h.target
    for phi in filters:
        r = fl.representative(phi)
        if r is None:
            continue
        if not _iso(tgt, h(r), fl.representative(fl.direct_image(h, phi))):
            return False
    return True


def _check_extend(pair, grid) -> List[Failure]:
    out: List[Failure] = []
    a, b = pair
    for mode in comp.MODES:
        c = comp.complete(a, mode)
        emb = comp.embed(a, mode, c)
        for x in a.objects:
            for y in a.objects:
                if c.space.d(emb(x), emb(y)) != a.d(x, y):
                    out.append(("embedding-isometric", {"mode": mode, "x": x, "y": y}))
        cfilters = comp.mode_filters(c.space, mode)
        if not comp.is_complete(c.space, mode):
            out.append(("completion-is-complete", {"mode": mode}))
        else:
            ident = comp.extend(emb, mode, c)
            if any(ident(p) != p for p in c.space.objects):
                out.append(("embedding-extends-to-identity", {"mode": mode}))
        if not comp.is_complete(b, mode):
            f = next(enumerate_maps(a, b))
            try:
                comp.extend(f, mode, c)
            except comp.TargetNotComplete as e:
                if fl.representative(e.witness) is not None or e.witness not in cfilters_of(b, mode):
                    out.append(("incomplete-target-witness", {"mode": mode, "witness": e.witness}))
            else:
                out.append(("incomplete-target-rejected", {"mode": mode}))
            continue
        for f in enumerate_maps(a, b):
            ext = comp.extend(f, mode, c)
            for x in a.objects:
                if not _iso(b, ext(emb(x)), f(x)):
                    out.append(("extension-extends", {"mode": mode, "map": f.as_dict(), "object": x}))
            if not _preserves_reps(ext, cfilters):
                out.append(("extension-preserves-representatives", {"mode": mode, "map": f.as_dict()}))
            if len(c.points) > UNIQUENESS_LIMIT:
                continue
            for h in enumerate_maps(c.space, b):
                if not all(_iso(b, h(emb(x)), f(x)) for x in a.objects):
                    continue
                if not _preserves_reps(h, cfilters):
                    continue
                if not all(_iso(b, h(p), ext(p)) for p in c.space.objects):
                    out.append(("extension-unique", {"mode": mode, "map": f.as_dict(), "other": h.as_dict()}))
    return out


def cfilters_of(space, mode):
    return set(comp.mode_filters(space, mode))


register(Suite("extend-3.50", "extension to the completion exists, extends the map, preserves representatives, is unique",
               "space-pair", lambda grid: _pairs(grid, 2), _check_extend, 3))


# --------------------------------------------------------------------------
# preorders


def _literal_downset(p: po.Preorder, s) -> bool:
    n = len(p)
    return all(truth_tensor(y in s, p.le[x][y]) <= (x in s) for x in range(n) for y in range(n))


def _literal_upset(p: po.Preorder, s) -> bool:
    n = len(p)
    return all(truth_tensor(p.le[x][y], x in s) <= (y in s) for x in range(n) for y in range(n))


def _check_bool_flatness(p: po.Preorder, grid) -> List[Failure]:
    out: List[Failure] = []
    n = len(p)
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]
    ups = [s for s in subsets if _literal_upset(p, s)]
    p1_sets, p2_sets = set(), set()
    for s in subsets:
        got = po.bool_flat_check(p, [p.objects[i] for i in s])
        ok = _literal_downset(p, s)
        if ok:
            c1, c2, c3 = orc.bool_conditions(p, sorted(s), ups)
            ref = (True, c1 and c3, c1 and c2 and c3)
        else:
            ref = (False, False, False)
        if (got.module_ok, got.p1, got.p2) != ref:
            out.append(("flat-check-matches-conditions",
                        {"members": [p.objects[i] for i in sorted(s)], "got": got.as_dict(), "reference": list(ref)}))
        if ref[1]:
            p1_sets.add(s)
        if ref[2]:
            p2_sets.add(s)
    c_p1 = po.complete_preorder(p, "p1")
    c_id = po.complete_preorder(p, "ideal")
    if set(c_p1.points) != p1_sets:
        out.append(("p1-completion-is-p1-modules", {}))
    if set(c_id.points) != p2_sets:
        out.append(("ideal-completion-is-p2-modules", {}))
    for c in (c_p1, c_id):
        for i, s in enumerate(c.points):
            for j, t in enumerate(c.points):
                # presheaf order on two-valued modules is pointwise implication
                pointwise = all((x in t) or not (x in s) for x in range(n))
                if c.preorder.le[i][j] != pointwise:
                    out.append(("completion-order-is-presheaf-order", {"mode": c.mode}))
    if po.order_isomorphism(c_id.preorder, po.quotient(p)) is None:
        out.append(("ideal-completion-is-quotient", {}))
    return out


register(Suite("bool-4.1", "two-valued flatness is non-emptiness and directedness of the downset",
               "preorder", lambda grid: enumerate_preorders(grid.max_objects), _check_bool_flatness, 4))


def _preorder_pairs(grid: InstanceGrid):
    ps = list(enumerate_preorders(grid.max_objects, up_to_iso=True))
    for a in ps:
        for b in ps:
            yield (a, b)


def _check_bool_ext(mode: str):
    def check(pair, grid) -> List[Failure]:
        out: List[Failure] = []
        a, b = pair
        c = po.complete_preorder(a, mode)
        cp = c.preorder
        principal = [c.points.index(po.lower_bounds(a, [i])) for i in range(len(a))]
        missing = po.first_missing_lub(b, mode)
        maps = list(enumerate_monotone_maps(a, b))
        if missing is not None:
            for f in maps[:1]:
                try:
                    po.extend_monotone(f, mode, c)
                except po.TargetLacksLub as e:
                    w = [b.index(x) for x in e.witness]
                    if po.lub(b, w) is not None:
                        out.append(("lacking-lub-witness", {"witness": list(e.witness)}))
                else:
                    out.append(("lacking-lub-rejected", {}))
            return out
        fams = [fam for k in range(1, len(c.points) + 1) for fam in combinations(range(len(c.points)), k)
                if mode == "p1" or po.is_directed(cp, frozenset(fam))]

        def preserves(asg) -> bool:
            for fam in fams:
                top = po.lub(cp, fam)
                if top is None:
                    continue
                img = po.lub(b, [asg[k] for k in fam])
                if img is None or not b.equivalent_idx(img, asg[top]):
                    return False
            return True

        for f in maps:
            ext = po.extend_monotone(f, mode, c)
            asg = ext.assignment
            if any(not b.equivalent_idx(asg[principal[i]], f.assignment[i]) for i in range(len(a))):
                out.append(("extension-extends", {"map": f.as_dict()}))
            if not preserves(asg):
                out.append(("extension-preserves-lubs", {"map": f.as_dict()}))
            if len(c.points) > UNIQUENESS_LIMIT:
                continue
            for h in enumerate_monotone_maps(cp, b):
                ha = h.assignment
                if any(not b.equivalent_idx(ha[principal[i]], f.assignment[i]) for i in range(len(a))):
                    continue
                if preserves(ha) and any(not b.equivalent_idx(ha[k], asg[k]) for k in range(len(asg))):
                    out.append(("extension-unique", {"map": f.as_dict(), "other": list(ha)}))
        return out

    return check


register(Suite("bool-4.2", "extension from non-empty downsets preserving non-empty lubs exists and is unique",
               "preorder-pair", _preorder_pairs, _check_bool_ext("p1"), 3))
register(Suite("bool-4.3", "extension from ideals preserving directed lubs exists and is unique",
               "preorder-pair", _preorder_pairs, _check_bool_ext("ideal"), 3))


def _check_dm(p: po.Preorder, grid) -> List[Failure]:
    out: List[Failure] = []
    cuts = po.complete_preorder(p, "dm")
    mods = po.dm_via_modules(p)
    if set(cuts.points) != set(mods.points) or po.order_isomorphism(cuts.preorder, mods.preorder) is None:
        out.append(("cuts-match-modules", {"cuts": [sorted(s) for s in cuts.points],
                                           "modules": [sorted(s) for s in mods.points]}))
    for i in range(len(p)):
        if po.lower_bounds(p, [i]) not in cuts.points:
            out.append(("principal-downsets-are-cuts", {"object": p.objects[i]}))
    return out


register(Suite("dm-cross", "cut construction and module construction of the normal completion agree",
               "preorder", lambda grid: enumerate_preorders(grid.max_objects), _check_dm, 4))


def _check_bridge(space, grid) -> List[Failure]:
    left = po.underlying_preorder(comp.complete(space, "p1").space)
    right = po.complete_preorder(po.underlying_preorder(space), "p1").preorder
    if po.order_isomorphism(left, right) is None:
        return [("two-valued-p1-completion", {"metric": list(left.objects), "order": list(right.objects)})]
    return []


register(Suite("bool-bridge", "on {0, inf}-valued spaces the P1 completion is the non-empty downset completion",
               "space", lambda grid: _spaces(grid, bool_only=True), _check_bridge, 4))
