"""Filters on finite spaces.

On a finite carrier every filter is principal: it is the up-closure of the
intersection of its members.  A ``PrincipalFilter`` stores that minimal set
(the base) and all filter operators become min/max scans over it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Tuple

from .enriched import (
    LeftModule,
    NonexpansiveMap,
    QuasiMetricSpace,
    RightModule,
    SpaceMismatch,
    hom_presheaf,
    right_adjoint_check,
    yoneda,
    zero_set,
)
from .quantale import Cost, cost_join, cost_meet

__all__ = [
    "PrincipalFilter",
    "FilterClass",
    "FwdSeq",
    "SeqResult",
    "m_minus",
    "m_plus",
    "m_r_minus",
    "m_r_plus",
    "gamma",
    "gamma_s",
    "classify",
    "is_cauchy",
    "is_flat",
    "closure",
    "is_closed",
    "filter_leq",
    "filter_distance",
    "representative",
    "neighborhood",
    "converges",
    "direct_image",
    "seq_check",
    "flat_witness_sequence",
    "all_filters",
]


class PrincipalFilter:
    """The filter ``{X : base ⊆ X}`` on the objects of ``space``."""

    __slots__ = ("space", "idx")

    def __init__(self, space: QuasiMetricSpace, base: Iterable):
        idx = tuple(sorted({space.index(x) for x in base}))
        if not idx:
            raise ValueError("a filter base must be non-empty")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "idx", idx)

    @classmethod
    def from_indices(cls, space: QuasiMetricSpace, idx: Iterable[int]) -> "PrincipalFilter":
        f = object.__new__(cls)
        t = tuple(sorted(set(idx)))
        if not t:
            raise ValueError("a filter base must be non-empty")
        object.__setattr__(f, "space", space)
        object.__setattr__(f, "idx", t)
        return f

    def __setattr__(self, name, value):
        raise AttributeError("PrincipalFilter is immutable")

    @property
    def base(self) -> tuple:
        return tuple(self.space.objects[i] for i in self.idx)

    def contains(self, subset: Iterable) -> bool:
        """Membership of a subset of objects in the filter."""
        s = {self.space.index(x) for x in subset}
        return set(self.idx) <= s

    def __eq__(self, other):
        if not isinstance(other, PrincipalFilter):
            return NotImplemented
        return self.idx == other.idx and (self.space is other.space or self.space == other.space)

    def __hash__(self):
        return hash(self.idx)

    def label(self) -> str:
        return "{" + ",".join(str(x) for x in self.base) + "}"

    def __repr__(self):
        return f"PrincipalFilter({self.label()})"


@dataclass(frozen=True)
class FilterClass:
    cauchy: bool
    flat: bool
    weakly_flat: bool

    def as_dict(self) -> dict:
        return {"cauchy": int(self.cauchy), "flat": int(self.flat), "weakly_flat": int(self.weakly_flat)}


@dataclass(frozen=True)
class FwdSeq:
    """The eventually periodic sequence ``prefix + cycle + cycle + ...``."""

    space: QuasiMetricSpace
    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("the cycle of a sequence must be non-empty")
        for x in self.prefix + self.cycle:
            self.space.index(x)

    def term(self, n: int):
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]


@dataclass(frozen=True)
class SeqResult:
    forward_cauchy: bool
    filter: PrincipalFilter


def _check_same(f1: PrincipalFilter, f2: PrincipalFilter) -> None:
    if f1.space is not f2.space and f1.space != f2.space:
        raise SpaceMismatch("filters live on different spaces")


def m_minus(f: PrincipalFilter) -> LeftModule:
    idx = f.idx
    return LeftModule(f.space, tuple(cost_meet(row[y] for y in idx) for row in f.space.dist), check=False)


def m_plus(f: PrincipalFilter) -> LeftModule:
    idx = f.idx
    return LeftModule(f.space, tuple(cost_join(row[y] for y in idx) for row in f.space.dist), check=False)


def m_r_minus(f: PrincipalFilter) -> RightModule:
    d = f.space.dist
    n = len(d)
    return RightModule(f.space, tuple(cost_meet(d[y][x] for y in f.idx) for x in range(n)), check=False)


def m_r_plus(f: PrincipalFilter) -> RightModule:
    d = f.space.dist
    n = len(d)
    return RightModule(f.space, tuple(cost_join(d[y][x] for y in f.idx) for x in range(n)), check=False)


def gamma(m: LeftModule) -> Optional[PrincipalFilter]:
    """The filter generated by the sublevel sets of ``m``; ``None`` when they contain the empty set."""
    z = zero_set(m)
    if not z:
        return None
    return PrincipalFilter.from_indices(m.space, z)


def gamma_s(m: LeftModule) -> Optional[PrincipalFilter]:
    """For a module with a right adjoint ``N``: the filter generated by sublevel sets of ``M + N``."""
    n = right_adjoint_check(m)
    if n is None:
        return None
    s = LeftModule(m.space, tuple(a + b for a, b in zip(m.values, n.values)), check=False)
    return gamma(s)


def is_cauchy(f: PrincipalFilter) -> bool:
    d = f.space.dist
    return all(d[x][y].num == 0 for x in f.idx for y in f.idx)


def is_flat(f: PrincipalFilter) -> bool:
    d = f.space.dist
    return any(all(d[x][y].num == 0 for x in f.idx) for y in f.idx)


def classify(f: PrincipalFilter) -> FilterClass:
    # each base point is its own witness through the zero diagonal
    return FilterClass(cauchy=is_cauchy(f), flat=is_flat(f), weakly_flat=True)


def closure(f: PrincipalFilter) -> PrincipalFilter:
    return PrincipalFilter.from_indices(f.space, zero_set(m_minus(f)))


def is_closed(f: PrincipalFilter) -> bool:
    return closure(f).idx == f.idx


def filter_distance(f1: PrincipalFilter, f2: PrincipalFilter) -> Cost:
    """``sup`` over the first base of the ``inf`` over the second of ``d(x, y)``."""
    _check_same(f1, f2)
    d = f1.space.dist
    return cost_join(cost_meet(d[x][y] for y in f2.idx) for x in f1.idx)


def filter_leq(f1: PrincipalFilter, f2: PrincipalFilter) -> bool:
    """Filter morphism ``f1 -> f2``; computed by distance and by closure containment."""
    by_distance = filter_distance(f1, f2).num == 0
    by_closure = set(f1.idx) <= set(closure(f2).idx)
    if by_distance != by_closure:
        raise AssertionError(f"filter order disagreement on {f1!r}, {f2!r}")
    return by_distance


def representative(f: PrincipalFilter):
    """First object whose row equals ``a -> max_{y in base} d(y, a)``, or ``None``."""
    pattern = m_r_plus(f).values
    for i, row in enumerate(f.space.dist):
        if row == pattern:
            return f.space.objects[i]
    return None


def neighborhood(space: QuasiMetricSpace, x) -> PrincipalFilter:
    f = gamma(yoneda(space, x))
    assert f is not None
    return f


def converges(f: PrincipalFilter, x) -> bool:
    nb = neighborhood(f.space, x)
    by_containment = set(f.idx) <= set(nb.idx)
    by_module = hom_presheaf(m_minus(f), yoneda(f.space, x)).num == 0
    if by_containment != by_module:
        raise AssertionError(f"convergence disagreement on {f!r} at {x!r}")
    return by_containment


def direct_image(g: NonexpansiveMap, f: PrincipalFilter) -> PrincipalFilter:
    if g.source is not f.space and g.source != f.space:
        raise SpaceMismatch("filter does not live on the map's source")
    return PrincipalFilter.from_indices(g.target, (g.assignment[i] for i in f.idx))


def seq_check(s: FwdSeq) -> SeqResult:
    d, sp = s.space.dist, s.space
    cyc = [sp.index(x) for x in s.cycle]
    fc = all(d[u][w].num == 0 for u in cyc for w in cyc)
    return SeqResult(fc, PrincipalFilter.from_indices(sp, cyc))


def flat_witness_sequence(f: PrincipalFilter) -> Optional[FwdSeq]:
    d = f.space.dist
    for y in f.idx:
        if all(d[x][y].num == 0 for x in f.idx):
            seq = FwdSeq(f.space, (), (f.space.objects[y],))
            g = seq_check(seq).filter
            assert filter_leq(f, g) and filter_leq(g, f)
            return seq
    return None


def all_filters(space: QuasiMetricSpace) -> Tuple[PrincipalFilter, ...]:
    """Every filter on the space, ordered by base size then lexicographically."""
    n = len(space)
    out = []
    for k in range(1, n + 1):
        for c in combinations(range(n), k):
            out.append(PrincipalFilter.from_indices(space, c))
    return tuple(out)

