"""Reference computations that avoid the closed-form shortcuts of the library.

Filter limits range over every member of the filter (all supersets of the
base), filter classes are decided at an explicit epsilon below the least
positive distance, and the two-valued flatness conditions are evaluated
directly from their defining equations.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, List, Sequence, Tuple

from ..enriched import QuasiMetricSpace
from ..filters import PrincipalFilter
from ..preorders import Preorder
from ..quantale import ONE, Cost, cost_join, cost_meet, truth_hom, truth_tensor

__all__ = [
    "members",
    "lim_plus",
    "lim_minus",
    "epsilon_for",
    "cauchy_at",
    "weakly_flat_at",
    "flat_at",
    "forward_cauchy_at",
    "bool_conditions",
    "closed_subsets",
]


def members(f: PrincipalFilter) -> List[Tuple[int, ...]]:
    """Every member of the filter, as sorted index tuples."""
    n = len(f.space)
    rest = [i for i in range(n) if i not in f.idx]
    out = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            out.append(tuple(sorted(f.idx + extra)))
    return out


def lim_plus(f: PrincipalFilter, fn: Callable[[int], Cost]) -> Cost:
    """Infimum over members of the supremum over the member."""
    return cost_meet(cost_join(fn(x) for x in m) for m in members(f))


def lim_minus(f: PrincipalFilter, fn: Callable[[int], Cost]) -> Cost:
    """Supremum over members of the infimum over the member."""
    return cost_join(cost_meet(fn(x) for x in m) for m in members(f))


def epsilon_for(space: QuasiMetricSpace) -> Cost:
    """Half of the least positive finite distance (one if there is none)."""
    pos = [v for row in space.dist for v in row if v.num != 0 and v.den != 0]
    if not pos:
        return ONE
    m = min(pos)
    return Cost(m.num, 2 * m.den)


def cauchy_at(f: PrincipalFilter, eps: Cost) -> bool:
    d = f.space.dist
    return any(all(d[x][y] <= eps for x in m for y in m) for m in members(f))


def weakly_flat_at(f: PrincipalFilter, eps: Cost) -> bool:
    d = f.space.dist
    ms = members(f)
    return any(all(any(d[x][y] <= eps for y in g) for x in m for g in ms) for m in ms)


def flat_at(f: PrincipalFilter, eps: Cost) -> bool:
    d = f.space.dist
    ms = members(f)

    def good(m):
        for k in range(1, len(m) + 1):
            for fam in combinations(m, k):
                for g in ms:
                    if not any(all(d[x][y] <= eps for x in fam) for y in g):
                        return False
        return True

    return any(good(m) for m in ms)


def forward_cauchy_at(space: QuasiMetricSpace, prefix: Sequence[int], cycle: Sequence[int], eps: Cost) -> bool:
    """Tail condition checked on a window long enough to contain every recurring pair."""
    seq = list(prefix) + list(cycle) * 3
    d = space.dist
    p, c = len(prefix), len(cycle)
    for start in range(p + c + 1):
        window = seq[start : p + 3 * c]
        if all(d[window[i]][window[j]] <= eps for i in range(len(window)) for j in range(i, len(window))):
            return True
    return False


def bool_conditions(
    p: Preorder, support: Sequence[int], right_modules: Sequence[frozenset], max_family: int = 2
) -> Tuple[bool, bool, bool]:
    """The three two-valued flatness equations, evaluated literally.

    Returns the truth of the terminal, finite-meet and cotensor conditions,
    quantifying over the given right modules (families up to ``max_family``
    plus the empty family) and both truth values.
    """
    n = len(p)
    m = [x in support for x in range(n)]
    xs = range(n)

    def comp(u) -> bool:
        return any(truth_tensor(m[x], x in u) for x in xs)

    c1 = any(m[x] for x in xs)
    c2 = True
    fams = [()]
    for k in range(1, max_family + 1):
        fams.extend(combinations(right_modules, k))
    for fam in fams:
        lhs = any(truth_tensor(m[x], all(x in u for u in fam)) for x in xs)
        rhs = all(comp(u) for u in fam)
        if lhs != rhs:
            c2 = False
            break
    c3 = True
    for u in right_modules:
        for v in (False, True):
            lhs = any(truth_tensor(m[x], truth_hom(v, x in u)) for x in xs)
            rhs = truth_hom(v, comp(u))
            if lhs != rhs:
                c3 = False
    return c1, c2, c3


def closed_subsets(space: QuasiMetricSpace) -> List[Tuple[int, ...]]:
    """Non-empty subsets containing every point at distance zero from them."""
    d = space.dist
    n = len(d)
    out = []
    for k in range(1, n + 1):
        for s in combinations(range(n), k):
            if all(p in s or cost_meet(d[p][x] for x in s).num != 0 for p in range(n)):
                out.append(s)
    return out
