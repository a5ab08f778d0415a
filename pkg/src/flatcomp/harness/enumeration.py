"""Exhaustive enumeration of small spaces, modules, preorders and maps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from operator import itemgetter
from typing import Iterator, List, Optional, Sequence, Tuple

from ..enriched import LeftModule, NonexpansiveMap, QuasiMetricSpace, RightModule
from ..preorders import Preorder
from ..quantale import INF, ZERO, Cost, parse_cost

__all__ = [
    "DEFAULT_GRID",
    "InstanceGrid",
    "parse_grid",
    "object_names",
    "enumerate_spaces",
    "enumerate_modules",
    "enumerate_right_modules",
    "enumerate_preorders",
    "enumerate_maps",
    "enumerate_monotone_maps",
]

DEFAULT_GRID = tuple(parse_cost(t) for t in ("0", "1/2", "1", "2", "inf"))


@dataclass(frozen=True)
class InstanceGrid:
    max_objects: int = 4
    cost_grid: Tuple[Cost, ...] = DEFAULT_GRID

    def __post_init__(self):
        g = tuple(sorted(set(Cost(c) for c in self.cost_grid)))
        if ZERO not in g or INF not in g:
            raise ValueError("the cost grid must contain 0 and inf")
        if self.max_objects < 0:
            raise ValueError("max_objects must be non-negative")
        object.__setattr__(self, "cost_grid", g)

    def with_max(self, n: int) -> "InstanceGrid":
        return InstanceGrid(n, self.cost_grid)


def parse_grid(text: str) -> Tuple[Cost, ...]:
    return tuple(parse_cost(t) for t in text.split(",") if t.strip())


def object_names(n: int) -> Tuple[str, ...]:
    return tuple("abcdefghijklmnopqrstuvwxyz"[i] for i in range(n))


def _canonical(flat: tuple, getters) -> tuple:
    return min(g(flat) for g in getters)


@lru_cache(maxsize=None)
def _perm_getters(n: int):
    out = []
    for p in permutations(range(n)):
        idx = [p[i] * n + p[j] for i in range(n) for j in range(n)]
        out.append(itemgetter(*idx) if len(idx) > 1 else (lambda t, k=idx[0]: (t[k],)))
    return tuple(out)


@lru_cache(maxsize=None)
def _index_matrices(grid: Tuple[Cost, ...], n: int, symmetric: bool, up_to_iso: bool) -> Tuple[tuple, ...]:
    """Flattened matrices of grid indices passing the axioms, in lexicographic order."""
    k = len(grid)
    if n == 0:
        return ((),)
    zero = grid.index(ZERO)
    # ok[a][b][c]: grid[a] + grid[b] >= grid[c]
    ok = [[[grid[a] + grid[b] >= grid[c] for c in range(k)] for b in range(k)] for a in range(k)]
    cells = [(i, j) for i in range(n) for j in range(n) if i < j or (i > j and not symmetric)]
    step = {}
    for t, (i, j) in enumerate(cells):
        step[(i, j)] = t
        if symmetric:
            step[(j, i)] = t
    for i in range(n):
        step[(i, i)] = -1
    # triangles to check once the cell of step t is filled
    checks: List[List[Tuple[int, int, int]]] = [[] for _ in cells]
    for x, y, z in product(range(n), repeat=3):
        t = max(step[(x, y)], step[(y, z)], step[(x, z)])
        if t >= 0:
            checks[t].append((x * n + y, y * n + z, x * n + z))
    flat = [zero] * (n * n)
    results: List[tuple] = []
    getters = _perm_getters(n) if up_to_iso else None
    seen = set()

    def go(t):
        if t == len(cells):
            f = tuple(flat)
            if up_to_iso:
                c = _canonical(f, getters)
                if c not in seen:
                    seen.add(c)
                    results.append(c)
            else:
                results.append(f)
            return
        i, j = cells[t]
        a, b = i * n + j, j * n + i
        for v in range(k):
            flat[a] = v
            if symmetric:
                flat[b] = v
            if all(ok[flat[p]][flat[q]][flat[r]] for p, q, r in checks[t]):
                go(t + 1)
        flat[a] = zero
        if symmetric:
            flat[b] = zero

    go(0)
    if up_to_iso:
        results.sort()
    return tuple(results)


def _build(grid, n, flat) -> QuasiMetricSpace:
    names = object_names(n)
    return QuasiMetricSpace(names, tuple(tuple(grid[flat[i * n + j]] for j in range(n)) for i in range(n)), check=False)


def enumerate_spaces(
    grid: InstanceGrid,
    sizes: Optional[Sequence[int]] = None,
    symmetric: bool = False,
    bool_only: bool = False,
    up_to_iso: bool = False,
    values: Optional[Sequence[Cost]] = None,
) -> Iterator[QuasiMetricSpace]:
    """Every valid distance matrix over the grid, smallest spaces first.

    ``bool_only`` restricts entries to ``{0, inf}``; ``up_to_iso`` keeps one
    space per relabelling class.  ``values`` replaces the grid's costs and
    only needs to contain 0.
    """
    if bool_only:
        values = (ZERO, INF)
    elif values is None:
        values = grid.cost_grid
    values = tuple(sorted(set(Cost(v) for v in values)))
    if ZERO not in values:
        raise ValueError("distance values must contain 0")
    if sizes is None:
        sizes = range(grid.max_objects + 1)
    for n in sizes:
        for flat in _index_matrices(values, n, symmetric, up_to_iso):
            yield _build(values, n, flat)


def _modules(space: QuasiMetricSpace, grid: Sequence[Cost], right: bool) -> Iterator[tuple]:
    d = space.dist
    n = len(d)
    vals = [None] * n

    def ok_upto(t):
        v = vals[t]
        for s in range(t + 1):
            w = vals[s]
            if right:
                # N(y) <= d(x, y) + N(x)
                if d[s][t] + w < v or d[t][s] + v < w:
                    return False
            else:
                # M(x) <= M(y) + d(x, y)
                if w + d[t][s] < v or v + d[s][t] < w:
                    return False
        return True

    def go(t):
        if t == n:
            yield tuple(vals)
            return
        for g in grid:
            vals[t] = g
            if ok_upto(t):
                yield from go(t + 1)
        vals[t] = None

    yield from go(0)


def enumerate_modules(space: QuasiMetricSpace, grid: Sequence[Cost]) -> Iterator[LeftModule]:
    """Grid-valued left modules in lexicographic order of values."""
    g = tuple(sorted(set(Cost(c) for c in grid)))
    for vals in _modules(space, g, right=False):
        yield LeftModule(space, vals, check=False)


def enumerate_right_modules(space: QuasiMetricSpace, grid: Sequence[Cost]) -> Iterator[RightModule]:
    g = tuple(sorted(set(Cost(c) for c in grid)))
    for vals in _modules(space, g, right=True):
        yield RightModule(space, vals, check=False)


@lru_cache(maxsize=None)
def _preorder_matrices(n: int, up_to_iso: bool) -> Tuple[tuple, ...]:
    """Reflexive-transitive closures of all relations on ``n`` points, deduplicated."""
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    getters = _perm_getters(n) if (up_to_iso and n > 0) else None
    out = []
    for bits in product((False, True), repeat=len(cells)):
        le = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(cells, bits):
            if b:
                le[i][j] = True
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        flat = tuple(int(v) for row in le for v in row)
        key = _canonical(flat, getters) if getters else flat
        if key not in seen:
            seen.add(key)
            out.append(key)
    out.sort()
    return tuple(out)


def enumerate_preorders(max_objects: int, up_to_iso: bool = False) -> Iterator[Preorder]:
    for n in range(max_objects + 1):
        names = object_names(n)
        for flat in _preorder_matrices(n, up_to_iso):
            yield Preorder(names, tuple(tuple(bool(flat[i * n + j]) for j in range(n)) for i in range(n)), check=False)


def enumerate_maps(a: QuasiMetricSpace, b: QuasiMetricSpace) -> Iterator[NonexpansiveMap]:
    ad, bd = a.dist, b.dist
    for asg in product(range(len(b)), repeat=len(a)):
        if all(bd[asg[i]][asg[j]] <= ad[i][j] for i in range(len(a)) for j in range(len(a))):
            yield NonexpansiveMap(a, b, asg, check=False)


def enumerate_monotone_maps(a: Preorder, b: Preorder):
    from ..preorders import MonotoneMap

    for asg in product(range(len(b)), repeat=len(a)):
        if all(b.le[asg[i]][asg[j]] for i in range(len(a)) for j in range(len(a)) if a.le[i][j]):
            yield MonotoneMap(a, b, asg, check=False)


def subsets(n: int, nonempty: bool = True):
    for k in range(1 if nonempty else 0, n + 1):
        yield from combinations(range(n), k)
