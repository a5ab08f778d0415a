"""Finite generalized metric spaces and their modules.

A space is a finite set of named objects with a ``Cost`` distance matrix
satisfying ``d(x, x) = 0`` and ``d(x, z) <= d(x, y) + d(y, z)``; neither
symmetry nor separation is required.  Left modules (presheaves) satisfy
``M(x) <= M(y) + d(x, y)``, right modules ``N(y) <= d(x, y) + N(x)``.

Objects are addressed by name in the public API; values are stored as
tuples indexed by object position.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from itertools import permutations
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .quantale import INF, ZERO, Cost, cost_hom, cost_join, cost_meet

__all__ = [
    "SpaceError",
    "ZeroDiagonalViolation",
    "TriangleViolation",
    "SpaceMismatch",
    "UnknownObject",
    "ModuleViolation",
    "NonexpansiveViolation",
    "QuasiMetricSpace",
    "NonexpansiveMap",
    "LeftModule",
    "RightModule",
    "CounterexampleReport",
    "space_violations",
    "validate_space",
    "hom_presheaf",
    "compose_modules",
    "yoneda",
    "co_yoneda",
    "adjoint_candidate",
    "right_adjoint_check",
    "lan",
    "weighted_colimit",
    "zero_set",
    "is_p1_flat",
    "is_p2_flat",
    "falsify_flat_conditions",
    "find_isometry",
]


class SpaceError(ValueError):
    """Base class for violated space axioms."""


class ZeroDiagonalViolation(SpaceError):
    def __init__(self, x, value: Cost):
        self.x = x
        self.value = value
        super().__init__(f"d({x}, {x}) = {value}, expected 0")


class TriangleViolation(SpaceError):
    """``d(x, z) > d(x, y) + d(y, z)``; ``values`` is ``(d(x,y), d(y,z), d(x,z))``."""

    def __init__(self, x, y, z, values: Tuple[Cost, Cost, Cost]):
        self.x, self.y, self.z = x, y, z
        self.values = values
        xy, yz, xz = values
        super().__init__(f"d({x}, {z}) = {xz} > d({x}, {y}) + d({y}, {z}) = {xy} + {yz}")


class SpaceMismatch(ValueError):
    pass


class UnknownObject(LookupError):
    pass


class ModuleViolation(ValueError):
    pass


class NonexpansiveViolation(ValueError):
    pass


def _objects_tuple(objects: Iterable[Hashable]) -> tuple:
    objs = tuple(objects)
    if len(set(objs)) != len(objs):
        raise ValueError(f"duplicate object identifiers in {objs!r}")
    return objs


@dataclass(frozen=True)
class QuasiMetricSpace:
    objects: tuple
    dist: tuple
    check: InitVar[bool] = True
    _index: Dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self, check):
        objs = _objects_tuple(self.objects)
        rows = tuple(tuple(Cost(v) for v in row) for row in self.dist) if check else self.dist
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "dist", rows)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(objs)})
        if check:
            n = len(objs)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise ValueError("distance matrix must be square and match the objects")
            errs = space_violations(objs, rows)
            if errs:
                err = errs[0]
                err.violations = errs
                raise err

    def __len__(self):
        return len(self.objects)

    def __iter__(self):
        return iter(self.objects)

    def __contains__(self, x):
        return x in self._index

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownObject(x) from None

    def d(self, x, y) -> Cost:
        return self.dist[self.index(x)][self.index(y)]

    def is_symmetric(self) -> bool:
        n = len(self.objects)
        return all(self.dist[i][j] == self.dist[j][i] for i in range(n) for j in range(i))

    def equivalent(self, x, y) -> bool:
        """Mutual distance zero (isomorphic objects)."""
        i, j = self.index(x), self.index(y)
        return self.dist[i][j].num == 0 and self.dist[j][i].num == 0

    def subspace(self, names: Iterable) -> "QuasiMetricSpace":
        idx = sorted(self.index(x) for x in set(names))
        return QuasiMetricSpace(
            tuple(self.objects[i] for i in idx),
            tuple(tuple(self.dist[i][j] for j in idx) for i in idx),
            check=False,
        )

    @classmethod
    def from_function(cls, objects, d) -> "QuasiMetricSpace":
        objs = tuple(objects)
        return cls(objs, tuple(tuple(Cost(d(x, y)) for y in objs) for x in objs))


def space_violations(objects: Sequence, dist: Sequence[Sequence[Cost]]) -> List[SpaceError]:
    """Every violated axiom instance, in object order."""
    n = len(objects)
    errs: List[SpaceError] = []
    for i in range(n):
        if dist[i][i].num != 0:
            errs.append(ZeroDiagonalViolation(objects[i], dist[i][i]))
    for i in range(n):
        row = dist[i]
        for j in range(n):
            dij = row[j]
            if dij.den == 0:
                continue
            djr = dist[j]
            for k in range(n):
                if dij + djr[k] < row[k]:
                    errs.append(TriangleViolation(objects[i], objects[j], objects[k], (dij, djr[k], row[k])))
    return errs


def validate_space(objects: Iterable, matrix: Iterable[Iterable]) -> QuasiMetricSpace:
    """Parse and validate; raises the first violation with ``.violations`` listing all."""
    objs = _objects_tuple(objects)
    rows = tuple(tuple(Cost(v) for v in row) for row in matrix)
    if len(rows) != len(objs) or any(len(r) != len(objs) for r in rows):
        raise ValueError("distance matrix must be square and match the objects")
    return QuasiMetricSpace(objs, rows)


@dataclass(frozen=True)
class NonexpansiveMap:
    """Total map between object sets with ``d_B(Gx, Gy) <= d_A(x, y)``."""

    source: QuasiMetricSpace
    target: QuasiMetricSpace
    assignment: tuple  # target index per source index
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if not check:
            return
        a = tuple(self.assignment)
        object.__setattr__(self, "assignment", a)
        if len(a) != len(self.source):
            raise ValueError("assignment must cover every source object")
        if any(not (0 <= t < len(self.target)) for t in a):
            raise UnknownObject("assignment index out of range")
        sd, td = self.source.dist, self.target.dist
        for i, gi in enumerate(a):
            for j, gj in enumerate(a):
                if td[gi][gj] > sd[i][j]:
                    s = self.source.objects
                    raise NonexpansiveViolation(
                        f"d({s[i]}, {s[j]}) = {sd[i][j]} < d(G{s[i]}, G{s[j]}) = {td[gi][gj]}"
                    )

    @classmethod
    def from_mapping(cls, source, target, mapping: Mapping) -> "NonexpansiveMap":
        missing = [x for x in source.objects if x not in mapping]
        if missing:
            raise UnknownObject(f"no image for {missing!r}")
        return cls(source, target, tuple(target.index(mapping[x]) for x in source.objects))

    @classmethod
    def identity(cls, space) -> "NonexpansiveMap":
        return cls(space, space, tuple(range(len(space))), check=False)

    def __call__(self, x):
        return self.target.objects[self.assignment[self.source.index(x)]]

    def as_dict(self) -> dict:
        t = self.target.objects
        return {x: t[g] for x, g in zip(self.source.objects, self.assignment)}


class _Module:
    __slots__ = ("space", "values")

    def __init__(self, space: QuasiMetricSpace, values: Iterable, check: bool = True):
        vals = tuple(values)
        if check:
            vals = tuple(Cost(v) for v in vals)
            if len(vals) != len(space):
                raise ValueError(f"expected {len(space)} values, got {len(vals)}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "values", vals)
        if check:
            bad = self.violation()
            if bad is not None:
                raise ModuleViolation(bad)

    @classmethod
    def from_mapping(cls, space, mapping: Mapping, check: bool = True):
        extra = [x for x in mapping if x not in space]
        if extra:
            raise UnknownObject(f"unknown objects {extra!r}")
        try:
            return cls(space, (mapping[x] for x in space.objects), check=check)
        except KeyError as e:
            raise ValueError(f"no value for object {e.args[0]!r}") from None

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __getitem__(self, x) -> Cost:
        return self.values[self.space.index(x)]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.values == other.values and (self.space is other.space or self.space == other.space)

    def __hash__(self):
        return hash((type(self).__name__, self.values))

    def as_dict(self) -> dict:
        return dict(zip(self.space.objects, self.values))

    def __repr__(self):
        body = ", ".join(f"{x}: {v}" for x, v in zip(self.space.objects, self.values))
        return f"{type(self).__name__}({{{body}}})"


class LeftModule(_Module):
    """``M(x) <= M(y) + d(x, y)`` for all ``x, y``."""

    __slots__ = ()

    def violation(self) -> Optional[str]:
        d, m, s = self.space.dist, self.values, self.space.objects
        for x in range(len(m)):
            for y in range(len(m)):
                if m[y] + d[x][y] < m[x]:
                    return f"M({s[y]}) + d({s[x]}, {s[y]}) = {m[y]} + {d[x][y]} < M({s[x]}) = {m[x]}"
        return None


class RightModule(_Module):
    """``N(y) <= d(x, y) + N(x)`` for all ``x, y``."""

    __slots__ = ()

    def violation(self) -> Optional[str]:
        d, m, s = self.space.dist, self.values, self.space.objects
        for x in range(len(m)):
            for y in range(len(m)):
                if d[x][y] + m[x] < m[y]:
                    return f"d({s[x]}, {s[y]}) + N({s[x]}) = {d[x][y]} + {m[x]} < N({s[y]}) = {m[y]}"
        return None


def _same_space(a: QuasiMetricSpace, b: QuasiMetricSpace) -> None:
    if a is not b and a != b:
        raise SpaceMismatch("modules live on different spaces")


def hom_presheaf(m: LeftModule, n: LeftModule) -> Cost:
    """Presheaf distance ``sup_x [M(x), N(x)]``; zero iff ``M >= N`` pointwise."""
    _same_space(m.space, n.space)
    return cost_join(cost_hom(a, b) for a, b in zip(m.values, n.values))


def compose_modules(n: RightModule, m: LeftModule) -> Cost:
    """Composite ``N * M = inf_x M(x) + N(x)``."""
    _same_space(m.space, n.space)
    return cost_meet(a + b for a, b in zip(m.values, n.values))


def yoneda(space: QuasiMetricSpace, a) -> LeftModule:
    j = space.index(a)
    return LeftModule(space, tuple(row[j] for row in space.dist), check=False)


def co_yoneda(space: QuasiMetricSpace, a) -> RightModule:
    return RightModule(space, space.dist[space.index(a)], check=False)


def adjoint_candidate(m: LeftModule) -> RightModule:
    """The only possible right adjoint: ``x -> hom(M, yoneda(x))``."""
    d, vals = m.space.dist, m.values
    n = len(vals)
    return RightModule(
        m.space,
        tuple(cost_join(cost_hom(vals[y], d[y][x]) for y in range(n)) for x in range(n)),
        check=False,
    )


def right_adjoint_check(m: LeftModule) -> Optional[RightModule]:
    cand = adjoint_candidate(m)
    if compose_modules(cand, m).num != 0:
        return None
    d, mv, nv = m.space.dist, m.values, cand.values
    n = len(mv)
    for x in range(n):
        for y in range(n):
            if nv[y] + mv[x] < d[x][y]:
                return None
    return cand


def lan(g: NonexpansiveMap, m: LeftModule) -> LeftModule:
    """Left Kan extension along ``g``: ``b -> inf_x M(x) + d_B(b, g x)``."""
    _same_space(g.source, m.space)
    bd = g.target.dist
    pairs = list(zip(m.values, g.assignment))
    return LeftModule(
        g.target,
        tuple(cost_meet(v + row[gx] for v, gx in pairs) for row in bd),
        check=False,
    )


def weighted_colimit(m: LeftModule, g: NonexpansiveMap):
    """First object ``b`` of the target with ``d(b, c) = hom(M, d(g-, c))`` for all ``c``."""
    _same_space(g.source, m.space)
    bd = g.target.dist
    k = len(bd)
    pattern = tuple(
        cost_join(cost_hom(v, bd[gx][c]) for v, gx in zip(m.values, g.assignment)) for c in range(k)
    )
    for b in range(k):
        if bd[b] == pattern:
            return g.target.objects[b]
    return None


def zero_set(m: LeftModule) -> Tuple[int, ...]:
    """Indices where the module vanishes."""
    return tuple(i for i, v in enumerate(m.values) if v.num == 0)


def is_p1_flat(m: LeftModule) -> bool:
    """Finite test: the module vanishes somewhere and equals the distance to its zero set."""
    z = zero_set(m)
    if not z:
        return False
    d = m.space.dist
    return all(v == cost_meet(d[x][y] for y in z) for x, v in enumerate(m.values))


def is_p2_flat(m: LeftModule) -> bool:
    """P1 test plus a common zero-distance target inside the zero set."""
    if not is_p1_flat(m):
        return False
    z = zero_set(m)
    d = m.space.dist
    return any(all(d[x][y].num == 0 for x in z) for y in z)


@dataclass(frozen=True)
class CounterexampleReport:
    """A failed limit-preservation equation: ``lhs != rhs``.

    ``condition`` is ``"1"`` (terminal object), ``"2"`` (finite meets of the
    family) or ``"3"`` (cotensor by ``v`` of family member ``member``).
    """

    condition: str
    lhs: Cost
    rhs: Cost
    v: Optional[Cost] = None
    member: Optional[int] = None


def falsify_flat_conditions(
    m: LeftModule,
    v: Cost,
    family: Sequence[RightModule],
    conditions: Iterable[str] = ("2", "3"),
) -> Optional[CounterexampleReport]:
    """Evaluate both sides of the limit-preservation equations on one witness.

    ``"2"``: ``inf_x (M(x) + max_i N_i(x)) == max_i (N_i * M)`` for the whole
    family (the empty family gives the terminal-object condition).
    ``"3"``: ``inf_x (M(x) + [v, N(x)]) == [v, N * M]`` for each member.
    ``"1"`` checks the terminal-object condition on its own.
    """
    conds = set(conditions)
    mv = m.values
    for n in family:
        _same_space(m.space, n.space)
    if "1" in conds:
        lhs = cost_meet(mv)
        if lhs.num != 0:
            return CounterexampleReport("1", lhs, ZERO)
    if "2" in conds:
        cols = [n.values for n in family]
        lhs = cost_meet(a + cost_join(c[x] for c in cols) for x, a in enumerate(mv))
        rhs = cost_join(cost_meet(a + b for a, b in zip(mv, c)) for c in cols)
        if lhs != rhs:
            return CounterexampleReport("2", lhs, rhs)
    if "3" in conds:
        for i, n in enumerate(family):
            lhs = cost_meet(a + cost_hom(v, b) for a, b in zip(mv, n.values))
            rhs = cost_hom(v, cost_meet(a + b for a, b in zip(mv, n.values)))
            if lhs != rhs:
                return CounterexampleReport("3", lhs, rhs, v=v, member=i)
    return None


def find_isometry(a: QuasiMetricSpace, b: QuasiMetricSpace) -> Optional[Dict]:
    """A distance-preserving bijection ``a -> b`` by backtracking, or ``None``."""
    n = len(a)
    if n != len(b):
        return None
    ad, bd = a.dist, b.dist

    def signature(d, i):
        return (sorted(d[i]), sorted(row[i] for row in d))

    sa = [signature(ad, i) for i in range(n)]
    sb = [signature(bd, j) for j in range(n)]
    if sorted(map(repr, sa)) != sorted(map(repr, sb)):
        return None
    assign: List[int] = []
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or sa[i] != sb[j]:
                continue
            if all(ad[i][k] == bd[j][assign[k]] and ad[k][i] == bd[assign[k]][j] for k in range(i)):
                used[j] = True
                assign.append(j)
                if extend(i + 1):
                    return True
                assign.pop()
                used[j] = False
        return False

    if not extend(0):
        return None
    return {a.objects[i]: b.objects[j] for i, j in enumerate(assign)}
