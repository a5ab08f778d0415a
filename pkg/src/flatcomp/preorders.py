"""Preorders as two-valued enriched categories.

Left modules on a preorder are its downsets and right modules its upsets.
Flatness reduces to non-emptiness (P1) and directedness (P2), which gives
the downward, P1, ideal and Dedekind-MacNeille completions below.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .enriched import QuasiMetricSpace, UnknownObject

__all__ = [
    "Preorder",
    "Downset",
    "Ideal",
    "Cut",
    "MonotoneMap",
    "BoolFlat",
    "CompletedPreorder",
    "TargetLacksLub",
    "PREORDER_MODES",
    "validate_preorder",
    "underlying_preorder",
    "is_downset",
    "is_upset",
    "is_directed",
    "downsets",
    "upsets",
    "upper_bounds",
    "lower_bounds",
    "bool_flat_check",
    "bool_flat_conditions",
    "bool_right_adjoint_check",
    "complete_preorder",
    "dm_via_modules",
    "lub",
    "first_missing_lub",
    "extend_monotone",
    "order_isomorphism",
    "quotient",
]

PREORDER_MODES = ("down", "p1", "ideal", "dm")


class TargetLacksLub(Exception):
    def __init__(self, witness: Tuple):
        self.witness = witness
        super().__init__(f"no least upper bound for {{{','.join(map(str, witness))}}}")


def _warshall(n: int, le: List[List[bool]]) -> None:
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                row_i, row_k = le[i], le[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True


@dataclass(frozen=True)
class Preorder:
    objects: tuple
    le: tuple  # le[i][j] iff objects[i] <= objects[j]
    check: InitVar[bool] = True
    _index: Dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self, check):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "le", tuple(tuple(bool(v) for v in row) for row in self.le))
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.objects)})
        if check:
            n = len(self.objects)
            if len(self._index) != n:
                raise ValueError("duplicate object identifiers")
            if len(self.le) != n or any(len(r) != n for r in self.le):
                raise ValueError("relation matrix must be square")
            for i in range(n):
                if not self.le[i][i]:
                    raise ValueError(f"relation is not reflexive at {self.objects[i]!r}")
            for i, j, k in product(range(n), repeat=3):
                if self.le[i][j] and self.le[j][k] and not self.le[i][k]:
                    raise ValueError("relation is not transitive")

    def __len__(self):
        return len(self.objects)

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownObject(x) from None

    def leq(self, x, y) -> bool:
        return self.le[self.index(x)][self.index(y)]

    def equivalent_idx(self, i: int, j: int) -> bool:
        return self.le[i][j] and self.le[j][i]

    def pairs(self) -> List[Tuple]:
        n = len(self.objects)
        return [(self.objects[i], self.objects[j]) for i in range(n) for j in range(n) if self.le[i][j] and i != j]


def validate_preorder(objects: Iterable, pairs: Iterable[Sequence]) -> Preorder:
    """Reflexive-transitive closure of the given ``(x, y)`` pairs meaning ``x <= y``."""
    objs = tuple(objects)
    index = {x: i for i, x in enumerate(objs)}
    if len(index) != len(objs):
        raise ValueError("duplicate object identifiers")
    n = len(objs)
    le = [[i == j for j in range(n)] for i in range(n)]
    for p in pairs:
        x, y = p
        if x not in index:
            raise UnknownObject(x)
        if y not in index:
            raise UnknownObject(y)
        le[index[x]][index[y]] = True
    _warshall(n, le)
    return Preorder(objs, le, check=False)


def underlying_preorder(space: QuasiMetricSpace) -> Preorder:
    """``x <= y`` iff ``d(x, y) = 0``."""
    return Preorder(space.objects, [[v.num == 0 for v in row] for row in space.dist], check=False)


def is_downset(p: Preorder, members: FrozenSet[int]) -> bool:
    le = p.le
    return all(x in members for y in members for x in range(len(le)) if le[x][y])


def is_upset(p: Preorder, members: FrozenSet[int]) -> bool:
    le = p.le
    return all(y in members for x in members for y in range(len(le)) if le[x][y])


def upper_bounds(p: Preorder, s: Iterable[int]) -> FrozenSet[int]:
    s = tuple(s)
    return frozenset(u for u in range(len(p.le)) if all(p.le[x][u] for x in s))


def lower_bounds(p: Preorder, s: Iterable[int]) -> FrozenSet[int]:
    s = tuple(s)
    return frozenset(u for u in range(len(p.le)) if all(p.le[u][x] for x in s))


def is_directed(p: Preorder, members: FrozenSet[int]) -> bool:
    """Non-empty and every pair has an upper bound inside."""
    if not members:
        return False
    le = p.le
    return all(any(le[x][u] and le[y][u] for u in members) for x in members for y in members)


def _subsets(n: int):
    for k in range(n + 1):
        for c in combinations(range(n), k):
            yield frozenset(c)


def downsets(p: Preorder) -> List[FrozenSet[int]]:
    return [s for s in _subsets(len(p)) if is_downset(p, s)]


def upsets(p: Preorder) -> List[FrozenSet[int]]:
    return [s for s in _subsets(len(p)) if is_upset(p, s)]


@dataclass(frozen=True)
class Downset:
    preorder: Preorder
    members: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not is_downset(self.preorder, self.members):
            raise ValueError("members are not downward closed")

    @classmethod
    def from_names(cls, p: Preorder, names: Iterable) -> "Downset":
        return cls(p, frozenset(p.index(x) for x in names))

    @property
    def names(self) -> tuple:
        return tuple(self.preorder.objects[i] for i in sorted(self.members))


@dataclass(frozen=True)
class Ideal:
    downset: Downset

    def __post_init__(self):
        if not is_directed(self.downset.preorder, self.downset.members):
            raise ValueError("an ideal is a non-empty directed downset")


@dataclass(frozen=True)
class Cut:
    lower: FrozenSet[int]
    upper: FrozenSet[int]


@dataclass(frozen=True)
class MonotoneMap:
    source: Preorder
    target: Preorder
    assignment: tuple
    check: InitVar[bool] = True

    def __post_init__(self, check):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if not check:
            return
        if len(self.assignment) != len(self.source):
            raise ValueError("assignment must cover every source object")
        for i, j in product(range(len(self.source)), repeat=2):
            if self.source.le[i][j] and not self.target.le[self.assignment[i]][self.assignment[j]]:
                s = self.source.objects
                raise ValueError(f"map is not monotone on {s[i]!r} <= {s[j]!r}")

    @classmethod
    def from_mapping(cls, source, target, mapping) -> "MonotoneMap":
        missing = [x for x in source.objects if x not in mapping]
        if missing:
            raise UnknownObject(f"no image for {missing!r}")
        return cls(source, target, tuple(target.index(mapping[x]) for x in source.objects))

    def as_dict(self) -> dict:
        return {x: self.target.objects[g] for x, g in zip(self.source.objects, self.assignment)}


@dataclass(frozen=True)
class BoolFlat:
    p1: bool
    p2: bool
    module_ok: bool

    def as_dict(self) -> dict:
        return {"module_ok": int(self.module_ok), "p1": int(self.p1), "p2": int(self.p2)}


def bool_flat_check(p: Preorder, members: Iterable) -> BoolFlat:
    """Closed-form flatness of the two-valued module given by its support."""
    s = frozenset(p.index(x) for x in members)
    ok = is_downset(p, s)
    p1 = ok and bool(s)
    return BoolFlat(p1=p1, p2=p1 and is_directed(p, s), module_ok=ok)


def bool_flat_conditions(
    p: Preorder, members: FrozenSet[int], families: Iterable[Sequence[FrozenSet[int]]], values=(False, True)
) -> Dict[str, bool]:
    """Direct evaluation of the limit-preservation equations for a two-valued module.

    ``members`` is the support of the module, each family a list of upsets.
    """
    n = len(p)
    m = [x in members for x in range(n)]
    c1 = any(m)
    c2 = True
    fams = list(families)
    for fam in fams:
        lhs = any(m[x] and all(x in u for u in fam) for x in range(n))
        rhs = all(any(m[x] and x in u for x in range(n)) for u in fam)
        if lhs != rhs:
            c2 = False
            break
    c3 = True
    for fam in fams:
        for u in fam:
            for v in values:
                lhs = any(m[x] and ((not v) or x in u) for x in range(n))
                rhs = (not v) or any(m[x] and x in u for x in range(n))
                if lhs != rhs:
                    c3 = False
    return {"1": c1, "2": c2, "3": c3}


def bool_right_adjoint_check(p: Preorder, members: FrozenSet[int]) -> Optional[FrozenSet[int]]:
    """Literal two-valued adjoint test: candidate is the set of upper bounds.

    Unit condition: the module and its candidate meet.  Counit condition:
    ``x in M`` and ``y in N`` imply ``x <= y``.
    """
    n = upper_bounds(p, members)
    if not (members & n):
        return None
    if not all(p.le[x][y] for x in members for y in n):
        return None
    return n


def _shortlex(s: FrozenSet[int]):
    t = tuple(sorted(s))
    return (len(t), t)


@dataclass(frozen=True)
class CompletedPreorder:
    mode: str
    base: Preorder
    points: Tuple[FrozenSet[int], ...]
    preorder: Preorder

    def names(self, k: int) -> tuple:
        return tuple(self.base.objects[i] for i in sorted(self.points[k]))

    def as_report(self) -> dict:
        return {
            "mode": self.mode,
            "points": [[str(x) for x in self.names(k)] for k in range(len(self.points))],
            "le": [[int(v) for v in row] for row in self.preorder.le],
        }


def _label(p: Preorder, s: FrozenSet[int]) -> str:
    return "{" + ",".join(str(p.objects[i]) for i in sorted(s)) + "}"


def _inclusion_preorder(mode: str, p: Preorder, pts: Iterable[FrozenSet[int]]) -> CompletedPreorder:
    points = tuple(sorted(set(pts), key=_shortlex))
    le = [[a <= b for b in points] for a in points]
    return CompletedPreorder(mode, p, points, Preorder([_label(p, s) for s in points], le, check=False))


def _cuts(p: Preorder) -> List[Cut]:
    seen = {}
    for s in _subsets(len(p)):
        ub = upper_bounds(p, s)
        lo = lower_bounds(p, ub)
        seen[lo] = ub
    return [Cut(lo, up) for lo, up in seen.items()]


def complete_preorder(p: Preorder, mode: str) -> CompletedPreorder:
    if mode not in PREORDER_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(PREORDER_MODES)}")
    if mode == "dm":
        return _inclusion_preorder(mode, p, (c.lower for c in _cuts(p)))
    ds = downsets(p)
    if mode == "p1":
        ds = [s for s in ds if s]
    elif mode == "ideal":
        ds = [s for s in ds if is_directed(p, s)]
    return _inclusion_preorder(mode, p, ds)


def dm_via_modules(p: Preorder) -> CompletedPreorder:
    """Downsets fixed by the module/right-module conjugation.

    The candidate right module of a downset ``D`` is its set of upper bounds
    ``N``; ``D`` is kept when the counit inequality is tight, i.e. ``D`` is
    exactly the set of ``x`` with ``x <= y`` for every ``y`` in ``N``.
    """
    pts = [d for d in downsets(p) if lower_bounds(p, upper_bounds(p, d)) == d]
    return _inclusion_preorder("dm", p, pts)


def lub(p: Preorder, s: Iterable[int]) -> Optional[int]:
    """First least upper bound in object order, or ``None``."""
    ub = upper_bounds(p, s)
    for u in sorted(ub):
        if all(p.le[u][w] for w in ub):
            return u
    return None


def first_missing_lub(p: Preorder, mode: str) -> Optional[FrozenSet[int]]:
    """A subset of the required kind without a least upper bound."""
    for s in _subsets(len(p)):
        if not s:
            continue
        if mode == "ideal" and not is_directed(p, s):
            continue
        if lub(p, s) is None:
            return s
    return None


def extend_monotone(
    f: MonotoneMap, mode: str, completion: Optional[CompletedPreorder] = None
) -> MonotoneMap:
    """Send a downset to the least upper bound of its image."""
    if mode not in ("p1", "ideal"):
        raise ValueError("extension is defined for modes p1 and ideal")
    missing = first_missing_lub(f.target, mode)
    if missing is not None:
        raise TargetLacksLub(tuple(f.target.objects[i] for i in sorted(missing)))
    c = completion if completion is not None else complete_preorder(f.source, mode)
    out = []
    for d in c.points:
        u = lub(f.target, (f.assignment[i] for i in d))
        assert u is not None
        out.append(u)
    return MonotoneMap(c.preorder, f.target, tuple(out))


def quotient(p: Preorder) -> Preorder:
    """Identify mutually comparable objects; keeps the first of each class."""
    n = len(p)
    reps = [i for i in range(n) if not any(p.equivalent_idx(i, j) for j in range(i))]
    return Preorder(
        tuple(p.objects[i] for i in reps), tuple(tuple(p.le[i][j] for j in reps) for i in reps), check=False
    )


def order_isomorphism(a: Preorder, b: Preorder) -> Optional[Dict]:
    """A bijection preserving and reflecting the order, or ``None``."""
    n = len(a)
    if n != len(b):
        return None

    def sig(p, i):
        return (sum(p.le[i]), sum(row[i] for row in p.le))

    sa = [sig(a, i) for i in range(n)]
    sb = [sig(b, j) for j in range(n)]
    if sorted(sa) != sorted(sb):
        return None
    assign: List[int] = []
    used = [False] * n

    def go(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or sa[i] != sb[j]:
                continue
            if all(a.le[i][k] == b.le[j][assign[k]] and a.le[k][i] == b.le[assign[k]][j] for k in range(i)):
                if a.le[i][i] != b.le[j][j]:
                    continue
                used[j] = True
                assign.append(j)
                if go(i + 1):
                    return True
                assign.pop()
                used[j] = False
        return False

    if not go(0):
        return None
    return {a.objects[i]: b.objects[j] for i, j in enumerate(assign)}
