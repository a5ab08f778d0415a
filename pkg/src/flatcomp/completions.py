"""Cauchy, P1 and P2 completions of finite spaces.

Points of the P1 completion are the closed filters, points of the P2
completion the closed flat filters, and points of the Cauchy completion the
minimal Cauchy filters (one per isomorphism class of objects).  Distances
are ``filter_distance``.  Points are listed shortest base first, then
lexicographically by object position, so reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .enriched import NonexpansiveMap, QuasiMetricSpace, validate_space
from .filters import (
    PrincipalFilter,
    all_filters,
    closure,
    direct_image,
    filter_distance,
    is_cauchy,
    is_closed,
    is_flat,
    representative,
)

__all__ = [
    "MODES",
    "TargetNotComplete",
    "CompletedSpace",
    "mode_filters",
    "complete",
    "embed",
    "first_unrepresented",
    "is_complete",
    "extend",
    "closed_points_ok",
]

MODES = ("cauchy", "p1", "p2")


class TargetNotComplete(Exception):
    """Raised by ``extend`` when some filter on the target lacks a representative."""

    def __init__(self, witness: PrincipalFilter):
        self.witness = witness
        super().__init__(f"filter {witness.label()} on the target has no representative")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown completion mode {mode!r}; expected one of {', '.join(MODES)}")


def _in_class(f: PrincipalFilter, mode: str) -> bool:
    if mode == "cauchy":
        return is_cauchy(f)
    if mode == "p2":
        return is_flat(f)
    return True


def mode_filters(space: QuasiMetricSpace, mode: str) -> Tuple[PrincipalFilter, ...]:
    """All filters in the class the mode completes (Cauchy, flat, or all)."""
    _check_mode(mode)
    return tuple(f for f in all_filters(space) if _in_class(f, mode))


def _iso_class(space: QuasiMetricSpace, i: int) -> Tuple[int, ...]:
    d = space.dist
    return tuple(j for j in range(len(d)) if d[i][j].num == 0 and d[j][i].num == 0)


def _point_key(f: PrincipalFilter):
    return (len(f.idx), f.idx)


@dataclass(frozen=True)
class CompletedSpace:
    mode: str
    base_space: QuasiMetricSpace
    points: Tuple[PrincipalFilter, ...]
    space: QuasiMetricSpace

    def point_index(self, f: PrincipalFilter) -> int:
        return self.points.index(f)

    def as_report(self) -> dict:
        return {
            "mode": self.mode,
            "points": [[str(x) for x in p.base] for p in self.points],
            "dist": [[str(v) for v in row] for row in self.space.dist],
        }


def complete(space: QuasiMetricSpace, mode: str) -> CompletedSpace:
    _check_mode(mode)
    if mode == "cauchy":
        pts = {PrincipalFilter.from_indices(space, _iso_class(space, i)) for i in range(len(space))}
    else:
        pts = {closure(f) for f in mode_filters(space, mode)}
        pts = {f for f in pts if _in_class(f, mode)}
    points = tuple(sorted(pts, key=_point_key))
    dist = [[filter_distance(p, q) for q in points] for p in points]
    cs = validate_space([p.label() for p in points], dist)
    return CompletedSpace(mode, space, points, cs)


def _point_of(space: QuasiMetricSpace, i: int, mode: str) -> PrincipalFilter:
    if mode == "cauchy":
        return PrincipalFilter.from_indices(space, _iso_class(space, i))
    return closure(PrincipalFilter.from_indices(space, (i,)))


def embed(space: QuasiMetricSpace, mode: str, completion: Optional[CompletedSpace] = None) -> NonexpansiveMap:
    """The isometric inclusion sending each object to the point it generates."""
    _check_mode(mode)
    c = completion if completion is not None else complete(space, mode)
    pos: Dict[PrincipalFilter, int] = {p: k for k, p in enumerate(c.points)}
    assignment = tuple(pos[_point_of(space, i, mode)] for i in range(len(space)))
    return NonexpansiveMap(space, c.space, assignment)


def first_unrepresented(space: QuasiMetricSpace, mode: str) -> Optional[PrincipalFilter]:
    for f in mode_filters(space, mode):
        if representative(f) is None:
            return f
    return None


def is_complete(space: QuasiMetricSpace, mode: str) -> bool:
    return first_unrepresented(space, mode) is None


def extend(
    f: NonexpansiveMap, mode: str, completion: Optional[CompletedSpace] = None
) -> NonexpansiveMap:
    """Extend ``f: A -> B`` to the completion of ``A``.

    Each point is sent to the representative of its direct image.  ``B``
    must be complete for the mode.
    """
    _check_mode(mode)
    witness = first_unrepresented(f.target, mode)
    if witness is not None:
        raise TargetNotComplete(witness)
    c = completion if completion is not None else complete(f.source, mode)
    target = f.target
    assignment = []
    for p in c.points:
        rep = representative(direct_image(f, p))
        assert rep is not None
        assignment.append(target.index(rep))
    return NonexpansiveMap(c.space, target, tuple(assignment))


def closed_points_ok(c: CompletedSpace) -> bool:
    """Every P1/P2 point is closed and in class; Cauchy points are Cauchy."""
    for p in c.points:
        if not _in_class(p, c.mode):
            return False
        if c.mode != "cauchy" and not is_closed(p):
            return False
    return True
