"""JSON documents for spaces, modules, filters, maps, sequences and preorders.

A document that needs a space (or preorder) takes it either inline or as a
path string, resolved relative to the directory of the referencing file.
"""

from __future__ import annotations

import json
import os
from typing import Any, Optional

from .enriched import (
    LeftModule,
    NonexpansiveMap,
    QuasiMetricSpace,
    RightModule,
    validate_space,
)
from .filters import FwdSeq, PrincipalFilter
from .preorders import MonotoneMap, Preorder, validate_preorder
from .quantale import Cost

__all__ = [
    "DocumentError",
    "load_json",
    "dumps",
    "space_to_doc",
    "space_from_doc",
    "module_to_doc",
    "module_from_doc",
    "filter_to_doc",
    "filter_from_doc",
    "map_to_doc",
    "map_from_doc",
    "sequence_from_doc",
    "preorder_to_doc",
    "preorder_from_doc",
    "monotone_map_from_doc",
    "bool_members_from_doc",
    "to_plain",
]


class DocumentError(ValueError):
    pass


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _require(doc: Any, key: str, kind=None):
    if not isinstance(doc, dict):
        raise DocumentError(f"expected a JSON object, got {type(doc).__name__}")
    if key not in doc:
        raise DocumentError(f"missing field {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise DocumentError(f"field {key!r} has the wrong type")
    return v


def _resolve(ref: Any, base_dir: Optional[str]) -> Any:
    if isinstance(ref, str):
        path = ref if os.path.isabs(ref) or base_dir is None else os.path.join(base_dir, ref)
        return load_json(path), os.path.dirname(path)
    return ref, base_dir


def _names(values: list, what: str) -> tuple:
    if not all(isinstance(x, str) for x in values):
        raise DocumentError(f"{what} must be strings")
    return tuple(values)


def space_to_doc(space: QuasiMetricSpace) -> dict:
    return {"objects": list(space.objects), "dist": [[str(v) for v in row] for row in space.dist]}


def space_from_doc(doc: Any, base_dir: Optional[str] = None) -> QuasiMetricSpace:
    doc, _ = _resolve(doc, base_dir)
    objects = _names(_require(doc, "objects", list), "object identifiers")
    matrix = _require(doc, "dist", list)
    if not all(isinstance(r, list) for r in matrix):
        raise DocumentError("'dist' must be a list of rows")
    if len(matrix) != len(objects) or any(len(r) != len(objects) for r in matrix):
        raise DocumentError("'dist' must be square and match 'objects'")
    rows = [[_cost(v) for v in r] for r in matrix]
    return validate_space(objects, rows)


def _cost(v) -> Cost:
    if isinstance(v, bool):
        raise DocumentError(f"not a cost: {v!r}")
    try:
        return Cost(v)
    except (TypeError, ValueError) as e:
        raise DocumentError(f"not a cost: {v!r} ({e})") from None


def module_to_doc(m) -> dict:
    doc = {
        "space": space_to_doc(m.space),
        "values": {x: str(v) for x, v in zip(m.space.objects, m.values)},
    }
    if isinstance(m, RightModule):
        doc["side"] = "right"
    return doc


def module_from_doc(doc: Any, base_dir: Optional[str] = None):
    space_ref = _require(doc, "space")
    sub, sub_dir = _resolve(space_ref, base_dir)
    space = space_from_doc(sub, sub_dir)
    values = _require(doc, "values", dict)
    side = doc.get("side", "left")
    cls = {"left": LeftModule, "right": RightModule}.get(side)
    if cls is None:
        raise DocumentError("'side' must be 'left' or 'right'")
    return cls.from_mapping(space, {k: _cost(v) for k, v in values.items()})


def filter_to_doc(f: PrincipalFilter) -> dict:
    return {"space": space_to_doc(f.space), "base": list(f.base)}


def filter_from_doc(doc: Any, base_dir: Optional[str] = None) -> PrincipalFilter:
    sub, sub_dir = _resolve(_require(doc, "space"), base_dir)
    space = space_from_doc(sub, sub_dir)
    base = _names(_require(doc, "base", list), "base entries")
    return PrincipalFilter(space, base)


def sequence_from_doc(doc: Any, base_dir: Optional[str] = None) -> FwdSeq:
    sub, sub_dir = _resolve(_require(doc, "space"), base_dir)
    space = space_from_doc(sub, sub_dir)
    prefix = _names(doc.get("prefix", []), "prefix entries")
    cycle = _names(_require(doc, "cycle", list), "cycle entries")
    return FwdSeq(space, prefix, cycle)


def map_to_doc(g: NonexpansiveMap) -> dict:
    return {"source": space_to_doc(g.source), "target": space_to_doc(g.target), "map": g.as_dict()}


def map_from_doc(doc: Any, base_dir: Optional[str] = None) -> NonexpansiveMap:
    src, sd = _resolve(_require(doc, "source"), base_dir)
    tgt, td = _resolve(_require(doc, "target"), base_dir)
    mapping = _require(doc, "map", dict)
    return NonexpansiveMap.from_mapping(space_from_doc(src, sd), space_from_doc(tgt, td), mapping)


def preorder_to_doc(p: Preorder) -> dict:
    return {"objects": list(p.objects), "le": [list(pair) for pair in p.pairs()]}


def preorder_from_doc(doc: Any, base_dir: Optional[str] = None) -> Preorder:
    doc, _ = _resolve(doc, base_dir)
    objects = _names(_require(doc, "objects", list), "object identifiers")
    pairs = doc.get("le", [])
    if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 for p in pairs):
        raise DocumentError("'le' must be a list of [lower, upper] pairs")
    return validate_preorder(objects, [tuple(p) for p in pairs])


def bool_members_from_doc(doc: Any, base_dir: Optional[str] = None):
    """A two-valued module: ``{"space": preorder, "values": {x: 0|1}}`` or ``"members": [...]``."""
    sub, sub_dir = _resolve(_require(doc, "space"), base_dir)
    p = preorder_from_doc(sub, sub_dir)
    if "members" in doc:
        members = _names(_require(doc, "members", list), "members")
    else:
        values = _require(doc, "values", dict)
        bad = [k for k, v in values.items() if v not in (0, 1) or isinstance(v, float)]
        if bad:
            raise DocumentError(f"truth values must be 0 or 1 (at {bad[0]!r})")
        missing = [x for x in p.objects if x not in values]
        if missing:
            raise DocumentError(f"no value for object {missing[0]!r}")
        members = tuple(x for x in p.objects if values[x] == 1)
    for x in members:
        p.index(x)
    return p, members


def monotone_map_from_doc(doc: Any, base_dir: Optional[str] = None) -> MonotoneMap:
    src, sd = _resolve(_require(doc, "source"), base_dir)
    tgt, td = _resolve(_require(doc, "target"), base_dir)
    mapping = _require(doc, "map", dict)
    return MonotoneMap.from_mapping(preorder_from_doc(src, sd), preorder_from_doc(tgt, td), mapping)


def to_plain(obj: Any) -> Any:
    """Recursively turn costs and tuples into JSON-ready values."""
    if isinstance(obj, Cost):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    return obj
