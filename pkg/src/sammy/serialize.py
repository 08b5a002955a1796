"""JSON and DOT serialization of structure values.

JSON layout (deterministic key order, so files are diffable)::

    {"kind": "category", "objects": [0, 1], "morphisms": [{"id": 0, "src": 0, "tgt": 0}, ...],
     "identities": [0, 2], "compose": [[f, g, g_after_f], ...]}
    {"kind": "functor", "source": <category>, "target": <category>,
     "object_map": [...], "morphism_map": [...]}
    {"kind": "nattrans", "source": <functor>, "target": <functor>, "components": [...]}

A preorder is written ``{"kind": "category", "thin": true, "objects": n,
"relations": [[a, b], ...]}`` (all non-reflexive related pairs; morphisms are the
sorted pairs), a total order ``{"kind": "category", "chain": n}``, and a functor into
a thin category omits ``morphism_map``. These compact forms are what :func:`to_data`
emits whenever they apply, so truncations like ``omega_1024`` stay small.
"""

from __future__ import annotations

import json
from typing import Any

from .core import (
    CAT,
    ChainCategory,
    ExplicitCategory,
    FunctorValue,
    NatTransValue,
    OpaqueCat,
    OpaqueFunctor,
    ThinCategory,
    ValidationError,
    chain,
    functor_from_objects,
    make_category,
)


def to_data(v: object) -> dict[str, Any]:
    if isinstance(v, OpaqueCat):
        return {"kind": "category", "opaque": "CAT"}
    if isinstance(v, OpaqueFunctor):
        return {"kind": "functor", "opaque": v.name, "source": to_data(v.source), "target": to_data(v.target)}
    if isinstance(v, ChainCategory):
        return {"kind": "category", "chain": v.n}
    if isinstance(v, ExplicitCategory) and _thin_indexed(v):
        return {
            "kind": "category",
            "thin": True,
            "objects": v.n,
            "relations": [[a, b] for a, b in v.morphisms if a != b],
        }
    if isinstance(v, ExplicitCategory):
        return {
            "kind": "category",
            "objects": list(range(v.n)),
            "morphisms": [{"id": k, "src": s, "tgt": t} for k, (s, t) in enumerate(v.morphisms)],
            "identities": list(v.identities),
            "compose": [[f, g, v.compose(f, g)] for f, g in v.composable_pairs()],
        }
    if isinstance(v, FunctorValue):
        if _thin_indexed(v.target):
            return {
                "kind": "functor",
                "source": to_data(v.source),
                "target": to_data(v.target),
                "object_map": list(v.obj_map),
            }
        return {
            "kind": "functor",
            "source": to_data(v.source),
            "target": to_data(v.target),
            "object_map": list(v.obj_map),
            "morphism_map": list(v.mor_map),
        }
    if isinstance(v, NatTransValue):
        return {
            "kind": "nattrans",
            "source": to_data(v.source),
            "target": to_data(v.target),
            "components": list(v.components),
        }
    raise ValidationError(f"cannot serialize {type(v).__name__}")


def _thin_indexed(c: ExplicitCategory) -> bool:
    """Thin, with morphisms in sorted-pair order (so the thin form preserves indices)."""
    if isinstance(c, ChainCategory):
        return True
    if not c.is_thin:
        return False
    ms = list(c.morphisms)
    return ms == sorted(set(ms)) and len(ms) == len(set(ms))


def from_data(d: dict[str, Any]) -> object:
    kind = d.get("kind")
    if kind == "category":
        if d.get("opaque"):
            return CAT
        if "chain" in d:
            return chain(int(d["chain"]))
        objs = d["objects"]
        n = objs if isinstance(objs, int) else len(objs)
        if d.get("thin"):
            return ThinCategory(n, [tuple(p) for p in d.get("relations", [])])
        mors = d["morphisms"]
        mors = sorted(mors, key=lambda m: m["id"])
        if [m["id"] for m in mors] != list(range(len(mors))):
            raise ValidationError("morphism ids must be 0..m-1")
        table = {(int(f), int(g)): int(h) for f, g, h in d.get("compose", [])}
        return make_category(n, [(m["src"], m["tgt"]) for m in mors], list(d["identities"]), table)
    if kind == "functor":
        if d.get("opaque"):
            return OpaqueFunctor(d["opaque"], from_data(d["source"]), from_data(d["target"]))
        src, tgt = from_data(d["source"]), from_data(d["target"])
        om = tuple(int(x) for x in d["object_map"])
        if "morphism_map" not in d:
            return functor_from_objects(src, tgt, om)
        return FunctorValue(src, tgt, om, tuple(int(x) for x in d["morphism_map"]))
    if kind == "nattrans":
        return NatTransValue(from_data(d["source"]), from_data(d["target"]), tuple(int(x) for x in d["components"]))
    raise ValidationError(f"unknown structure kind {kind!r}")


def dumps(v: object, indent: int | None = 2) -> str:
    return json.dumps(to_data(v), indent=indent)


def loads(text: str) -> object:
    return from_data(json.loads(text))


def indecomposables(c: ExplicitCategory) -> list[int]:
    """Non-identity morphisms that are not composites of two non-identity morphisms."""
    composite = set()
    for f, g in c.composable_pairs():
        if not c.is_identity(f) and not c.is_identity(g):
            composite.add(c.compose(f, g))
    return [k for k in range(len(c.morphisms)) if not c.is_identity(k) and k not in composite]


def to_dot(v: object, name: str = "C") -> str:
    """DOT graph of a category (generating arrows as edges) or of a functor's source."""
    if isinstance(v, FunctorValue):
        c = v.source
        lines = [f"digraph {name} {{"]
        for x in range(c.n):
            lines.append(f'  {x} [label="{x} -> {v.obj_map[x]}"];')
    elif isinstance(v, NatTransValue):
        c = v.source.source
        lines = [f"digraph {name} {{"]
        for x in range(c.n):
            lines.append(f'  {x} [label="{x}: {v.components[x]}"];')
    elif isinstance(v, ExplicitCategory):
        c = v
        lines = [f"digraph {name} {{"]
        for x in range(c.n):
            lines.append(f"  {x};")
    else:
        raise ValidationError("DOT export needs a concrete structure")
    for k in indecomposables(c):
        s, t = c.morphisms[k]
        lines.append(f'  {s} -> {t} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines)


def to_text(v: object) -> str:
    if isinstance(v, ExplicitCategory):
        gens = indecomposables(v)
        return f"category: {v.n} objects, {len(v.morphisms)} morphisms, generators {[v.morphisms[k] for k in gens]}"
    if isinstance(v, FunctorValue):
        return f"functor: {v.source.n} -> {v.target.n} objects, object map {list(v.obj_map)}"
    if isinstance(v, NatTransValue):
        return f"nattrans: components {list(v.components)}"
    if isinstance(v, OpaqueCat):
        return "category: CAT (symbolic)"
    if isinstance(v, OpaqueFunctor):
        return f"functor: {v.name} (symbolic)"
    return repr(v)
