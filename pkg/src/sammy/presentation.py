"""Categories given by generators and relations, and their bounded tabulation.

Colimits in Cat (coequalizers, pushouts) are returned as presentations because
they are genuinely infinite in general (the coequalizer of ``s, t: 1 => 2`` is the
monoid of natural numbers). :func:`saturate` tabulates a presentation when it is
finite and closes within a path-length bound, and raises :class:`PossiblyInfinite`
otherwise.

A path is ``(start, arrows)``; ``arrows`` lists generator indices in the order
they are traversed (first arrow first), matching ``compose(f, g) = g after f``.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field

from .core import (
    ExplicitCategory,
    FunctorValue,
    SammyError,
    SourceTargetMismatch,
    ValidationError,
    check_size,
    current_limits,
    make_category,
    validate,
)
from .engine import comp, coproduct

Path = tuple[int, tuple[int, ...]]


class PossiblyInfinite(SammyError):
    pass


@dataclass(frozen=True)
class PresentedCategory:
    n_objects: int
    generators: tuple[tuple[int, int], ...]
    relations: tuple[tuple[Path, Path], ...]
    # provenance: class of each object of the presenting category, and the path
    # each of its morphisms became (both empty for hand-written presentations)
    object_quotient: tuple[int, ...] = ()
    arrow_paths: tuple[Path, ...] = ()
    source: ExplicitCategory | None = field(default=None, compare=False)

    def end(self, p: Path) -> int:
        start, arrows = p
        return self.generators[arrows[-1]][1] if arrows else start

    def is_path(self, p: Path) -> bool:
        cur = p[0]
        for a in p[1]:
            s, t = self.generators[a]
            if s != cur:
                return False
            cur = t
        return True


def presentation(n_objects: int, generators, relations=()) -> PresentedCategory:
    """Build a presentation, checking that every relation is between parallel paths."""
    gens = tuple((int(s), int(t)) for s, t in generators)
    rels = []
    p = PresentedCategory(n_objects, gens, ())
    for lhs, rhs in relations:
        lhs = (int(lhs[0]), tuple(lhs[1]))
        rhs = (int(rhs[0]), tuple(rhs[1]))
        if not (p.is_path(lhs) and p.is_path(rhs)):
            raise ValidationError("relation side is not a composable path")
        if lhs[0] != rhs[0] or p.end(lhs) != p.end(rhs):
            raise ValidationError("relation sides are not parallel")
        rels.append((lhs, rhs))
    return PresentedCategory(n_objects, gens, tuple(rels))


def presentation_of(c: ExplicitCategory) -> PresentedCategory:
    """The presentation of ``c`` by all non-identity arrows and its composition table."""
    return _quotient_presentation(c, list(range(c.n)), [])


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            if b < a:
                a, b = b, a
            self.parent[b] = a


def _quotient_presentation(
    c: ExplicitCategory, classes: list[int], identified: list[tuple[int, int]]
) -> PresentedCategory:
    """Presentation of ``c`` with objects collapsed per ``classes`` and arrow pairs identified."""
    labels: dict[int, int] = {}
    for x in range(c.n):
        labels.setdefault(classes[x], len(labels))
    quot = tuple(labels[classes[x]] for x in range(c.n))
    gen_of: dict[int, int] = {}
    gens = []
    for k, (s, t) in enumerate(c.morphisms):
        if not c.is_identity(k):
            gen_of[k] = len(gens)
            gens.append((quot[s], quot[t]))

    def path(k: int) -> Path:
        s = quot[c.morphisms[k][0]]
        return (s, ()) if k not in gen_of else (s, (gen_of[k],))

    rels: list[tuple[Path, Path]] = []
    for f, g in c.composable_pairs():
        if f in gen_of and g in gen_of:
            lhs = (quot[c.morphisms[f][0]], (gen_of[f], gen_of[g]))
            rels.append((lhs, path(c.compose(f, g))))
    for u, v in identified:
        if path(u) != path(v):
            rels.append((path(u), path(v)))
    return PresentedCategory(
        len(labels),
        tuple(gens),
        tuple(rels),
        quot,
        tuple(path(k) for k in range(len(c.morphisms))),
        c,
    )


def coequalizer_presented(f: FunctorValue, g: FunctorValue) -> PresentedCategory:
    """Presentation of the coequalizer of parallel functors ``f, g: A -> B``.

    Generators are the non-identity arrows of ``B``; objects ``f x`` and ``g x`` are
    identified, and relations are ``B``'s composition table plus ``f u ~ g u``.
    """
    if f.source != g.source or f.target != g.target:
        raise SourceTargetMismatch("coequalizer of non-parallel functors")
    B = f.target
    uf = _UnionFind(B.n)
    for x in range(f.source.n):
        uf.union(f.obj_map[x], g.obj_map[x])
    classes = [uf.find(x) for x in range(B.n)]
    identified = [(f.mor_map[u], g.mor_map[u]) for u in range(len(f.source.morphisms))]
    return _quotient_presentation(B, classes, identified)


def pushout_presented(f: FunctorValue, g: FunctorValue) -> PresentedCategory:
    """Pushout of ``f: A -> B`` and ``g: A -> C`` as a coequalizer into ``B + C``."""
    if f.source != g.source:
        raise SourceTargetMismatch("pushout of functors with different sources")
    cp = coproduct(f.target, g.target)
    return coequalizer_presented(comp(f, cp.inj1), comp(g, cp.inj2))


# --------------------------------------------------------------------------
# Tietze simplification


def _substitute(arrows: tuple[int, ...], subst: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    out: list[int] = []
    for a in arrows:
        out.extend(subst.get(a, (a,)))
    return tuple(out)


def simplify(p: PresentedCategory):
    """Eliminate generators ``g`` having a relation ``[g] ~ w`` with ``g`` not in ``w``.

    Returns ``(q, subst)`` where ``subst`` maps each original generator to its
    path in the generators of ``q``.
    """
    subst: dict[int, tuple[int, ...]] = {}
    rels = [(l[1], r[1], l[0]) for l, r in p.relations]
    changed = True
    while changed:
        changed = False
        for i, (l, r, _) in enumerate(rels):
            for a, b in ((l, r), (r, l)):
                if len(a) == 1 and a[0] not in b:
                    g = a[0]
                    subst = {k: _substitute(v, {g: b}) for k, v in subst.items()}
                    subst[g] = b
                    rels = [
                        (_substitute(x, {g: b}), _substitute(y, {g: b}), s) for x, y, s in rels
                    ]
                    changed = True
                    break
            if changed:
                break
    keep = [k for k in range(len(p.generators)) if k not in subst]
    renum = {k: i for i, k in enumerate(keep)}
    full = {k: tuple(renum[a] for a in _substitute((k,), subst)) for k in range(len(p.generators))}
    seen = set()
    new_rels = []
    for l, r, s in rels:
        l2, r2 = tuple(renum[a] for a in l), tuple(renum[a] for a in r)
        if l2 == r2:
            continue
        key = (s, min(l2, r2), max(l2, r2))
        if key in seen:
            continue
        seen.add(key)
        new_rels.append(((s, l2), (s, r2)))
    q = PresentedCategory(
        p.n_objects,
        tuple(p.generators[k] for k in keep),
        tuple(new_rels),
        p.object_quotient,
        tuple((s, _substitute(a, full)) for s, a in p.arrow_paths),
        p.source,
    )
    return q, full


# --------------------------------------------------------------------------
# saturation: coset enumeration over paths


def _key(path: Path) -> tuple:
    return (len(path[1]), path[0], path[1])


class _Table:
    """Right-multiplication table: node -> generator -> node; nodes are path classes."""

    def __init__(self, p: PresentedCategory):
        self.p = p
        self.paths: list[Path] = []
        self.act: list[dict[int, int]] = []
        self.parent: list[int] = []
        self.out = [[] for _ in range(p.n_objects)]
        for k, (s, _) in enumerate(p.generators):
            self.out[s].append(k)
        for x in range(p.n_objects):
            self.new((x, ()))

    def new(self, path: Path) -> int:
        self.paths.append(path)
        self.act.append({})
        self.parent.append(len(self.parent))
        return len(self.paths) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def live(self) -> list[int]:
        return [n for n in range(len(self.paths)) if self.parent[n] == n]

    def end(self, n: int) -> int:
        return self.p.end(self.paths[n])

    def trace(self, n: int, arrows: tuple[int, ...]) -> int | None:
        n = self.find(n)
        for a in arrows:
            nxt = self.act[n].get(a)
            if nxt is None:
                return None
            n = self.find(nxt)
        return n

    def merge(self, a: int, b: int) -> bool:
        queue = [(a, b)]
        merged = False
        while queue:
            x, y = queue.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if _key(self.paths[y]) < _key(self.paths[x]):
                x, y = y, x
            self.parent[y] = x
            merged = True
            for g, t in self.act[y].items():
                if g in self.act[x]:
                    queue.append((self.act[x][g], t))
                else:
                    self.act[x][g] = t
            self.act[y] = {}
        return merged

    def scan(self) -> None:
        rels = self.p.relations
        changed = True
        while changed:
            changed = False
            for n in self.live():
                if self.parent[n] != n:
                    continue
                e = self.end(n)
                for (s, u), (_, v) in rels:
                    if s != e:
                        continue
                    a, b = self.trace(n, u), self.trace(n, v)
                    if a is not None and b is not None and a != b:
                        self.merge(a, b)
                        changed = True


@dataclass(frozen=True, eq=False)
class Saturation:
    category: ExplicitCategory
    presentation: PresentedCategory
    paths: tuple[Path, ...]  # canonical path of each morphism
    _table: _Table
    _nodes: dict

    def morphism_of(self, path: Path) -> int:
        n = self._table.trace(path[0], path[1])
        if n is None:
            raise ValidationError("path is not composable in the presentation")
        return self._nodes[n]

    def quotient_functor(self) -> FunctorValue:
        """The canonical functor from the presenting category (when known)."""
        p = self.presentation
        if p.source is None:
            raise ValidationError("presentation has no presenting category")
        return FunctorValue(
            p.source,
            self.category,
            p.object_quotient,
            tuple(self.morphism_of(path) for path in p.arrow_paths),
        )


_BOUND: contextvars.ContextVar[int] = contextvars.ContextVar("saturation_bound", default=32)


@contextlib.contextmanager
def saturation_bound(bound: int):
    """Default path-length bound for :func:`saturate_full` within the block."""
    if bound < 1:
        raise ValueError("saturation bound must be positive")
    token = _BOUND.set(bound)
    try:
        yield
    finally:
        _BOUND.reset(token)


def saturate_full(p: PresentedCategory, bound: int | None = None) -> Saturation:
    """Tabulate ``p``; raise :class:`PossiblyInfinite` if no closure by path length ``bound``
    (default: the :func:`saturation_bound` in effect, initially 32)."""
    if bound is None:
        bound = _BOUND.get()
    q, subst = simplify(p)
    t = _Table(q)
    lim = current_limits()
    frontier = t.live()
    closed = False
    for _length in range(1, bound + 1):
        new = []
        for n in frontier:
            if t.parent[n] != n:
                continue
            for g in t.out[t.end(n)]:
                if g not in t.act[n]:
                    path = t.paths[n]
                    m = t.new((path[0], path[1] + (g,)))
                    t.act[n][g] = m
                    new.append(m)
        t.scan()
        frontier = [m for m in new if t.find(m) == m]
        if len(t.live()) > lim.max_morphisms:
            raise PossiblyInfinite("presentation exceeds the morphism cap before closing")
        if not frontier and all(
            g in t.act[n] for n in t.live() for g in t.out[t.end(n)]
        ):
            closed = True
            break
    if not closed:
        raise PossiblyInfinite(f"presentation did not close within path length {bound}")
    t.scan()
    nodes = sorted(t.live(), key=lambda n: _key(t.paths[n]))
    index = {n: i for i, n in enumerate(nodes)}
    check_size(q.n_objects, len(nodes), "saturation")
    mors = [(t.paths[n][0], t.end(n)) for n in nodes]
    ids = [index[t.find(x)] for x in range(q.n_objects)]
    table = {}
    for i, n in enumerate(nodes):
        e = t.end(n)
        for j, m in enumerate(nodes):
            if t.paths[m][0] == e:
                table[(i, j)] = index[t.trace(n, t.paths[m][1])]
    cat = make_category(q.n_objects, mors, ids, table)
    rep = validate(cat)
    if not rep.ok:
        raise PossiblyInfinite(f"saturation produced an invalid category: {rep}")
    # express the original presentation's generators in the simplified one
    orig = PresentedCategory(
        p.n_objects, p.generators, p.relations, p.object_quotient, p.arrow_paths, p.source
    )
    sat = Saturation(cat, orig, tuple(t.paths[n] for n in nodes), t, {n: index[n] for n in nodes})
    return _SubstSaturation(sat, subst)


class _SubstSaturation(Saturation):
    """Saturation whose public paths use the original (unsimplified) generators."""

    def __init__(self, inner: Saturation, subst: dict[int, tuple[int, ...]]):
        object.__setattr__(self, "category", inner.category)
        object.__setattr__(self, "presentation", inner.presentation)
        object.__setattr__(self, "paths", inner.paths)
        object.__setattr__(self, "_table", inner._table)
        object.__setattr__(self, "_nodes", inner._nodes)
        object.__setattr__(self, "_subst", subst)

    def morphism_of(self, path: Path) -> int:
        return super().morphism_of((path[0], _substitute(path[1], self._subst)))


def saturate(p: PresentedCategory, bound: int | None = None) -> ExplicitCategory:
    """The explicit category presented by ``p`` (see :func:`saturate_full`)."""
    return saturate_full(p, bound).category
