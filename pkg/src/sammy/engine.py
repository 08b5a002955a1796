"""Categorical operations over tabulated finite categories.

Everything here is a pure function of immutable values. Where the answer is
only defined up to isomorphism (limits, Kan extensions) the first candidate in
enumeration order wins, so the smallest apex index is returned.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .core import (
    ONE,
    ExplicitCategory,
    FunctorValue,
    KindError,
    NatTransValue,
    SammyError,
    SizeLimit,
    SourceTargetMismatch,
    ThinCategory,
    ThinMorMap,
    check_size,
    current_limits,
    functor_from_objects,
    identity_functor,
    make_category,
)


class NoLimit(SammyError):
    pass


# --------------------------------------------------------------------------
# opposites, identities, composition


class _OpThin(ExplicitCategory):
    """Opposite of a thin category keeping the original morphism indices."""

    def __init__(self, base: ExplicitCategory):
        self.base = base
        self.n = base.n
        self.morphisms = _SwappedSeq(base.morphisms)
        self.identities = base.identities

    @property
    def is_thin(self) -> bool:
        return True

    def index_of(self, a: int, b: int) -> int | None:
        return self.base.index_of(b, a)

    def hom(self, a: int, b: int):
        return self.base.hom(b, a)

    def compose(self, f: int, g: int) -> int | None:
        return self.base.compose(g, f)

    def __hash__(self) -> int:
        return hash((self.n, len(self.morphisms)))


class _SwappedSeq(Sequence):
    def __init__(self, seq):
        self.seq = seq

    def __len__(self):
        return len(self.seq)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [(t, s) for s, t in self.seq[k]]
        s, t = self.seq[k]
        return (t, s)

    def __iter__(self):
        for s, t in self.seq:
            yield (t, s)

    def __eq__(self, other):
        return len(self) == len(other) and all(x == y for x, y in zip(self, other))


def _op_cat(c: ExplicitCategory) -> ExplicitCategory:
    if isinstance(c, _OpThin):
        return c.base
    if c.is_thin:
        return _OpThin(c)
    from .core import TabulatedCategory

    table = {(g, f): c.compose(f, g) for f, g in c.composable_pairs()}
    return TabulatedCategory(c.n, [(t, s) for s, t in c.morphisms], c.identities, table)


def op0(c: ExplicitCategory) -> ExplicitCategory:
    """Opposite category; morphism ``k`` keeps its index with endpoints swapped."""
    return _op_cat(c)


def op1(F: FunctorValue) -> FunctorValue:
    src, tgt = op0(F.source), op0(F.target)
    if isinstance(F.mor_map, ThinMorMap):
        return FunctorValue(src, tgt, F.obj_map, ThinMorMap(src, tgt, F.obj_map))
    return FunctorValue(src, tgt, F.obj_map, F.mor_map)


def op_nat(alpha: NatTransValue) -> NatTransValue:
    """``alpha: F => G`` becomes ``alpha^op: G^op => F^op`` with the same components."""
    return NatTransValue(op1(alpha.target), op1(alpha.source), alpha.components)


def identity_nat(F: FunctorValue) -> NatTransValue:
    B = F.target
    return NatTransValue(F, F, tuple(B.identities[x] for x in F.obj_map))


def comp(f: FunctorValue, g: FunctorValue) -> FunctorValue:
    """``g o f``; the target of ``f`` must equal the source of ``g``."""
    if not isinstance(f, FunctorValue) or not isinstance(g, FunctorValue):
        raise KindError("Comp expects two functors")
    if f.target != g.source:
        raise SourceTargetMismatch("target of the first functor differs from the source of the second")
    om = tuple(g.obj_map[x] for x in f.obj_map)
    if g.target.is_thin:
        return functor_from_objects(f.source, g.target, om)
    return FunctorValue(f.source, g.target, om, tuple(g.mor_map[x] for x in f.mor_map))


def vcomp(a: NatTransValue, b: NatTransValue) -> NatTransValue:
    """Vertical composite ``b . a`` of ``a: F => G`` and ``b: G => H``."""
    if a.target != b.source:
        raise SourceTargetMismatch("Vcomp: target functor of the first differs from source of the second")
    C = a.source.target
    return NatTransValue(a.source, b.target, tuple(C.compose(x, y) for x, y in zip(a.components, b.components)))


def hcomp(a: NatTransValue, b: NatTransValue) -> NatTransValue:
    """Horizontal composite of ``a: F => G`` (A -> B) and ``b: H => K`` (B -> C)."""
    F, G = a.source, a.target
    H, K = b.source, b.target
    if F.target != H.source:
        raise SourceTargetMismatch("Hcomp: categories do not chain")
    C = H.target
    comps = tuple(
        C.compose(b.components[F.obj_map[x]], K.mor_map[a.components[x]]) for x in range(F.source.n)
    )
    return NatTransValue(comp(F, H), comp(G, K), comps)


def whisker_left(alpha: NatTransValue, F: FunctorValue) -> NatTransValue:
    """``alpha F``: precompose ``alpha: G => H`` with ``F``."""
    if F.target != alpha.source.source:
        raise SourceTargetMismatch("whisker: categories do not chain")
    return NatTransValue(
        comp(F, alpha.source), comp(F, alpha.target), tuple(alpha.components[x] for x in F.obj_map)
    )


def whisker_right(H: FunctorValue, alpha: NatTransValue) -> NatTransValue:
    """``H alpha``: postcompose ``alpha: F => G`` with ``H``."""
    if alpha.source.target != H.source:
        raise SourceTargetMismatch("whisker: categories do not chain")
    return NatTransValue(
        comp(alpha.source, H), comp(alpha.target, H), tuple(H.mor_map[k] for k in alpha.components)
    )


def pointer(c: ExplicitCategory, a: int) -> FunctorValue:
    """The functor ``1 -> c`` selecting object ``a``."""
    return FunctorValue(ONE, c, (a,), (c.identities[a],))


def bang(c: ExplicitCategory) -> FunctorValue:
    """The unique functor ``c -> 1``."""
    return functor_from_objects(c, ONE, (0,) * c.n)


def empty_functor(c: ExplicitCategory) -> FunctorValue:
    from .core import ZERO

    return FunctorValue(ZERO, c, (), ())


def constant_functor(a: ExplicitCategory, b: ExplicitCategory, x: int) -> FunctorValue:
    return FunctorValue(
        a, b, (x,) * a.n, (b.identities[x],) * len(a.morphisms)
    )


def is_iso_morphism(c: ExplicitCategory, f: int) -> int | None:
    """Return an inverse of ``f`` or ``None``."""
    s, t = c.morphisms[f]
    for g in c.hom(t, s):
        if c.compose(f, g) == c.identities[s] and c.compose(g, f) == c.identities[t]:
            return g
    return None


def is_isomorphism_functor(F: FunctorValue) -> bool:
    return (
        sorted(F.obj_map) == list(range(F.target.n))
        and len(F.mor_map) == len(F.target.morphisms)
        and sorted(F.mor_map) == list(range(len(F.target.morphisms)))
    )


# --------------------------------------------------------------------------
# enumeration of functors and natural transformations


def _enum_budget(count: int, what: str) -> None:
    lim = current_limits()
    if count > lim.max_morphisms * 64:
        raise SizeLimit(f"{what}: enumeration exceeds budget")


def iter_functors(a: ExplicitCategory, b: ExplicitCategory) -> Iterator[FunctorValue]:
    """Every functor ``a -> b``: object maps in lexicographic order, then morphism maps."""
    n = a.n
    obj = [0] * n
    non_ids = [f for f in range(len(a.morphisms)) if not a.is_identity(f)]
    endpoints = a.morphisms

    def obj_ok(i: int) -> bool:
        # every morphism among assigned objects must have somewhere to go
        for j in range(i + 1):
            if a.hom(i, j) and not b.hom(obj[i], obj[j]):
                return False
            if a.hom(j, i) and not b.hom(obj[j], obj[i]):
                return False
        return True

    def objects(i: int) -> Iterator[None]:
        if i == n:
            yield
            return
        for y in range(b.n):
            obj[i] = y
            if obj_ok(i):
                yield from objects(i + 1)

    for _ in objects(0):
        om = tuple(obj)
        if b.is_thin:
            yield functor_from_objects(a, b, om)
            continue
        mor = [-1] * len(endpoints)
        for x in range(n):
            mor[a.identities[x]] = b.identities[om[x]]

        def ok(f: int) -> bool:
            s, t = endpoints[f]
            for g in a.out_of(t):
                h = a.compose(f, g)
                if mor[g] >= 0 and mor[h] >= 0 and b.compose(mor[f], mor[g]) != mor[h]:
                    return False
            for e in _into(a, s):
                h = a.compose(e, f)
                if mor[e] >= 0 and mor[h] >= 0 and b.compose(mor[e], mor[f]) != mor[h]:
                    return False
            return True

        def morphisms(i: int) -> Iterator[None]:
            if i == len(non_ids):
                yield
                return
            f = non_ids[i]
            s, t = endpoints[f]
            for y in b.hom(om[s], om[t]):
                mor[f] = y
                if ok(f):
                    yield from morphisms(i + 1)
            mor[f] = -1

        for _ in morphisms(0):
            yield FunctorValue(a, b, om, tuple(mor))


def _into(c: ExplicitCategory, a: int) -> list[int]:
    cache = c.__dict__.setdefault("_sammy_into", {})
    if a not in cache:
        cache[a] = [k for k, (_, t) in enumerate(c.morphisms) if t == a]
    return cache[a]


def iter_nats(F: FunctorValue, G: FunctorValue) -> Iterator[NatTransValue]:
    """Every natural transformation ``F => G`` (lexicographic in components)."""
    A, B = F.source, F.target
    n = A.n
    homs = [B.hom(F.obj_map[i], G.obj_map[i]) for i in range(n)]
    if any(len(h) == 0 for h in homs):
        return
    if B.is_thin:  # parallel arrows coincide, so naturality is automatic
        yield NatTransValue(F, G, tuple(h[0] for h in homs))
        return
    Fm, Gm = F.mor_map, G.mor_map
    # squares to check once component i is chosen: arrows between i and earlier objects
    checks = []
    for i in range(n):
        sq = [(Fm[f], j, Gm[f]) for j in range(i + 1) for f in A.hom(i, j)]
        back = [(Fm[f], j, Gm[f]) for j in range(i) for f in A.hom(j, i)]
        checks.append((sq, back))
    comps = [-1] * n

    def ok(i: int) -> bool:
        sq, back = checks[i]
        ci = comps[i]
        for Ff, j, Gf in sq:  # f: i -> j
            if B.compose(Ff, comps[j]) != B.compose(ci, Gf):
                return False
        for Ff, j, Gf in back:  # f: j -> i
            if B.compose(Ff, ci) != B.compose(comps[j], Gf):
                return False
        return True

    def rec(i: int) -> Iterator[None]:
        if i == n:
            yield
            return
        for k in homs[i]:
            comps[i] = k
            if ok(i):
                yield from rec(i + 1)
        comps[i] = -1

    for _ in rec(0):
        yield NatTransValue(F, G, tuple(comps))


@dataclass(frozen=True, eq=False)
class FunctorCategory:
    category: ExplicitCategory
    functors: tuple[FunctorValue, ...]
    nats: tuple[NatTransValue, ...]
    index: dict

    def object_of(self, F: FunctorValue) -> int:
        return self.index[_fkey(F)]

    def morphism_of(self, alpha: NatTransValue) -> int:
        return self.nat_index[(self.object_of(alpha.source), self.object_of(alpha.target), alpha.components)]

    @property
    def nat_index(self) -> dict:
        d = self.__dict__.get("_nat_index")
        if d is None:
            d = {
                (self.object_of(al.source), self.object_of(al.target), al.components): k
                for k, al in enumerate(self.nats)
            }
            object.__setattr__(self, "_nat_index", d)
        return d


def _fkey(F: FunctorValue) -> tuple:
    return (F.obj_map, tuple(F.mor_map))


def functor_category(a: ExplicitCategory, b: ExplicitCategory) -> FunctorCategory:
    """Objects: all functors ``a -> b``; morphisms: all natural transformations."""
    lim = current_limits()
    functors: list[FunctorValue] = []
    for F in iter_functors(a, b):
        functors.append(F)
        if len(functors) > lim.max_objects:
            raise SizeLimit("functor category: too many functors")
    index = {_fkey(F): i for i, F in enumerate(functors)}
    nats: list[NatTransValue] = []
    morphisms: list[tuple[int, int]] = []
    by_key: dict[tuple, int] = {}
    identities = [0] * len(functors)
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for al in iter_nats(F, G):
                by_key[(i, j, al.components)] = len(nats)
                if i == j and all(b.is_identity(k) for k in al.components):
                    identities[i] = len(nats)
                nats.append(al)
                morphisms.append((i, j))
                if len(nats) > lim.max_morphisms:
                    raise SizeLimit("functor category: too many natural transformations")
    out: dict[int, list[int]] = {}
    for k, (i, _) in enumerate(morphisms):
        out.setdefault(i, []).append(k)
    table = {}
    for k, (i, j) in enumerate(morphisms):
        for m in out.get(j, ()):
            l = morphisms[m][1]
            comps = tuple(b.compose(x, y) for x, y in zip(nats[k].components, nats[m].components))
            table[(k, m)] = by_key[(i, l, comps)]
    cat = make_category(len(functors), morphisms, identities, table)
    fc = FunctorCategory(cat, tuple(functors), tuple(nats), index)
    object.__setattr__(fc, "_nat_index", by_key)
    return fc


def pow0(a: ExplicitCategory, b: ExplicitCategory) -> ExplicitCategory:
    """The functor category ``b^a``."""
    return functor_category(a, b).category


def pow1(f: FunctorValue, g: FunctorValue) -> FunctorValue:
    """For ``f: A -> B`` and ``g: C -> D`` the functor ``g o - o f: C^B -> D^A``."""
    src = functor_category(f.target, g.source)
    tgt = functor_category(f.source, g.target)
    om = []
    for H in src.functors:
        om.append(tgt.object_of(comp(comp(f, H), g)))
    mm = []
    for th in src.nats:
        w = whisker_right(g, whisker_left(th, f))
        mm.append(tgt.morphism_of(w))
    return FunctorValue(src.category, tgt.category, tuple(om), tuple(mm))


def evaluation(fc: FunctorCategory, x: int) -> FunctorValue:
    """Evaluation ``b^a -> b`` at object ``x`` of ``a``."""
    b = fc.functors[0].target if fc.functors else None
    if b is None:
        raise SizeLimit("evaluation of an empty functor category")
    om = tuple(F.obj_map[x] for F in fc.functors)
    mm = tuple(al.components[x] for al in fc.nats)
    return FunctorValue(fc.category, b, om, mm)


# --------------------------------------------------------------------------
# products, coproducts, subcategories, pullbacks


@dataclass(frozen=True, eq=False)
class Product:
    category: ExplicitCategory
    proj1: FunctorValue
    proj2: FunctorValue

    def pair_object(self, x: int, y: int) -> int:
        return x * self.proj2.target.n + y


def product(a: ExplicitCategory, b: ExplicitCategory) -> Product:
    """Objects ``(x, y)`` at index ``x * |b| + y``."""
    nb = b.n
    if a.is_thin and b.is_thin:
        check_size(a.n * nb, len(a.morphisms) * len(b.morphisms), "product")
        pairs = [
            (s1 * nb + s2, t1 * nb + t2) for (s1, t1) in a.morphisms for (s2, t2) in b.morphisms
        ]
        cat = ThinCategory(a.n * nb, pairs)
        p1 = functor_from_objects(cat, a, [x // nb for x in range(cat.n)]) if a.n else None
        p2 = functor_from_objects(cat, b, [x % nb for x in range(cat.n)]) if nb else None
        if p1 is None:
            p1 = functor_from_objects(cat, a, ())
        if p2 is None:
            p2 = functor_from_objects(cat, b, ())
        return Product(cat, p1, p2)
    mb = len(b.morphisms)
    check_size(a.n * nb, len(a.morphisms) * mb, "product")
    mors = []
    for f, (s1, t1) in enumerate(a.morphisms):
        for g, (s2, t2) in enumerate(b.morphisms):
            mors.append((s1 * nb + s2, t1 * nb + t2))
    ids = [a.identities[x] * mb + b.identities[y] for x in range(a.n) for y in range(nb)]
    table = {}
    for f1, f2 in a.composable_pairs():
        h1 = a.compose(f1, f2)
        for g1, g2 in b.composable_pairs():
            table[(f1 * mb + g1, f2 * mb + g2)] = h1 * mb + b.compose(g1, g2)
    cat = make_category(a.n * nb, mors, ids, table)
    p1 = FunctorValue(cat, a, tuple(x // nb for x in range(cat.n)), tuple(k // mb for k in range(len(mors))))
    p2 = FunctorValue(cat, b, tuple(x % nb for x in range(cat.n)), tuple(k % mb for k in range(len(mors))))
    return Product(cat, p1, p2)


def pairing(prod: Product, F: FunctorValue, G: FunctorValue) -> FunctorValue:
    """``<F, G>: X -> A x B``."""
    cat = prod.category
    om = tuple(prod.pair_object(x, y) for x, y in zip(F.obj_map, G.obj_map))
    if cat.is_thin:
        return functor_from_objects(F.source, cat, om)
    mb = len(prod.proj2.target.morphisms)
    return FunctorValue(F.source, cat, om, tuple(f * mb + g for f, g in zip(F.mor_map, G.mor_map)))


def product_functor(pa: Product, pb: Product, F: FunctorValue, G: FunctorValue) -> FunctorValue:
    """``F x G: A x B -> C x D``."""
    return pairing(pb, comp(pa.proj1, F), comp(pa.proj2, G))


@dataclass(frozen=True, eq=False)
class Coproduct:
    category: ExplicitCategory
    inj1: FunctorValue
    inj2: FunctorValue


def coproduct(a: ExplicitCategory, b: ExplicitCategory) -> Coproduct:
    na, ma = a.n, len(a.morphisms)
    mors = list(a.morphisms) + [(s + na, t + na) for s, t in b.morphisms]
    ids = list(a.identities) + [i + ma for i in b.identities]
    table = {(f, g): a.compose(f, g) for f, g in a.composable_pairs()}
    table.update({(f + ma, g + ma): b.compose(f, g) + ma for f, g in b.composable_pairs()})
    cat = make_category(na + b.n, mors, ids, table)
    i1 = FunctorValue(a, cat, tuple(range(na)), tuple(range(ma)))
    i2 = FunctorValue(b, cat, tuple(range(na, na + b.n)), tuple(range(ma, ma + len(b.morphisms))))
    return Coproduct(cat, i1, i2)


@dataclass(frozen=True, eq=False)
class Subcategory:
    category: ExplicitCategory
    inclusion: FunctorValue
    objects: tuple[int, ...]


def full_subcategory(c: ExplicitCategory, objs) -> Subcategory:
    objs = tuple(objs)
    pos = {x: i for i, x in enumerate(objs)}
    keep = [k for k, (s, t) in enumerate(c.morphisms) if s in pos and t in pos]
    new = {k: i for i, k in enumerate(keep)}
    mors = [(pos[c.morphisms[k][0]], pos[c.morphisms[k][1]]) for k in keep]
    ids = [new[c.identities[x]] for x in objs]
    table = {}
    for k in keep:
        for m in c.out_of(c.morphisms[k][1]):
            if m in new:
                table[(new[k], new[m])] = new[c.compose(k, m)]
    cat = make_category(len(objs), mors, ids, table)
    if c.is_thin:
        inc = functor_from_objects(cat, c, objs)
    else:
        inc = FunctorValue(cat, c, objs, tuple(keep))
    return Subcategory(cat, inc, objs)


@dataclass(frozen=True, eq=False)
class Pullback:
    category: ExplicitCategory
    proj1: FunctorValue
    proj2: FunctorValue
    pairs: tuple[tuple[int, int], ...]


def pullback(f: FunctorValue, g: FunctorValue) -> Pullback:
    """Pairs ``(x, y)`` with ``f x = g y``; morphisms ``(u, v)`` with ``f u = g v``."""
    if f.target != g.target:
        raise SourceTargetMismatch("pullback of functors with different targets")
    A, B = f.source, g.source
    objs = [(x, y) for x in range(A.n) for y in range(B.n) if f.obj_map[x] == g.obj_map[y]]
    pos = {p: i for i, p in enumerate(objs)}
    mors, data = [], []
    for i, (x, y) in enumerate(objs):
        for j, (x2, y2) in enumerate(objs):
            for u in A.hom(x, x2):
                for v in B.hom(y, y2):
                    if f.mor_map[u] == g.mor_map[v]:
                        mors.append((i, j))
                        data.append((u, v))
    check_size(len(objs), len(mors), "pullback")
    idx = {d: k for k, d in enumerate(data)}
    ids = [idx[(A.identities[x], B.identities[y])] for x, y in objs]
    table = {}
    out: dict[int, list[int]] = {}
    for k, (i, _) in enumerate(mors):
        out.setdefault(i, []).append(k)
    for k, (i, j) in enumerate(mors):
        u, v = data[k]
        for m in out.get(j, ()):
            u2, v2 = data[m]
            table[(k, m)] = idx[(A.compose(u, u2), B.compose(v, v2))]
    cat = make_category(len(objs), mors, ids, table)
    p1 = FunctorValue(cat, A, tuple(x for x, _ in objs), tuple(u for u, _ in data))
    p2 = FunctorValue(cat, B, tuple(y for _, y in objs), tuple(v for _, v in data))
    return Pullback(cat, p1, p2, tuple(objs))


# --------------------------------------------------------------------------
# comma categories


@dataclass(frozen=True, eq=False)
class CommaCategory:
    category: ExplicitCategory
    proj_left: FunctorValue
    proj_right: FunctorValue
    objects: tuple[tuple[int, int, int], ...]
    index: dict

    @property
    def base(self) -> ExplicitCategory:
        return self.category


def comma(l: FunctorValue, r: FunctorValue, iso_only: bool = False) -> CommaCategory:
    """Objects ``(a, b, h: l a -> r b)``; morphisms ``(u, v)`` with ``r v . h = h' . l u``."""
    if l.target != r.target:
        raise SourceTargetMismatch("comma: functors must share a target")
    A, B, C = l.source, r.source, l.target
    if A.is_thin and B.is_thin and C.is_thin:
        return _thin_comma(l, r, iso_only)
    lim = current_limits()
    objs = []
    for a in range(A.n):
        for b in range(B.n):
            for h in C.hom(l.obj_map[a], r.obj_map[b]):
                if iso_only and is_iso_morphism(C, h) is None:
                    continue
                objs.append((a, b, h))
                if len(objs) > lim.max_objects:
                    raise SizeLimit("comma category: too many objects")
    index = {o: i for i, o in enumerate(objs)}
    mors, data = [], []
    for i, (a, b, h) in enumerate(objs):
        for j, (a2, b2, h2) in enumerate(objs):
            for u in A.hom(a, a2):
                lu = l.mor_map[u]
                for v in B.hom(b, b2):
                    if C.compose(h, r.mor_map[v]) == C.compose(lu, h2):
                        mors.append((i, j))
                        data.append((u, v))
            if len(mors) > lim.max_morphisms:
                raise SizeLimit("comma category: too many morphisms")
    idx = {(mors[k][0], mors[k][1]) + data[k]: k for k in range(len(mors))}
    ids = [idx[(i, i, A.identities[a], B.identities[b])] for i, (a, b, _) in enumerate(objs)]
    out: dict[int, list[int]] = {}
    for k, (i, _) in enumerate(mors):
        out.setdefault(i, []).append(k)
    table = {}
    for k, (i, j) in enumerate(mors):
        u, v = data[k]
        for m in out.get(j, ()):
            u2, v2 = data[m]
            table[(k, m)] = idx[(i, mors[m][1], A.compose(u, u2), B.compose(v, v2))]
    cat = make_category(len(objs), mors, ids, table)
    pl = FunctorValue(cat, A, tuple(a for a, _, _ in objs), tuple(u for u, _ in data))
    pr = FunctorValue(cat, B, tuple(b for _, b, _ in objs), tuple(v for _, v in data))
    return CommaCategory(cat, pl, pr, tuple(objs), index)


def _thin_comma(l: FunctorValue, r: FunctorValue, iso_only: bool) -> CommaCategory:
    """Comma of thin categories: thin, since squares commute automatically."""
    A, B, C = l.source, r.source, l.target
    lim = current_limits()
    objs = []
    for a in range(A.n):
        la = l.obj_map[a]
        for b in range(B.n):
            h = C.index_of(la, r.obj_map[b])
            if h is None:
                continue
            if iso_only and C.index_of(r.obj_map[b], la) is None:
                continue
            objs.append((a, b, h))
            if len(objs) > lim.max_objects:
                raise SizeLimit("comma category: too many objects")
    pairs = []
    for i, (a, b, _) in enumerate(objs):
        for j, (a2, b2, _) in enumerate(objs):
            if A.index_of(a, a2) is not None and B.index_of(b, b2) is not None:
                pairs.append((i, j))
        if len(pairs) > lim.max_morphisms:
            raise SizeLimit("comma category: too many morphisms")
    cat = ThinCategory(len(objs), pairs)
    pl = functor_from_objects(cat, A, [a for a, _, _ in objs])
    pr = functor_from_objects(cat, B, [b for _, b, _ in objs])
    return CommaCategory(cat, pl, pr, tuple(objs), {o: i for i, o in enumerate(objs)})


def iso_comma(l: FunctorValue, r: FunctorValue) -> CommaCategory:
    """The full subcategory of ``comma(l, r)`` on invertible arrows."""
    return comma(l, r, iso_only=True)


def arrow_category(c: ExplicitCategory) -> FunctorCategory:
    """``c^2`` as a functor category (objects are functors ``2 -> c``)."""
    from .core import TWO

    return functor_category(TWO, c)


@dataclass(frozen=True, eq=False)
class CompositionFunctor:
    pairs: Pullback
    functor: FunctorValue
    arrows: FunctorCategory


def composition_functor(c: ExplicitCategory) -> CompositionFunctor:
    """The functor ``c^2 x_{c^1} c^2 -> c^2`` taking composable pairs to composites."""
    ar = arrow_category(c)
    pb = pullback(evaluation(ar, 1), evaluation(ar, 0))
    om, mm = [], []
    for x, y in pb.pairs:
        F, G = ar.functors[x], ar.functors[y]
        arrow = c.compose(F.mor_map[1], G.mor_map[1])
        target = ar.index[_arrow_key(c, arrow)]
        om.append(target)
    data1, data2 = pb.proj1.mor_map, pb.proj2.mor_map
    for k, (i, j) in enumerate(pb.category.morphisms):
        t1, t2 = ar.nats[data1[k]], ar.nats[data2[k]]
        comps = (t1.components[0], t2.components[1])
        mm.append(ar.nat_index[(om[i], om[j], comps)])
    F = FunctorValue(pb.category, ar.category, tuple(om), tuple(mm))
    return CompositionFunctor(pb, F, ar)


def _arrow_key(c: ExplicitCategory, f: int) -> tuple:
    s, t = c.morphisms[f]
    return ((s, t), (c.identities[s], f, c.identities[t]))


# --------------------------------------------------------------------------
# limits and colimits


@dataclass(frozen=True)
class Cone:
    apex: int
    legs: tuple[int, ...]


def iter_cones(D: FunctorValue, apex: int | None = None) -> Iterator[Cone]:
    """Cones over ``D: J -> C`` in apex order, legs lexicographic."""
    J, C = D.source, D.target
    apexes = range(C.n) if apex is None else (apex,)
    jm = J.morphisms
    checks: list[list[tuple[int, int]]] = [[] for _ in range(J.n)]
    for u, (s, t) in enumerate(jm):
        checks[max(s, t)].append((u, s))
    for c in apexes:
        legs = [-1] * J.n

        def rec(i: int) -> Iterator[None]:
            if i == J.n:
                yield
                return
            for k in C.hom(c, D.obj_map[i]):
                legs[i] = k
                good = True
                for u, s in checks[i]:
                    t = jm[u][1]
                    if C.compose(legs[s], D.mor_map[u]) != legs[t]:
                        good = False
                        break
                if good:
                    yield from rec(i + 1)
            legs[i] = -1

        for _ in rec(0):
            yield Cone(c, tuple(legs))


def mediators(C: ExplicitCategory, source: Cone, target: Cone) -> list[int]:
    """Morphisms ``m: source.apex -> target.apex`` with ``target.legs[j] . m = source.legs[j]``."""
    return [
        m
        for m in C.hom(source.apex, target.apex)
        if all(C.compose(m, lt) == ls for lt, ls in zip(target.legs, source.legs))
    ]


def limit(D: FunctorValue) -> Cone:
    """A universal cone over ``D``; the smallest apex index among universal ones.

    ``(L, lam)`` is universal iff for every object ``x`` the map ``m |-> lam . m`` is a
    bijection ``Hom(x, L) -> Cone(x, D)``; cone enumeration therefore stops as soon as
    it exceeds ``|Hom(x, L)|``, which keeps large discrete diagrams tractable.
    """
    C = D.target
    if C.is_thin:
        return _thin_limit(D)
    for L in range(C.n):
        n_endo = len(C.hom(L, L))
        at_L = list(itertools.islice(iter_cones(D, L), n_endo + 1))
        if len(at_L) != n_endo:
            continue
        for cand in at_L:
            if all(_represents(C, D, cand, x) for x in range(C.n)):
                return cand
    raise NoLimit("no universal cone")


def _represents(C: ExplicitCategory, D: FunctorValue, cand: Cone, x: int) -> bool:
    homs = C.hom(x, cand.apex)
    images = {tuple(C.compose(m, leg) for leg in cand.legs) for m in homs}
    if len(images) != len(homs):
        return False
    count = 0
    for cone in iter_cones(D, x):
        count += 1
        if count > len(homs) or cone.legs not in images:
            return False
    return count == len(homs)


def _thin_limit(D: FunctorValue) -> Cone:
    C = D.target
    targets = sorted(set(D.obj_map))
    apexes = [c for c in range(C.n) if all(C.index_of(c, t) is not None for t in targets)]
    for c in apexes:
        if all(C.index_of(c2, c) is not None for c2 in apexes):
            return Cone(c, tuple(C.index_of(c, t) for t in D.obj_map))
    raise NoLimit("no universal cone")


def colimit(D: FunctorValue) -> Cone:
    """A universal cocone; legs run ``D j -> apex``."""
    return limit(op1(D))
