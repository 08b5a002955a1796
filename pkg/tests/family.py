"""The small-category test family shared by the Kan and (co)limit tiers.

``CATALOGUE`` lists, up to isomorphism, every preorder with at most 3 objects and at
most 6 morphisms, plus the non-thin categories of that size we exercise (parallel pair,
the cyclic groups Z/2 and Z/3, the idempotent monoid, an arrow with an idempotent at its
source). Functor pairs are reduced to orbits under automorphisms of the three
categories involved: Kan extensions, liftings and (co)limits are transported by
isomorphisms, so one representative per orbit decides the whole orbit.
"""

from __future__ import annotations

import itertools
import random

from oracles import Cat, functors

from sammy.core import FunctorValue, make_category, thin


def _monoid(table: list[list[int]]):
    """One-object category from a multiplication table ``table[f][g] = g after f``."""
    m = len(table)
    return make_category(1, [(0, 0)] * m, [0], {(f, g): table[f][g] for f in range(m) for g in range(m)})


def _with_units(n, arrows, ids, table):
    """Complete a composition table with the identity laws."""
    t = dict(table)
    for f, (a, b) in enumerate(arrows):
        t[(ids[a], f)] = f
        t[(f, ids[b])] = f
    return make_category(n, arrows, ids, t)


Z2 = _monoid([[0, 1], [1, 0]])
Z3 = _monoid([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
IDEMPOTENT = _monoid([[0, 1], [1, 1]])
PARALLEL = _with_units(2, [(0, 0), (1, 1), (0, 1), (0, 1)], [0, 1], {})
# object 0 with an idempotent e (arrow 1) and an arrow u: 0 -> 1 (arrow 2) with u.e = u
IDEMPOTENT_ARROW = _with_units(
    2,
    [(0, 0), (0, 0), (0, 1), (1, 1)],
    [0, 3],
    {(1, 1): 1, (1, 2): 2},
)

CATALOGUE = {
    "0": thin(0, []),
    "1": thin(1, []),
    "1+1": thin(2, []),
    "2": thin(2, [(0, 1)]),
    "2~": thin(2, [(0, 1), (1, 0)]),
    "1+1+1": thin(3, []),
    "2+1": thin(3, [(0, 1)]),
    "V": thin(3, [(0, 1), (0, 2)]),
    "Λ": thin(3, [(1, 0), (2, 0)]),
    "2~+1": thin(3, [(0, 1), (1, 0)]),
    "3": thin(3, [(0, 1), (1, 2), (0, 2)]),
    "Z2": Z2,
    "Z3": Z3,
    "idem": IDEMPOTENT,
    "par": PARALLEL,
    "idem->": IDEMPOTENT_ARROW,
}


def _fv(A, B, F):
    return FunctorValue(A, B, tuple(F[0]), tuple(F[1]))


_AUTS: dict = {}


def automorphisms(name: str):
    if name not in _AUTS:
        c = Cat(CATALOGUE[name])
        auts = []
        for om, mm in functors(c, c):
            if len(set(om)) == c.n and len(set(mm)) == c.m:
                inv_o = [0] * c.n
                inv_m = [0] * c.m
                for x, y in enumerate(om):
                    inv_o[y] = x
                for f, g in enumerate(mm):
                    inv_m[g] = f
                auts.append(((om, mm), (tuple(inv_o), tuple(inv_m))))
        _AUTS[name] = auts
    return _AUTS[name]


def _act(F, src_aut_inv, tgt_aut):
    """tgt_aut . F . src_aut^{-1} on tuples."""
    si_o, si_m = src_aut_inv
    t_o, t_m = tgt_aut
    return tuple(t_o[F[0][si_o[x]]] for x in range(len(F[0]))), tuple(t_m[F[1][si_m[f]]] for f in range(len(F[1])))


def _orbit_reps(pairs, shared: str, left: str, right: str, shared_is_source: bool):
    """Representatives of functor pairs (F, G) under the automorphism groups."""
    seen = set()
    reps = []
    for F, G in pairs:
        key = (F, G)
        if key in seen:
            continue
        reps.append((F, G))
        for (s, s_inv), (l, l_inv), (r, r_inv) in itertools.product(
            automorphisms(shared), automorphisms(left), automorphisms(right)
        ):
            if shared_is_source:
                seen.add((_act(F, s_inv, l), _act(G, s_inv, r)))
            else:
                seen.add((_act(F, l_inv, s), _act(G, r_inv, s)))
    return reps


def extension_cases(names=None):
    """(label, g: C -> A, f: C -> B) for Kan extensions: pairs sharing a source."""
    names = list(names or CATALOGUE)
    for cn, an, bn in itertools.product(names, repeat=3):
        C, A, B = CATALOGUE[cn], CATALOGUE[an], CATALOGUE[bn]
        gs = list(functors(Cat(C), Cat(A)))
        fs = list(functors(Cat(C), Cat(B)))
        for g, f in _orbit_reps(itertools.product(gs, fs), cn, an, bn, True):
            yield f"{cn}->{an},{cn}->{bn}", _fv(C, A, g), _fv(C, B, f)


def lifting_cases(names=None):
    """(label, p: B -> C, f: A -> C) for Kan liftings: pairs sharing a target."""
    names = list(names or CATALOGUE)
    for cn, bn, an in itertools.product(names, repeat=3):
        C, B, A = CATALOGUE[cn], CATALOGUE[bn], CATALOGUE[an]
        ps = list(functors(Cat(B), Cat(C)))
        fs = list(functors(Cat(A), Cat(C)))
        for p, f in _orbit_reps(itertools.product(ps, fs), cn, bn, an, False):
            yield f"{bn}->{cn},{an}->{cn}", _fv(B, C, p), _fv(A, C, f)


def diagram_cases(names=None):
    """(label, D: J -> C) for (co)limits, up to automorphisms of J and C."""
    names = list(names or CATALOGUE)
    for jn, cn in itertools.product(names, repeat=2):
        J, C = CATALOGUE[jn], CATALOGUE[cn]
        seen = set()
        for D in functors(Cat(J), Cat(C)):
            if D in seen:
                continue
            for (j, j_inv), (c, _c_inv) in itertools.product(automorphisms(jn), automorphisms(cn)):
                seen.add(_act(D, j_inv, c))
            yield f"{jn}->{cn}", _fv(J, C, D)


# ---------------------------------------------------------------- randomized 4-object tier


def random_preorder(rng: random.Random, n: int):
    rel = {(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < 0.3}
    changed = True
    while changed:  # transitive closure
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and a != d and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return thin(n, sorted(rel))


def random_cases(seed: int = 20240611, count: int = 40):
    """A fixed pseudo-random sample of extension/lifting instances with up to 4 objects."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        cats = [random_preorder(rng, rng.randint(1, 4)) for _ in range(3)]
        X, Y, Z = cats
        fx = list(functors(Cat(X), Cat(Y)))
        fz = list(functors(Cat(X), Cat(Z)))
        if not fx or not fz:
            continue
        g, f = rng.choice(fx), rng.choice(fz)
        out.append(("ext", _fv(X, Y, g), _fv(X, Z, f)))
        py = list(functors(Cat(Y), Cat(X)))
        pz = list(functors(Cat(Z), Cat(X)))
        if py and pz:
            out.append(("lift", _fv(Y, X, rng.choice(py)), _fv(Z, X, rng.choice(pz))))
    return out
