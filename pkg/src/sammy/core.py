"""Finite categories, functors and natural transformations as runtime values.

Objects of a category are the integers ``0..n-1``. A morphism is identified
by its position in ``category.morphisms``; ``compose(f, g)`` is "g after f"
and is defined exactly when ``target(f) == source(g)``.

Two storage strategies share one interface:

* :class:`TabulatedCategory` keeps an explicit composition table.
* :class:`ThinCategory` (at most one morphism per ordered pair) derives
  composition from endpoints, and :class:`ChainCategory` computes even its
  morphism list arithmetically so that long truncated chains stay cheap.
"""

from __future__ import annotations

import bisect
import contextlib
import contextvars
import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property


class SammyError(Exception):
    """Base class for every error raised by the runtime."""

    @property
    def name(self) -> str:
        return type(self).__name__


class SizeLimit(SammyError):
    pass


class SourceTargetMismatch(SammyError):
    pass


class SymbolicCategory(SammyError):
    """An operation needed a tabulated category but got the opaque ``Cat``."""


class KindError(SammyError):
    pass


class ValidationError(SammyError):
    pass


# --------------------------------------------------------------------------
# size caps


@dataclass(frozen=True)
class Limits:
    max_objects: int = 64
    max_morphisms: int = 512


_LIMITS: contextvars.ContextVar[Limits] = contextvars.ContextVar("limits", default=Limits())


def current_limits() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def size_limits(max_objects: int | None = None, max_morphisms: int | None = None):
    old = _LIMITS.get()
    token = _LIMITS.set(
        Limits(
            old.max_objects if max_objects is None else max_objects,
            old.max_morphisms if max_morphisms is None else max_morphisms,
        )
    )
    try:
        yield
    finally:
        _LIMITS.reset(token)


def check_size(n_objects: int, n_morphisms: int, what: str = "category") -> None:
    lim = _LIMITS.get()
    if n_objects > lim.max_objects:
        raise SizeLimit(f"{what}: {n_objects} objects exceeds cap {lim.max_objects}")
    if n_morphisms > lim.max_morphisms:
        raise SizeLimit(f"{what}: {n_morphisms} morphisms exceeds cap {lim.max_morphisms}")


# --------------------------------------------------------------------------
# categories


class ExplicitCategory:
    """Common interface of finite categories. Subclasses fill in storage."""

    n: int
    morphisms: Sequence[tuple[int, int]]
    identities: Sequence[int]

    @property
    def objects(self) -> range:
        return range(self.n)

    def compose(self, f: int, g: int) -> int | None:
        raise NotImplementedError

    @property
    def is_thin(self) -> bool:
        return False

    def src(self, f: int) -> int:
        return self.morphisms[f][0]

    def tgt(self, f: int) -> int:
        return self.morphisms[f][1]

    @cached_property
    def _homs(self) -> dict[tuple[int, int], list[int]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for k, st in enumerate(self.morphisms):
            homs.setdefault(st, []).append(k)
        return homs

    def hom(self, a: int, b: int) -> Sequence[int]:
        return self._homs.get((a, b), ())

    @cached_property
    def _out(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for k, (s, _) in enumerate(self.morphisms):
            out[s].append(k)
        return out

    def out_of(self, a: int) -> Sequence[int]:
        return self._out[a]

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        for f, (_, b) in enumerate(self.morphisms):
            for g in self.out_of(b):
                yield f, g

    def composition_table(self) -> dict[tuple[int, int], int | None]:
        return {(f, g): self.compose(f, g) for f, g in self.composable_pairs()}

    def is_identity(self, f: int) -> bool:
        return self.identities[self.morphisms[f][0]] == f

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, ExplicitCategory):
            return NotImplemented
        if self.n != other.n or len(self.morphisms) != len(other.morphisms):
            return False
        if isinstance(self, ChainCategory) and isinstance(other, ChainCategory):
            return True
        if list(self.morphisms) != list(other.morphisms):
            return False
        if self.is_thin and other.is_thin:
            return True
        if list(self.identities) != list(other.identities):
            return False
        return all(self.compose(f, g) == other.compose(f, g) for f, g in self.composable_pairs())

    def __hash__(self) -> int:
        return hash((self.n, len(self.morphisms)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(objects={self.n}, morphisms={len(self.morphisms)})"


class TabulatedCategory(ExplicitCategory):
    def __init__(
        self,
        n: int,
        morphisms: Sequence[tuple[int, int]],
        identities: Sequence[int],
        table: dict[tuple[int, int], int],
    ):
        check_size(n, len(morphisms))
        self.n = n
        self.morphisms = tuple(tuple(m) for m in morphisms)
        self.identities = tuple(identities)
        self.table = dict(table)

    def compose(self, f: int, g: int) -> int | None:
        return self.table.get((f, g))


class ThinCategory(ExplicitCategory):
    """A preorder: morphisms are the related pairs, sorted lexicographically."""

    def __init__(self, n: int, pairs=()):
        rel = set(pairs)
        rel.update((a, a) for a in range(n))
        check_size(n, len(rel))
        self.n = n
        self.morphisms = tuple(sorted(rel))
        self.index = {st: k for k, st in enumerate(self.morphisms)}
        self.identities = tuple(self.index[(a, a)] for a in range(n))

    @property
    def is_thin(self) -> bool:
        return True

    def index_of(self, a: int, b: int) -> int | None:
        return self.index.get((a, b))

    def compose(self, f: int, g: int) -> int | None:
        a, b = self.morphisms[f]
        b2, c = self.morphisms[g]
        if b != b2:
            return None
        return self.index_of(a, c)

    def hom(self, a: int, b: int) -> Sequence[int]:
        k = self.index_of(a, b)
        return () if k is None else (k,)


class _ChainMorphisms(Sequence):
    def __init__(self, n: int):
        self.n = n
        # offsets[i] = index of the morphism (i, i)
        self.offsets = [i * n - i * (i - 1) // 2 for i in range(n)]
        self._len = n * (n + 1) // 2

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(self._len))]
        if k < 0:
            k += self._len
        if not 0 <= k < self._len:
            raise IndexError(k)
        i = bisect.bisect_right(self.offsets, k) - 1
        return (i, i + k - self.offsets[i])

    def __iter__(self):
        for i in range(self.n):
            for j in range(i, self.n):
                yield (i, j)

    def __eq__(self, other):
        if isinstance(other, _ChainMorphisms):
            return self.n == other.n
        return list(self) == list(other)


class ChainCategory(ThinCategory):
    """The total order ``0 -> 1 -> ... -> n-1`` with arithmetic indexing."""

    def __init__(self, n: int):
        check_size(n, n * (n + 1) // 2)
        self.n = n
        self.morphisms = _ChainMorphisms(n)
        self.identities = tuple(self.morphisms.offsets)

    def index_of(self, a: int, b: int) -> int | None:
        if 0 <= a <= b < self.n:
            return self.morphisms.offsets[a] + (b - a)
        return None

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {st: k for k, st in enumerate(self.morphisms)}

    @cached_property
    def _homs(self):
        return {st: [k] for k, st in enumerate(self.morphisms)}

    def hom(self, a: int, b: int) -> Sequence[int]:
        k = self.index_of(a, b)
        return () if k is None else (k,)

    def out_of(self, a: int) -> Sequence[int]:
        off = self.morphisms.offsets[a]
        return range(off, off + self.n - a)


def make_category(n, morphisms, identities, table) -> ExplicitCategory:
    """Build a category, choosing thin storage when it is index-compatible."""
    morphisms = [tuple(m) for m in morphisms]
    if len(set(morphisms)) == len(morphisms) and morphisms == sorted(morphisms):
        thin = ThinCategory(n, morphisms)
        if list(thin.morphisms) == morphisms:
            return thin
    return TabulatedCategory(n, morphisms, identities, table)


def thin(n: int, pairs=()) -> ThinCategory:
    return ThinCategory(n, pairs)


def discrete(n: int) -> ThinCategory:
    return ThinCategory(n)


def chain(n_objects: int) -> ChainCategory:
    return ChainCategory(n_objects)


def codiscrete(n: int) -> ThinCategory:
    """Every pair of objects joined by a unique isomorphism."""
    return ThinCategory(n, itertools.product(range(n), repeat=2))


ZERO = thin(0)
ONE = thin(1)
TWO = thin(2, [(0, 1)])
TWO_ISO = codiscrete(2)


# --------------------------------------------------------------------------
# functors and natural transformations


class ThinMorMap(Sequence):
    """Morphism map of a functor into a thin category, derived from objects."""

    def __init__(self, source: ExplicitCategory, target: ThinCategory, obj_map: tuple[int, ...]):
        self.source = source
        self.target = target
        self.obj_map = obj_map

    def __len__(self) -> int:
        return len(self.source.morphisms)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(len(self)))]
        a, b = self.source.morphisms[k]
        img = self.target.index_of(self.obj_map[a], self.obj_map[b])
        return -1 if img is None else img

    def __iter__(self):
        om, idx = self.obj_map, self.target.index_of
        for a, b in self.source.morphisms:
            img = idx(om[a], om[b])
            yield -1 if img is None else img

    def __eq__(self, other):
        if isinstance(other, ThinMorMap) and self.obj_map == other.obj_map:
            if self.source == other.source and self.target == other.target:
                return True
        return len(self) == len(other) and all(x == y for x, y in zip(self, other))


def _seq_eq(a: Sequence, b: Sequence) -> bool:
    if a is b:
        return True
    if isinstance(a, ThinMorMap):
        return a == b
    if isinstance(b, ThinMorMap):
        return b == a
    return tuple(a) == tuple(b)


@dataclass(frozen=True, eq=False)
class FunctorValue:
    source: ExplicitCategory
    target: ExplicitCategory
    obj_map: tuple[int, ...]
    mor_map: Sequence[int]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FunctorValue):
            return NotImplemented
        return (
            self.obj_map == other.obj_map
            and self.source == other.source
            and self.target == other.target
            and _seq_eq(self.mor_map, other.mor_map)
        )

    def __hash__(self) -> int:
        return hash((self.obj_map, len(self.mor_map)))

    def __repr__(self) -> str:
        return f"FunctorValue({self.source!r} -> {self.target!r}, objects={list(self.obj_map)})"


def functor_from_objects(source: ExplicitCategory, target: ThinCategory, obj_map) -> FunctorValue:
    """The functor into a thin category determined by its object map."""
    obj_map = tuple(obj_map)
    if not target.is_thin:
        raise KindError("functor_from_objects needs a thin target")
    return FunctorValue(source, target, obj_map, ThinMorMap(source, target, obj_map))


def tabulate_functor(f: FunctorValue) -> FunctorValue:
    return FunctorValue(f.source, f.target, f.obj_map, tuple(f.mor_map))


@dataclass(frozen=True, eq=False)
class NatTransValue:
    source: FunctorValue
    target: FunctorValue
    components: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, NatTransValue):
            return NotImplemented
        return (
            self.components == other.components
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash(self.components)


@dataclass(frozen=True)
class OpaqueCat:
    """The constant ``Cat``: a token, never tabulated."""

    name: str = "CAT"


@dataclass(frozen=True)
class OpaqueFunctor:
    name: str
    source: object
    target: object


CAT = OpaqueCat()

StructureValue = ExplicitCategory | FunctorValue | NatTransValue | OpaqueCat | OpaqueFunctor


def kind_of(v: object) -> str:
    if isinstance(v, (ExplicitCategory, OpaqueCat)):
        return "category"
    if isinstance(v, (FunctorValue, OpaqueFunctor)):
        return "functor"
    if isinstance(v, NatTransValue):
        return "nattrans"
    raise KindError(f"not a structure value: {type(v).__name__}")


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.law}: {self.witness}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, *witness) -> None:
        self.violations.append(Violation(law, witness))

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(map(str, self.violations))


def _validate_category(c: ExplicitCategory, rep: ValidationReport) -> None:
    n, mors = c.n, c.morphisms
    for o in range(n):
        i = c.identities[o]
        if not 0 <= i < len(mors) or mors[i] != (o, o):
            rep.add("identity endpoints", o, i)
    for k, (s, t) in enumerate(mors):
        if not (0 <= s < n and 0 <= t < n):
            rep.add("morphism endpoints out of range", k)
    if rep.violations:
        return
    if c.is_thin:
        for f, g in c.composable_pairs():
            if c.compose(f, g) is None:
                rep.add("composition not total", f, g)
                return
        return
    if isinstance(c, TabulatedCategory):
        for (f, g), h in c.table.items():
            if not (0 <= f < len(mors) and 0 <= g < len(mors)) or mors[f][1] != mors[g][0]:
                rep.add("composition defined on non-composable pair", f, g)
    for f, g in c.composable_pairs():
        h = c.compose(f, g)
        if h is None:
            rep.add("composition not total", f, g)
        elif mors[h] != (mors[f][0], mors[g][1]):
            rep.add("composition endpoints", f, g, h)
    if rep.violations:
        return
    for f, (s, t) in enumerate(mors):
        if c.compose(c.identities[s], f) != f:
            rep.add("left identity", f)
        if c.compose(f, c.identities[t]) != f:
            rep.add("right identity", f)
    for f, g in c.composable_pairs():
        fg = c.compose(f, g)
        for h in c.out_of(mors[g][1]):
            if c.compose(fg, h) != c.compose(f, c.compose(g, h)):
                rep.add("associativity", f, g, h)
                return


def _validate_functor(F: FunctorValue, rep: ValidationReport) -> None:
    A, B = F.source, F.target
    if len(F.obj_map) != A.n or len(F.mor_map) != len(A.morphisms):
        rep.add("map sizes", len(F.obj_map), len(F.mor_map))
        return
    for a, x in enumerate(F.obj_map):
        if not 0 <= x < B.n:
            rep.add("object out of range", a, x)
            return
    om = F.obj_map
    for f, (s, t) in enumerate(A.morphisms):
        h = F.mor_map[f]
        if not 0 <= h < len(B.morphisms):
            rep.add("morphism out of range", f, h)
            return
        hs, ht = B.morphisms[h]
        if hs != om[s]:
            rep.add("source not preserved", f)
        if ht != om[t]:
            rep.add("target not preserved", f)
    if rep.violations:
        return
    for a in range(A.n):
        if F.mor_map[A.identities[a]] != B.identities[om[a]]:
            rep.add("identity not preserved", a)
    if B.is_thin:
        return
    for f, g in A.composable_pairs():
        if F.mor_map[A.compose(f, g)] != B.compose(F.mor_map[f], F.mor_map[g]):
            rep.add("composition not preserved", f, g)


def _validate_nat(alpha: NatTransValue, rep: ValidationReport) -> None:
    F, G = alpha.source, alpha.target
    if not (F.source == G.source and F.target == G.target):
        rep.add("functors not parallel")
        return
    A, B = F.source, F.target
    if len(alpha.components) != A.n:
        rep.add("component count", len(alpha.components))
        return
    for a, k in enumerate(alpha.components):
        if not 0 <= k < len(B.morphisms) or B.morphisms[k] != (F.obj_map[a], G.obj_map[a]):
            rep.add("component endpoints", a, k)
    if rep.violations:
        return
    comps = alpha.components
    for f, (s, t) in enumerate(A.morphisms):
        if B.compose(F.mor_map[f], comps[t]) != B.compose(comps[s], G.mor_map[f]):
            rep.add("naturality", f)


def validate(v: object) -> ValidationReport:
    """Check every law of ``v``; failures are reported, never raised.

    Values are immutable, so a successful check is memoized on the value itself.
    """
    rep = ValidationReport()
    if getattr(v, "_sammy_valid", False):
        return rep
    if isinstance(v, ExplicitCategory):
        _validate_category(v, rep)
    elif isinstance(v, FunctorValue):
        for part in (v.source, v.target):
            rep.violations.extend(validate(part).violations)
        if rep.ok:
            _validate_functor(v, rep)
    elif isinstance(v, NatTransValue):
        for part in (v.source, v.target):
            rep.violations.extend(validate(part).violations)
        if rep.ok:
            _validate_nat(v, rep)
    elif isinstance(v, (OpaqueCat, OpaqueFunctor)):
        pass
    else:
        rep.add("not a structure value", type(v).__name__)
    if rep.ok:
        mark_valid(v)
    return rep


def ensure_valid(v: object, what: str = "value") -> None:
    """Raise ValidationError unless ``v`` is lawful. Results are memoized."""
    if getattr(v, "_sammy_valid", False):
        return
    rep = validate(v)
    if not rep.ok:
        raise ValidationError(f"{what}: {rep}")
    mark_valid(v)


def mark_valid(v: object) -> object:
    """Record that ``v`` is known to be lawful (used for trusted builders)."""
    try:
        object.__setattr__(v, "_sammy_valid", True)
    except (AttributeError, TypeError):
        pass
    return v


def structures_equal(a: object, b: object) -> bool:
    """Index-structural equality; values of different kinds are unequal."""
    try:
        if kind_of(a) != kind_of(b):
            return False
    except KindError:
        return False
    if type(a) is not type(b) and not (
        isinstance(a, ExplicitCategory) and isinstance(b, ExplicitCategory)
    ):
        return False
    return a == b


# --------------------------------------------------------------------------
# isomorphism


def identity_functor(c: ExplicitCategory) -> FunctorValue:
    if c.is_thin:
        return functor_from_objects(c, c, range(c.n))
    return FunctorValue(c, c, tuple(range(c.n)), tuple(range(len(c.morphisms))))


def _object_signature(c: ExplicitCategory, a: int) -> tuple:
    return (
        len(c.hom(a, a)),
        sorted(len(c.hom(a, b)) for b in range(c.n)),
        sorted(len(c.hom(b, a)) for b in range(c.n)),
    )


def iter_isomorphisms(a: ExplicitCategory, b: ExplicitCategory) -> Iterator[FunctorValue]:
    """Yield every isomorphism ``a -> b`` (backtracking on objects, then morphisms)."""
    lim = current_limits()
    for c in (a, b):
        if c.n > lim.max_objects or len(c.morphisms) > lim.max_morphisms:
            raise SizeLimit(f"isomorphism search on {c!r}")
    if a.n != b.n or len(a.morphisms) != len(b.morphisms):
        return
    n = a.n
    sig_a = [_object_signature(a, x) for x in range(n)]
    sig_b = [_object_signature(b, y) for y in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return
    obj = [-1] * n
    used = [False] * n

    def objects(i: int) -> Iterator[None]:
        if i == n:
            yield
            return
        for y in range(n):
            if used[y] or sig_a[i] != sig_b[y]:
                continue
            if any(
                len(a.hom(i, j)) != len(b.hom(y, obj[j])) or len(a.hom(j, i)) != len(b.hom(obj[j], y))
                for j in range(i)
            ):
                continue
            obj[i], used[y] = y, True
            yield from objects(i + 1)
            obj[i], used[y] = -1, False

    non_ids = [f for f in range(len(a.morphisms)) if not a.is_identity(f)]

    for _ in objects(0):
        om = tuple(obj)
        if a.is_thin and b.is_thin:
            mm = tuple(b.index_of(om[s], om[t]) for s, t in a.morphisms)
            yield FunctorValue(a, b, om, mm)
            continue
        mor = [-1] * len(a.morphisms)
        taken: set[int] = set()
        for x in range(n):
            mor[a.identities[x]] = b.identities[om[x]]
            taken.add(b.identities[om[x]])

        def consistent(f: int) -> bool:
            s, t = a.morphisms[f]
            for g in a.out_of(t):
                h = a.compose(f, g)
                if mor[g] >= 0 and mor[h] >= 0 and b.compose(mor[f], mor[g]) != mor[h]:
                    return False
            for e_src in range(n):
                for e in a.hom(e_src, s):
                    h = a.compose(e, f)
                    if mor[e] >= 0 and mor[h] >= 0 and b.compose(mor[e], mor[f]) != mor[h]:
                        return False
            return True

        def morphisms(i: int) -> Iterator[None]:
            if i == len(non_ids):
                yield
                return
            f = non_ids[i]
            s, t = a.morphisms[f]
            for y in b.hom(om[s], om[t]):
                if y in taken:
                    continue
                mor[f] = y
                taken.add(y)
                if consistent(f):
                    yield from morphisms(i + 1)
                taken.discard(y)
                mor[f] = -1

        for _ in morphisms(0):
            F = FunctorValue(a, b, om, tuple(mor))
            if validate(F).ok:
                yield F


def invert_functor(F: FunctorValue) -> FunctorValue:
    om = [0] * len(F.obj_map)
    for x, y in enumerate(F.obj_map):
        om[y] = x
    mm = [0] * len(F.mor_map)
    for x, y in enumerate(F.mor_map):
        mm[y] = x
    return FunctorValue(F.target, F.source, tuple(om), tuple(mm))


def categories_isomorphic(a: ExplicitCategory, b: ExplicitCategory):
    """Return ``(F, F_inverse)`` for some isomorphism, or ``None``."""
    for F in iter_isomorphisms(a, b):
        return F, invert_functor(F)
    return None


def _after(F: FunctorValue, G: FunctorValue) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Object and morphism maps of ``G o F`` (no checks)."""
    return (
        tuple(G.obj_map[x] for x in F.obj_map),
        tuple(G.mor_map[x] for x in F.mor_map),
    )


def functors_isomorphic(f: FunctorValue, g: FunctorValue):
    """Find isos ``phi`` of sources and ``psi`` of targets with ``psi f = g phi``."""
    if isinstance(f, OpaqueFunctor) or isinstance(g, OpaqueFunctor):
        return ("opaque", "opaque") if f == g else None
    psis = list(iter_isomorphisms(f.target, g.target))
    if not psis:
        return None
    for phi in iter_isomorphisms(f.source, g.source):
        rhs = _after(phi, g)
        for psi in psis:
            if _after(f, psi) == rhs:
                return phi, psi
    return None


def nats_isomorphic(x: NatTransValue, y: NatTransValue):
    """Isos of the underlying categories carrying ``x`` onto ``y`` componentwise."""
    psis = list(iter_isomorphisms(x.source.target, y.source.target))
    for phi in iter_isomorphisms(x.source.source, y.source.source):
        for psi in psis:
            if _after(x.source, psi) != _after(phi, y.source):
                continue
            if _after(x.target, psi) != _after(phi, y.target):
                continue
            if all(psi.mor_map[x.components[a]] == y.components[phi.obj_map[a]] for a in range(len(x.components))):
                return phi, psi
    return None


def structures_isomorphic(a: object, b: object) -> bool:
    ka, kb = kind_of(a), kind_of(b)
    if ka != kb:
        return False
    if isinstance(a, (OpaqueCat, OpaqueFunctor)) or isinstance(b, (OpaqueCat, OpaqueFunctor)):
        return a == b
    if ka == "category":
        return categories_isomorphic(a, b) is not None
    if ka == "functor":
        return functors_isomorphic(a, b) is not None
    return nats_isomorphic(a, b) is not None
