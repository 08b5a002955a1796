"""The paper's section 3 and 5 constructions at explicitly truncated scale.

Every infinite category of the paper is parameterized by a bound ``N``:

* ``chain`` (omega): the total order ``0 -> 1 -> ... -> N``;
* ``discrete`` (omega_d): the objects ``0..N`` with identities only;
* ``groupoid`` (omega_i): ``0..N`` with a unique isomorphism between any two;
* ``top`` (omega-bar): the chain ``0..N`` followed by a terminal object ``omega``.

The successor clamps the top: ``N |-> N``.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .core import (
    ONE,
    TWO,
    TWO_ISO,
    ExplicitCategory,
    FunctorValue,
    SammyError,
    ThinCategory,
    ValidationError,
    categories_isomorphic,
    chain,
    codiscrete,
    discrete,
    functor_from_objects,
    identity_functor,
    mark_valid,
    structures_equal,
    validate,
)
from .engine import (
    Product,
    bang,
    comma,
    comp,
    coproduct,
    full_subcategory,
    iter_functors,
    iso_comma,
    pairing,
    pointer,
    pow1,
    product,
    product_functor,
    pullback,
)
from .kan import NoKanLifting, kan_ext_left, kan_ext_right, kan_lift_left
from .presentation import coequalizer_presented, saturate, saturate_full


class NoWitness(SammyError):
    pass


class OracleMismatch(SammyError):
    """A categorical construction disagreed with its independent oracle."""


KINDS = {
    "chain": "chain",
    "omega": "chain",
    "discrete": "discrete",
    "omega_d": "discrete",
    "groupoid": "groupoid",
    "groupoid-chain": "groupoid",
    "omega_i": "groupoid",
    "top": "top",
    "chain-with-top": "top",
    "omega_bar": "top",
}


@dataclass(frozen=True, eq=False)
class NumberCategory:
    kind: str
    N: int
    category: ExplicitCategory

    @property
    def top(self) -> int | None:
        """The terminal object ``omega`` of the ``top`` kind."""
        return self.N + 1 if self.kind == "top" else None


def build_number_category(kind: str, N: int) -> NumberCategory:
    if N < 0:
        raise ValidationError("truncation bound must be nonnegative")
    k = KINDS.get(kind)
    if k is None:
        raise ValidationError(f"unknown number category kind {kind!r}")
    if k == "chain":
        c = chain(N + 1)
    elif k == "discrete":
        c = discrete(N + 1)
    elif k == "groupoid":
        c = codiscrete(N + 1)
    else:
        c = chain(N + 2)
    mark_valid(c)
    return NumberCategory(k, N, c)


def successor(nc: NumberCategory) -> FunctorValue:
    """``k |-> k + 1`` with the top clamped (``N |-> N``; ``omega |-> omega``)."""
    N = nc.N
    om = [min(k + 1, N) for k in range(N + 1)]
    if nc.kind == "top":
        om.append(N + 1)
    return mark_valid(functor_from_objects(nc.category, nc.category, om))


def number_pointer(nc: NumberCategory, n: int) -> FunctorValue:
    """``P_n: 1 -> omega_N``."""
    if not 0 <= n < nc.category.n:
        raise ValidationError(f"pointer {n} outside the truncation")
    return mark_valid(pointer(nc.category, n))


def predecessor(nc: NumberCategory, p: FunctorValue) -> FunctorValue:
    """The left Kan lifting of ``p`` along the successor (``P_i |-> P_{i-1}``, ``P_0 |-> P_0``)."""
    try:
        L, _alpha = kan_lift_left(successor(nc), p)
    except NoKanLifting as e:  # never happens on chains
        raise AssertionError("predecessor lifting must exist on a chain") from e
    return L


# --------------------------------------------------------------------------
# the paper's routes to the number categories (cross-checked in tests)


def core_subcategory(c: ExplicitCategory) -> ExplicitCategory:
    """The wide subcategory of isomorphisms (thin input)."""
    pairs = [(a, b) for a, b in c.morphisms if c.index_of(b, a) is not None]
    return ThinCategory(c.n, pairs)


def omega_paper(N: int) -> ExplicitCategory:
    """omega as the coslice ``0 / omega`` = ``comma(P_0, Id)``."""
    c = chain(N + 1)
    return comma(pointer(c, 0), identity_functor(c)).category


def omega_d_paper(N: int) -> ExplicitCategory:
    """omega_d from the iso-comma ``Id ~/ Id`` of omega, keeping only its isomorphisms."""
    c = chain(N + 1)
    ic = iso_comma(identity_functor(c), identity_functor(c)).category
    return core_subcategory(ic)


def omega_i_paper(N: int, bound: int | None = None) -> ExplicitCategory:
    """omega_i as the coequalizer of ``inc, c: omega => zeta_i`` collapsing ``n >= 0`` to 0."""
    zeta = codiscrete(2 * N + 1)  # object j is the integer j - N
    om = chain(N + 1)
    inc = functor_from_objects(om, zeta, [N + k for k in range(N + 1)])
    const = functor_from_objects(om, zeta, [N] * (N + 1))
    return saturate(coequalizer_presented(inc, const), bound)


# --------------------------------------------------------------------------
# powers and constructible functions


@dataclass(frozen=True, eq=False)
class Power:
    """``c^k`` as nested binary products ``((c x c) x c) ...``; stage ``j`` is ``c^j``."""

    base: ExplicitCategory
    k: int
    stages: tuple[ExplicitCategory, ...]
    products: tuple[Product, ...]  # products[j] realizes stages[j + 2] = stages[j + 1] x base

    @property
    def category(self) -> ExplicitCategory:
        return self.stages[self.k]

    def index(self, xs: Sequence[int]) -> int:
        """Object index of the tuple ``xs``."""
        if len(xs) != self.k:
            raise ValidationError("tuple length differs from the power")
        i = 0
        for x in xs:
            i = i * self.base.n + x
        return i

    def tuple_of(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            i, r = divmod(i, self.base.n)
            out.append(r)
        return tuple(reversed(out))

    def tuples(self):
        return itertools.product(range(self.base.n), repeat=self.k)

    def projection(self, j: int) -> FunctorValue:
        """``pi^k_j`` for ``1 <= j <= k``, composed from the binary product projections."""
        if not 1 <= j <= self.k:
            raise ValidationError("projection index out of range")
        f = None
        stage = self.k
        while stage > 1:
            pr = self.products[stage - 2]
            step = pr.proj2 if j == stage else pr.proj1
            f = step if f is None else comp(f, step)
            if j == stage:
                return f
            stage -= 1
        return f if f is not None else identity_functor(self.base)


def power(c: ExplicitCategory, k: int) -> Power:
    if k < 0:
        raise ValidationError("negative power")
    stages = [ONE, c]
    products = []
    for _ in range(2, k + 1):
        pr = product(stages[-1], c)
        products.append(pr)
        stages.append(pr.category)
    return Power(c, k, tuple(stages[: k + 1]), tuple(products))


def pointer_product(pw: Power, xs: Sequence[int]) -> FunctorValue:
    """``P_{x1} x ... x P_{xk}: 1^k -> c^k`` built with product functors."""
    ones = power(ONE, pw.k)
    f = pointer(pw.base, xs[0])
    for j in range(1, pw.k):
        f = product_functor(ones.products[j - 1], pw.products[j - 1], f, pointer(pw.base, xs[j]))
    return f


def constructible_function_check(
    F: FunctorValue, table: dict[tuple[int, ...], int] | Callable, nc: NumberCategory, k: int, inputs=None
) -> bool:
    """True iff ``F . (P_x1 x ... x P_xk) . iso = P_{f(x)}`` for every tabulated input."""
    pw = power(nc.category, k)
    if not structures_equal(F.source, pw.category):
        return False
    if inputs is None:
        inputs = table.keys() if isinstance(table, dict) else pw.tuples()
    f = table.__getitem__ if isinstance(table, dict) else table
    for xs in inputs:
        xs = tuple(xs)
        want = f(xs)
        if not 0 <= want <= nc.N:
            return False
        pp = pointer_product(pw, xs)
        iso = FunctorValue(ONE, pp.source, (0,), (0,))
        if not structures_equal(comp(iso, comp(pp, F)), pointer(nc.category, want)):
            return False
    return True


def zero_function(nc: NumberCategory) -> FunctorValue:
    """``z = P_0 . !``."""
    return comp(bang(nc.category), pointer(nc.category, 0))


def projection_function(nc: NumberCategory, k: int, j: int) -> FunctorValue:
    return power(nc.category, k).projection(j)


def function_from_table(nc: NumberCategory, k: int, f: Callable) -> FunctorValue:
    """A functor ``omega_i^k -> omega_i`` realizing ``f`` (any object map is a functor)."""
    if nc.kind != "groupoid":
        raise ValidationError("arbitrary functions need the groupoid target omega_i")
    pw = power(nc.category, k)
    om = [f(*pw.tuple_of(i)) for i in range(pw.category.n)]
    return functor_from_objects(pw.category, nc.category, om)


def primitive_recursion(F: FunctorValue, G: FunctorValue, nc: NumberCategory, k: int, check: bool = True):
    """``H(x, 0) = F(x)``, ``H(x, n+1) = G(x, H(x, n), n+1)`` by N-fold gluing.

    Each round builds ``J = G . <Id, H_n, P_{n+1} . !>`` and attaches a fresh index object
    to ``Ind`` through a coequalizer with the walking isomorphism, then lets ``H`` be the
    functor induced on the glued index category.
    """
    c = nc.category
    if nc.kind != "groupoid" or k < 1:
        raise ValidationError("primitive recursion works over omega_i with k >= 1")
    pw = power(c, k)
    big = power(c, k + 2)
    ck = pw.category
    succ = successor(nc)
    P = pointer(c, 0)
    ind = ONE
    # values of H on (tuple index, index object)
    H = {(x, 0): F.obj_map[x] for x in range(ck.n)}
    for n in range(nc.N):
        Hn = functor_from_objects(ck, c, [H[(x, n)] for x in range(ck.n)])
        P = comp(P, succ)  # points at n + 1
        const = comp(bang(ck), P)
        inner = pairing(big.products[k - 1], identity_functor(ck), Hn)
        outer = pairing(big.products[k], inner, const)
        J = comp(outer, G)
        # glue a new index object: Ind + 2~ / (last of Ind ~ source of 2~)
        cp = coproduct(ind, TWO_ISO)
        last = pointer(cp.category, n)
        src = pointer(cp.category, ind.n)
        sat = saturate_full(coequalizer_presented(last, src))
        new = sat.category
        if categories_isomorphic(new, codiscrete(n + 2)) is None:
            raise OracleMismatch("index gluing did not produce the next groupoid chain")
        new_obj = sat.presentation.object_quotient[ind.n + 1]
        for x in range(ck.n):
            H[(x, new_obj)] = J.obj_map[x]
        ind = new
    H_fun = functor_from_objects(power(c, k + 1).category, c, [H[divmod(i, c.n)] for i in range(ck.n * c.n)])
    if check:
        for x in range(ck.n):
            h = F.obj_map[x]
            for n in range(nc.N + 1):
                if n:
                    h = G.obj_map[big.index(pw.tuple_of(x) + (h, n))]
                if H_fun.obj_map[x * c.n + n] != h:
                    raise OracleMismatch("primitive recursion disagrees with the recursion oracle")
    return H_fun


def mu_minimization(F: FunctorValue, nc: NumberCategory, k: int, check: bool = True) -> FunctorValue:
    """``G(x) = least y with F(x, y) = 0``.

    The zero set is the pullback of ``F`` along ``P_0: 1 -> 2~``; it is re-read inside
    ``omega_d^k x omega`` (discrete in ``x``, ordered in ``y``), and the left Kan lifting
    of the identity through the projection to ``omega_d^k`` picks each fiber's least element.
    """
    c = nc.category
    zero = pointer(TWO_ISO, 0)
    alpha = pullback(F, zero)
    zeros = sorted(a for a, _ in alpha.pairs)
    xs_with = {i // c.n for i in zeros}
    if len(xs_with) != power(c, k).category.n:
        raise NoWitness("some input has no y <= N with F(x, y) = 0")
    dk = power(discrete(c.n), k)
    mixed = product(dk.category, chain(c.n))
    sub = full_subcategory(mixed.category, zeros)
    proj = comp(sub.inclusion, mixed.proj1)
    L, _ = kan_lift_left(proj, identity_functor(dk.category))
    G = functor_from_objects(power(c, k).category, c, [sub.objects[L.obj_map[x]] % c.n for x in range(dk.category.n)])
    if check:
        for x in range(dk.category.n):
            want = next(y for y in range(c.n) if F.obj_map[x * c.n + y] == 0)
            if G.obj_map[x] != want:
                raise OracleMismatch("mu-minimization disagrees with the scan oracle")
    return G


# --------------------------------------------------------------------------
# factoring, quantifiers, and truth values


INC_TWO = mark_valid(functor_from_objects(TWO, TWO_ISO, (0, 1)))
NOT = mark_valid(functor_from_objects(TWO_ISO, TWO_ISO, (1, 0)))


def factor_through(F: FunctorValue, inc: FunctorValue) -> FunctorValue | None:
    """The lift ``F'`` with ``inc . F' = F`` along an inclusion ``inc``, or ``None``.

    A Kan lifting along ``2 -> 2~`` is constant, so the factoring test builds the only
    possible lift (inc is injective) and validates it.
    """
    obj_inv = {y: x for x, y in enumerate(inc.obj_map)}
    mor_inv = {y: x for x, y in enumerate(inc.mor_map)}
    try:
        om = tuple(obj_inv[y] for y in F.obj_map)
        mm = tuple(mor_inv[y] for y in F.mor_map)
    except KeyError:
        return None
    lift = FunctorValue(F.source, inc.source, om, mm)
    if not validate(lift).ok:
        return None
    return lift


def negate(psi: FunctorValue) -> FunctorValue:
    """``NOT . psi`` for a predicate valued in the walking isomorphism."""
    return comp(psi, NOT)


def _quantifier(psi: FunctorValue, nc: NumberCategory, n: int, kind: str) -> FunctorValue:
    c = nc.category
    d = discrete(c.n)
    dn1 = power(d, n + 1)
    dn = power(d, n)
    restrict = functor_from_objects(dn1.category, psi.source, range(dn1.category.n))
    psi_d = comp(restrict, psi)  # step 1: restrict the source to omega_d^{n+1}
    lifted = factor_through(psi_d, INC_TWO)  # step 2: change the target to 2
    if lifted is None:
        raise AssertionError("a predicate on a discrete category always factors through 2")
    if n == 0:
        proj = bang(dn1.category)
    else:
        proj = dn1.products[n - 1].proj1
    if kind == "exists":  # step 3: Kan extension along the projection (colimit = max)
        R, _ = kan_ext_left(proj, lifted)
    else:  # meet = min
        R, _ = kan_ext_right(proj, lifted)
    back = comp(R, INC_TWO)  # step 4: include into 2~ and widen the source to omega_i^n
    return functor_from_objects(power(c, n).category, TWO_ISO, back.obj_map)


def exists_quantifier(psi: FunctorValue, nc: NumberCategory, n: int) -> FunctorValue:
    """``Phi(x) = 1`` iff some ``y <= N`` has ``Psi(x, y) = 1`` (the section 5 pipeline)."""
    return _quantifier(psi, nc, n, "exists")


def forall_quantifier(psi: FunctorValue, nc: NumberCategory, n: int) -> FunctorValue:
    """``Phi(x) = 1`` iff every ``y <= N`` has ``Psi(x, y) = 1`` (right Kan extension)."""
    return _quantifier(psi, nc, n, "forall")


def forall_via_not(psi: FunctorValue, nc: NumberCategory, n: int) -> FunctorValue:
    """``NOT . exists . NOT``."""
    return negate(exists_quantifier(negate(psi), nc, n))


def monotone_factor_halt(f: FunctorValue) -> tuple[bool, int | None]:
    """Does ``f: omega_N -> 2~`` factor through ``2`` (once true, stays true)? Value = last entry."""
    lift = factor_through(f, INC_TWO)
    seq = list(f.obj_map)
    monotone = all(a <= b for a, b in zip(seq, seq[1:]))
    if (lift is not None) != monotone:
        raise OracleMismatch("factoring test disagrees with the monotonicity scan")
    if lift is None:
        return False, None
    return True, seq[-1] if seq else None


def sequence_functor(bits: Sequence[int]) -> FunctorValue:
    """The functor ``omega_{len-1} -> 2~`` with the given object values."""
    return functor_from_objects(chain(len(bits)), TWO_ISO, tuple(bits))


# --------------------------------------------------------------------------
# lollipops and eventual periodicity


def lollipop(m: int, n: int) -> ExplicitCategory:
    """Thin category on the tail ``0 -> ... -> m`` followed by the cycle ``m -> ... -> n-1 -> m``."""
    if not 0 <= m < n:
        raise ValidationError("lollipop needs 0 <= m < n")
    pairs = [(a, b) for a in range(n) for b in range(n) if a <= b or (a >= m and b >= m)]
    return ThinCategory(n, pairs)


def lollipop_projection(m: int, n: int, N: int) -> FunctorValue:
    """``omega_N -> L_{m,n}``: ``k |-> k`` on the tail, then around the cycle."""
    om = [k if k < n else m + (k - m) % (n - m) for k in range(N + 1)]
    return functor_from_objects(chain(N + 1), lollipop(m, n), om)


def rational_factor_test(r: FunctorValue, m: int, n: int) -> bool:
    """Is there ``L_{m,n} -> 2~`` making the triangle with the projection commute?"""
    N = r.source.n - 1
    proj = lollipop_projection(m, n, N)
    return any(structures_equal(comp(proj, g), r) for g in iter_functors(proj.target, TWO_ISO))


# --------------------------------------------------------------------------
# discreteness and connectedness


def is_discrete(c: ExplicitCategory) -> bool:
    """``c^s: c^2 -> c^1`` is an isomorphism (cross-checked with 'only identities')."""
    s = functor_from_objects(ONE, TWO, (0,))
    F = pow1(s, identity_functor(c))
    iso = (
        sorted(F.obj_map) == list(range(F.target.n))
        and len(F.mor_map) == len(F.target.morphisms)
        and sorted(F.mor_map) == list(range(len(F.target.morphisms)))
    )
    direct = all(c.is_identity(k) for k in range(len(c.morphisms)))
    if iso != direct:
        raise OracleMismatch("discreteness test disagrees with the direct criterion")
    return iso


def is_connected(c: ExplicitCategory) -> bool:
    """Exactly two functors to ``1 + 1`` (cross-checked with union-find)."""
    count = sum(1 for _ in iter_functors(c, discrete(2)))
    parent = list(range(c.n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in c.morphisms:
        parent[find(a)] = find(b)
    direct = c.n > 0 and len({find(x) for x in range(c.n)}) == 1
    if (count == 2) != direct:
        raise OracleMismatch("connectedness test disagrees with union-find")
    return count == 2


__all__ = [name for name in dir() if not name.startswith("_")]
_ = field
