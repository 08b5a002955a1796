"""Kan extensions and Kan liftings: pointwise formulas, verified by universal property.

Conventions (all functors finite):

* ``kan_ext_right(g: C -> A, f: C -> B)`` returns ``(R: A -> B, alpha: R.g => f)`` with
  ``Nat(H, R) ~ Nat(H.g, f)`` via ``gamma |-> alpha . (gamma g)``.
* ``kan_lift_right(p: B -> C, f: A -> C)`` returns ``(R: A -> B, alpha: p.R => f)`` with
  ``Nat(H, R) ~ Nat(p.H, f)`` via ``gamma |-> alpha . (p gamma)``.
* ``kan_lift_left(p, f)`` returns ``(L, alpha: f => p.L)`` with
  ``Nat(L, H) ~ Nat(f, p.H)`` via ``gamma |-> (p gamma) . alpha``.
* ``kan_ext_left(g, f)`` returns ``(L, alpha: f => L.g)``.

The left versions are the right versions computed in opposite categories, as the
paper prescribes ("described using the Op_0 operation").
"""

from __future__ import annotations

from collections.abc import Iterator

from .core import (
    ExplicitCategory,
    FunctorValue,
    NatTransValue,
    SammyError,
    SourceTargetMismatch,
    ValidationError,
    current_limits,
    functor_from_objects,
    validate,
)
from .engine import (
    NoLimit,
    comma,
    comp,
    iter_functors,
    iter_nats,
    limit,
    op0,
    op1,
    op_nat,
    pointer,
    vcomp,
    whisker_left,
    whisker_right,
)


class NoKanExtension(SammyError):
    pass


class NoKanLifting(SammyError):
    pass


class NoMediator(SammyError):
    pass


class NonUnique(SammyError):
    pass


# exhaustive verification is attempted when at most this many object maps exist
AUTO_VERIFY_LIMIT = 4096


def _object_maps(a: ExplicitCategory, b: ExplicitCategory) -> int:
    return b.n ** a.n


def _should_verify(mode: str, a: ExplicitCategory, b: ExplicitCategory) -> bool:
    if mode == "exhaustive":
        return True
    if mode == "none":
        return False
    return _object_maps(a, b) <= AUTO_VERIFY_LIMIT


# --------------------------------------------------------------------------
# universal-property verifiers


def _bijective(domain: Iterator[NatTransValue], image, codomain: Iterator[NatTransValue]) -> bool:
    seen = set()
    for gamma in domain:
        key = image(gamma).components
        if key in seen:
            return False
        seen.add(key)
    for beta in codomain:
        if beta.components not in seen:
            return False
        seen.discard(beta.components)
    return not seen


def verify_kan_ext_right(g: FunctorValue, f: FunctorValue, R: FunctorValue, alpha: NatTransValue) -> bool:
    if not (validate(R).ok and validate(alpha).ok):
        return False
    if alpha.source != comp(g, R) or alpha.target != f:
        return False
    for H in iter_functors(R.source, R.target):
        HG = comp(g, H)
        if not _bijective(
            iter_nats(H, R), lambda gm: vcomp(whisker_left(gm, g), alpha), iter_nats(HG, f)
        ):
            return False
    return True


def verify_kan_lift_right(p: FunctorValue, f: FunctorValue, R: FunctorValue, alpha: NatTransValue) -> bool:
    if not (validate(R).ok and validate(alpha).ok):
        return False
    if alpha.source != comp(R, p) or alpha.target != f:
        return False
    for H in iter_functors(R.source, R.target):
        PH = comp(H, p)
        if not _bijective(
            iter_nats(H, R), lambda gm: vcomp(whisker_right(p, gm), alpha), iter_nats(PH, f)
        ):
            return False
    return True


def verify_kan_lift_left(p: FunctorValue, f: FunctorValue, L: FunctorValue, alpha: NatTransValue) -> bool:
    if not (validate(L).ok and validate(alpha).ok):
        return False
    if alpha.source != f or alpha.target != comp(L, p):
        return False
    for H in iter_functors(L.source, L.target):
        PH = comp(H, p)
        if not _bijective(
            iter_nats(L, H), lambda gm: vcomp(alpha, whisker_right(p, gm)), iter_nats(f, PH)
        ):
            return False
    return True


def verify_kan_ext_left(g: FunctorValue, f: FunctorValue, L: FunctorValue, alpha: NatTransValue) -> bool:
    return verify_kan_ext_right(op1(g), op1(f), op1(L), op_nat(alpha))


# --------------------------------------------------------------------------
# right Kan extension


def _pointwise_ran(g: FunctorValue, f: FunctorValue):
    """``R(a) = lim_{(a | g)} f . proj``; ``None`` when a pointwise limit is missing."""
    A, B = g.target, f.target
    data = []
    for a in range(A.n):
        cm = comma(pointer(A, a), g)
        try:
            cone = limit(comp(cm.proj_right, f))
        except NoLimit:
            return None
        data.append((cm, cone))
    om = tuple(cone.apex for _, cone in data)
    if B.is_thin:
        R = functor_from_objects(A, B, om)
    else:
        mm = []
        for u, (a, a2) in enumerate(A.morphisms):
            cm, cone = data[a]
            cm2, cone2 = data[a2]
            # cone over (a2 | g) with apex R(a): leg at (c, h') is lambda_a at (c, u;h')
            legs = []
            for (_, c, h2) in cm2.objects:
                legs.append(cone.legs[cm.index[(0, c, A.compose(u, h2))]])
            cands = [
                m for m in B.hom(om[a], om[a2])
                if all(B.compose(m, l2) == l for l2, l in zip(cone2.legs, legs))
            ]
            if len(cands) != 1:
                return None
            mm.append(cands[0])
        R = FunctorValue(A, B, om, tuple(mm))
    comps = []
    for c in range(g.source.n):
        cm, cone = data[g.obj_map[c]]
        comps.append(cone.legs[cm.index[(0, c, A.identities[g.obj_map[c]])]])
    alpha = NatTransValue(comp(g, R), f, tuple(comps))
    return R, alpha


def _search_terminal(Hs, targets, image, candidates):
    """First candidate ``(R, alpha)`` such that for every ``H`` the map ``gamma |-> image``
    is a bijection from ``Nat(H, R)`` onto ``targets[H]``: a terminal object of the
    category of pairs ``(H, beta)``. ``targets`` is computed once for all candidates."""
    for R, alpha in candidates:
        for k, H in enumerate(Hs):
            want = targets[k]
            seen = set()
            for gm in iter_nats(H, R):
                key = image(gm, alpha)
                if key in seen or key not in want:
                    break
                seen.add(key)
            else:
                if len(seen) == len(want):
                    continue
            break
        else:
            return R, alpha
    return None


def _search_ran(g: FunctorValue, f: FunctorValue):
    Hs = list(iter_functors(g.target, f.target))
    targets = [frozenset(b.components for b in iter_nats(comp(g, H), f)) for H in Hs]
    cands = ((R, alpha) for k, R in enumerate(Hs) if targets[k] for alpha in iter_nats(comp(g, R), f))
    return _search_terminal(
        Hs, targets, lambda gm, alpha: vcomp(whisker_left(gm, g), alpha).components, cands
    )


def kan_ext_right(g: FunctorValue, f: FunctorValue, verify: str = "auto"):
    """Right Kan extension of ``f`` along ``g``; see module docstring."""
    if g.source != f.source:
        raise SourceTargetMismatch("kanExtRight: functors must share a source")
    A, B = g.target, f.target
    res = _pointwise_ran(g, f)
    if res is not None:
        R, alpha = res
        if not _should_verify(verify, A, B):
            if validate(R).ok and validate(alpha).ok:
                return R, alpha
        elif verify_kan_ext_right(g, f, R, alpha):
            return R, alpha
    if _should_verify(verify, A, B) or verify == "exhaustive":
        found = _search_ran(g, f)
        if found is not None:
            return found
    raise NoKanExtension("no right Kan extension exists")


def kan_ext_left(g: FunctorValue, f: FunctorValue, verify: str = "auto"):
    """Left Kan extension ``(L, alpha: f => L.g)`` computed in opposite categories."""
    try:
        R, alpha = kan_ext_right(op1(g), op1(f), verify)
    except NoKanExtension:
        raise NoKanExtension("no left Kan extension exists") from None
    return op1(R), op_nat(alpha)


# --------------------------------------------------------------------------
# right and left Kan liftings


def _pointwise_rift(p: FunctorValue, f: FunctorValue):
    """``R(a) = colim_{(p | f a)} proj``, with ``alpha_a`` the unique factor of every leg."""
    A, B, C = f.source, p.source, p.target
    data = []
    for a in range(A.n):
        cm = comma(p, pointer(C, f.obj_map[a]))
        try:
            cone = limit(op1(cm.proj_left))  # a colimit; legs run D j -> apex
        except NoLimit:
            return None
        data.append((cm, cone))
    om = tuple(cone.apex for _, cone in data)
    comps = []
    for a in range(A.n):
        cm, cone = data[a]
        fa = f.obj_map[a]
        cands = [
            k
            for k in C.hom(p.obj_map[om[a]], fa)
            if all(
                C.compose(p.mor_map[leg], k) == h
                for (_, _, h), leg in zip(cm.objects, cone.legs)
            )
        ]
        if len(cands) != 1:
            return None
        comps.append(cands[0])
    if B.is_thin:
        R = functor_from_objects(A, B, om)
    else:
        mm = []
        for u, (a, a2) in enumerate(A.morphisms):
            cm, cone = data[a]
            cm2, cone2 = data[a2]
            fu = f.mor_map[u]
            legs2 = [cone2.legs[cm2.index[(b, 0, C.compose(h, fu))]] for (b, _, h) in cm.objects]
            cands = [
                m for m in B.hom(om[a], om[a2])
                if all(B.compose(l, m) == l2 for l, l2 in zip(cone.legs, legs2))
            ]
            if len(cands) != 1:
                return None
            mm.append(cands[0])
        R = FunctorValue(A, B, om, tuple(mm))
    alpha = NatTransValue(comp(R, p), f, tuple(comps))
    return R, alpha


def _search_rift(p: FunctorValue, f: FunctorValue):
    Hs = list(iter_functors(f.source, p.source))
    targets = [frozenset(b.components for b in iter_nats(comp(H, p), f)) for H in Hs]
    cands = ((R, alpha) for k, R in enumerate(Hs) if targets[k] for alpha in iter_nats(comp(R, p), f))
    return _search_terminal(
        Hs, targets, lambda gm, alpha: vcomp(whisker_right(p, gm), alpha).components, cands
    )


def kan_lift_right(p: FunctorValue, f: FunctorValue, verify: str = "auto"):
    """Right Kan lifting of ``f`` through ``p``; see module docstring."""
    if p.target != f.target:
        raise SourceTargetMismatch("kanLiftRight: functors must share a target")
    A, B = f.source, p.source
    res = _pointwise_rift(p, f)
    if res is not None:
        R, alpha = res
        if not _should_verify(verify, A, B):
            if validate(R).ok and validate(alpha).ok:
                return R, alpha
        elif verify_kan_lift_right(p, f, R, alpha):
            return R, alpha
    if _should_verify(verify, A, B):
        found = _search_rift(p, f)
        if found is not None:
            return found
    raise NoKanLifting("no right Kan lifting exists")


def kan_lift_left(p: FunctorValue, f: FunctorValue, verify: str = "auto"):
    """Left Kan lifting ``(L, alpha: f => p.L)``: the right lifting in opposite categories.

    Pointwise this is the paper's ``L(a) = Lim((f a | p) -> B)``.
    """
    if p.target != f.target:
        raise SourceTargetMismatch("kanLiftLeft: functors must share a target")
    try:
        R, alpha = kan_lift_right(op1(p), op1(f), verify)
    except NoKanLifting:
        raise NoKanLifting("no left Kan lifting exists") from None
    return op1(R), op_nat(alpha)


# --------------------------------------------------------------------------
# induced mediators


def _check_beta(beta: NatTransValue, source: FunctorValue, target: FunctorValue) -> None:
    if not isinstance(beta, NatTransValue) or not validate(beta).ok:
        raise ValidationError("beta is not a valid natural transformation")
    if beta.source != source or beta.target != target:
        raise ValidationError("beta has the wrong source or target functor")


def _unique(cands: list[NatTransValue], what: str) -> NatTransValue:
    if not cands:
        raise NoMediator(f"{what}: no mediating natural transformation")
    if len(cands) > 1:
        raise NonUnique(f"{what}: mediating natural transformation is not unique")
    return cands[0]


def kan_ext_induced(g, f, h, beta, result=None, verify: str = "auto") -> NatTransValue:
    """The unique ``gamma: h => R`` with ``alpha . (gamma g) = beta`` for ``beta: h.g => f``."""
    _check_beta(beta, comp(g, h), f)
    R, alpha = result if result is not None else kan_ext_right(g, f, verify)
    cands = [
        gm for gm in iter_nats(h, R) if vcomp(whisker_left(gm, g), alpha).components == beta.components
    ]
    return _unique(cands, "KanExInd")


def kan_lift_induced(p, f, h, beta, result=None, verify: str = "auto") -> NatTransValue:
    """The unique ``gamma: h => R`` with ``alpha . (p gamma) = beta`` for ``beta: p.h => f``."""
    _check_beta(beta, comp(h, p), f)
    R, alpha = result if result is not None else kan_lift_right(p, f, verify)
    cands = [
        gm for gm in iter_nats(h, R) if vcomp(whisker_right(p, gm), alpha).components == beta.components
    ]
    return _unique(cands, "KanLifInd")


def kan_lift_left_induced(p, f, h, beta, result=None, verify: str = "auto") -> NatTransValue:
    """The unique ``gamma: L => h`` with ``(p gamma) . alpha = beta`` for ``beta: f => p.h``."""
    _check_beta(beta, f, comp(h, p))
    L, alpha = result if result is not None else kan_lift_left(p, f, verify)
    cands = [
        gm for gm in iter_nats(L, h) if vcomp(alpha, whisker_right(p, gm)).components == beta.components
    ]
    return _unique(cands, "left KanLifInd")


def kan_ext_left_induced(g, f, h, beta, result=None, verify: str = "auto") -> NatTransValue:
    """The unique ``gamma: L => h`` with ``(gamma g) . alpha = beta`` for ``beta: f => h.g``."""
    _check_beta(beta, f, comp(g, h))
    L, alpha = result if result is not None else kan_ext_left(g, f, verify)
    cands = [
        gm for gm in iter_nats(L, h) if vcomp(alpha, whisker_left(gm, g)).components == beta.components
    ]
    return _unique(cands, "left KanExInd")


__all__ = [
    "AUTO_VERIFY_LIMIT",
    "NoKanExtension",
    "NoKanLifting",
    "NoMediator",
    "NonUnique",
    "kan_ext_induced",
    "kan_ext_left",
    "kan_ext_left_induced",
    "kan_ext_right",
    "kan_lift_induced",
    "kan_lift_left",
    "kan_lift_left_induced",
    "kan_lift_right",
    "verify_kan_ext_left",
    "verify_kan_ext_right",
    "verify_kan_lift_left",
    "verify_kan_lift_right",
]

# silence "imported but unused" for helpers kept for API symmetry
_ = (op0, current_limits)
