from __future__ import annotations

import pytest

from family import CATALOGUE, PARALLEL, Z2
from sammy import engine
from sammy.core import (
    ONE,
    TWO,
    TWO_ISO,
    ZERO,
    NatTransValue,
    SourceTargetMismatch,
    categories_isomorphic,
    chain,
    codiscrete,
    discrete,
    functor_from_objects,
    identity_functor,
    structures_equal,
    validate,
)
from sammy.engine import (
    arrow_category,
    comma,
    comp,
    composition_functor,
    coproduct,
    functor_category,
    hcomp,
    iso_comma,
    iter_functors,
    iter_nats,
    op0,
    op1,
    pow0,
    product,
    pullback,
    vcomp,
)

SMALL = [CATALOGUE[k] for k in ("0", "1", "2", "2~", "V", "3", "Z2", "par", "idem->")]


def iso(a, b) -> bool:
    return categories_isomorphic(a, b) is not None


def pullback_iso_comma(F, G):
    """Section 3 assembly: isoComma(F, G) = (A x B) x_{C x C} C^{2~}."""
    C = F.target
    fc = functor_category(TWO_ISO, C)
    cc = product(C, C)
    ev = engine.pairing(cc, engine.evaluation(fc, 0), engine.evaluation(fc, 1))
    ab = product(F.source, G.source)
    FG = engine.product_functor(ab, cc, F, G)
    return pullback(FG, ev).category


def pullback_comma(F, G):
    C = F.target
    fc = functor_category(TWO, C)
    cc = product(C, C)
    ev = engine.pairing(cc, engine.evaluation(fc, 0), engine.evaluation(fc, 1))
    ab = product(F.source, G.source)
    return pullback(engine.product_functor(ab, cc, F, G), ev).category


def test_op_is_involutive():
    for c in SMALL:
        assert structures_equal(op0(op0(c)), c)
        assert validate(op0(c)).ok


def test_op1_reverses_functor():
    F = functor_from_objects(TWO, chain(3), (0, 2))
    G = op1(F)
    assert validate(G).ok and G.source.n == 2 and structures_equal(op1(G), F)


def test_comp_associative_and_unital():
    fs = list(iter_functors(TWO, chain(3)))
    gs = list(iter_functors(chain(3), TWO))
    hs = list(iter_functors(TWO, TWO_ISO))
    for f in fs:
        assert structures_equal(comp(identity_functor(TWO), f), f)
        assert structures_equal(comp(f, identity_functor(chain(3))), f)
        for g in gs:
            for h in hs:
                assert structures_equal(comp(comp(f, g), h), comp(f, comp(g, h)))


def test_comp_mismatch():
    with pytest.raises(SourceTargetMismatch):
        comp(identity_functor(TWO), identity_functor(ONE))


def test_vcomp_and_interchange():
    F, G = list(iter_functors(TWO, TWO))[:2]
    ids = [engine.identity_nat(F), engine.identity_nat(G)]
    for a in ids:
        assert structures_equal(vcomp(a, engine.identity_nat(a.target)), a)
    # interchange law on 2 -> 2 -> 2
    fun = list(iter_functors(TWO, TWO))
    for F1 in fun:
        for F2 in fun:
            for a in iter_nats(F1, F2):
                for G1 in fun:
                    for G2 in fun:
                        for b in iter_nats(G1, G2):
                            h = hcomp(a, b)
                            assert validate(h).ok
                            assert structures_equal(h.source, comp(F1, G1))


def test_functor_counts():
    assert len(list(iter_functors(TWO, TWO))) == 3
    assert len(list(iter_functors(TWO_ISO, TWO))) == 2
    assert len(list(iter_functors(Z2, Z2))) == 2
    assert len(list(iter_functors(ZERO, TWO))) == 1
    assert len(list(iter_functors(TWO, ZERO))) == 0


def test_pow_two_two_is_three_chain():
    assert iso(pow0(TWO, TWO), chain(3))
    assert iso(pow0(TWO, ONE), ONE)
    assert iso(pow0(ZERO, TWO), ONE)  # one functor out of the empty category


def test_comma_id_id_is_arrow_category():
    for c in SMALL:
        Id = identity_functor(c)
        assert iso(comma(Id, Id).category, arrow_category(c).category)
        assert iso(comma(Id, Id).category, pow0(TWO, c))


def test_comma_agrees_with_pullback_assembly():
    for c in SMALL[1:7]:  # the evaluation functors need a non-empty functor category
        Id = identity_functor(c)
        assert iso(comma(Id, Id).category, pullback_comma(Id, Id))


def test_iso_comma_agrees_with_pullback_assembly():
    cases = [
        (identity_functor(c), identity_functor(c)) for c in SMALL[1:7]
    ] + [
        (functor_from_objects(ONE, TWO_ISO, (0,)), identity_functor(TWO_ISO)),
        (functor_from_objects(TWO, codiscrete(3), (0, 1)), functor_from_objects(ONE, codiscrete(3), (2,))),
    ]
    for F, G in cases:
        assert iso(iso_comma(F, G).category, pullback_iso_comma(F, G))


def test_iso_comma_of_identity_on_discrete_is_discrete():
    d = discrete(3)
    assert iso(iso_comma(identity_functor(d), identity_functor(d)).category, d)


def test_product_and_coproduct_shapes():
    p = product(TWO, chain(3))
    assert p.category.n == 6 and len(p.category.morphisms) == 3 * 6
    cp = coproduct(TWO, Z2)
    assert cp.category.n == 3 and len(cp.category.morphisms) == 5
    assert validate(cp.inj1).ok and validate(cp.inj2).ok


def test_composition_functor_of_two():
    cf = composition_functor(TWO)
    # composable pairs of 2: (id0,id0), (id0,a), (a,id1), (id1,id1)
    assert len(cf.pairs.pairs) == 4
    assert validate(cf.functor).ok
    assert cf.functor.target is cf.arrows.category


def test_limits_simple():
    # product of 0 and 1 in 2 is 0; equalizer in the parallel pair
    D = functor_from_objects(discrete(2), TWO, (0, 1))
    assert engine.limit(D).apex == 0
    assert engine.colimit(D).apex == 1
    # empty diagram: terminal / initial object
    E = engine.empty_functor(chain(3))
    assert engine.limit(E).apex == 2
    assert engine.colimit(E).apex == 0
    with pytest.raises(engine.NoLimit):
        engine.limit(engine.empty_functor(discrete(2)))
    # the parallel pair has no terminal object
    with pytest.raises(engine.NoLimit):
        engine.limit(engine.empty_functor(PARALLEL))


def test_nat_validation_rejects_unnatural():
    F = functor_from_objects(TWO, TWO, (0, 1))
    G = functor_from_objects(TWO, TWO, (1, 1))
    bad = NatTransValue(F, G, (TWO.index_of(0, 1), TWO.index_of(0, 1)))
    assert not validate(bad).ok
