from __future__ import annotations

import pytest

from sammy import core
from sammy.core import (
    ONE,
    TWO,
    TWO_ISO,
    ZERO,
    FunctorValue,
    NatTransValue,
    SizeLimit,
    ValidationError,
    categories_isomorphic,
    chain,
    codiscrete,
    discrete,
    functor_from_objects,
    identity_functor,
    make_category,
    size_limits,
    structures_equal,
    structures_isomorphic,
    validate,
)


def test_constants_shapes():
    assert (ZERO.n, len(ZERO.morphisms)) == (0, 0)
    assert (ONE.n, len(ONE.morphisms)) == (1, 1)
    assert (TWO.n, len(TWO.morphisms)) == (2, 3)
    assert (TWO_ISO.n, len(TWO_ISO.morphisms)) == (2, 4)
    for c in (ZERO, ONE, TWO, TWO_ISO):
        assert validate(c).ok


def test_chain_lazy_indexing_matches_thin():
    c = chain(5)
    t = core.thin(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    assert list(c.morphisms) == list(t.morphisms)
    for a in range(5):
        for b in range(5):
            assert c.index_of(a, b) == t.index_of(a, b)
    assert structures_equal(c, t)


def test_validation_detects_bad_identity():
    bad = make_category(1, [(0, 0), (0, 0)], [0], {(0, 0): 0, (0, 1): 1, (1, 0): 0, (1, 1): 1})
    rep = validate(bad)
    assert not rep.ok
    with pytest.raises(ValidationError):
        core.ensure_valid(bad)


def test_validation_detects_non_functor():
    # sends the arrow of 2 to a non-existent direction in 2
    F = FunctorValue(TWO, TWO, (1, 0), (TWO.identities[1], 1, TWO.identities[0]))
    assert not validate(F).ok


def test_size_limits_are_enforced_and_scoped():
    with size_limits(4, 100):
        with pytest.raises(SizeLimit):
            chain(5)
    assert chain(5).n == 5
    with pytest.raises(SizeLimit):
        chain(100)


def test_isomorphism_of_categories():
    assert categories_isomorphic(chain(3), core.thin(3, [(2, 1), (1, 0), (2, 0)])) is not None
    assert categories_isomorphic(chain(3), discrete(3)) is None
    assert categories_isomorphic(codiscrete(2), TWO_ISO) is not None
    F, Finv = categories_isomorphic(TWO, core.thin(2, [(1, 0)]))
    assert F.obj_map == (1, 0)
    assert validate(F).ok and validate(Finv).ok


def test_structures_equal_cross_kind_false():
    assert not structures_equal(TWO, identity_functor(TWO))
    assert not structures_isomorphic(TWO, identity_functor(TWO))


def test_functor_and_nat_isomorphism():
    f = functor_from_objects(ONE, TWO, (0,))
    g = functor_from_objects(ONE, TWO, (1,))
    # 2 has no automorphism swapping its objects; the walking isomorphism does
    assert not structures_isomorphic(f, g)
    assert structures_isomorphic(functor_from_objects(ONE, TWO_ISO, (0,)), functor_from_objects(ONE, TWO_ISO, (1,)))
    a = NatTransValue(f, g, (1,))
    assert validate(a).ok


def test_kind_of():
    assert core.kind_of(TWO) == "category"
    assert core.kind_of(identity_functor(TWO)) == "functor"
    assert core.kind_of(NatTransValue(identity_functor(ONE), identity_functor(ONE), (0,))) == "nattrans"
    assert core.kind_of(core.CAT) == "category"
