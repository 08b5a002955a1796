from __future__ import annotations

import pytest

from sammy.core import TWO, TWO_ISO, ValidationError, categories_isomorphic, chain, codiscrete, functor_from_objects, identity_functor
from sammy.engine import pointer
from sammy.presentation import (
    PossiblyInfinite,
    coequalizer_presented,
    presentation,
    presentation_of,
    pushout_presented,
    saturate,
    saturate_full,
    saturation_bound,
)


def iso(a, b):
    return categories_isomorphic(a, b) is not None


def test_free_and_related():
    # a single arrow is the free category 2
    assert iso(saturate(presentation(2, [(0, 1)])), TWO)
    # two composable arrows: the free category on them is 3
    assert iso(saturate(presentation(3, [(0, 1), (1, 2)])), chain(3))
    # two arrows back and forth, inverse to each other: the walking isomorphism
    p = presentation(2, [(0, 1), (1, 0)], [((0, (0, 1)), (0, ())), ((1, (1, 0)), (1, ()))])
    assert iso(saturate(p), TWO_ISO)
    # an idempotent loop
    c = saturate(presentation(1, [(0, 0)], [((0, (0, 0)), (0, (0,)))]))
    assert len(c.morphisms) == 2


def test_free_loop_is_possibly_infinite():
    with pytest.raises(PossiblyInfinite):
        saturate(presentation(1, [(0, 0)]), bound=10)
    with saturation_bound(5):
        with pytest.raises(PossiblyInfinite):
            saturate(presentation(1, [(0, 0)]))
    with pytest.raises(ValueError):
        with saturation_bound(0):
            pass


def test_bad_relations():
    with pytest.raises(ValidationError):
        presentation(2, [(0, 1)], [((0, (0,)), (0, ()))])  # not parallel
    with pytest.raises(ValidationError):
        presentation(2, [(0, 1)], [((1, (0,)), (1, (0,)))])  # not a path


def test_presentation_of_round_trip():
    for c in (TWO, chain(4), TWO_ISO, codiscrete(3)):
        assert iso(saturate(presentation_of(c)), c)


def test_coequalizer_glues_ends():
    # gluing the ends of the walking isomorphism frees a loop with an inverse: Z
    with pytest.raises(PossiblyInfinite):
        saturate(coequalizer_presented(pointer(TWO_ISO, 0), pointer(TWO_ISO, 1)), bound=12)
    # gluing the ends of a 3-chain makes a free loop of length 2 (N in disguise)
    with pytest.raises(PossiblyInfinite):
        saturate(coequalizer_presented(pointer(chain(3), 0), pointer(chain(3), 2)), bound=12)
    # gluing an object with itself changes nothing
    assert iso(saturate(coequalizer_presented(pointer(chain(3), 1), pointer(chain(3), 1))), chain(3))


def test_pushout_of_arrows_is_chain():
    # 2 +_1 2 along target/source is the 3-chain
    f = pointer(TWO, 1)
    g = pointer(TWO, 0)
    sat = saturate_full(pushout_presented(f, g))
    assert iso(sat.category, chain(3))


def test_quotient_functor():
    f = pointer(TWO_ISO, 0)
    g = pointer(TWO_ISO, 0)
    sat = saturate_full(coequalizer_presented(f, g))
    Q = sat.quotient_functor()
    assert iso(sat.category, TWO_ISO)
    assert Q.source == TWO_ISO
    assert identity_functor(TWO).source == TWO
    assert functor_from_objects(TWO, TWO, (0, 1)) == identity_functor(TWO)
