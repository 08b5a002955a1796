"""Hypothesis checks of the algebraic laws on random small preorders and functors."""

from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from family import random_preorder
from sammy.core import categories_isomorphic, identity_functor, structures_equal, validate
from sammy.engine import comp, functor_category, iter_functors, op0, op1, product
from sammy.kan import NoKanExtension, NoKanLifting, kan_ext_right, kan_lift_left, kan_lift_right
from sammy.lang import decode, encode

SETTINGS = settings(max_examples=30, deadline=None, derandomize=True)

preorders = st.builds(lambda seed, n: random_preorder(random.Random(seed), n), st.integers(0, 10**6), st.integers(1, 3))


@st.composite
def functor(draw, A, B):
    fs = list(iter_functors(A, B))
    return draw(st.sampled_from(fs)) if fs else None


@SETTINGS
@given(preorders)
def test_op_involution_and_validity(c):
    assert validate(c).ok and validate(op0(c)).ok
    assert structures_equal(op0(op0(c)), c)


@SETTINGS
@given(preorders, preorders, st.data())
def test_functor_laws(a, b, data):
    F = data.draw(functor(a, b))
    assert validate(F).ok
    assert structures_equal(comp(identity_functor(a), F), F)
    assert structures_equal(op1(op1(F)), F)


@SETTINGS
@given(preorders, preorders)
def test_product_is_commutative_up_to_iso(a, b):
    assert categories_isomorphic(product(a, b).category, product(b, a).category) is not None


@SETTINGS
@given(preorders, preorders)
def test_functor_category_objects_are_functors(a, b):
    fc = functor_category(a, b)
    assert len(fc.functors) == len(list(oracles.functors(oracles.cat(a), oracles.cat(b))))


@SETTINGS
@given(preorders, preorders, preorders, st.data())
def test_kan_universal_property(c, a, b, data):
    g, f = data.draw(functor(c, a)), data.draw(functor(c, b))
    try:
        R, alpha = kan_ext_right(g, f)
        assert oracles.up_ran(g, f, R, alpha)
    except NoKanExtension:
        assert not oracles.ran_exists(g, f)
    p, h = data.draw(functor(b, c)), data.draw(functor(a, c))
    try:
        R, alpha = kan_lift_right(p, h)
        assert oracles.up_rift(p, h, R, alpha)
    except NoKanLifting:
        assert not oracles.rift_exists(p, h)
    try:
        L, eta = kan_lift_left(p, h)
        assert oracles.up_lift_left(p, h, L, eta)
    except NoKanLifting:
        assert not oracles.lift_left_exists(p, h)


@settings(max_examples=300, deadline=None, derandomize=True)
@given(st.integers(1, 10**12))
def test_decode_encode_inverse(n):
    p = decode(n)
    if p is not None:
        assert encode(p) == n
