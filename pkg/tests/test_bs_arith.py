"""Exact affine arithmetic for BS(1,q): group laws, keys, classes."""

import pytest
from hypothesis import given, settings, strategies as st

from convexlab.bs_arith import (
    IDENTITY,
    BsElement,
    BsGroupModel,
    BsParams,
    bs_eval,
    bs_inv,
    bs_key,
    bs_mul,
)
from convexlab.words import Word, parse_word

QS = st.sampled_from([2, 3, 7, 10])


def words_strategy(max_size=10):
    return st.lists(st.sampled_from("aAtT"), max_size=max_size).map(
        lambda cs: Word.from_letters(
            (c.lower(), -1 if c.isupper() else 1) for c in cs))


def test_identity_is_trivial():
    assert IDENTITY == BsElement(0, 0, 0)
    assert bs_eval(Word(), BsParams(2)) == IDENTITY


def test_defining_relation():
    for q in (2, 3, 7, 11):
        params = BsParams(q)
        lhs = bs_eval(parse_word("t a T"), params)
        rhs = bs_eval(parse_word("a^%d" % q), params)
        assert lhs == rhs


@settings(max_examples=200)
@given(QS, words_strategy(), words_strategy())
def test_eval_is_homomorphism(q, v, w):
    params = BsParams(q)
    assert bs_eval(v * w, params) == bs_mul(
        bs_eval(v, params), bs_eval(w, params), params)


@settings(max_examples=200)
@given(QS, words_strategy())
def test_inverse(q, w):
    params = BsParams(q)
    el = bs_eval(w, params)
    assert bs_mul(el, bs_inv(el, params), params) == IDENTITY
    assert bs_mul(bs_inv(el, params), el, params) == IDENTITY
    assert bs_eval(w.inverse(), params) == bs_inv(el, params)


@settings(max_examples=200)
@given(QS, words_strategy(), words_strategy(), words_strategy())
def test_associativity(q, u, v, w):
    params = BsParams(q)
    a, b, c = (bs_eval(x, params) for x in (u, v, w))
    assert bs_mul(bs_mul(a, b, params), c, params) == bs_mul(
        a, bs_mul(b, c, params), params)


def test_element_form_is_reduced():
    # num stays coprime to q whenever dpow > 0
    params = BsParams(2)
    el = bs_eval(parse_word("T a^4 t"), params)
    assert el == BsElement(0, 2, 0)
    el = bs_eval(parse_word("T a t"), params)
    assert el.dpow == 1 and el.num == 1


@settings(max_examples=200)
@given(QS, words_strategy())
def test_key_round_trip(q, w):
    params = BsParams(q)
    model = BsGroupModel(params)
    el = bs_eval(w, params)
    key = bs_key(el)
    assert model.key(el) == key
    assert model.element_from_key(key) == el


def test_key_separates_small_ball(ball_bs2_r8):
    # bijective on B(8): 1317 distinct elements, 1317 distinct keys
    assert len(set(ball_bs2_r8.dist)) == len(ball_bs2_r8) == 1317


def test_model_generators_match_words():
    params = BsParams(3)
    model = BsGroupModel(params)
    el = IDENTITY
    for i, name in enumerate(model.generator_names()):
        stepped = model.apply_gen(el, i)
        gen_word = parse_word(name)
        assert stepped == bs_eval(gen_word, params)


def test_params_validation():
    with pytest.raises(ValueError):
        BsParams(1)
    with pytest.raises(ValueError):
        BsParams(0)
