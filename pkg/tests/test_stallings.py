"""Stallings' group: canonical forms, the subgroup H, and length lemmas."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from convexlab.stallings import (
    RELATORS,
    S_IDENTITY,
    StallingsElement,
    StallingsModel,
    gamma_length_special,
    in_H,
    lambda_length,
    st_eval,
    st_inv,
    st_mul,
    verify_stallings_witness,
)
from convexlab.words import STALLINGS_ALPHABET, Word, exp_sum, parse_word

GENS = "aAbBcCdDsS"


def words_strategy(max_size=12):
    return st.lists(st.sampled_from(GENS), max_size=max_size).map(
        lambda cs: Word.from_letters(
            (c.lower(), -1 if c.isupper() else 1) for c in cs))


def _word(text: str) -> Word:
    return parse_word(text, STALLINGS_ALPHABET)


# -- presentation ------------------------------------------------------------

def test_relators_evaluate_to_identity():
    for rel in RELATORS:
        assert st_eval(rel).is_identity(), rel


def test_relators_have_even_length():
    assert sorted(len(r) for r in RELATORS) == [4, 4, 4, 4, 6, 6, 6]


def test_commuting_pairs():
    assert st_eval("ac") == st_eval("ca")
    assert st_eval("bd") == st_eval("db")
    # s centralizes the zero-sum pair a^-1 b
    assert st_eval("sAbS") == st_eval("Ab")
    assert st_eval("sAdS") == st_eval("Ad")


def test_canonical_form_examples():
    el = st_eval("sAbS")
    assert el.quo == Word()
    assert el == st_eval("Ab")
    assert st_eval("acAC").is_identity()
    el = st_eval("saS")
    assert el.quo == _word("saS")
    assert el.u == Word() and el.v == Word()


# -- group laws --------------------------------------------------------------

@settings(max_examples=300)
@given(words_strategy(), words_strategy())
def test_mul_matches_eval(v, w):
    assert st_mul(st_eval(v), st_eval(w)) == st_eval(v * w)


@settings(max_examples=200)
@given(words_strategy())
def test_inverse(w):
    g = st_eval(w)
    assert st_mul(g, st_inv(g)) == S_IDENTITY
    assert st_mul(st_inv(g), g) == S_IDENTITY
    assert st_eval(w.inverse()) == st_inv(g)


@settings(max_examples=200)
@given(words_strategy(max_size=8), words_strategy(max_size=8), words_strategy(max_size=8))
def test_associativity(u, v, w):
    a, b, c = st_eval(u), st_eval(v), st_eval(w)
    assert st_mul(st_mul(a, b), c) == st_mul(a, st_mul(b, c))


# -- the subgroup H ----------------------------------------------------------

def test_in_h_examples():
    assert in_H(st_eval("Ad"))
    assert in_H(st_eval("Ab"))
    assert not in_H(st_eval("a"))
    assert not in_H(st_eval("s"))
    assert in_H(S_IDENTITY)


@settings(max_examples=300)
@given(words_strategy())
def test_h_membership_forces_zero_exp_sum(w):
    if in_H(st_eval(w)):
        assert exp_sum(w) == 0


def test_h_normality():
    rng = random.Random(9)
    letters = "abcd" + "ABCD"
    for _ in range(200):
        chars = [rng.choice(letters) for _ in range(rng.randint(0, 6))]
        v = Word.from_letters(
            (c.lower(), -1 if c.isupper() else 1) for c in chars)
        h_word = v * parse_word(f"A^{exp_sum(v)}" if exp_sum(v) > 0
                                else f"a^{-exp_sum(v)}",
                                STALLINGS_ALPHABET)
        assert in_H(st_eval(h_word))
        for x in GENS:
            conj = _word(x) * h_word * _word(x).inverse()
            assert in_H(st_eval(conj)), (str(h_word), x)


# -- length lemmas -----------------------------------------------------------

def test_lambda_length_examples():
    assert lambda_length(st_eval("abc")) == 3
    assert lambda_length(S_IDENTITY) == 0
    assert lambda_length(st_eval("B^2a^2")) == 4
    assert lambda_length(st_eval("aA")) == 0
    with pytest.raises(ValueError):
        lambda_length(st_eval("s"))


def test_gamma_length_special_examples():
    assert gamma_length_special(st_eval("sB^2a")) == 4
    assert gamma_length_special(st_eval("abcd")) == 4
    assert gamma_length_special(st_eval("s")) == 1
    assert gamma_length_special(st_eval("sasa")) is None


def test_gamma_length_matches_ball(ball_st_r4):
    model = ball_st_r4.model
    for key, d in ball_st_r4.dist.items():
        g = model.element_from_key(key)
        length = gamma_length_special(g)
        if length is not None:
            assert length == d, key


def test_geodesics_have_no_pinch(ball_st_r4):
    # no BFS geodesic contains s^e u s^-e with the inner segment in H
    for key in ball_st_r4.dist:
        letters = ball_st_r4.geodesic_word(key)
        s_spots = [i for i, name in enumerate(letters) if name in "sS"]
        for left, right in zip(s_spots, s_spots[1:]):
            if letters[left] == letters[right]:
                continue
            inner = "".join(letters[left + 1:right])
            assert not in_H(st_eval(inner)), letters


def test_parity_matches_distance(ball_st_r4):
    rng = random.Random(13)
    model = ball_st_r4.model
    for _ in range(500):
        chars = [rng.choice(GENS) for _ in range(rng.randint(0, 6))]
        w = Word.from_letters(
            (c.lower(), -1 if c.isupper() else 1) for c in chars)
        d = ball_st_r4.distance(model.key(st_eval(w)))
        if d is not None:
            assert d % 2 == len(w) % 2, str(w)


# -- theorem witness ----------------------------------------------------------

def test_stallings_witness_n1():
    report = verify_stallings_witness(1)
    assert report["ok"], report
    assert report["R"] == 4
    assert report["bridge"] == 8
    assert report["ball_size"] == 3233
    assert report["alpha"] == "B^2a^2"
    assert report["beta"] == "sB^2a"
    with pytest.raises(ValueError):
        verify_stallings_witness(0)
