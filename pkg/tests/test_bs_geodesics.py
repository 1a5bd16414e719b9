"""Geodesic length DP, normal forms, tilde, and the pinch criterion.

The length DP is pinned against the independent Fraction-BFS oracle in
tests/reference.py over whole balls, then the normal form is checked for
soundness on every element the oracle saw.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import reference
from convexlab.bs_arith import BsElement, BsParams, bs_eval
from convexlab.bs_geodesics import (
    GeodesicNormalForm,
    NotGeodesicError,
    XBlock,
    element_class,
    geodesic_length,
    has_pinch,
    is_geodesic,
    normalize,
    tilde,
)
from convexlab.words import Word, WordClass, classify, parse_word

BS2 = BsParams(2)


def words_strategy(max_size=12):
    return st.lists(st.sampled_from("aAtT"), max_size=max_size).map(
        lambda cs: Word.from_letters(
            (c.lower(), -1 if c.isupper() else 1) for c in cs))


def _ref_element(q: int, ref_el) -> BsElement:
    texp, c = ref_el
    num, den = c.numerator, c.denominator
    dpow = 0
    while den > 1:
        den //= q
        dpow += 1
    return BsElement(texp, num, dpow)


@pytest.mark.parametrize("q,radius", [(2, 8), (7, 5)])
def test_length_matches_reference_bfs(q, radius):
    params = BsParams(q)
    dist, _ = reference.ball(q, radius)
    for ref_el, d in dist.items():
        el = _ref_element(q, ref_el)
        assert geodesic_length(el, params) == d, (ref_el, d)


def test_length_word_overload():
    w = parse_word("a^16")
    assert geodesic_length(w, BS2) == 8
    assert geodesic_length(bs_eval(w, BS2), BS2) == 8


@settings(max_examples=300)
@given(words_strategy())
def test_length_lower_bounds_words(w):
    el = bs_eval(w, BS2)
    d = geodesic_length(el, BS2)
    assert d <= len(w)
    assert is_geodesic(w, BS2) == (len(w) == d)


def _check_shape(gnf: GeodesicNormalForm, q: int) -> None:
    half = q // 2
    for digit in gnf.digits:
        assert abs(digit) <= half if q > 2 else abs(digit) <= 1
    if isinstance(gnf.core, XBlock):
        assert gnf.core.height >= 1
        if q == 2:
            assert 2 <= abs(gnf.core.top) <= 3
        for digit in gnf.core.digits:
            assert abs(digit) <= (1 if q == 2 else half)
    else:
        if q == 2:
            assert abs(gnf.core) <= 3


@pytest.mark.parametrize("q,radius", [(2, 8), (7, 4)])
def test_normalize_soundness_on_ball(q, radius):
    params = BsParams(q)
    dist, _ = reference.ball(q, radius)
    for ref_el, d in dist.items():
        el = _ref_element(q, ref_el)
        gnf = normalize(el, params)
        w = gnf.render()
        assert bs_eval(w, params) == el
        assert len(w) == d
        _check_shape(gnf, q)


def test_normalize_rejects_slack_words():
    # a^6 spells in 5 letters as t a^3 T; the element itself still normalizes
    with pytest.raises(NotGeodesicError):
        normalize(parse_word("a^6"), BS2)
    with pytest.raises(NotGeodesicError):
        normalize(parse_word("t a T a"), BS2)
    gnf = normalize(bs_eval(parse_word("a^6"), BS2), BS2)
    assert len(gnf.render()) == 5
    assert str(gnf.render()) == "ta^3T"


def test_normalize_class4_forms_agree():
    el = bs_eval(parse_word("T^2 a t^3 a T"), BS2)
    assert element_class(el) == 4
    gnf = normalize(el, BS2)
    down = gnf.render(class4_form="down_first")
    core = gnf.render(class4_form="core_first")
    assert bs_eval(down, BS2) == el
    assert bs_eval(core, BS2) == el
    assert len(down) == len(core) == geodesic_length(el, BS2)


def test_element_class_table():
    assert element_class(BsElement(0, 5, 0)) == 1
    assert element_class(BsElement(0, 0, 0)) == 1
    assert element_class(BsElement(-2, 3, 1)) == 2
    assert element_class(BsElement(3, 5, 0)) == 3
    assert element_class(BsElement(1, 3, 2)) == 4
    assert element_class(BsElement(-1, 3, 4)) == 4


def test_class_census_b7(ball_bs2_r8):
    census = {1: 0, 2: 0, 3: 0, 4: 0}
    for key in list(ball_bs2_r8.dist):
        if ball_bs2_r8.dist[key] <= 7:
            census[element_class(ball_bs2_r8.model.element_from_key(key))] += 1
    assert census == {1: 23, 2: 273, 3: 273, 4: 142}


# -- tilde -----------------------------------------------------------------

def test_tilde_examples():
    w = parse_word("t a^3 T a")
    assert classify(w) is WordClass.X
    assert str(tilde(w, BS2)) == "a^7"
    xn = parse_word("t a^2 T^2 a")
    out = tilde(xn, BS2)
    assert classify(out) in (WordClass.N, WordClass.E)
    assert bs_eval(out, BS2) == bs_eval(xn, BS2)


@settings(max_examples=300)
@given(words_strategy())
def test_tilde_preserves_element(w):
    cls = classify(w)
    if cls is WordClass.OTHER:
        with pytest.raises(ValueError):
            tilde(w, BS2)
        return
    out = tilde(w, BS2)
    assert bs_eval(out, BS2) == bs_eval(w, BS2)
    if cls in (WordClass.E, WordClass.N, WordClass.P, WordClass.NP):
        assert out == w


# -- pinch criterion ---------------------------------------------------------

def test_has_pinch_examples():
    assert has_pinch(parse_word("T a^2 t"), BS2)
    assert has_pinch(parse_word("T t"), BS2)  # empty run counts
    assert has_pinch(parse_word("a T a^4 t a"), BS2)
    assert not has_pinch(parse_word("T a t"), BS2)
    assert not has_pinch(parse_word("t a^2 T"), BS2)
    assert not has_pinch(parse_word("T a^2 T a t"), BS2)  # run resets at T


def test_has_pinch_respects_q():
    assert not has_pinch(parse_word("T a^2 t"), BsParams(7))
    assert has_pinch(parse_word("T a^7 t"), BsParams(7))


@settings(max_examples=500)
@given(words_strategy(max_size=10))
def test_pinched_words_are_not_geodesic(w):
    if has_pinch(w, BS2):
        assert not is_geodesic(w, BS2)
