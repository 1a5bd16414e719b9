"""Ball BFS, caching, bridging, and geodesic word extraction."""

import pytest

import reference
from convexlab.ball_engine import (
    BallCapError,
    CacheError,
    bridge_length,
    build_ball,
    distance,
    geodesic_words,
    load_ball,
    save_ball,
)
from convexlab.bs_arith import BsElement, BsGroupModel, BsParams, bs_eval, bs_key
from convexlab.stallings import StallingsModel
from convexlab.words import parse_word

# cumulative ball sizes pinned by the Fraction-BFS reference
BS2_BALL = [1, 5, 17, 43, 93, 191, 375, 711, 1317, 2403, 4317, 7667, 13513]
BS7_BALL = [1, 5, 17, 53, 153, 415, 1089]
ST_BALL = [1, 11, 85, 547, 3233]


def _cumulative(sizes):
    out, tot = [], 0
    for s in sizes:
        tot += s
        out.append(tot)
    return out


def test_bs2_sphere_sizes(ball_bs2_r10):
    assert _cumulative(ball_bs2_r10.sphere_sizes()) == BS2_BALL[:11]


def test_bs7_sphere_sizes(ball_bs7_r6):
    assert _cumulative(ball_bs7_r6.sphere_sizes()) == BS7_BALL


def test_stallings_sphere_sizes(ball_st_r4):
    assert _cumulative(ball_st_r4.sphere_sizes()) == ST_BALL


def test_distances_match_reference(ball_bs2_r8):
    dist, _ = reference.ball(2, 8)
    assert len(dist) == len([k for k, d in ball_bs2_r8.dist.items() if d <= 8])
    for (texp, c), d in dist.items():
        num, den = c.numerator, c.denominator
        dpow = den.bit_length() - 1
        el = BsElement(texp, num, dpow)
        assert ball_bs2_r8.distance(bs_key(el)) == d


def test_ball_index_lookups(ball_bs2_r8):
    model = ball_bs2_r8.model
    ident_key = model.key(model.identity())
    assert ball_bs2_r8.distance(ident_key) == 0
    assert ident_key in ball_bs2_r8
    assert ball_bs2_r8.sphere(0) == [ident_key]
    assert ball_bs2_r8.distance(b"nonsense") is None
    far = bs_eval(parse_word("a^1000"), BsParams(2))
    assert distance(ball_bs2_r8, far) is None


def test_cap_enforced():
    with pytest.raises(BallCapError):
        build_ball(BsGroupModel(BsParams(2)), 8, cap=1000)


def test_cache_round_trip(tmp_path, ball_bs2_r8):
    path = tmp_path / "b8.ndjson"
    save_ball(ball_bs2_r8, str(path))
    loaded = load_ball(str(path), ball_bs2_r8.model)
    assert loaded.radius == ball_bs2_r8.radius
    assert loaded.dist == ball_bs2_r8.dist
    assert loaded.sphere_sizes() == ball_bs2_r8.sphere_sizes()


def test_cache_rejects_wrong_group(tmp_path, ball_bs2_r8):
    path = tmp_path / "b8.ndjson"
    save_ball(ball_bs2_r8, str(path))
    with pytest.raises(CacheError):
        load_ball(str(path), BsGroupModel(BsParams(3)))
    with pytest.raises(CacheError):
        load_ball(str(path), StallingsModel())


def test_cache_rejects_garbage(tmp_path):
    path = tmp_path / "junk.ndjson"
    path.write_text("not json\n")
    with pytest.raises(CacheError):
        load_ball(str(path), BsGroupModel(BsParams(2)))
    with pytest.raises(CacheError):
        load_ball(str(tmp_path / "missing.ndjson"), BsGroupModel(BsParams(2)))


def test_loaded_ball_has_no_parents(tmp_path, ball_bs2_r8):
    path = tmp_path / "b8.ndjson"
    save_ball(ball_bs2_r8, str(path))
    loaded = load_ball(str(path), ball_bs2_r8.model)
    key = loaded.sphere(3)[0]
    with pytest.raises(CacheError):
        loaded.geodesic_word(key)


def test_geodesic_words_are_geodesic(ball_bs2_r8):
    params = BsParams(2)
    model = ball_bs2_r8.model
    keys = [s[0] for s in ball_bs2_r8.spheres if s]
    for key, letters in geodesic_words(ball_bs2_r8, keys).items():
        w = parse_word("".join(letters))
        assert len(w) == ball_bs2_r8.dist[key]
        assert model.key(bs_eval(w, params)) == key


def test_bridge_simple_cases(ball_bs2_r8):
    params = BsParams(2)
    x = bs_eval(parse_word("t a T"), params)
    assert bridge_length(ball_bs2_r8, x, x) == 0
    y = bs_eval(parse_word("t a T a"), params)
    assert bridge_length(ball_bs2_r8, x, y) == 1
    with pytest.raises(ValueError):
        bridge_length(ball_bs2_r8, x, bs_eval(parse_word("a^1000"), params))


def test_bridge_matches_reference(ball_bs2_r8):
    # sphere pair at reference distance, constrained to the ball
    params = BsParams(2)
    dist, _ = reference.ball(2, 6)
    x_w, y_w = parse_word("a^8"), parse_word("A T a^2 t a^2")
    x, y = bs_eval(x_w, params), bs_eval(y_w, params)
    ball6 = build_ball(ball_bs2_r8.model, 6)
    got = bridge_length(ball6, x, y)
    ref = reference.dist_in_ball(
        2, dist, 6, reference.apply_word(2, reference.START, "aaaaaaaa"),
        reference.apply_word(2, reference.START, "ATaataa"))
    assert got == ref


def test_bridge_forbid_identity(ball_bs2_r8):
    params = BsParams(2)
    x = bs_eval(parse_word("a"), params)
    y = bs_eval(parse_word("A"), params)
    assert bridge_length(ball_bs2_r8, x, y) == 2
    detour = bridge_length(ball_bs2_r8, x, y, forbid_identity=True)
    assert detour is not None and detour > 2
