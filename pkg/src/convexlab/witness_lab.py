"""Bridging-path constructions between same-length geodesics in BS(1,2).

Two length-r geodesics w and u whose endpoints are joined by a word gamma
of length at most 2 fall into cases indexed by the element classes of the
endpoints and the shape of gamma.  Each constructive case assembles a
detour delta from w-bar to u-bar; verify_case then checks every claim with
exact integer arithmetic: both words are geodesics, the endpoints really
are gamma apart, delta evaluates to gamma, l(delta) <= 2r - 2, and every
prefix of delta stays inside the ball B(r).  No breadth-first search is
involved, so parameters in the hundreds are cheap.

Class combinations that admit no valid pair get exhaustive searchers over
a small ball instead of builders (impossibility_search).

Also here: the a^m reachability jump (verify_boundingm) and the two
ball-witness checks driven by restricted BFS (verify_notpac,
verify_bs1q_notmac).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Union

from .ball_engine import DEFAULT_CAP, BallIndex, bridge_length, build_ball
from .bs_arith import BsElement, BsGroupModel, BsParams, bs_eval, bs_inv, bs_key, bs_mul
from .bs_geodesics import XBlock, element_class, geodesic_length, is_geodesic, normalize
from .words import Word, WordClass, classify, gen_power, parse_word, sigma_t

BS2 = BsParams(2)

CONSTRUCTIVE_CASES = (
    "4", "5", "6", "7.2", "7.3", "7.4", "8.1", "8.2",
    "9.1.1", "9.1.2", "9.2", "10.1", "10.2.1", "10.2.2", "10.2.3", "10.2.4",
    "10.3.1.1", "10.3.1.2", "10.3.3.1", "10.3.3.2",
)
IMPOSSIBLE_CASES = ("1", "2", "3", "7.1", "10.3.2")

_TRIES = 400


class ConstructionError(ValueError):
    """A case precondition failed; the message names the violated condition."""


@dataclass(frozen=True)
class CaseWitness:
    """One constructed instance: the pair (w, u), the connector gamma and
    the detour delta, plus the parameter assignment that produced it."""

    case: str
    params: dict
    w: Word
    u: Word
    gamma: Word
    delta: Word
    r: int

    def __post_init__(self) -> None:
        if len(self.w) != self.r or len(self.u) != self.r:
            raise ConstructionError(
                f"case {self.case}: l(w)={len(self.w)}, l(u)={len(self.u)}, r={self.r}"
            )


@dataclass(frozen=True)
class SectionFourWitness:
    """The a^(q^n)-conjugate pair used by the ball-witness checks."""

    q: int
    n: int
    R: int
    w: Word
    u: Word


# ---------------------------------------------------------------------------
# word-assembly helpers


def _ap(n: int) -> Word:
    return gen_power("a", n)


def _tp(n: int) -> Word:
    return gen_power("t", n)


def _as_word(v) -> Word:
    if isinstance(v, Word):
        return v
    return parse_word(str(v))


def _gel(w: Word, params: BsParams = BS2) -> BsElement:
    return bs_eval(w, params)


_LETTER_ELS: dict = {}


def _letter_el(gen: str, sign: int, params: BsParams) -> BsElement:
    key = (gen, sign, params.q)
    if key not in _LETTER_ELS:
        _LETTER_ELS[key] = bs_eval(gen_power(gen, sign), params)
    return _LETTER_ELS[key]


def _naf_digits(rng: random.Random, n: int, density: float = 0.45) -> list:
    """Digit string in {-1,0,1}^n with no two adjacent nonzeros."""
    out: list = []
    prev = 0
    for _ in range(n):
        d = 0
        if prev == 0 and rng.random() < density:
            d = rng.choice((-1, 1))
        out.append(d)
        prev = d
    return out


def _ascent_with(digits: list) -> Word:
    """digit, t, digit, t, ..., digit; sigma_t = len(digits) - 1."""
    w = Word()
    for d in digits[:-1]:
        w = w * _ap(d) * _tp(1)
    return w * _ap(digits[-1])


def random_filler(rng: random.Random, sigma: int, params: BsParams = BS2) -> Word:
    """Random geodesic ascent word with sigma_t = sigma (class P, or E when
    sigma = 0).  Sparse digits keep it geodesic; asserted anyway."""
    if sigma < 0:
        raise ConstructionError(f"filler needs sigma >= 0, got {sigma}")
    w = _ascent_with(_naf_digits(rng, sigma + 1))
    assert is_geodesic(w, params)
    return w


def _descent_word(core_word: Word, digits_down: list, rise: int = 0) -> Word:
    """core, then t^-1 a^(d) for each d (d[j] sits at level -(j+1)), then t^rise."""
    w = core_word
    for d in digits_down:
        w = w * _tp(-1) * _ap(d)
    return w * _tp(rise)


def _downfirst_word(dip: int, digits_up: list, core_word: Word) -> Word:
    """t^-dip, then a^(d) t for each d ascending from level -dip, then core."""
    w = _tp(-dip)
    for d in digits_up:
        w = w * _ap(d) * _tp(1)
    return w * core_word


def _random_xblock(rng: random.Random, height: int, top: Optional[int] = None) -> XBlock:
    digits = _naf_digits(rng, height)
    if top is None:
        top = rng.choice((-3, -2, 2, 3))
    return XBlock(height, top, tuple(digits))


def _sample_core_word(rng: random.Random, allow_empty: bool = True) -> Word:
    """A w0-style top piece: empty, a plain a-power, or a small X-block."""
    roll = rng.random()
    if allow_empty and roll < 0.3:
        return Word()
    if roll < 0.7:
        return _ap(rng.choice((-3, -2, -1, 1, 2, 3)))
    return _random_xblock(rng, rng.randint(1, 3)).render("PN")


def _leading_trun(w: Word) -> int:
    """Length of the leading positive t-run, 0 if absent."""
    if w.runs and w.runs[0][0] == "t" and w.runs[0][1] > 0:
        return w.runs[0][1]
    return 0


def _leading_adigit(w: Word) -> int:
    if w.runs and w.runs[0][0] == "a":
        return w.runs[0][1]
    return 0


def _last_run(w: Word):
    return w.runs[-1] if w.runs else None


def _bottom_digit_of_descent(w: Word) -> int:
    """Signed exponent of the final a-run of a class-2 word, 0 if it ends t^-1."""
    run = _last_run(w)
    if run is not None and run[0] == "a":
        return run[1]
    return 0


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConstructionError(message)


# ---------------------------------------------------------------------------
# case builders
#
# Every builder returns a CaseWitness whose words validate against the DP
# (is_geodesic) and whose lengths agree.  Random pieces are resampled up to
# _TRIES times; explicit fillers fail hard instead of resampling.


def _build_4(rng: random.Random, o: dict) -> CaseWitness:
    # both endpoints are a-powers: w is an X-block word t^h w1, u = t^i u1.
    h = int(o.get("h", rng.randint(2, 12)))
    _require(h >= 1, "case 4 needs X-height h >= 1")
    g = int(o.get("g", rng.choice((-2, -1, 1, 2))))
    _require(1 <= abs(g) <= 2, "case 4 needs gamma = a^g with 1 <= |g| <= 2")
    gamma = _ap(g)
    for _ in range(_TRIES):
        digits = _naf_digits(rng, h)
        if abs(g) == 2:
            digits[0] = -g // 2  # a^(2s): digit -s flips to +s, weight kept
        else:
            digits[0] = g  # a^g: 2g carries, digit g moves one level up
            if h >= 2:
                digits[1] = 0
        w = XBlock(h, rng.choice((-3, -2, 2, 3)), tuple(digits)).render("PN")
        if not is_geodesic(w, BS2):
            continue
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if element_class(u_el) != 1 or geodesic_length(u_el, BS2) != len(w):
            continue
        u = normalize(u_el, BS2).render("PN")
        iu = _leading_trun(u)
        if iu < 1:
            continue
        w1 = w.suffix(len(w) - h)
        u1 = u.suffix(len(u) - iu)
        delta = w1.inverse() * _tp(-(h - 1)) * _tp(iu - 1) * u1
        return CaseWitness("4", {"h": h, "i": iu, "g": g}, w, u, gamma, delta, len(w))
    raise ConstructionError("case 4: sampling found no equal-length instance")


def _build_5(rng: random.Random, o: dict) -> CaseWitness:
    # w an a-power, u class 2 with an X-head; same detour assembly as case 4.
    h = int(o.get("h", rng.randint(2, 12)))
    g = int(o.get("g", rng.choice((-1, 1))))
    _require(abs(g) == 1, "case 5 needs gamma = a^g t^-1 with |g| = 1")
    gamma = _ap(g) * _tp(-1)
    for _ in range(_TRIES):
        digits = _naf_digits(rng, h)
        digits[0] = -g  # a^g zeroes the bottom digit, paying for the extra t^-1
        w = XBlock(h, rng.choice((-3, -2, 2, 3)), tuple(digits)).render("PN")
        if not is_geodesic(w, BS2):
            continue
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if element_class(u_el) != 2 or geodesic_length(u_el, BS2) != len(w):
            continue
        u = normalize(u_el, BS2).render("PN")
        iu = _leading_trun(u)
        if iu < 1 or classify(u) is not WordClass.XN:
            continue
        w1 = w.suffix(len(w) - h)
        u1 = u.suffix(len(u) - iu)
        delta = w1.inverse() * _tp(-(h - 1)) * _tp(iu - 1) * u1
        params = {"h": h, "i": iu, "g": g, "delegates_to": "4"}
        return CaseWitness("5", params, w, u, gamma, delta, len(w))
    raise ConstructionError("case 5: sampling found no equal-length instance")


def _build_6(rng: random.Random, o: dict) -> CaseWitness:
    # both words climb: w = a^i t w1 w0, u = a^j t u1 u0 with i = j or i = -j.
    mode = o.get("mode") or rng.choice(("same", "same", "opposite"))
    _require(mode in ("same", "opposite"), "case 6 mode must be same or opposite")
    if mode == "same":
        i = int(o.get("i", rng.choice((-1, 0, 1))))
        _require(abs(i) <= 1, "case 6 needs |i| <= 1")
        sig = int(o.get("sigma", rng.randint(2, 10)))
        _require(sig >= 1, "case 6 needs sigma_t(w) >= 1")
        g = int(o.get("g", rng.choice((-1, 1))))
        kind = o.get("gamma_kind") or rng.choice(("a2", "at"))
        gamma = _ap(2 * g) if kind == "a2" else _ap(g) * _tp(1)
        for _ in range(_TRIES):
            digits = _naf_digits(rng, sig)
            digits[0] = i
            # core -g: gamma = a^(2g) flips it to +g, gamma = a^g t melts it
            body = Word()
            for d in digits:
                body = body * _ap(d) * _tp(1)
            w = body * _ap(-g)
            if not is_geodesic(w, BS2):
                continue
            u_el = bs_mul(_gel(w), _gel(gamma), BS2)
            if element_class(u_el) != 3 or geodesic_length(u_el, BS2) != len(w):
                continue
            u = normalize(u_el, BS2).render("PN")
            if _leading_adigit(u) != i:
                continue
            wr = w.suffix(len(w) - 1 - abs(i))
            ur = u.suffix(len(u) - 1 - abs(i))
            delta = wr.inverse() * ur
            params = {"mode": "same", "i": i, "j": i, "g": g, "gamma_kind": kind}
            return CaseWitness("6", params, w, u, gamma, delta, len(w))
        raise ConstructionError("case 6: sampling found no equal-length instance")
    # opposite: only sigma_t = 1 pairs exist; the block below level 1 is shared
    g = int(o.get("g", rng.choice((-1, 1))))
    i, j = -g, g
    h = int(o.get("h", rng.randint(1, 10)))
    gamma = _ap(g)
    for _ in range(_TRIES):
        digits = _naf_digits(rng, h)
        digits[0] = 0  # keep the block value even so a^g only flips the unit digit
        block = XBlock(h, rng.choice((-3, -2, 2, 3)), tuple(digits)).render("PN")
        w = _ap(i) * _tp(1) * block
        u = _ap(j) * _tp(1) * block
        if not (is_geodesic(w, BS2) and is_geodesic(u, BS2)):
            continue
        if bs_mul(_gel(w), _gel(gamma), BS2) != _gel(u):
            continue
        wr = w.suffix(len(w) - 2)
        ur = u.suffix(len(u) - 2)
        delta = wr.inverse() * _ap(-i) * ur
        params = {"mode": "opposite", "i": i, "j": j, "g": g, "h": h}
        return CaseWitness("6", params, w, u, gamma, delta, len(w))
    raise ConstructionError("case 6: sampling found no equal-length instance")


def _build_72(rng: random.Random, o: dict) -> CaseWitness:
    # both class 2, w ends t^-1, gamma = t a^k; delta is gamma itself.
    e = int(o.get("e", rng.randint(3, 12)))
    _require(e >= 2, "case 7.2 needs descent depth e >= 2")
    k = int(o.get("k", rng.choice((-1, 1))))
    _require(abs(k) == 1, "case 7.2 needs gamma = t a^k with |k| = 1")
    gamma = _tp(1) * _ap(k)
    for _ in range(_TRIES):
        digits = _naf_digits(rng, e)
        digits[e - 1] = 0  # bottom letter is t^-1
        digits[e - 2] = 0  # the new digit k lands here at equal weight
        w = _descent_word(_sample_core_word(rng), digits)
        if not w or not is_geodesic(w, BS2):
            continue
        if element_class(_gel(w)) != 2:
            continue
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if element_class(u_el) != 2 or geodesic_length(u_el, BS2) != len(w):
            continue
        u = normalize(u_el, BS2).render("PN")
        params = {"e": e, "k": k, "i": 0, "delta_is": "gamma"}
        return CaseWitness("7.2", params, w, u, gamma, gamma, len(w))
    raise ConstructionError("case 7.2: sampling found no equal-length instance")


def _build_73(rng: random.Random, o: dict) -> CaseWitness:
    # both class 2, gamma a single letter a^(+-1); a four-letter detour.
    mode = o.get("mode") or rng.choice(("i0", "i1"))
    _require(mode in ("i0", "i1"), "case 7.3 mode must be i0 or i1")
    e = int(o.get("e", rng.randint(3, 12)))
    _require(e >= 2, "case 7.3 needs descent depth e >= 2")
    if mode == "i0":
        j = int(o.get("j", rng.choice((-1, 1))))
        _require(abs(j) == 1, "case 7.3 (i=0) needs |j| = 1")
        gamma = _ap(-j)
        for _ in range(_TRIES):
            digits = _naf_digits(rng, e)
            digits[e - 1] = j
            digits[e - 2] = 0
            u = _descent_word(_sample_core_word(rng), digits)
            if not is_geodesic(u, BS2) or element_class(_gel(u)) != 2:
                continue
            w_el = bs_mul(_gel(u), _ap_el(j), BS2)
            if element_class(w_el) != 2 or geodesic_length(w_el, BS2) != len(u):
                continue
            w = normalize(w_el, BS2).render("PN")
            if _bottom_digit_of_descent(w) != 0:
                continue
            delta = _tp(1) * _ap(-j) * _tp(-1) * _ap(j)
            params = {"e": e, "i": 0, "j": j}
            return CaseWitness("7.3", params, w, u, gamma, delta, len(w))
        raise ConstructionError("case 7.3: sampling found no equal-length instance")
    i = int(o.get("i", rng.choice((-1, 1))))
    _require(abs(i) == 1, "case 7.3 (|i|=1) needs |i| = 1")
    gamma = _ap(i)
    for _ in range(_TRIES):
        digits = _naf_digits(rng, e)
        digits[e - 1] = i
        digits[e - 2] = 0
        w = _descent_word(_sample_core_word(rng), digits)
        if not is_geodesic(w, BS2) or element_class(_gel(w)) != 2:
            continue
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if element_class(u_el) != 2 or geodesic_length(u_el, BS2) != len(w):
            continue
        u = normalize(u_el, BS2).render("PN")
        if _bottom_digit_of_descent(u) != 0:
            continue
        delta = _ap(-i) * _tp(1) * _ap(i) * _tp(-1)
        params = {"e": e, "i": i, "j": 0}
        return CaseWitness("7.3", params, w, u, gamma, delta, len(w))
    raise ConstructionError("case 7.3: sampling found no equal-length instance")


def _ap_el(n: int, params: BsParams = BS2) -> BsElement:
    return bs_eval(_ap(n), params)


def _build_74(rng: random.Random, o: dict) -> CaseWitness:
    # both class 2, gamma = a^(2k).
    mode = o.get("mode") or rng.choice(("i0", "i1_neg", "i1_same", "i1_opp"))
    _require(
        mode in ("i0", "i1_neg", "i1_same", "i1_opp"),
        "case 7.4 mode must be one of i0, i1_neg, i1_same, i1_opp",
    )
    e = int(o.get("e", rng.randint(4, 12)))
    _require(e >= 3, "case 7.4 needs descent depth e >= 3")

    def attempt(tail: list, k: int, gamma: Word, want_j, delta: Word, mode_params):
        # tail is bottom-up: tail[0] at level -e, tail[1] at -(e-1), ...
        for _ in range(_TRIES):
            digits = _naf_digits(rng, e)
            for idx, d in enumerate(tail):
                digits[e - 1 - idx] = d
            w = _descent_word(_sample_core_word(rng), digits)
            if not is_geodesic(w, BS2) or element_class(_gel(w)) != 2:
                continue
            u_el = bs_mul(_gel(w), _gel(gamma), BS2)
            if element_class(u_el) != 2 or geodesic_length(u_el, BS2) != len(w):
                continue
            u = normalize(u_el, BS2).render("PN")
            if want_j is not None and _bottom_digit_of_descent(u) != want_j:
                continue
            params = dict(mode_params)
            params["e"] = e
            return CaseWitness("7.4", params, w, u, gamma, delta, len(w))
        return None

    if mode == "i0":
        k = int(o.get("k", rng.choice((-1, 1))))
        _require(abs(k) == 1, "case 7.4 needs |k| = 1")
        cw = attempt([0, k, 0], k, _ap(2 * k), 0, _tp(1) * _ap(k) * _tp(-1),
                     {"mode": mode, "i": 0, "j": 0, "k": k})
        if cw:
            return cw
    elif mode == "i1_neg":
        i = int(o.get("i", rng.choice((-1, 1))))
        gamma = _ap(-2 * i)
        cw = attempt([i], -i, gamma, -i, gamma,
                     {"mode": mode, "i": i, "j": -i, "k": -i, "delta_is": "gamma"})
        if cw:
            return cw
    elif mode == "i1_same":
        i = int(o.get("i", rng.choice((-1, 1))))
        gamma = _ap(2 * i)
        cw = attempt([i, i, 0], i, gamma, i, gamma,
                     {"mode": mode, "i": i, "j": i, "k": i, "delta_is": "gamma"})
        if cw:
            return cw
    else:
        # j = -i needs a low-digit flip in the balancing; search small tails
        _require(e >= 4, "case 7.4 (i1_opp) needs descent depth e >= 4")
        i = int(o.get("i", rng.choice((-1, 1))))
        gamma = _ap(2 * i)
        delta = _ap(-i) * _tp(1) * _ap(2 * i) * _tp(-1) * _ap(-i)
        patterns = [(a, b, c) for a in (-1, 0, 1) for b in (-1, 0, 1) for c in (-1, 0, 1)]
        rng.shuffle(patterns)
        for pat in patterns:
            cw = attempt([i] + list(pat), i, gamma, -i, delta,
                         {"mode": mode, "i": i, "j": -i, "k": i, "tail": pat})
            if cw:
                return cw
    raise ConstructionError(f"case 7.4 ({mode}): sampling found no equal-length instance")


def _build_81(rng: random.Random, o: dict) -> CaseWitness:
    # w = t v t a^k t^-(p+1) and u = a^j t v t a^k t^-p share the climb v.
    p = int(o.get("p", rng.randint(2, 16)))
    _require(p >= 1, "case 8.1 needs p >= 1")
    k = int(o.get("k", rng.choice((-3, -2, 2, 3))))
    _require(2 <= abs(k) <= 3, "case 8.1 needs 2 <= |k| <= 3")
    j = int(o.get("j", rng.choice((-1, 1))))
    _require(abs(j) == 1, "case 8.1 needs |j| = 1")
    s = 1 if k > 0 else -1
    v_given = o.get("v")
    gamma = _ap(j) * _tp(1)
    delta = (_tp(p) * _ap(-2 * s) * _tp(-p) * _ap(j)
             * _tp(p) * _ap(2 * s) * _tp(-(p - 1)))
    for _ in range(_TRIES):
        v = _as_word(v_given) if v_given is not None else random_filler(rng, p - 1)
        _require(sigma_t(v) == p - 1, f"case 8.1 needs sigma_t(v) = p - 1 = {p - 1}")
        w = _tp(1) * v * _tp(1) * _ap(k) * _tp(-(p + 1))
        u = _ap(j) * _tp(1) * v * _tp(1) * _ap(k) * _tp(-p)
        if is_geodesic(w, BS2) and is_geodesic(u, BS2):
            params = {"p": p, "k": k, "s": s, "j": j, "v": v}
            return CaseWitness("8.1", params, w, u, gamma, delta, len(w))
        _require(v_given is None, "case 8.1: supplied filler v is not geodesic here")
    raise ConstructionError("case 8.1: sampling found no geodesic instance")


def _build_82(rng: random.Random, o: dict) -> CaseWitness:
    # gamma = a^-j t; u0 carries the element of a^-j w0 at the same length.
    p = int(o.get("p", rng.randint(2, 16)))
    _require(p >= 2, "case 8.2 needs p >= 2")
    k_given, j_given = o.get("k"), o.get("j")
    for _ in range(_TRIES):
        k = int(k_given) if k_given is not None else rng.choice((-3, -2, 2, 3))
        _require(2 <= abs(k) <= 3, "case 8.2 needs 2 <= |k| <= 3")
        j = int(j_given) if j_given is not None else rng.choice((-1, 1))
        _require(abs(j) == 1, "case 8.2 needs |j| = 1")
        s = 1 if k > 0 else -1
        gamma = _ap(-j) * _tp(1)
        delta = (_tp(p) * _ap(-2 * s) * _tp(-p) * _ap(-j)
                 * _tp(p) * _ap(2 * s) * _tp(-(p - 1)))
        digits = _naf_digits(rng, p)
        digits[0] = -j  # a^-j cancels into the unit digit without a carry chain
        digits[1] = 0
        v = _ascent_with(digits)
        w0 = v * _tp(1) * _ap(k) * _tp(-p)
        w = _tp(1) * w0 * _tp(-1)
        if not is_geodesic(w, BS2):
            continue
        u0_el = bs_mul(_ap_el(-j), _gel(w0), BS2)
        if element_class(u0_el) != 1 or geodesic_length(u0_el, BS2) != len(w0):
            continue
        u0 = normalize(u0_el, BS2).render("PN")
        if classify(u0) is not WordClass.X:
            continue
        u = _ap(j) * _tp(1) * u0
        if len(u) != len(w) or not is_geodesic(u, BS2):
            continue
        params = {"p": p, "k": k, "s": s, "j": j, "v": v, "u0": u0,
                  "delegates_to": "8.1"}
        return CaseWitness("8.2", params, w, u, gamma, delta, len(w))
    raise ConstructionError("case 8.2: sampling found no equal-length instance")


def _build_911(rng: random.Random, o: dict) -> CaseWitness:
    # u class 4 ending in a bare t (f = 1); gamma = t^2 and delta = gamma.
    e = int(o.get("e", rng.randint(3, 12)))
    _require(e >= 2, "case 9.1.1 needs descent depth e >= 2")
    gamma = _tp(2)
    for _ in range(_TRIES):
        digits = _naf_digits(rng, e)
        digits[e - 1] = rng.choice((-1, 1))  # nonzero bottom keeps u class 4
        u = _descent_word(_sample_core_word(rng), digits, rise=1)
        if not is_geodesic(u, BS2) or element_class(_gel(u)) != 4:
            continue
        w_el = bs_mul(_gel(u), _gel(_tp(-2)), BS2)
        if element_class(w_el) != 2 or geodesic_length(w_el, BS2) != len(u):
            continue
        w = normalize(w_el, BS2).render("PN")
        params = {"e": e, "f": 1, "m_e": digits[e - 1], "delta_is": "gamma"}
        return CaseWitness("9.1.1", params, w, u, gamma, gamma, len(w))
    raise ConstructionError("case 9.1.1: sampling found no equal-length instance")


def _build_912(rng: random.Random, o: dict) -> CaseWitness:
    # w class 2, u class 4 with f = 1, gamma = t a^k.  A class-4 u forces a
    # nonzero bottom digit, and the length bookkeeping then puts
    # v = u(r-1) a^-k inside B(r-1) unconditionally, so only the near
    # detour a^(2k) t ever occurs.
    branch = o.get("branch", "near")
    _require(
        branch == "near",
        "case 9.1.2 has no far branch: a class-4 endpoint pins the bottom "
        "digit to +-k and v lands inside B(r-1)",
    )
    e = int(o.get("e", rng.randint(3, 12)))
    _require(e >= 3, "case 9.1.2 needs descent depth e >= 3")
    k = int(o.get("k", rng.choice((-1, 1))))
    _require(abs(k) == 1, "case 9.1.2 needs gamma = t a^k with |k| = 1")
    gamma = _tp(1) * _ap(k)
    for _ in range(_TRIES):
        digits = _naf_digits(rng, e)
        digits[e - 2] = -k  # the lifted digit melts, paying for the extra t
        digits[e - 1] = rng.choice((k, -k))
        digits[e - 3] = 0
        w = _descent_word(_sample_core_word(rng), digits)
        if not is_geodesic(w, BS2) or element_class(_gel(w)) != 2:
            continue
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if element_class(u_el) != 4 or geodesic_length(u_el, BS2) != len(w):
            continue
        u = normalize(u_el, BS2).render("PN", class4_form="core_first")
        run = _last_run(u)
        if run != ("t", 1):
            continue
        v = u.prefix(len(u) - 1) * _ap(-k)
        if geodesic_length(_gel(v), BS2) > len(u) - 1:
            continue
        delta = _ap(2 * k) * _tp(1)
        params = {"e": e, "k": k, "f": 1, "branch": "near", "v": v}
        return CaseWitness("9.1.2", params, w, u, gamma, delta, len(w))
    raise ConstructionError("case 9.1.2: sampling found no equal-length instance")


def _build_92(rng: random.Random, o: dict) -> CaseWitness:
    # w = v t a^k t^-(p+2) a^i; u = N-form of w t^2; x is the NP-style
    # respelling of u that the checks compare against.
    p = int(o.get("p", rng.randint(10, 16)))
    _require(p > 9, "case 9.2 needs sigma_t(v) = p > 9")
    k = int(o.get("k", rng.choice((-3, -2, 2, 3))))
    _require(2 <= abs(k) <= 3, "case 9.2 needs 2 <= |k| <= 3")
    i = int(o.get("i", rng.choice((-1, 1))))
    _require(abs(i) == 1, "case 9.2 needs |i| = 1")
    s = 1 if k > 0 else -1
    v_given = o.get("v")
    gamma = _tp(2)
    delta = (_ap(-i) * _tp(p + 1) * _ap(-2 * s) * _tp(-(p + 1))
             * _ap(i) * _tp(p + 1) * _ap(2 * s) * _tp(-(p - 1)))
    for _ in range(_TRIES):
        v = _as_word(v_given) if v_given is not None else random_filler(rng, p)
        _require(sigma_t(v) == p, f"case 9.2 needs sigma_t(v) = p = {p}")
        w = v * _tp(1) * _ap(k) * _tp(-(p + 2)) * _ap(i)
        if not is_geodesic(w, BS2):
            _require(v_given is None, "case 9.2: supplied filler v is not geodesic here")
            continue
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if geodesic_length(u_el, BS2) != len(w):
            continue
        u = normalize(u_el, BS2).render("PN")
        x = _tp(-1) * _ap(i) * _tp(1) * v * _tp(1) * _ap(k) * _tp(-p)
        if len(x) != len(w) or not is_geodesic(x, BS2):
            continue
        params = {"p": p, "k": k, "s": s, "i": i, "v": v, "x": x}
        return CaseWitness("9.2", params, w, u, gamma, delta, len(w))
    raise ConstructionError("case 9.2: sampling found no equal-length instance")


def _build_101(rng: random.Random, o: dict) -> CaseWitness:
    # both words dip first: w = t^-p1 w', u = t^-p2 u'.
    p1 = int(o.get("p", rng.randint(2, 12)))
    _require(p1 >= 1, "case 10.1 needs dip p1 >= 1")
    kind = o.get("gamma_kind") or rng.choice(("a2", "at", "Ta", "aT"))
    _require(kind in ("a2", "at", "Ta", "aT"), "case 10.1 gamma kind unknown")
    g = int(o.get("g", rng.choice((-1, 1))))
    extra = int(o.get("extra", rng.randint(1 if kind in ("Ta", "aT") else 0, 6)))
    _require(extra >= 0, "case 10.1 needs sigma_t(w) >= 0")
    _require(kind not in ("Ta", "aT") or extra >= 1,
             "case 10.1 with a t^-1 in gamma needs sigma_t(w) >= 1")
    if kind == "a2":
        gamma = _ap(2 * g)
    elif kind == "at":
        gamma = _ap(g) * _tp(1)
    elif kind == "Ta":
        gamma = _tp(-1) * _ap(g)
    else:
        gamma = _ap(g) * _tp(-1)
    for _ in range(_TRIES):
        digits = _naf_digits(rng, p1 + extra)
        digits[0] = rng.choice((-1, 1))  # nonzero bottom digit keeps the dip
        if kind in ("a2", "at"):
            core = _ap(-g)  # flips to +g under a^(2g), melts under a^g t
        elif kind == "Ta":
            core = Word()  # gamma's a^g becomes the core one level down
            digits[-1] = 0
        else:
            # a^g joins the core and t^-1 doubles it: -3g + g reads as the
            # X-block t a^-2g t^-1 one level down, one letter longer
            core = _ap(-3 * g)
            digits[-1] = 0
        w = _downfirst_word(p1, digits, core)
        if not is_geodesic(w, BS2) or element_class(_gel(w)) != 4:
            continue
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if element_class(u_el) != 4 or u_el.texp < 0:
            continue
        if geodesic_length(u_el, BS2) != len(w):
            continue
        u = normalize(u_el, BS2).render("PN")
        p2 = -_leading_trun_signed(u)
        if p2 < 1:
            continue
        wp = w.suffix(len(w) - p1)
        up = u.suffix(len(u) - p2)
        delta = wp.inverse() * _tp(p1 - 1) * _tp(-(p2 - 1)) * up
        params = {"p1": p1, "p2": p2, "g": g, "gamma_kind": kind, "extra": extra}
        return CaseWitness("10.1", params, w, u, gamma, delta, len(w))
    raise ConstructionError("case 10.1: sampling found no equal-length instance")


def _leading_trun_signed(w: Word) -> int:
    if w.runs and w.runs[0][0] == "t":
        return w.runs[0][1]
    return 0


def _build_102(rng: random.Random, o: dict, sub: str) -> CaseWitness:
    # w = w0 w1 t^-1 a^(i1) t^(f1): a descent past the bottom then a bare rise.
    f1 = int(o.get("f1", rng.randint(1, 8)))
    _require(f1 >= 1, "case 10.2 needs rise f1 >= 1")
    e = int(o.get("e", rng.randint(f1 + 3, f1 + 12)))
    _require(e >= f1 + 3, f"case {sub} needs descent depth e >= f1 + 3")
    i1_given = o.get("i1")
    k_given = o.get("k")
    branch = None
    if sub == "10.2.3":
        branch = o.get("branch") or ("far" if f1 == 1 else rng.choice(("near", "far")))
        _require(branch in ("near", "far"), "case 10.2.3 branch must be near or far")
        _require(branch == "far" or f1 >= 2,
                 "case 10.2.3 near branch needs f1 >= 2 (at f1 = 1 the pinned "
                 "digits collide with the bottom one)")
    itex = e - f1 - 1  # index of the digit at level texp = f1 - e
    for _ in range(_TRIES):
        i1 = int(i1_given) if i1_given is not None else rng.choice((-1, 1))
        _require(abs(i1) == 1, "case 10.2 needs |i1| = 1")
        k = int(k_given) if k_given is not None else rng.choice((-1, 1))
        _require(abs(k) == 1, f"case {sub} needs |k| = 1")
        if sub == "10.2.1":
            gamma = _ap(k) * _tp(1)
        elif sub == "10.2.2":
            gamma = _ap(k)
        elif sub == "10.2.3":
            gamma = _tp(1) * _ap(k)
        else:
            gamma = _ap(2 * k)
        digits = _naf_digits(rng, e)
        digits[e - 1] = i1
        digits[e - 2] = 0
        if sub == "10.2.1":
            digits[itex] = -k  # a^k melts this digit, paying for the extra t
        elif sub == "10.2.2":
            digits[itex] = k  # carry: 2k at texp becomes k one level up
            digits[itex - 1] = 0
        elif sub == "10.2.3":
            digits[itex - 1] = -k  # the digit above texp melts under t a^k
            digits[itex] = -k if branch == "near" else 0
        else:
            digits[itex - 1] = k  # a^(2k) carries into the slot above texp
            digits[itex - 2] = 0
        w = _descent_word(_sample_core_word(rng), digits, rise=f1)
        if not is_geodesic(w, BS2) or element_class(_gel(w)) != 4:
            continue
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if element_class(u_el) != 4 or geodesic_length(u_el, BS2) != len(w):
            continue
        u = normalize(u_el, BS2).render("PN", class4_form="core_first")
        run = _last_run(u)
        f2 = f1 + sigma_t(gamma)
        if run != ("t", f2):
            continue
        if len(u.runs) < 2 or u.runs[-2][0] != "a" or abs(u.runs[-2][1]) != 1:
            continue
        i2 = u.runs[-2][1]
        params = {"f1": f1, "f2": f2, "e": e, "i1": i1, "i2": i2, "k": k}
        if sub == "10.2.1":
            delta = gamma
            params["delta_is"] = "gamma"
        elif sub == "10.2.2":
            delta = _tp(-1) * _ap(2 * k) * _tp(1)
        elif sub == "10.2.3":
            v = u.prefix(len(u) - 1) * _ap(-k)
            v_dist = geodesic_length(_gel(v), BS2)
            params["branch"] = branch
            params["v"] = v
            if branch == "near":
                if v_dist > len(u) - 1:
                    continue
                delta = _ap(2 * k) * _tp(1)
            else:
                if v_dist != len(u):
                    continue
                delta = _tp(-1) * _ap(2 * k) * _tp(1) * _ap(k) * _tp(1)
        else:
            _require(len(w) >= 2 * f1 + 3, "case 10.2.4 needs r >= 2 f1 + 3")
            delta = (_tp(-f1) * _ap(-i1) * _tp(f1) * _ap(2 * k)
                     * _tp(-f1) * _ap(i1) * _tp(f1))
        return CaseWitness(sub, params, w, u, gamma, delta, len(w))
    raise ConstructionError(f"case {sub}: sampling found no equal-length instance")


def _build_1031(rng: random.Random, o: dict, sub: str) -> CaseWitness:
    # w carries an X-head w3 t a^m t^-l; u is the alternate geodesic that
    # walks the dip first.  gamma = t^2.
    p = int(o.get("p", rng.randint(2, 10)))
    _require(p >= 2, "case 10.3.1 needs p >= 2")
    if sub == "10.3.1.1":
        l = int(o.get("l", rng.randint(2, 10)))
        _require(l >= 2, "case 10.3.1.1 needs l >= 2")
    else:
        l = int(o.get("l", 1))
        _require(l == 1, "case 10.3.1.2 needs l = 1")
    m = int(o.get("m", rng.choice((-3, -2, 2, 3))))
    _require(2 <= abs(m) <= 3, "case 10.3.1 needs 2 <= |m| <= 3")
    i = int(o.get("i", rng.choice((-1, 1))))
    _require(abs(i) == 1, "case 10.3.1 needs |i| = 1")
    s = 1 if m > 0 else -1
    w3_given, w2_given = o.get("w3"), o.get("w2")
    gamma = _tp(2)
    for _ in range(_TRIES):
        w3 = _as_word(w3_given) if w3_given is not None else random_filler(rng, l - 1)
        w2 = _as_word(w2_given) if w2_given is not None else random_filler(rng, p - 2)
        _require(sigma_t(w3) == l - 1, f"case {sub} needs sigma_t(w3) = l - 1")
        _require(sigma_t(w2) == p - 2, f"case {sub} needs sigma_t(w2) = p - 2")
        w = w3 * _tp(1) * _ap(m) * _tp(-(l + p)) * _ap(i) * _tp(1) * w2
        u = (_tp(-p) * _ap(i) * _tp(1) * w2 * _tp(1) * w3 * _tp(1) * _ap(m)
             * _tp(-(l - 1)))
        if is_geodesic(w, BS2) and is_geodesic(u, BS2) and len(w) == len(u):
            head = w2.inverse() * _tp(-1) * _ap(-i) * _tp(p - 1)
            if sub == "10.3.1.1":
                delta = (head * _tp(l) * _ap(-2 * s) * _tp(-l) * _tp(-(p - 1))
                         * _ap(i) * _tp(1) * w2 * _tp(l) * _ap(2 * s) * _tp(-(l - 2)))
            else:
                delta = (head * _tp(1) * _ap(-2 * s) * _tp(-1) * _tp(-(p - 1))
                         * _ap(i) * _tp(1) * w2 * _tp(2) * _ap(s))
            params = {"p": p, "l": l, "m": m, "s": s, "i": i, "w3": w3, "w2": w2}
            return CaseWitness(sub, params, w, u, gamma, delta, len(w))
        _require(w3_given is None or w2_given is None,
                 f"case {sub}: supplied fillers give a non-geodesic pair")
    raise ConstructionError(f"case {sub}: sampling found no geodesic instance")


def _build_1033(rng: random.Random, o: dict, sub: str) -> CaseWitness:
    # w = a^k t^-p a^i t w2 with a plain head a^k; gamma = t^2.  u walks two
    # levels higher, which costs two extra t letters, so the pair can only
    # share a sphere when u's reading of the value saves that much weight.
    # The one trade that does it: k = 3s next to a digit pair (s, s) at
    # levels -1, -2 rebalances to a digit -s at -2 plus an a^2s core above
    # the surface (3 + 2 letters against 1 + 2).  Pin exactly that.
    low = 4 if sub == "10.3.3.1" else 6
    p = int(o.get("p", rng.randint(low, 12)))
    if sub == "10.3.3.1":
        _require(p >= 4, "case 10.3.3.1 needs p >= 4 (the tie pair and the "
                         "isolated bottom digit do not fit below that)")
    else:
        _require(p >= 6, "case 10.3.3.2 needs p >= 6 (the bottom pair's "
                         "carry must land two clear levels under the top pair)")
    s_given, i_given = o.get("s"), o.get("i")
    gamma = _tp(2)
    for _ in range(_TRIES):
        s = int(s_given) if s_given is not None else rng.choice((-1, 1))
        _require(s in (-1, 1), "case 10.3.3 needs s = +-1")
        k = 3 * s
        i = int(i_given) if i_given is not None else rng.choice((-1, 1))
        _require(abs(i) == 1, "case 10.3.3 needs |i| = 1")
        # m[j] sits at level -j.  m[3] = 0 isolates the engineered pair; the
        # bottom is (i, 0) for i = j, or the tied pair (i, i) whose flipped
        # reading hands u the opposite bottom digit for i = -j.
        m = [0] * (p + 1)
        m[1] = s
        m[2] = s
        m[p] = i
        free_hi = p - 1
        if sub == "10.3.3.2":
            m[p - 1] = i
            free_hi = p - 2
        for idx in range(4, free_hi):
            if m[idx - 1] == 0 and rng.random() < 0.4:
                m[idx] = rng.choice((-1, 1))
        w2 = Word()
        for j in range(p - 1, 0, -1):
            w2 = w2 * _ap(m[j])
            if j > 1:
                w2 = w2 * _tp(1)
        w = _ap(k) * _tp(-p) * _ap(i) * _tp(1) * w2
        if not is_geodesic(w, BS2):
            continue
        r = len(w)
        u_el = bs_mul(_gel(w), _gel(gamma), BS2)
        if geodesic_length(u_el, BS2) != r:
            continue
        gnf = normalize(u_el, BS2)
        if gnf.element.texp != 1 or gnf.bottom != -p:
            continue
        jd = gnf.digit_at(-p)
        want = i if sub == "10.3.3.1" else -i
        if jd != want:
            continue
        u = gnf.render("PN", class4_form="down_first")
        if len(u) != r:
            continue
        u_rest = u.suffix(r - p - 2)
        head = w2.inverse() * _tp(p - 1) * _ap(-k) * _tp(-(p - 1))
        if sub == "10.3.3.1":
            delta = head * u_rest
        else:
            delta = head * _ap(jd) * u_rest
        params = {"p": p, "k": k, "s": s, "i": i, "j": jd, "w2": w2}
        return CaseWitness(sub, params, w, u, gamma, delta, r)
    raise ConstructionError(f"case {sub}: sampling found no equal-length instance")


_BUILDERS = {
    "4": _build_4,
    "5": _build_5,
    "6": _build_6,
    "7.2": _build_72,
    "7.3": _build_73,
    "7.4": _build_74,
    "8.1": _build_81,
    "8.2": _build_82,
    "9.1.1": _build_911,
    "9.1.2": _build_912,
    "9.2": _build_92,
    "10.1": _build_101,
    "10.2.1": lambda rng, o: _build_102(rng, o, "10.2.1"),
    "10.2.2": lambda rng, o: _build_102(rng, o, "10.2.2"),
    "10.2.3": lambda rng, o: _build_102(rng, o, "10.2.3"),
    "10.2.4": lambda rng, o: _build_102(rng, o, "10.2.4"),
    "10.3.1.1": lambda rng, o: _build_1031(rng, o, "10.3.1.1"),
    "10.3.1.2": lambda rng, o: _build_1031(rng, o, "10.3.1.2"),
    "10.3.3.1": lambda rng, o: _build_1033(rng, o, "10.3.3.1"),
    "10.3.3.2": lambda rng, o: _build_1033(rng, o, "10.3.3.2"),
}


class _TrackedOpts(dict):
    """Option dict that records which keys the builder ever looked at, so a
    misspelled parameter fails loudly instead of sampling a random instance."""

    def __init__(self, *args):
        super().__init__(*args)
        self.seen: set = set()

    def get(self, key, default=None):
        self.seen.add(key)
        return super().get(key, default)

    def __getitem__(self, key):
        self.seen.add(key)
        return super().__getitem__(key)

    def __contains__(self, key):
        self.seen.add(key)
        return super().__contains__(key)


def build_case(case: str, rng: Optional[random.Random] = None, **params) -> CaseWitness:
    """Construct a CaseWitness for the given constructive case id.

    Integer parameters (p, l, f1, k, j, ...) and filler words (v, w2, w3)
    may be pinned by keyword; anything left unspecified is sampled.  Raises
    ConstructionError when a precondition is violated, a parameter name is
    unknown to the case, or sampling fails.
    """
    if case not in _BUILDERS:
        raise ConstructionError(f"unknown constructive case id: {case!r}")
    rng = rng if rng is not None else random.Random(0xC0FFEE)
    opts = _TrackedOpts(params)
    cw = _BUILDERS[case](rng, opts)
    stray = set(opts) - opts.seen
    if stray:
        raise ConstructionError(
            f"case {case} does not take parameter(s) {sorted(stray)}")
    return cw


# ---------------------------------------------------------------------------
# verification


def verify_case(cw: CaseWitness, params: BsParams = BS2) -> dict:
    """Exact checks for one witness: geodesy of w and u, the gamma link,
    delta's endpoint and length bound, and ball membership of every prefix
    of delta.  Returns a JSON-ready report."""
    checks: dict = {}
    first_violation = None
    w_el = bs_eval(cw.w, params)
    u_el = bs_eval(cw.u, params)
    checks["geodesic"] = is_geodesic(cw.w, params) and is_geodesic(cw.u, params)
    diff = bs_mul(bs_inv(w_el, params), u_el, params)
    dist = geodesic_length(diff, params)
    checks["distance"] = (1 <= dist <= 2
                          and bs_eval(cw.w * cw.gamma, params) == u_el)
    checks["delta_eval"] = bs_eval(cw.delta, params) == bs_eval(cw.gamma, params)
    checks["delta_len"] = len(cw.delta) <= 2 * cw.r - 2
    inside = True
    cur = w_el
    for idx, (gen, sign) in enumerate(cw.delta.letters(), start=1):
        cur = bs_mul(cur, _letter_el(gen, sign, params), params)
        if geodesic_length(cur, params) > cw.r:
            inside = False
            first_violation = idx
            break
    checks["in_ball"] = inside
    if "x" in cw.params:
        x = cw.params["x"]
        checks["alt_u"] = len(x) == cw.r and bs_eval(x, params) == u_el
    return {
        "case": cw.case,
        "params": {key: str(val) if isinstance(val, Word) else val
                   for key, val in cw.params.items()},
        "r": cw.r,
        "w": str(cw.w),
        "u": str(cw.u),
        "gamma": str(cw.gamma),
        "delta": str(cw.delta),
        "checks": checks,
        "first_violation": first_violation,
        "ok": all(checks.values()),
    }


# ---------------------------------------------------------------------------
# impossibility searchers


def _gamma_words():
    letters = (("a", 1), ("a", -1), ("t", 1), ("t", -1))
    out = [gen_power(g, s) for g, s in letters]
    for g1, s1 in letters:
        for g2, s2 in letters:
            if g1 == g2 and s1 == -s2:
                continue
            out.append(gen_power(g1, s1) * gen_power(g2, s2))
    return tuple(out)


def _geodesic_word_tags(radius: int, params: BsParams, ball: BallIndex) -> dict:
    """Word classes realized by geodesic spellings, per element of B(radius)."""
    tags: dict = {}
    letters = (("a", 1), ("a", -1), ("t", 1), ("t", -1))
    stack = [(bs_eval(Word(), params), Word())]
    while stack:
        el, w = stack.pop()
        if ball.distance(bs_key(el)) == len(w):
            tags.setdefault(bs_key(el), set()).add(classify(w))
        if len(w) >= radius:
            continue
        last = None
        if w.runs:
            g, e = w.runs[-1]
            last = (g, 1 if e > 0 else -1)
        for gen, sign in letters:
            if last == (gen, -sign):
                continue
            stack.append((bs_mul(el, _letter_el(gen, sign, params), params),
                          w * gen_power(gen, sign)))
    return tags


def impossibility_search(case: str, radius: int = 7, params: BsParams = BS2,
                         ball: Optional[BallIndex] = None) -> list:
    """Exhaustively hunt for a geodesic pair realizing an impossible case.

    Returns the list of realizations found; every entry is a bug in the
    case analysis, so callers assert the list is empty.
    """
    if case not in IMPOSSIBLE_CASES:
        raise ValueError(f"not an impossibility case: {case!r}")
    model = BsGroupModel(params)
    if ball is None:
        ball = build_ball(model, radius)
    hits: list = []
    tsq = bs_eval(_tp(2), params)
    if case in ("1", "2"):
        target = 1 if case == "1" else 3
        gammas = [gw for gw in _gamma_words()
                  if geodesic_length(bs_eval(gw, params), params) == len(gw)]
        for key, el in ball.elements.items():
            r = ball.distance(key)
            if r == 0:
                continue
            if element_class(el) != 4:
                continue
            for gw in gammas:
                y = bs_mul(el, bs_eval(gw, params), params)
                if element_class(y) != target:
                    continue
                if geodesic_length(y, params) != r:
                    continue
                hits.append({"case": case, "x": key.decode("ascii"),
                             "gamma": str(gw), "r": r})
    elif case == "3":
        tags = _geodesic_word_tags(radius, params, ball)
        for key, el in ball.elements.items():
            r = ball.distance(key)
            if el.texp != -1 or WordClass.XN not in tags.get(key, ()):
                continue
            y = bs_mul(el, tsq, params)
            if geodesic_length(y, params) != r:
                continue
            if WordClass.PX in tags.get(bs_key(y), ()):
                hits.append({"case": case, "w_el": key.decode("ascii"), "r": r})
    elif case == "7.1":
        gammas = (_tp(1), _ap(1) * _tp(1), _ap(-1) * _tp(1))
        for key, el in ball.elements.items():
            r = ball.distance(key)
            if r == 0:
                continue
            if element_class(el) != 2:
                continue
            for gw in gammas:
                y = bs_mul(el, bs_eval(gw, params), params)
                if element_class(y) != 2:
                    continue
                if geodesic_length(y, params) != r:
                    continue
                hits.append({"case": case, "x": key.decode("ascii"),
                             "gamma": str(gw), "r": r})
    else:  # 10.3.2: w = a^k t^-p a^i t^(p-1) alongside u = w t^2 at equal length
        for p in range(2, radius):
            for k in range(-3, 4):
                for i in (-1, 1):
                    w = _ap(k) * _tp(-p) * _ap(i) * _tp(p - 1)
                    if len(w) > radius or not is_geodesic(w, params):
                        continue
                    y = bs_mul(bs_eval(w, params), tsq, params)
                    if geodesic_length(y, params) == len(w):
                        hits.append({"case": case, "w": str(w)})
    return hits


# ---------------------------------------------------------------------------
# reachability of a^m and the ball witnesses


def verify_boundingm(n: int, q: int = 2) -> dict:
    """Scan m in (bound, q^(n+1)] for a^m reachable within the stated radius.

    For q = 2 the radius is 2n + 2 and the only survivor past
    2^n + 2^(n-1) + 2^(n-2) is 2^(n+1); for q >= 7 the radius is 2n + 1 and
    the only survivor past 3 q^(n-1) is q^n.  The digit DP prices each m
    directly, no ball is built.
    """
    if q == 2:
        radius = 2 * n + 2
        bound = 2 ** n + 2 ** (n - 1) + 2 ** (n - 2)
        expected = [2 ** (n + 1)]
    else:
        if q < 7:
            raise ValueError("q must be 2 or at least 7")
        radius = 2 * n + 1
        bound = 3 * q ** (n - 1)
        expected = [q ** n]
    params = BsParams(q)
    reachable = [m for m in range(bound + 1, q ** (n + 1) + 1)
                 if geodesic_length(BsElement(0, m, 0), params) <= radius]
    return {
        "witness": "boundingm",
        "q": q,
        "n": n,
        "R": radius,
        "bound": bound,
        "expected": expected,
        "reachable": reachable,
        "ok": reachable == expected,
    }


def section_four_witness(q: int, n: int) -> SectionFourWitness:
    """The pair w = t^n a^c t^-n, u = a t^n a^c t^-(n-1) with c = 2 for
    q = 2 (radius 2n + 2) and c = 1 for q >= 7 (radius 2n + 1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if q == 2:
        w = _tp(n) * _ap(2) * _tp(-n)
        u = _ap(1) * _tp(n) * _ap(2) * _tp(-(n - 1))
        radius = 2 * n + 2
    else:
        if q < 7:
            raise ValueError("q must be 2 or at least 7")
        w = _tp(n) * _ap(1) * _tp(-n)
        u = _ap(1) * _tp(n) * _ap(1) * _tp(-(n - 1))
        radius = 2 * n + 1
    return SectionFourWitness(q, n, radius, w, u)


def verify_notpac(n: int, cap: int = DEFAULT_CAP,
                  ball: Optional[BallIndex] = None) -> dict:
    """Bridge w-bar to u-bar inside B(2n + 2) for q = 2 and record the cost.

    The pair sits distance 2 apart on the sphere; the checks confirm the
    geodesy bookkeeping and that the in-ball bridge exceeds R - 8, the
    threshold that defeats a linear bridging bound with slope 1.
    """
    params = BsParams(2)
    wit = section_four_witness(2, n)
    checks: dict = {}
    w, u, radius = wit.w, wit.u, wit.R
    tagged = (("w", w), ("u", u), ("wa", w * _ap(1)),
              ("wa^-1", w * _ap(-1)), ("wt^-1", w * _tp(-1)))
    detail = {tag: is_geodesic(x, params) for tag, x in tagged}
    checks["geodesic"] = all(detail.values())
    w_el, u_el = bs_eval(w, params), bs_eval(u, params)
    gamma = _ap(1) * _tp(1)
    diff = bs_mul(bs_inv(w_el, params), u_el, params)
    checks["distance"] = (bs_mul(w_el, bs_eval(gamma, params), params) == u_el
                          and geodesic_length(diff, params) == 2)
    if ball is None:
        ball = build_ball(BsGroupModel(params), radius, cap=cap)
    bridge = bridge_length(ball, w_el, u_el)
    checks["bridge_exceeds"] = bridge is not None and bridge > radius - 8
    return {
        "witness": "notpac",
        "q": 2,
        "n": n,
        "R": radius,
        "w": str(w),
        "u": str(u),
        "bridge": bridge,
        "geodesic_detail": detail,
        "checks": checks,
        "ok": all(checks.values()),
    }


def verify_bs1q_notmac(q: int, n: int, cap: int = DEFAULT_CAP,
                       ball: Optional[BallIndex] = None) -> dict:
    """For q >= 7: the bridge inside B(2n + 1) costs exactly 2R, and every
    minimal bridge runs through the identity (forbidding it lengthens or
    disconnects the route)."""
    if q < 7:
        raise ValueError("q must be at least 7")
    params = BsParams(q)
    wit = section_four_witness(q, n)
    checks: dict = {}
    w, u, radius = wit.w, wit.u, wit.R
    tagged = (("w", w), ("u", u), ("wa", w * _ap(1)),
              ("wa^-1", w * _ap(-1)), ("wt^-1", w * _tp(-1)))
    detail = {tag: is_geodesic(x, params) for tag, x in tagged}
    checks["geodesic"] = all(detail.values())
    w_el, u_el = bs_eval(w, params), bs_eval(u, params)
    gamma = _ap(1) * _tp(1)
    diff = bs_mul(bs_inv(w_el, params), u_el, params)
    checks["distance"] = (bs_mul(w_el, bs_eval(gamma, params), params) == u_el
                          and geodesic_length(diff, params) == 2)
    if ball is None:
        ball = build_ball(BsGroupModel(params), radius, cap=cap)
    bridge = bridge_length(ball, w_el, u_el)
    checks["bridge_is_2R"] = bridge == 2 * radius
    detour = bridge_length(ball, w_el, u_el, forbid_identity=True)
    checks["through_identity"] = detour is None or detour > 2 * radius
    return {
        "witness": "bs1q_notmac",
        "q": q,
        "n": n,
        "R": radius,
        "w": str(w),
        "u": str(u),
        "bridge": bridge,
        "bridge_no_identity": detour,
        "geodesic_detail": detail,
        "checks": checks,
        "ok": all(checks.values()),
    }
