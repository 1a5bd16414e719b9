"""Brute-force reference computations used to pin the fast implementations.

Everything here runs dict BFS over exact affine maps (Fraction translation
parts) and never imports the package under test.  Slow on purpose; the big
radii are computed once and their outputs frozen into the test modules.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

GEN_ORDER = ("a", "A", "t", "T")
START = (0, Fraction(0))


def step(q: int, el, gen: str):
    texp, c = el
    if gen == "a":
        return (texp, c + Fraction(q) ** texp)
    if gen == "A":
        return (texp, c - Fraction(q) ** texp)
    if gen == "t":
        return (texp + 1, c)
    if gen == "T":
        return (texp - 1, c)
    raise ValueError(gen)


def apply_word(q: int, el, word: str):
    for gen in word:
        el = step(q, el, gen)
    return el


def ball(q: int, radius: int):
    """(dist, parent) BFS tables out to the given radius."""
    dist = {START: 0}
    parent = {}
    frontier = [START]
    for d in range(radius):
        nxt = []
        for el in frontier:
            for gen in GEN_ORDER:
                nb = step(q, el, gen)
                if nb not in dist:
                    dist[nb] = d + 1
                    parent[nb] = (el, gen)
                    nxt.append(nb)
        frontier = nxt
    return dist, parent


def word_to(parent, el) -> str:
    out = []
    while el != START:
        el, gen = parent[el]
        out.append(gen)
    return "".join(reversed(out))


def sphere_sizes(dist) -> list[int]:
    sizes: dict[int, int] = {}
    for d in dist.values():
        sizes[d] = sizes.get(d, 0) + 1
    return [sizes.get(i, 0) for i in range(max(sizes) + 1)]


def dist_in_ball(q, dist, radius, src, dst, forbid_identity=False):
    """Shortest path length from src to dst through ball elements only
    (optionally dodging the identity), or None when dst is unreachable."""
    if src == dst:
        return 0
    seen = {src}
    queue = deque([(src, 0)])
    while queue:
        el, d = queue.popleft()
        for gen in GEN_ORDER:
            nb = step(q, el, gen)
            if nb == dst:
                return d + 1
            if nb in seen or dist.get(nb, radius + 1) > radius:
                continue
            if forbid_identity and nb == START:
                continue
            seen.add(nb)
            queue.append((nb, d + 1))
    return None


def _short_products():
    """Nonempty generator words of length <= 2, excluding obvious inverses."""
    out = [g for g in GEN_ORDER]
    for g1 in GEN_ORDER:
        for g2 in GEN_ORDER:
            out.append(g1 + g2)
    return out


def fmax_scan(q: int, radius: int):
    """(fmax, pair_count) over unordered sphere pairs at group distance <= 2,
    connecting paths constrained to the ball."""
    dist, _ = ball(q, radius)
    sphere = {el for el, d in dist.items() if d == radius}
    pairs = set()
    for x in sphere:
        for w in _short_products():
            y = apply_word(q, x, w)
            if y in sphere and y != x:
                pairs.add((x, y) if x < y else (y, x))
    fmax = 0
    for x, y in pairs:
        d = dist_in_ball(q, dist, radius, x, y)
        assert d is not None, "sphere pair disconnected inside the ball"
        if d > fmax:
            fmax = d
    return fmax, len(pairs)


def fmax_scan_grouped(q: int, radius: int):
    """Same as fmax_scan but with one BFS per source element; returns the
    same (fmax, pair_count).  Faster for the larger radii."""
    dist, _ = ball(q, radius)
    sphere = {el for el, d in dist.items() if d == radius}
    partners: dict = {}
    for x in sphere:
        for w in _short_products():
            y = apply_word(q, x, w)
            if y in sphere and y != x and x < y:
                partners.setdefault(x, set()).add(y)
    fmax = 0
    npairs = 0
    for x, targets in partners.items():
        npairs += len(targets)
        todo = set(targets)
        seen = {x}
        queue = deque([(x, 0)])
        while queue and todo:
            el, d = queue.popleft()
            for gen in GEN_ORDER:
                nb = step(q, el, gen)
                if nb in seen or dist.get(nb, radius + 1) > radius:
                    continue
                seen.add(nb)
                if nb in todo:
                    todo.discard(nb)
                    if d + 1 > fmax:
                        fmax = d + 1
                queue.append((nb, d + 1))
        assert not todo, "sphere pair disconnected inside the ball"
    return fmax, npairs
