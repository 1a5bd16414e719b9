"""Exhaustive Cayley-ball BFS over a pluggable group model.

A group model is any object with the duck-typed surface used below:

    name                 str, stable identifier ("bs:q=2", "stallings")
    identity()           -> element
    generator_names()    -> tuple of generator labels, fixed order
    apply_gen(el, i)     -> element * generator i
    gen_word(i)          -> one-letter Word for generator i
    invert(el)           -> element inverse
    multiply(g, h)       -> element product
    key(el)              -> ascii bytes, injective on elements
    element_from_key(k)  -> element

Balls are built breadth-first, sphere by sphere, expanding each sphere in
sorted key order so that parent links and rosters are byte-stable across
runs.  Distances can be dumped to and reloaded from an NDJSON cache; parent
links are not cached, so word extraction needs a freshly built ball.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Optional

DEFAULT_CAP = 50_000_000

CACHE_FORMAT = "ball-v1"


class BallCapError(RuntimeError):
    """Ball construction hit the element cap before reaching the radius."""


class CacheError(RuntimeError):
    """Cache file missing, malformed, or for a different group/radius."""


class BallIndex:
    """Distances, sphere rosters, and parent links of a ball B(radius)."""

    def __init__(self, model, radius: int):
        self.model = model
        self.radius = radius
        self.dist: dict[bytes, int] = {}
        self.elements: dict[bytes, object] = {}
        self.spheres: list[list[bytes]] = []
        self.parents: dict[bytes, tuple[bytes, int]] = {}

    def __len__(self) -> int:
        return len(self.dist)

    def __contains__(self, key: bytes) -> bool:
        return key in self.dist

    def distance(self, key: bytes) -> Optional[int]:
        return self.dist.get(key)

    def sphere(self, r: int) -> list[bytes]:
        return self.spheres[r] if r < len(self.spheres) else []

    def sphere_sizes(self) -> list[int]:
        return [len(s) for s in self.spheres]

    def element(self, key: bytes):
        el = self.elements.get(key)
        if el is None:
            el = self.model.element_from_key(key)
            self.elements[key] = el
        return el

    def geodesic_word(self, key: bytes) -> list[str]:
        """Generator labels of one geodesic from the identity, following
        the BFS parent links."""
        if not self.parents and self.dist.get(key, 0) > 0:
            raise CacheError("ball was loaded from cache and has no parent links")
        names = self.model.generator_names()
        out: list[str] = []
        while self.dist[key] > 0:
            key, gen_idx = self.parents[key]
            out.append(names[gen_idx])
        out.reverse()
        return out


def build_ball(model, radius: int, cap: int = DEFAULT_CAP) -> BallIndex:
    """BFS the ball of the given radius around the identity."""
    ball = BallIndex(model, radius)
    ident = model.identity()
    k0 = model.key(ident)
    ball.dist[k0] = 0
    ball.elements[k0] = ident
    ball.spheres.append([k0])
    ngens = len(model.generator_names())
    for d in range(radius):
        nxt: list[bytes] = []
        for key in ball.spheres[d]:
            el = ball.elements[key]
            for i in range(ngens):
                nb = model.apply_gen(el, i)
                nk = model.key(nb)
                if nk in ball.dist:
                    continue
                ball.dist[nk] = d + 1
                ball.elements[nk] = nb
                ball.parents[nk] = (key, i)
                nxt.append(nk)
                if len(ball.dist) > cap:
                    raise BallCapError(
                        f"ball of {model.name} exceeded cap {cap} at radius {d + 1}")
        nxt.sort()
        ball.spheres.append(nxt)
    return ball


def distance(ball: BallIndex, el) -> Optional[int]:
    """Distance of an element from the identity, None outside the ball."""
    return ball.dist.get(ball.model.key(el))


def bridge_length(ball: BallIndex, src, dst, forbid_identity: bool = False) -> Optional[int]:
    """Shortest path length from src to dst staying inside the ball
    (optionally avoiding the identity as an interior vertex), or None."""
    model = ball.model
    ks, kd = model.key(src), model.key(dst)
    if ks not in ball.dist or kd not in ball.dist:
        raise ValueError("bridge endpoints must lie inside the ball")
    if ks == kd:
        return 0
    ident_key = model.key(model.identity())
    ngens = len(model.generator_names())
    seen = {ks}
    queue = deque([(src, 0)])
    while queue:
        el, d = queue.popleft()
        for i in range(ngens):
            nb = model.apply_gen(el, i)
            nk = model.key(nb)
            if nk == kd:
                return d + 1
            if nk in seen or nk not in ball.dist:
                continue
            if forbid_identity and nk == ident_key:
                continue
            seen.add(nk)
            queue.append((nb, d + 1))
    return None


def save_ball(ball: BallIndex, path: str) -> None:
    """Dump distances as NDJSON: one header line, then one line per element
    in BFS sphere order."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(json.dumps({"fmt": CACHE_FORMAT, "group": ball.model.name,
                             "r": ball.radius}) + "\n")
        for sphere in ball.spheres:
            for key in sphere:
                fh.write(json.dumps({"k": key.decode("ascii"),
                                     "d": ball.dist[key]}) + "\n")


def load_ball(path: str, model) -> BallIndex:
    """Rebuild a distance-only BallIndex from an NDJSON cache."""
    try:
        fh = open(path, "r", encoding="ascii")
    except OSError as exc:
        raise CacheError(f"cannot open ball cache {path}: {exc}") from exc
    with fh:
        try:
            header = json.loads(fh.readline())
        except json.JSONDecodeError as exc:
            raise CacheError(f"bad ball cache header in {path}") from exc
        if header.get("fmt") != CACHE_FORMAT:
            raise CacheError(f"unknown cache format {header.get('fmt')!r}")
        if header.get("group") != model.name:
            raise CacheError(
                f"cache is for group {header.get('group')!r}, not {model.name!r}")
        radius = header.get("r")
        if not isinstance(radius, int) or radius < 0:
            raise CacheError("cache header has no usable radius")
        ball = BallIndex(model, radius)
        ball.spheres = [[] for _ in range(radius + 1)]
        for line in fh:
            if not line.strip():
                continue
            try:
                row = json.loads(line)
                key = row["k"].encode("ascii")
                d = row["d"]
            except (json.JSONDecodeError, KeyError, AttributeError) as exc:
                raise CacheError(f"bad ball cache row in {path}") from exc
            if not 0 <= d <= radius:
                raise CacheError(f"cache row distance {d} outside radius {radius}")
            ball.dist[key] = d
            ball.spheres[d].append(key)
    for sphere in ball.spheres:
        sphere.sort()
    return ball


def geodesic_words(ball: BallIndex, keys: Iterable[bytes]) -> dict[bytes, list[str]]:
    """Geodesic generator-label words for a batch of ball keys."""
    return {k: ball.geodesic_word(k) for k in keys}
