"""Empirical almost-convexity scans over Cayley balls.

For each radius r the scan enumerates unordered pairs x, y on the sphere
S(r) at group distance <= 2 (reached by a product of at most two
generators) and measures the shortest connecting path that stays inside
B(r).  fmax(r) is the worst such detour; the group is minimally almost
convex at r when fmax <= 2r - 1 and M'-convex when fmax <= 2r - 2.  A path
through the identity always exists, so fmax <= 2r is asserted as a hard
sanity bound.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass

from .ball_engine import DEFAULT_CAP, BallIndex, build_ball


@dataclass(frozen=True)
class ScanRow:
    """Scan outcome at one radius.  Witnesses are the ascii keys of the
    lexicographically smallest pair realizing fmax (empty when no pairs)."""

    r: int
    fmax: int
    pairs: int
    witness_x: str
    witness_y: str

    @property
    def mac(self) -> bool:
        return self.pairs == 0 or self.fmax <= 2 * self.r - 1

    @property
    def mprime(self) -> bool:
        return self.pairs == 0 or self.fmax <= 2 * self.r - 2


@dataclass(frozen=True)
class ScanReport:
    group: str
    r_min: int
    r_max: int
    rows: tuple[ScanRow, ...]

    def r0(self, flag: str = "mprime"):
        """Least radius from which the flag holds through r_max, or None."""
        best = None
        for row in reversed(self.rows):
            if getattr(row, flag):
                best = row.r
            else:
                break
        return best

    def row(self, r: int) -> ScanRow:
        for candidate in self.rows:
            if candidate.r == r:
                return candidate
        raise KeyError(r)


def scan(model, r_min: int, r_max: int, cap: int = DEFAULT_CAP,
         ball: BallIndex | None = None) -> ScanReport:
    """Scan radii r_min..r_max in one ball build."""
    if r_min < 1 or r_max < r_min:
        raise ValueError("need 1 <= r_min <= r_max")
    if ball is None:
        ball = build_ball(model, r_max, cap)
    if ball.radius < r_max:
        raise ValueError("prebuilt ball is smaller than r_max")

    keys = [k for sphere in ball.spheres for k in sphere]
    idx = {k: i for i, k in enumerate(keys)}
    dist = [ball.dist[k] for k in keys]
    ngens = len(model.generator_names())
    adj: list[list[int]] = []
    for k in keys:
        el = ball.element(k)
        row = []
        for i in range(ngens):
            j = idx.get(model.key(model.apply_gen(el, i)))
            if j is not None:
                row.append(j)
        adj.append(row)

    products = [(i,) for i in range(ngens)]
    products += [(i, j) for i in range(ngens) for j in range(ngens)]

    visited = [0] * len(keys)
    stamp = 0
    rows = []
    for r in range(r_min, r_max + 1):
        roster = ball.spheres[r] if r < len(ball.spheres) else []
        fmax = 0
        npairs = 0
        witness: tuple[bytes, bytes] | None = None
        for xk in roster:
            x = idx[xk]
            el = ball.element(xk)
            targets: dict[int, bytes] = {}
            for prod in products:
                y = el
                for i in prod:
                    y = model.apply_gen(y, i)
                yk = model.key(y)
                if yk <= xk:
                    continue
                j = idx.get(yk)
                if j is not None and dist[j] == r:
                    targets[j] = yk
            if not targets:
                continue
            npairs += len(targets)
            stamp += 1
            visited[x] = stamp
            frontier = [x]
            todo = set(targets)
            depth = 0
            while todo:
                depth += 1
                assert depth <= 2 * r, "in-ball detour exceeded 2r"
                nxt = []
                for v in frontier:
                    for w in adj[v]:
                        if visited[w] == stamp or dist[w] > r:
                            continue
                        visited[w] = stamp
                        nxt.append(w)
                        if w in todo:
                            todo.discard(w)
                            pair = (xk, targets[w])
                            if depth > fmax or (depth == fmax and
                                                witness is not None and pair < witness):
                                fmax = depth
                                witness = pair
                if not nxt and todo:
                    raise AssertionError("sphere pair disconnected inside the ball")
                frontier = nxt
        rows.append(ScanRow(
            r, fmax, npairs,
            witness[0].decode("ascii") if witness else "",
            witness[1].decode("ascii") if witness else ""))
    return ScanReport(model.name, r_min, r_max, tuple(rows))


def write_csv(report: ScanReport, path: str) -> None:
    """One CSV row per radius that produced pairs."""
    with open(path, "w", newline="", encoding="ascii") as fh:
        out = csv.writer(fh)
        out.writerow(["r", "fmax", "pairs", "mac", "mprime", "witness_x", "witness_y"])
        for row in report.rows:
            if row.pairs == 0:
                continue
            out.writerow([row.r, row.fmax, row.pairs,
                          str(row.mac).lower(), str(row.mprime).lower(),
                          row.witness_x, row.witness_y])


@dataclass(frozen=True)
class ProbeResult:
    slope: float
    intercept: float
    points: int


def sublinearity_probe(report: ScanReport) -> ProbeResult:
    """Least-squares slope of fmax against r over the radii with pairs.
    Needs at least three datapoints to mean anything."""
    xs = [row.r for row in report.rows if row.pairs > 0]
    ys = [float(row.fmax) for row in report.rows if row.pairs > 0]
    if len(xs) < 3:
        raise ValueError("sublinearity probe needs at least 3 radii with pairs")
    slope, intercept = statistics.linear_regression([float(x) for x in xs], ys)
    return ProbeResult(slope, intercept, len(xs))
