"""Independent brute-force oracles.

Everything here is written the dumbest defensible way — direct sums,
full enumeration via itertools — so the package's cleverer scans have
something honest to disagree with.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from quasifix import DistanceSpace, Window


def chain_infimum(
    space: DistanceSpace, window: Window, max_intermediates: int
) -> dict[tuple[int, int], Fraction]:
    """Cheapest chain cost between every ordered window pair, minimizing
    over every chain with at most ``max_intermediates`` interior points
    (repetition allowed), enumerated outright."""
    pts = window.points
    n = len(pts)
    best: dict[tuple[int, int], Fraction] = {}
    for i in range(n):
        for j in range(n):
            cheapest = None
            for length in range(max_intermediates + 1):
                for mids in itertools.product(range(n), repeat=length):
                    route = (i, *mids, j)
                    cost = sum(
                        (
                            space.distance(pts[a], pts[b])
                            for a, b in zip(route, route[1:])
                        ),
                        Fraction(0),
                    )
                    if cheapest is None or cost < cheapest:
                        cheapest = cost
            best[(i, j)] = cheapest
    return best


def greedy_interval_scan(count: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Re-derive the interval anchors by stepwise harmonic accumulation.

    From each left anchor i, the midpoint k is the first index strictly
    past a unit harmonic run (the run i..k-1 reaches 1, the run i..k-2
    does not); the next left anchor is the first index closing a unit
    run that starts just past k (the run k+1..nxt reaches 1)."""

    def first_reaching_one(lo: int) -> int:
        total = Fraction(0)
        j = lo
        while True:
            total += Fraction(1, j)
            if total >= 1:
                return j
            j += 1

    starts = [1]
    mids = []
    for _ in range(count):
        k = first_reaching_one(starts[-1]) + 1
        mids.append(k)
        starts.append(first_reaching_one(k + 1))
    return tuple(starts), tuple(mids)


def max_stretch(space: DistanceSpace, window: Window, apply) -> Fraction:
    """Worst ratio d(apply x, apply y) / d(x, y) by plain Fraction
    division over every window pair at positive distance."""
    worst = None
    for x in window.points:
        for y in window.points:
            den = space.distance(x, y)
            if den == 0:
                continue
            num = space.distance(apply(x), apply(y))
            ratio = num / den
            if worst is None or ratio > worst:
                worst = ratio
    if worst is None:
        raise ValueError("window has no pair at positive distance")
    return worst


def joint_floor(space: DistanceSpace, window: Window, x, y) -> Fraction:
    """min over window z of d(x, z) + d(y, z), by direct scan."""
    return min(space.distance(x, z) + space.distance(y, z) for z in window.points)


def first_triangle_violation(space: DistanceSpace, window: Window):
    """First ordered triple (in window order) with d(x,z) > d(x,y) + d(y,z)."""
    pts = window.points
    for x in pts:
        for y in pts:
            for z in pts:
                if space.distance(x, z) > space.distance(x, y) + space.distance(y, z):
                    return (x, y, z)
    return None
