"""Chain-infimum closure and symmetrization of window distance matrices.

The closure of a distance over a window replaces each entry d(x, y) with the
cheapest total length of a finite chain x = z0, z1, ..., zk = y through
window points.  On a finite window that is exactly the all-pairs shortest
path problem, solved here by Floyd-Warshall with exact rational arithmetic.

Key facts the tests pin down:

* closure <= pointwise original, with equality iff the triangle inequality
  already holds on the window;
* the closure satisfies the directed triangle inequality itself and is a
  fixed point of the closure operator;
* growing the window can only shrink entries (more chains to take an
  infimum over).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .axioms import _ranges
from .core import DistanceSpace, Domain, Point, Window, distance_rows, scalar_to_text


@dataclass(frozen=True)
class DistanceMatrix:
    """An exact window snapshot of a distance, row-major in window order."""

    space_name: str
    window: Window
    entries: tuple[tuple[Fraction, ...], ...]

    def entry(self, x: Point, y: Point) -> Fraction:
        return self.entries[self.window.index_of(x)][self.window.index_of(y)]

    def to_json_dict(self) -> dict:
        return {
            "schema": "distance-matrix/1",
            "space": self.space_name,
            "window": self.window.description,
            "points": list(self.window.labels()),
            "matrix": [[scalar_to_text(v) for v in row] for row in self.entries],
        }


def distance_matrix(space: DistanceSpace, window: Window) -> DistanceMatrix:
    return DistanceMatrix(space.name, window, distance_rows(space, window))


def associated_functional(
    space: DistanceSpace, window: Window, workers: int = 1
) -> DistanceMatrix:
    """Chain-infimum closure of ``space`` restricted to ``window``.

    Floyd-Warshall over exact rationals; ``workers`` may split each relax
    round by rows.  Runs are deterministic regardless of the split: every
    round k reads only column/row k of the previous state, so row chunks
    never race, and min() over exact values has a unique result.
    """
    n = len(window.points)
    dist = [list(row) for row in distance_rows(space, window)]

    def relax(lo: int, hi: int, k: int) -> None:
        row_k = dist[k]
        for i in range(lo, hi):
            row_i = dist[i]
            dik = row_i[k]
            if dik == 0 and i != k:
                # chains through k at zero cost: min with row_k directly
                for j in range(n):
                    if row_k[j] < row_i[j]:
                        row_i[j] = row_k[j]
                continue
            for j in range(n):
                candidate = dik + row_k[j]
                if candidate < row_i[j]:
                    row_i[j] = candidate

    if workers <= 1 or n < 2:
        for k in range(n):
            relax(0, n, k)
    else:
        chunks = _ranges(n, workers)
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            for k in range(n):
                # row k only shrinks via a nonnegative self loop, i.e. never,
                # so concurrent readers of row_k during round k are safe
                list(pool.map(lambda c, k=k: relax(c[0], c[1], k), chunks))
    return DistanceMatrix(
        f"barrho({space.name})", window, tuple(tuple(row) for row in dist)
    )


def symmetrize(space: DistanceSpace, name: str | None = None) -> DistanceSpace:
    """The two-way round trip distance d(x, y) + d(y, x).

    Zero round trips pick out equal points, so the result is symmetric and
    separating but may keep d(x, x) > 0 semantics out of scope: with the
    separation axiom on ``space`` the diagonal stays zero.
    """
    inner = space.distance

    def dist(x: Point, y: Point) -> Fraction:
        return inner(x, y) + inner(y, x)

    return DistanceSpace(
        name=name if name is not None else f"sym({space.name})",
        domain=space.domain,
        dist=dist,
        completeness=space.completeness,
    )


def matrix_space(matrix: DistanceMatrix, name: str | None = None) -> DistanceSpace:
    """Wrap a window matrix back into a finite DistanceSpace.

    Useful for round trips: run the closure, wrap it, and hand it back to
    the axiom checkers.
    """
    points = matrix.window.points
    domain = Domain(kind="finite", members=points)
    index = {p: i for i, p in enumerate(points)}
    entries = matrix.entries

    def dist(x: Point, y: Point) -> Fraction:
        return entries[index[x]][index[y]]

    return DistanceSpace(
        name=name if name is not None else matrix.space_name,
        domain=domain,
        dist=dist,
    )
