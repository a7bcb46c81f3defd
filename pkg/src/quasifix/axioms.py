"""Exhaustive window checkers for distance axioms.

Every checker quantifies over a finite window and returns an `AxiomReport`
whose verdict is ``"holds_on_window"`` or ``"fails"``.  Witnesses are the
lexicographically smallest violating tuples in window order, and extremal
values are exact rationals, so reports are reproducible bit-for-bit across
worker counts: scans may be partitioned over a thread pool, and partial
results merge by taking the smallest witness / exact extremum in chunk order.

Checked axioms, by id:

* ``nonnegativity``      d(x, y) >= 0
* ``separation``         d(x, y) + d(y, x) = 0 exactly when x = y
* ``symmetry``           d(x, y) = d(y, x)
* ``triangle``           d(x, z) <= d(x, y) + d(y, z), all ordered triples
* ``relaxed_triangle``   the same bound scaled by a, gated to short pairs
* ``n_distance``         per-point merge bound: d(x,y), d(y,z) <= delta
                         forces d(x, z) <= epsilon, for a grid delta
* ``f_distance``         the uniform (point-independent) variant
* ``h_distance``         min over z of d(x, z) + d(y, z) for a fixed pair
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import DistanceSpace, Point, Window, distance_rows, scalar_to_text

HOLDS = "holds_on_window"
FAILS = "fails"

DEFAULT_DELTA_GRID: tuple[Fraction, ...] = tuple(
    Fraction(1, 2**k) for k in range(1, 25)
)


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    verdict: str
    space: str
    window: str
    checked: int
    witness: tuple[Point, ...] | None = None
    witness_values: tuple[Fraction, ...] | None = None
    extremal: Fraction | None = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "space": self.space,
            "window": self.window,
            "checked": self.checked,
            "witness": None
            if self.witness is None
            else [p.label() for p in self.witness],
            "witness_values": None
            if self.witness_values is None
            else [scalar_to_text(v) for v in self.witness_values],
            "extremal": None if self.extremal is None else scalar_to_text(self.extremal),
            "note": self.note,
        }


# ---------------------------------------------------------------------------
# scan plumbing


def _ranges(n: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, n)) if n else 1
    base, extra = divmod(n, workers)
    ranges = []
    lo = 0
    for i in range(workers):
        hi = lo + base + (1 if i < extra else 0)
        if hi > lo:
            ranges.append((lo, hi))
        lo = hi
    return ranges or [(0, 0)]


def _run_chunks(jobs, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(job) for job in jobs]
        return [future.result() for future in futures]


def _better_ratio(num: Fraction, den: Fraction, best: tuple | None) -> bool:
    # compares num/den > best without building a Fraction per candidate
    if best is None:
        return True
    return (
        num.numerator * den.denominator * best[1].numerator * best[0].denominator
        > best[0].numerator * best[1].denominator * den.numerator * num.denominator
    )


# ---------------------------------------------------------------------------
# core axioms (i_m), (ii_m), (iii_m)


def check_core_axioms(
    space: DistanceSpace, window: Window, workers: int = 1
) -> tuple[AxiomReport, AxiomReport, AxiomReport]:
    """Reports for nonnegativity, separation, and symmetry, in that order."""
    rows = distance_rows(space, window)
    pts = window.points
    n = len(pts)

    def job(lo: int, hi: int):
        neg = None  # first (i, j) with d < 0
        min_d = None
        sep = None  # first separation violation, as an index tuple
        min_sum = None  # smallest d(x,y)+d(y,x) over distinct pairs
        asym = None  # first (i, j), i < j, with d(x,y) != d(y,x)
        max_gap = Fraction(0)  # largest |d(x,y) - d(y,x)|
        for i in range(lo, hi):
            row = rows[i]
            if row[i] != 0 and sep is None:
                sep = (i, i)
            for j in range(n):
                d = row[j]
                if d < 0 and neg is None:
                    neg = (i, j)
                if min_d is None or d < min_d:
                    min_d = d
                if j > i:
                    back = rows[j][i]
                    total = d + back
                    if total == 0 and sep is None:
                        sep = (i, j)
                    if min_sum is None or total < min_sum:
                        min_sum = total
                    gap = d - back if d >= back else back - d
                    if gap > max_gap:
                        max_gap = gap
                    if gap != 0 and asym is None:
                        asym = (i, j)
        return neg, min_d, sep, min_sum, asym, max_gap

    results = _run_chunks(
        [lambda lo=lo, hi=hi: job(lo, hi) for lo, hi in _ranges(n, workers)], workers
    )

    neg = min((r[0] for r in results if r[0] is not None), default=None)
    min_d = min((r[1] for r in results if r[1] is not None), default=None)
    sep = min((r[2] for r in results if r[2] is not None), default=None)
    min_sum = min((r[3] for r in results if r[3] is not None), default=None)
    asym = min((r[4] for r in results if r[4] is not None), default=None)
    max_gap = max((r[5] for r in results), default=Fraction(0))

    def pair_report(axiom, violation, extremal, values_of):
        if violation is None:
            return AxiomReport(
                axiom, HOLDS, space.name, window.description, n * n, extremal=extremal
            )
        i, j = violation
        return AxiomReport(
            axiom,
            FAILS,
            space.name,
            window.description,
            n * n,
            witness=(pts[i], pts[j]),
            witness_values=values_of(i, j),
            extremal=extremal,
        )

    nonneg = pair_report(
        "nonnegativity", neg, min_d, lambda i, j: (rows[i][j],)
    )
    separation = pair_report(
        "separation", sep, min_sum, lambda i, j: (rows[i][j], rows[j][i])
    )
    symmetry = pair_report(
        "symmetry", asym, max_gap, lambda i, j: (rows[i][j], rows[j][i])
    )
    return nonneg, separation, symmetry


# ---------------------------------------------------------------------------
# triangle and its relaxation


@lru_cache(maxsize=None)
def check_triangle(
    space: DistanceSpace, window: Window, workers: int = 1
) -> AxiomReport:
    """d(x, z) <= d(x, y) + d(y, z) over all ordered triples, repeats included.

    The extremal is the worst ratio d(x, z) / (d(x, y) + d(y, z)) over triples
    with a positive right-hand side — an empirical relaxation constant.
    Cached: reports are frozen and scans are deterministic, so repeat calls
    with identical arguments reuse the first result.
    """
    rows = distance_rows(space, window)
    pts = window.points
    n = len(pts)

    def job(lo: int, hi: int):
        vio = None
        best = None  # (num, den) of the max ratio
        for i in range(lo, hi):
            row_i = rows[i]
            for j in range(n):
                dij = row_i[j]
                row_j = rows[j]
                for k in range(n):
                    s = dij + row_j[k]
                    dik = row_i[k]
                    if dik > s and vio is None:
                        vio = (i, j, k)
                    if dik > 0 and s > 0 and _better_ratio(dik, s, best):
                        best = (dik, s)
        return vio, best

    results = _run_chunks(
        [lambda lo=lo, hi=hi: job(lo, hi) for lo, hi in _ranges(n, workers)], workers
    )
    vio = min((r[0] for r in results if r[0] is not None), default=None)
    best = None
    for _, candidate in results:
        if candidate is not None and _better_ratio(candidate[0], candidate[1], best):
            best = candidate
    extremal = None if best is None else best[0] / best[1]
    if vio is None:
        return AxiomReport(
            "triangle", HOLDS, space.name, window.description, n**3, extremal=extremal
        )
    i, j, k = vio
    return AxiomReport(
        "triangle",
        FAILS,
        space.name,
        window.description,
        n**3,
        witness=(pts[i], pts[j], pts[k]),
        witness_values=(rows[i][j], rows[j][k], rows[i][k]),
        extremal=extremal,
    )


@lru_cache(maxsize=None)
def check_relaxed_triangle(
    space: DistanceSpace,
    window: Window,
    a: Fraction,
    delta: Fraction,
    workers: int = 1,
) -> AxiomReport:
    """d(x, z) <= a * (d(x, y) + d(y, z)) for triples gated by
    d(x, y) <= delta and d(y, z) <= delta."""
    if a < 1:
        raise ValueError("relaxation constant a must be >= 1")
    if delta <= 0:
        raise ValueError("delta must be positive")
    rows = distance_rows(space, window)
    pts = window.points
    n = len(pts)

    def job(lo: int, hi: int):
        vio = None
        best = None
        gated = 0
        for i in range(lo, hi):
            row_i = rows[i]
            for j in range(n):
                dij = row_i[j]
                if dij > delta:
                    continue
                row_j = rows[j]
                for k in range(n):
                    djk = row_j[k]
                    if djk > delta:
                        continue
                    gated += 1
                    s = dij + djk
                    dik = row_i[k]
                    if dik > a * s and vio is None:
                        vio = (i, j, k)
                    if dik > 0 and s > 0 and _better_ratio(dik, s, best):
                        best = (dik, s)
        return vio, best, gated

    results = _run_chunks(
        [lambda lo=lo, hi=hi: job(lo, hi) for lo, hi in _ranges(n, workers)], workers
    )
    vio = min((r[0] for r in results if r[0] is not None), default=None)
    best = None
    for _, candidate, _count in results:
        if candidate is not None and _better_ratio(candidate[0], candidate[1], best):
            best = candidate
    gated = sum(r[2] for r in results)
    extremal = None if best is None else best[0] / best[1]
    note = f"a={scalar_to_text(a)} delta={scalar_to_text(delta)} gated={gated}"
    if vio is None:
        return AxiomReport(
            "relaxed_triangle",
            HOLDS,
            space.name,
            window.description,
            n**3,
            extremal=extremal,
            note=note,
        )
    i, j, k = vio
    return AxiomReport(
        "relaxed_triangle",
        FAILS,
        space.name,
        window.description,
        n**3,
        witness=(pts[i], pts[j], pts[k]),
        witness_values=(rows[i][j], rows[j][k], rows[i][k]),
        extremal=extremal,
        note=note,
    )


# ---------------------------------------------------------------------------
# merge-bound families


@lru_cache(maxsize=None)
def check_N(
    space: DistanceSpace,
    window: Window,
    probe: Point,
    epsilon: Fraction,
    delta_grid: tuple[Fraction, ...] | None = None,
    workers: int = 1,
) -> AxiomReport:
    """Largest grid delta making short hops through ``probe`` stay inside
    epsilon: d(probe, y) <= delta and d(y, z) <= delta force
    d(probe, z) <= epsilon.

    Working deltas are downward closed, so the grid is scanned from the top
    and the first success is the answer.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    grid = _prepare_grid(delta_grid)
    rows = distance_rows(space, window)
    p = window.index_of(probe)
    n = len(window.points)
    row_p = rows[p]
    checked = 0
    last_vio = None
    for delta in grid:
        vio = None
        for y in range(n):
            if row_p[y] > delta:
                continue
            row_y = rows[y]
            for z in range(n):
                checked += 1
                if row_y[z] <= delta and row_p[z] > epsilon:
                    vio = (y, z)
                    break
            if vio is not None:
                break
        if vio is None:
            return AxiomReport(
                "n_distance",
                HOLDS,
                space.name,
                window.description,
                checked,
                extremal=delta,
                note=f"probe={probe.label()} epsilon={scalar_to_text(epsilon)}",
            )
        last_vio = vio
    y, z = last_vio  # type: ignore[misc]
    return AxiomReport(
        "n_distance",
        FAILS,
        space.name,
        window.description,
        checked,
        witness=(window.points[y], window.points[z]),
        witness_values=(row_p[y], rows[y][z], row_p[z]),
        note=(
            f"probe={probe.label()} epsilon={scalar_to_text(epsilon)}"
            f" smallest_delta={scalar_to_text(grid[-1])}"
        ),
    )


def check_F(
    space: DistanceSpace,
    window: Window,
    epsilon: Fraction,
    delta_grid: tuple[Fraction, ...] | None = None,
    workers: int = 1,
) -> AxiomReport:
    """Uniform variant of check_N: one grid delta must work for every x."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    grid = _prepare_grid(delta_grid)
    rows = distance_rows(space, window)
    pts = window.points
    n = len(pts)
    checked = 0
    last_vio = None
    for delta in grid:

        def job(lo: int, hi: int, delta=delta):
            count = 0
            for x in range(lo, hi):
                row_x = rows[x]
                for y in range(n):
                    if row_x[y] > delta:
                        continue
                    row_y = rows[y]
                    for z in range(n):
                        count += 1
                        if row_y[z] <= delta and row_x[z] > epsilon:
                            return (x, y, z), count
            return None, count

        results = _run_chunks(
            [lambda lo=lo, hi=hi: job(lo, hi) for lo, hi in _ranges(n, workers)],
            workers,
        )
        checked += sum(r[1] for r in results)
        vio = min((r[0] for r in results if r[0] is not None), default=None)
        if vio is None:
            return AxiomReport(
                "f_distance",
                HOLDS,
                space.name,
                window.description,
                checked,
                extremal=delta,
                note=f"epsilon={scalar_to_text(epsilon)}",
            )
        last_vio = vio
    x, y, z = last_vio  # type: ignore[misc]
    return AxiomReport(
        "f_distance",
        FAILS,
        space.name,
        window.description,
        checked,
        witness=(pts[x], pts[y], pts[z]),
        witness_values=(rows[x][y], rows[y][z], rows[x][z]),
        note=(
            f"epsilon={scalar_to_text(epsilon)}"
            f" smallest_delta={scalar_to_text(grid[-1])}"
        ),
    )


def check_H(
    space: DistanceSpace, window: Window, x: Point, y: Point, workers: int = 1
) -> AxiomReport:
    """Smallest joint approach min over z of d(x, z) + d(y, z) for x != y.

    A positive extremal certifies disjoint balls around x and y on this
    window; the interesting evidence is how the extremal behaves as the
    window grows (gallery instances attach analytic refutation sequences).
    """
    if x == y:
        raise ValueError("check_H needs two distinct points")
    rows = distance_rows(space, window)
    ix = window.index_of(x)
    iy = window.index_of(y)
    row_x = rows[ix]
    row_y = rows[iy]
    n = len(window.points)
    best = None
    witness = 0
    for z in range(n):
        total = row_x[z] + row_y[z]
        if best is None or total < best:
            best = total
            witness = z
    verdict = HOLDS if best is not None and best > 0 else FAILS
    return AxiomReport(
        "h_distance",
        verdict,
        space.name,
        window.description,
        n,
        witness=(window.points[witness],),
        witness_values=(row_x[witness], row_y[witness]),
        extremal=best,
        note=f"pair=({x.label()},{y.label()})",
    )


def _prepare_grid(grid: tuple[Fraction, ...] | None) -> tuple[Fraction, ...]:
    if grid is None:
        return DEFAULT_DELTA_GRID
    if not grid:
        raise ValueError("delta grid must be non-empty")
    prepared = tuple(sorted(set(grid), reverse=True))
    if prepared[-1] <= 0:
        raise ValueError("delta grid values must be positive")
    return prepared
