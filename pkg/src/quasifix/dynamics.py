"""Picard orbits, convergence verdicts, and the fixed-point theorem harness.

The harness evaluates six classical statements about contractive self-maps
on generalized distance spaces.  Each statement is broken into named
hypothesis and conclusion verdicts, every verdict carries replayable
evidence, and a report is flagged ``counterexample`` only when every
hypothesis holds (or is assumed, e.g. completeness metadata) while some
conclusion fails on the window.  Gallery instances are tuned so the flag
never fires: the negative instances always break exactly the hypothesis
they were built to break.

Convergence notions, all finite proxies with exact arithmetic:

* plain limit of an orbit: a window point y with d(y, x_n) <= tol on the
  whole tail (deliberately one-directional; several points may qualify);
* dislocated limit: the same under the round trip d(y, x_n) + d(x_n, y),
  at its own tolerance (default exactly 0: the orbit must arrive);
* ladder accumulation: past every configured cut, the orbit dips within
  tol of the point at least once;
* recurrent points (harness evidence): the orbit either dips-escapes-dips
  again (two separated visits) or rides within tol through the end of
  both the half and the full horizon.  This is stricter than the ladder,
  which admits one-visit artifacts on slowly drifting orbits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .axioms import (
    AxiomReport,
    DEFAULT_DELTA_GRID,
    _ranges,
    _run_chunks,
    check_H,
    check_N,
    check_relaxed_triangle,
    check_triangle,
)
from .core import (
    DistanceSpace,
    DomainError,
    Point,
    Window,
    distance_rows,
    scalar_to_text,
)

DEFAULT_TOL = Fraction(1, 2**20)
DEFAULT_HORIZON = 64
DEFAULT_MAX_PERIOD = 8

HOLDS = "holds"
FAILS = "fails"
ASSUMED = "assumed"
SKIPPED = "skipped"


@dataclass(frozen=True)
class SelfMap:
    name: str
    apply: Callable[[Point], Point] = field(repr=False)


@dataclass(frozen=True)
class OrbitTrace:
    space_name: str
    map_name: str
    start: Point
    points: tuple[Point, ...]
    gaps: tuple[Fraction, ...]

    @property
    def horizon(self) -> int:
        return len(self.points) - 1

    def to_json_dict(self) -> dict:
        return {
            "schema": "orbit-trace/1",
            "space": self.space_name,
            "map": self.map_name,
            "start": self.start.label(),
            "horizon": self.horizon,
            "points": [p.label() for p in self.points],
            "gaps": [scalar_to_text(g) for g in self.gaps],
        }


@lru_cache(maxsize=None)
def picard_orbit(
    space: DistanceSpace, self_map: SelfMap, start: Point, horizon: int
) -> OrbitTrace:
    """Iterate ``self_map`` from ``start`` for ``horizon`` steps, recording
    each consecutive gap d(x_n, x_{n+1}) exactly.

    Cached (as are the other scans in this module): traces are frozen and
    the iteration is deterministic, so repeated calls share one result.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if not space.domain.contains(start):
        raise DomainError(f"start {start.label()} is not in the domain")
    points = [start]
    gaps = []
    current = start
    for step in range(horizon):
        nxt = self_map.apply(current)
        if not space.domain.contains(nxt):
            raise DomainError(
                f"map {self_map.name} leaves the domain at step {step + 1}: "
                f"{current.label()} -> {nxt.label()}"
            )
        gaps.append(space.distance(current, nxt))
        points.append(nxt)
        current = nxt
    return OrbitTrace(space.name, self_map.name, start, tuple(points), tuple(gaps))


# ---------------------------------------------------------------------------
# convergence


@dataclass(frozen=True)
class ConvergenceVerdict:
    space_name: str
    start: Point
    cauchy: bool
    cauchy_extremal: Fraction
    limits: tuple[Point, ...]
    dislocated_limits: tuple[Point, ...]
    accumulation: tuple[Point, ...]
    gaps_vanish: bool
    max_tail_gap: Fraction
    tol: Fraction
    dislocated_tol: Fraction
    tail: int
    ladder: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "schema": "orbit-analysis/1",
            "space": self.space_name,
            "start": self.start.label(),
            "cauchy": self.cauchy,
            "cauchy_extremal": scalar_to_text(self.cauchy_extremal),
            "limits": [p.label() for p in self.limits],
            "dislocated_limits": [p.label() for p in self.dislocated_limits],
            "accumulation": [p.label() for p in self.accumulation],
            "gaps_vanish": self.gaps_vanish,
            "max_tail_gap": scalar_to_text(self.max_tail_gap),
            "tol": scalar_to_text(self.tol),
            "dislocated_tol": scalar_to_text(self.dislocated_tol),
            "tail": self.tail,
            "ladder": list(self.ladder),
        }


def _window_lookup(space: DistanceSpace, window: Window):
    rows = distance_rows(space, window)
    index = {p: i for i, p in enumerate(window.points)}

    def dist(x: Point, y: Point) -> Fraction:
        i = index.get(x)
        j = index.get(y)
        if i is not None and j is not None:
            return rows[i][j]
        return space.distance(x, y)

    return dist


@lru_cache(maxsize=None)
def analyze_convergence(
    space: DistanceSpace,
    trace: OrbitTrace,
    window: Window,
    *,
    tol: Fraction = DEFAULT_TOL,
    tail: int | None = None,
    dislocated_tol: Fraction = Fraction(0),
    ladder: tuple[int, ...] | None = None,
) -> ConvergenceVerdict:
    """Classify an orbit against a finite window of candidate points.

    ``tail`` is the number of trailing orbit points inspected for the
    Cauchy/limit verdicts (default: half the horizon); ``ladder`` is the
    tuple of prefix cuts used for the accumulation proxy (default:
    quartiles of the horizon).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if dislocated_tol < 0:
        raise ValueError("dislocated_tol must be >= 0")
    horizon = trace.horizon
    if tail is None:
        tail = max(1, horizon // 2)
    if not 1 <= tail <= horizon:
        raise ValueError(f"tail must be in 1..{horizon}, got {tail}")
    if ladder is None:
        ladder = tuple(sorted({0, horizon // 4, horizon // 2, (3 * horizon) // 4}))
    elif not ladder or any(not 0 <= cut <= horizon for cut in ladder):
        raise ValueError("ladder cuts must lie within the horizon")

    dist = _window_lookup(space, window)
    pts = trace.points
    tail_pts = pts[len(pts) - tail :]

    cauchy_extremal = Fraction(0)
    for i, x in enumerate(tail_pts):
        for j, y in enumerate(tail_pts):
            if i != j:
                d = dist(x, y)
                if d > cauchy_extremal:
                    cauchy_extremal = d

    limits = []
    dislocated = []
    accumulation = []
    for y in window.points:
        to_tail = [dist(y, x) for x in tail_pts]
        if max(to_tail) <= tol:
            limits.append(y)
        if max(a + dist(x, y) for a, x in zip(to_tail, tail_pts)) <= dislocated_tol:
            dislocated.append(y)
        dips = [n for n, x in enumerate(pts) if dist(y, x) <= tol]
        if dips and all(any(n >= cut for n in dips) for cut in ladder):
            accumulation.append(y)

    max_tail_gap = max(trace.gaps[horizon - tail :], default=Fraction(0))
    return ConvergenceVerdict(
        space_name=space.name,
        start=trace.start,
        cauchy=cauchy_extremal <= tol,
        cauchy_extremal=cauchy_extremal,
        limits=tuple(limits),
        dislocated_limits=tuple(dislocated),
        accumulation=tuple(accumulation),
        gaps_vanish=max_tail_gap <= tol,
        max_tail_gap=max_tail_gap,
        tol=tol,
        dislocated_tol=dislocated_tol,
        tail=tail,
        ladder=ladder,
    )


@lru_cache(maxsize=None)
def recurrent_orbit_points(
    space: DistanceSpace, trace: OrbitTrace, window: Window, tol: Fraction
) -> tuple[Point, ...]:
    """Window points the orbit genuinely keeps returning to.

    A candidate qualifies if the orbit makes at least two visits within
    ``tol`` separated by an excursion beyond 2*tol, or if it stays within
    tol through the final step of both the half and the full horizon.
    A single drive-by dip — an orbit marching past a bystander — fails
    both clauses, which is the point: ladder accumulation cannot tell a
    bystander from a genuine cluster point on a drifting orbit.
    """
    dist = _window_lookup(space, window)
    pts = trace.points
    horizon = trace.horizon
    half = horizon // 2
    escape = 2 * tol
    out = []
    for y in window.points:
        clusters = 0
        armed = True
        last_under = None
        last_under_half = None
        for n, x in enumerate(pts):
            d = dist(y, x)
            if d <= tol:
                last_under = n
                if armed:
                    clusters += 1
                    armed = False
            elif d > escape:
                armed = True
            if n == half:
                last_under_half = last_under
        reaches_full = last_under == horizon
        reaches_half = last_under_half == half
        if clusters >= 2 or (reaches_full and reaches_half):
            out.append(y)
    return tuple(out)


# ---------------------------------------------------------------------------
# Lipschitz and fixed points


@dataclass(frozen=True)
class LipschitzReport:
    space_name: str
    map_name: str
    window: str
    value: Fraction
    witness: tuple[Point, Point]
    witness_values: tuple[Fraction, Fraction]
    pairs_checked: int
    skipped: tuple[Point, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "schema": "lipschitz/1",
            "space": self.space_name,
            "map": self.map_name,
            "window": self.window,
            "value": scalar_to_text(self.value),
            "witness": [p.label() for p in self.witness],
            "witness_values": [scalar_to_text(v) for v in self.witness_values],
            "pairs_checked": self.pairs_checked,
            "skipped": [p.label() for p in self.skipped],
        }


@lru_cache(maxsize=None)
def lipschitz_estimate(
    space: DistanceSpace, self_map: SelfMap, window: Window, workers: int = 1
) -> LipschitzReport:
    """Exact max of d(map x, map y) / d(x, y) over ordered window pairs with
    d(x, y) > 0.  Window points whose image leaves the domain are skipped
    and reported; raises ValueError when no pair has positive distance.
    """
    pts = window.points
    n = len(pts)
    if n < 2:
        raise ValueError("window must have at least 2 points")
    rows = distance_rows(space, window)
    index = {p: i for i, p in enumerate(pts)}
    images: list[Point | None] = []
    skipped = []
    for p in pts:
        image = self_map.apply(p)
        if space.domain.contains(image):
            images.append(image)
        else:
            images.append(None)
            skipped.append(p)

    def image_distance(i: int, j: int) -> Fraction:
        a = index.get(images[i])
        b = index.get(images[j])
        if a is not None and b is not None:
            return rows[a][b]
        return space.distance(images[i], images[j])

    def job(lo: int, hi: int):
        best = None  # (num, den, i, j) of the max ratio
        checked = 0
        for i in range(lo, hi):
            if images[i] is None:
                continue
            row = rows[i]
            for j in range(n):
                if j == i or images[j] is None:
                    continue
                den = row[j]
                if den == 0:
                    continue
                checked += 1
                num = image_distance(i, j)
                if best is None or _ratio_beats(num, den, best):
                    best = (num, den, i, j)
        return best, checked

    results = _run_chunks(
        [lambda lo=lo, hi=hi: job(lo, hi) for lo, hi in _ranges(n, workers)], workers
    )
    best = None
    checked = 0
    for candidate, count in results:
        checked += count
        if candidate is not None and (best is None or _ratio_beats(candidate[0], candidate[1], best)):
            best = candidate
    if best is None:
        raise ValueError("no window pair has positive distance")
    num, den, i, j = best
    return LipschitzReport(
        space_name=space.name,
        map_name=self_map.name,
        window=window.description,
        value=num / den,
        witness=(pts[i], pts[j]),
        witness_values=(den, num),
        pairs_checked=checked,
        skipped=tuple(skipped),
    )


def _ratio_beats(num: Fraction, den: Fraction, best) -> bool:
    # strict improvement keeps the earliest maximizing pair as the witness
    return (
        num.numerator * den.denominator * best[1].numerator * best[0].denominator
        > best[0].numerator * best[1].denominator * den.numerator * num.denominator
    )


@dataclass(frozen=True)
class FixedPointReport:
    space_name: str
    map_name: str
    window: str
    fixed: tuple[Point, ...]
    periodic: tuple[tuple[Point, int], ...]
    escaped: tuple[Point, ...]
    max_period: int

    @property
    def periodic_nonfixed(self) -> tuple[Point, ...]:
        fixed = set(self.fixed)
        return tuple(p for p, _period in self.periodic if p not in fixed)

    def to_json_dict(self) -> dict:
        return {
            "schema": "fixed-points/1",
            "space": self.space_name,
            "map": self.map_name,
            "window": self.window,
            "fixed": [p.label() for p in self.fixed],
            "periodic": [[p.label(), period] for p, period in self.periodic],
            "escaped": [p.label() for p in self.escaped],
            "max_period": self.max_period,
        }


@lru_cache(maxsize=None)
def fixed_and_periodic_points(
    space: DistanceSpace,
    self_map: SelfMap,
    window: Window,
    max_period: int = DEFAULT_MAX_PERIOD,
) -> FixedPointReport:
    """Fixed points via a zero round trip d(x, map x) + d(map x, x) = 0
    (exact, so separation makes this equality of points); periodic points
    via structural equality of the p-th iterate, minimal p <= max_period.
    """
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    fixed = []
    periodic = []
    escaped = []
    for p in window.points:
        image = self_map.apply(p)
        if not space.domain.contains(image):
            escaped.append(p)
            continue
        if space.distance(p, image) + space.distance(image, p) == 0:
            fixed.append(p)
        current = image
        for period in range(1, max_period + 1):
            if current == p:
                periodic.append((p, period))
                break
            current = self_map.apply(current)
            if not space.domain.contains(current):
                break
    return FixedPointReport(
        space_name=space.name,
        map_name=self_map.name,
        window=window.description,
        fixed=tuple(fixed),
        periodic=tuple(periodic),
        escaped=tuple(escaped),
        max_period=max_period,
    )


# ---------------------------------------------------------------------------
# theorem harness


@dataclass(frozen=True)
class VerdictEntry:
    name: str
    status: str  # holds | fails | assumed | skipped
    evidence: dict

    def to_json_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "evidence": self.evidence}


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    hypotheses: tuple[VerdictEntry, ...]
    conclusions: tuple[VerdictEntry, ...]
    notes: str = ""

    @property
    def consistency(self) -> str:
        premises_stand = all(h.status in (HOLDS, ASSUMED) for h in self.hypotheses)
        broken = any(c.status == FAILS for c in self.conclusions)
        return "counterexample" if premises_stand and broken else "ok"

    @property
    def all_green(self) -> bool:
        return all(h.status in (HOLDS, ASSUMED) for h in self.hypotheses) and all(
            c.status == HOLDS for c in self.conclusions
        )

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "hypotheses": [h.to_json_dict() for h in self.hypotheses],
            "conclusions": [c.to_json_dict() for c in self.conclusions],
            "consistency": self.consistency,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class HarnessConfig:
    """Windows, probes, and tolerances for one harness run.

    ``window`` hosts pairwise scans (limits, Lipschitz, fixed points);
    ``triple_window`` hosts the cubic scans (triangle, relaxed triangle)
    and may be smaller on instances whose full window makes a cubic scan
    unreasonable; ``half_window`` supplies the decay comparison for the
    disjoint-ball evidence.
    """

    window: Window
    triple_window: Window
    half_window: Window
    starts: tuple[Point, ...]
    primary_start: Point
    h_probe_pairs: tuple[tuple[Point, Point], ...]
    n_probe_points: tuple[Point, ...]
    horizon: int = DEFAULT_HORIZON
    tol: Fraction = DEFAULT_TOL
    dislocated_tol: Fraction = Fraction(0)
    tail: int | None = None
    ladder: tuple[int, ...] | None = None
    max_period: int = DEFAULT_MAX_PERIOD
    epsilon: Fraction = Fraction(1, 4)
    delta_grid: tuple[Fraction, ...] | None = None
    relaxed_a: Fraction = Fraction(1)
    relaxed_delta: Fraction = Fraction(1)
    workers: int = 1


def _entry(name: str, ok: bool, evidence: dict) -> VerdictEntry:
    return VerdictEntry(name, HOLDS if ok else FAILS, evidence)


def _labels(points) -> list[str]:
    return [p.label() for p in points]


def theorem_harness(
    space: DistanceSpace, self_map: SelfMap, config: HarnessConfig
) -> tuple[TheoremReport, ...]:
    """Evaluate the six statements (P2.1, T2.2, T2.3, C2.5, T2.4, L4.1)
    against one space/map pair.  Reports are deterministic for a fixed
    config regardless of worker count."""
    w = config.workers

    triangle = check_triangle(space, config.triple_window, workers=w)
    relaxed = check_relaxed_triangle(
        space, config.triple_window, config.relaxed_a, config.relaxed_delta, workers=w
    )
    n_reports = [
        check_N(space, config.window, p, config.epsilon, config.delta_grid, workers=w)
        for p in config.n_probe_points
    ]
    h_pairs = [
        (
            check_H(space, config.window, x, y),
            check_H(space, config.half_window, x, y),
        )
        for x, y in config.h_probe_pairs
    ]
    lipschitz: LipschitzReport | None
    try:
        lipschitz = lipschitz_estimate(space, self_map, config.window, workers=w)
    except ValueError:
        lipschitz = None
    fixed_report = fixed_and_periodic_points(
        space, self_map, config.window, config.max_period
    )
    traces = {
        start: picard_orbit(space, self_map, start, config.horizon)
        for start in config.starts
    }
    verdicts = {
        start: analyze_convergence(
            space,
            trace,
            config.window,
            tol=config.tol,
            tail=config.tail,
            dislocated_tol=config.dislocated_tol,
            ladder=config.ladder,
        )
        for start, trace in traces.items()
    }
    primary = verdicts[config.primary_start]
    recurrent = recurrent_orbit_points(
        space, traces[config.primary_start], config.window, config.tol
    )

    # shared verdict entries -------------------------------------------------
    n_ok = all(r.holds for r in n_reports)
    n_entry = VerdictEntry(
        "n_distance_evidence",
        HOLDS if n_ok else FAILS,
        {
            "epsilon": scalar_to_text(config.epsilon),
            "probes": {
                probe.label(): (
                    scalar_to_text(r.extremal) if r.holds else "no grid delta works"
                )
                for probe, r in zip(config.n_probe_points, n_reports)
            },
        },
    )

    h_decayed = [
        full.extremal == 0 or full.extremal != half.extremal
        for full, half in h_pairs
    ]
    h_entry = VerdictEntry(
        "h_distance_evidence",
        FAILS if any(h_decayed) else HOLDS,
        {
            "pairs": {
                f"({x.label()},{y.label()})": {
                    "full_window": scalar_to_text(full.extremal),
                    "half_window": scalar_to_text(half.extremal),
                }
                for (x, y), (full, half) in zip(config.h_probe_pairs, h_pairs)
            },
            "reading": "a probe whose joint-approach minimum decays with the "
            "window refutes disjoint balls; a persistent positive floor "
            "supports them",
        },
    )

    if lipschitz is None:
        lipschitz_entry = VerdictEntry(
            "lipschitz_bound", SKIPPED, {"reason": "no pair at positive distance"}
        )
        contraction_entry = VerdictEntry(
            "contraction", SKIPPED, {"reason": "no pair at positive distance"}
        )
    else:
        lipschitz_entry = _entry(
            "lipschitz_bound",
            True,
            {
                "value": scalar_to_text(lipschitz.value),
                "witness": _labels(lipschitz.witness),
                "skipped": _labels(lipschitz.skipped),
            },
        )
        contraction_entry = _entry(
            "contraction",
            lipschitz.value < 1,
            {
                "value": scalar_to_text(lipschitz.value),
                "witness": _labels(lipschitz.witness),
                "skipped": _labels(lipschitz.skipped),
            },
        )

    completeness_entry = VerdictEntry(
        "completeness",
        ASSUMED if space.completeness == "assumed_complete" else SKIPPED,
        {"source": space.completeness, "note": "declared metadata, never computed"},
    )

    quasimetric_entry = _entry(
        "quasimetric",
        triangle.holds,
        {
            "window": triangle.window,
            "extremal": scalar_to_text(triangle.extremal)
            if triangle.extremal is not None
            else None,
        },
    )
    relaxed_entry = _entry(
        "relaxed_triangle",
        relaxed.holds,
        {"a": scalar_to_text(config.relaxed_a), "note": relaxed.note},
    )

    fixed_entry = _entry(
        "fixed_point_exists", bool(fixed_report.fixed), {"fixed": _labels(fixed_report.fixed)}
    )
    unique_fixed_entry = _entry(
        "unique_fixed_point",
        len(fixed_report.fixed) == 1,
        {"fixed": _labels(fixed_report.fixed)},
    )
    periodic_fixed_entry = _entry(
        "periodic_implies_fixed",
        not fixed_report.periodic_nonfixed,
        {
            "periodic": [[p.label(), k] for p, k in fixed_report.periodic],
            "nonfixed": _labels(fixed_report.periodic_nonfixed),
        },
    )

    gaps_entry = _entry(
        "orbit_gaps_vanish",
        primary.gaps_vanish,
        {
            "start": config.primary_start.label(),
            "max_tail_gap": scalar_to_text(primary.max_tail_gap),
            "tol": scalar_to_text(config.tol),
        },
    )
    accumulates_entry = _entry(
        "orbit_accumulates",
        bool(recurrent),
        {"start": config.primary_start.label(), "recurrent": _labels(recurrent)},
    )
    converges_entry = _entry(
        "orbit_convergent",
        bool(primary.limits),
        {
            "start": config.primary_start.label(),
            "limits": _labels(primary.limits),
            "cauchy": primary.cauchy,
        },
    )

    orbit_pts = set(traces[config.primary_start].points)
    orbit_periodic_nonfixed = [
        p for p in fixed_report.periodic_nonfixed if p in orbit_pts
    ]
    orbit_no_periodic_entry = _entry(
        "orbit_has_no_periodic_nonfixed",
        not orbit_periodic_nonfixed,
        {"violations": _labels(orbit_periodic_nonfixed)},
    )
    accumulation_subset_entry = _entry(
        "accumulation_points_are_fixed",
        set(recurrent) <= set(fixed_report.fixed),
        {
            "recurrent": _labels(recurrent),
            "strays": _labels([p for p in recurrent if p not in set(fixed_report.fixed)]),
        },
    )

    def orbits_reach_fixed(require_cauchy: bool) -> VerdictEntry:
        target = fixed_report.fixed[0] if len(fixed_report.fixed) == 1 else None
        detail = {}
        ok = target is not None
        for start, verdict in verdicts.items():
            reached = target is not None and target in verdict.limits
            if require_cauchy:
                reached = reached and verdict.cauchy
            detail[start.label()] = reached
            ok = ok and reached
        name = (
            "orbits_cauchy_converge_to_fixed"
            if require_cauchy
            else "orbits_converge_to_fixed"
        )
        return _entry(
            name,
            ok,
            {
                "fixed_point": target.label() if target is not None else None,
                "per_start": detail,
            },
        )

    def geometric_decay_entry() -> VerdictEntry:
        if lipschitz is None or lipschitz.value >= 1:
            return VerdictEntry(
                "geometric_gap_decay",
                SKIPPED,
                {"reason": "no contraction constant below 1 on this window"},
            )
        lam = lipschitz.value
        detail = {}
        ok = True
        for start, trace in traces.items():
            bound_ok = True
            power = Fraction(1)
            first = trace.gaps[0]
            for gap in trace.gaps:
                if gap > power * first:
                    bound_ok = False
                    break
                power *= lam
            detail[start.label()] = bound_ok
            ok = ok and bound_ok
        return _entry(
            "geometric_gap_decay",
            ok,
            {"lambda": scalar_to_text(lam), "per_start": detail},
        )

    def orbitwise_contraction_entry() -> VerdictEntry:
        detail = {}
        ok = True
        for start, trace in traces.items():
            mu = _orbitwise_ratio(space, trace, config.window)
            if mu is None:
                detail[start.label()] = "constant orbit"
            else:
                detail[start.label()] = scalar_to_text(mu)
                ok = ok and mu < 1
        return _entry("orbitwise_contraction", ok, {"mu_per_start": detail})

    def dislocated_unique_entry() -> VerdictEntry:
        detail = {
            start.label(): _labels(v.dislocated_limits) for start, v in verdicts.items()
        }
        ok = all(len(v.dislocated_limits) <= 1 for v in verdicts.values())
        return _entry(
            "dislocated_limits_unique",
            ok,
            {"dislocated_tol": scalar_to_text(config.dislocated_tol), "per_start": detail},
        )

    reports = (
        TheoremReport(
            "P2.1",
            hypotheses=(h_entry, lipschitz_entry, converges_entry),
            conclusions=(fixed_entry,),
            notes="a Lipschitz map with a convergent orbit on a "
            "disjoint-ball space must fix the limit",
        ),
        TheoremReport(
            "T2.2",
            hypotheses=(n_entry, h_entry, lipschitz_entry, accumulates_entry, gaps_entry),
            conclusions=(
                fixed_entry,
                accumulation_subset_entry,
                orbit_no_periodic_entry,
                periodic_fixed_entry,
            ),
            notes="the quasimetric specialization (triangle verdict: "
            f"{triangle.verdict}) shares these verdicts",
        ),
        TheoremReport(
            "T2.3",
            hypotheses=(n_entry, h_entry, contraction_entry, accumulates_entry),
            conclusions=(
                unique_fixed_entry,
                periodic_fixed_entry,
                orbits_reach_fixed(require_cauchy=False),
                geometric_decay_entry(),
            ),
            notes="",
        ),
        TheoremReport(
            "C2.5",
            hypotheses=(
                completeness_entry,
                quasimetric_entry,
                h_entry,
                lipschitz_entry,
                orbitwise_contraction_entry(),
            ),
            conclusions=(
                fixed_entry,
                periodic_fixed_entry,
                orbits_reach_fixed(require_cauchy=True),
            ),
            notes="",
        ),
        TheoremReport(
            "T2.4",
            hypotheses=(completeness_entry, h_entry, contraction_entry, relaxed_entry),
            conclusions=(
                unique_fixed_entry,
                periodic_fixed_entry,
                orbits_reach_fixed(require_cauchy=True),
            ),
            notes="",
        ),
        TheoremReport(
            "L4.1",
            hypotheses=(n_entry,),
            conclusions=(dislocated_unique_entry(),),
            notes="uniqueness of dislocated limits across all configured orbits",
        ),
    )
    return reports


def _orbitwise_ratio(
    space: DistanceSpace, trace: OrbitTrace, window: Window
) -> Fraction | None:
    """Max over orbit-position pairs of the image-to-source distance ratio;
    None when every pair sits at distance zero (constant orbits)."""
    dist = _window_lookup(space, window)
    pts = trace.points
    top = len(pts) - 1  # images of positions 0..top-1 stay inside the trace
    best: tuple[Fraction, Fraction] | None = None
    for i in range(top):
        for j in range(top):
            if i == j:
                continue
            den = dist(pts[i], pts[j])
            if den == 0:
                continue
            num = dist(pts[i + 1], pts[j + 1])
            if best is None or _ratio_beats(num, den, best):
                best = (num, den)
    return None if best is None else best[0] / best[1]
