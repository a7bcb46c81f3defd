"""Built-in catalog of distance spaces with self-maps, plus their checks.

Five instances, each a space / map pair with tuned windows, probes, and a
frozen list of property checks (`verify_gallery` replays them):

* ``3.1``     two beacon atoms over a dyadic tail of naturals; the map swaps
              the beacons and shifts the tail.  Quasimetric, orbit from 1 is
              Cauchy with two plain limits and no dislocated limit.
* ``3.2``     target-only distance 2^-m on naturals with the successor map:
              an exact 1/2-contraction, yet nothing is fixed.  The
              joint-approach floor decays with the window, which is the
              machine-checkable reason the fixed-point statements don't bind.
* ``3.3``     two beacons fed by harmonic interval windows; the successor map
              fixes the beacons.  The positive showcase: every hypothesis of
              the accumulation statement holds and so do its conclusions.
* ``3.4``     a two-level ordinal grid where every distinct pair strictly
              contracts, fixed-point free; the grid's one-way level jumps
              break the joint-approach floor instead of the contraction.
* ``control`` a 14-point dyadic metric with a quartering map: unique fixed
              point, exact contraction constant 1/2, all six harness
              statements fully green.

All distances are exact rationals; every expected value in the checks below
is frozen, not recomputed from the code under test.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable

from .axioms import check_core_axioms, check_H, check_N, check_triangle
from .chains import symmetrize
from .core import (
    ONE,
    ZERO,
    DistanceSpace,
    Domain,
    Point,
    Window,
    enumerate_window,
    scalar_to_text,
)
from .dynamics import (
    DEFAULT_TOL,
    HarnessConfig,
    SelfMap,
    TheoremReport,
    analyze_convergence,
    fixed_and_periodic_points,
    lipschitz_estimate,
    picard_orbit,
    recurrent_orbit_points,
    theorem_harness,
)

# ---------------------------------------------------------------------------
# harmonic sums

_prefix_lock = threading.Lock()
_prefix: list[Fraction] = [ZERO]


def _harmonic_prefix(n: int) -> Fraction:
    if n < len(_prefix):
        return _prefix[n]
    with _prefix_lock:
        while len(_prefix) <= n:
            _prefix.append(_prefix[-1] + Fraction(1, len(_prefix)))
    return _prefix[n]


def harmonic_sum(lo: int, hi: int) -> Fraction:
    """Exact sum of 1/m over lo <= m <= hi; zero when hi < lo."""
    if lo < 1:
        raise ValueError("harmonic sums start at 1")
    if hi < lo:
        return ZERO
    return _harmonic_prefix(hi) - _harmonic_prefix(lo - 1)


# ---------------------------------------------------------------------------
# interval tables for instance 3.3


@dataclass(frozen=True)
class IntervalTable:
    """Interleaved cut points 1 = i_1 < k_1 < i_2 < k_2 < ... < i_{count+1}.

    ``starts[n]`` is i_{n+1} and ``mids[n]`` is k_{n+1} (0-based storage of
    the 1-based sequence).  Within each block [i, i_next) the sums of 1/m
    between consecutive cuts land just past 1, which is what makes both
    beacon distances of instance 3.3 sweep the whole unit scale over and
    over while staying exactly reconstructible.
    """

    starts: tuple[int, ...]
    mids: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.mids)

    def validate(self) -> None:
        if len(self.starts) != self.count + 1 or self.count < 1:
            raise ValueError("need count mids and count+1 starts")
        if self.starts[0] < 1:
            raise ValueError("cut points start at 1")
        for n in range(self.count):
            i, k, nxt = self.starts[n], self.mids[n], self.starts[n + 1]
            if not i < k < nxt:
                raise ValueError(f"block {n}: cuts must interleave, got {i},{k},{nxt}")
            if harmonic_sum(i, k - 2) >= 1:
                raise ValueError(f"block {n}: sum over [{i},{k - 1}) must stay below 1")
            if harmonic_sum(i, k - 1) < 1:
                raise ValueError(f"block {n}: sum over [{i},{k}) must reach 1")
            if harmonic_sum(k + 2, nxt) >= 1:
                raise ValueError(f"block {n}: sum over ({k + 1},{nxt}] must stay below 1")
            if harmonic_sum(k + 1, nxt) < 1:
                raise ValueError(f"block {n}: sum over ({k},{nxt}] must reach 1")

    def block_of(self, m: int) -> int:
        """0-based block index n with starts[n] <= m < starts[n+1]."""
        if not self.starts[0] <= m < self.starts[-1]:
            raise ValueError(f"{m} outside the covered range")
        return bisect.bisect_right(self.starts, m) - 1


def build_intervals(count: int) -> IntervalTable:
    """Greedy-minimal interval table with ``count`` blocks.

    Each mid is the least cut whose harmonic run from the block start
    reaches 1, and each next start is the least cut whose run from just
    past the mid reaches 1.  Minimality is exactly what `validate` checks.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    starts = [1]
    mids = []
    for _ in range(count):
        i = starts[-1]
        k = i + 1
        while harmonic_sum(i, k - 1) < 1:
            k += 1
        mids.append(k)
        nxt = k + 1
        while harmonic_sum(k + 1, nxt) < 1:
            nxt += 1
        starts.append(nxt)
    return IntervalTable(tuple(starts), tuple(mids))


# ---------------------------------------------------------------------------
# instances and their check harness


@dataclass(frozen=True)
class PropertyCheck:
    check_id: str
    claim: str
    run: Callable[["InstanceArtifacts"], tuple[bool, str, str]] = field(repr=False)


@dataclass(frozen=True)
class CheckOutcome:
    check_id: str
    claim: str
    passed: bool
    expected: str
    actual: str

    def to_json_dict(self) -> dict:
        return {
            "id": self.check_id,
            "claim": self.claim,
            "passed": self.passed,
            "expected": self.expected,
            "actual": self.actual,
        }


@dataclass(frozen=True)
class GalleryReport:
    key: str
    title: str
    outcomes: tuple[CheckOutcome, ...]

    @property
    def passed(self) -> bool:
        return all(outcome.passed for outcome in self.outcomes)

    def to_json_dict(self) -> dict:
        return {
            "schema": "gallery-verification/1",
            "key": self.key,
            "title": self.title,
            "passed": self.passed,
            "checks": [outcome.to_json_dict() for outcome in self.outcomes],
        }


@dataclass(frozen=True)
class GalleryInstance:
    key: str
    title: str
    space: DistanceSpace
    self_map: SelfMap
    window: Window
    triple_window: Window
    half_window: Window
    starts: tuple[Point, ...]
    primary_start: Point
    h_probe_pairs: tuple[tuple[Point, Point], ...]
    n_probe_points: tuple[Point, ...]
    checks: tuple[PropertyCheck, ...] = field(repr=False)
    horizon: int = 64
    tol: Fraction = DEFAULT_TOL
    dislocated_tol: Fraction = ZERO
    ladder: tuple[int, ...] | None = None
    max_period: int = 8
    epsilon: Fraction = Fraction(1, 4)
    relaxed_a: Fraction = ONE
    relaxed_delta: Fraction = ONE

    def harness_config(self, workers: int = 1) -> HarnessConfig:
        return HarnessConfig(
            window=self.window,
            triple_window=self.triple_window,
            half_window=self.half_window,
            starts=self.starts,
            primary_start=self.primary_start,
            h_probe_pairs=self.h_probe_pairs,
            n_probe_points=self.n_probe_points,
            horizon=self.horizon,
            tol=self.tol,
            dislocated_tol=self.dislocated_tol,
            ladder=self.ladder,
            max_period=self.max_period,
            epsilon=self.epsilon,
            relaxed_a=self.relaxed_a,
            relaxed_delta=self.relaxed_delta,
            workers=workers,
        )


class InstanceArtifacts:
    """Shared lazily-computed reports for one instance at one worker count.

    Checks pull from here so a verification pass computes each heavy
    artifact (distance matrix scans, the harness, orbits) exactly once.
    """

    def __init__(self, instance: GalleryInstance, workers: int = 1):
        self.instance = instance
        self.workers = workers
        self._traces: dict[Point, object] = {}
        self._verdicts: dict[Point, object] = {}

    @cached_property
    def core_reports(self):
        return check_core_axioms(
            self.instance.space, self.instance.window, workers=self.workers
        )

    @cached_property
    def triangle(self):
        return check_triangle(
            self.instance.space, self.instance.triple_window, workers=self.workers
        )

    @cached_property
    def harness(self) -> tuple[TheoremReport, ...]:
        return theorem_harness(
            self.instance.space,
            self.instance.self_map,
            self.instance.harness_config(self.workers),
        )

    def report(self, theorem: str) -> TheoremReport:
        return next(r for r in self.harness if r.theorem == theorem)

    @cached_property
    def lipschitz(self):
        return lipschitz_estimate(
            self.instance.space,
            self.instance.self_map,
            self.instance.window,
            workers=self.workers,
        )

    @cached_property
    def fixed(self):
        return fixed_and_periodic_points(
            self.instance.space,
            self.instance.self_map,
            self.instance.window,
            self.instance.max_period,
        )

    def trace(self, start: Point | None = None):
        start = start or self.instance.primary_start
        if start not in self._traces:
            self._traces[start] = picard_orbit(
                self.instance.space, self.instance.self_map, start, self.instance.horizon
            )
        return self._traces[start]

    def verdict(self, start: Point | None = None):
        start = start or self.instance.primary_start
        if start not in self._verdicts:
            self._verdicts[start] = analyze_convergence(
                self.instance.space,
                self.trace(start),
                self.instance.window,
                tol=self.instance.tol,
                tail=None,
                dislocated_tol=self.instance.dislocated_tol,
                ladder=self.instance.ladder,
            )
        return self._verdicts[start]

    @cached_property
    def recurrent(self):
        return recurrent_orbit_points(
            self.instance.space, self.trace(), self.instance.window, self.instance.tol
        )

    def h_floor(self, pair: tuple[Point, Point]):
        x, y = pair
        return (
            check_H(self.instance.space, self.instance.window, x, y),
            check_H(self.instance.space, self.instance.half_window, x, y),
        )

    def n_delta(self, probe: Point):
        return check_N(
            self.instance.space,
            self.instance.window,
            probe,
            self.instance.epsilon,
            None,
            workers=self.workers,
        )

    @cached_property
    def symmetrized(self) -> DistanceSpace:
        return symmetrize(self.instance.space)


def verify_gallery(instance: GalleryInstance, workers: int = 1) -> GalleryReport:
    art = InstanceArtifacts(instance, workers)
    outcomes = []
    for check in instance.checks:
        passed, expected, actual = check.run(art)
        outcomes.append(
            CheckOutcome(check.check_id, check.claim, passed, expected, actual)
        )
    return GalleryReport(instance.key, instance.title, tuple(outcomes))


# --- small formatting helpers for check outcomes ---------------------------


def _pts(points) -> str:
    return "{" + ",".join(p.label() for p in points) + "}"


def _frac(value: Fraction) -> str:
    return scalar_to_text(value)


def _harness_all_ok(art: InstanceArtifacts) -> tuple[bool, str, str]:
    flagged = [r.theorem for r in art.harness if r.consistency != "ok"]
    return (
        not flagged,
        "consistency ok for all six statements",
        "all ok" if not flagged else "flagged: " + ",".join(flagged),
    )


def _symmetrized_regular(art: InstanceArtifacts) -> tuple[bool, str, str]:
    sym_space = art.symmetrized
    _, _, sym = check_core_axioms(sym_space, art.instance.window, workers=art.workers)
    tri = check_triangle(sym_space, art.instance.triple_window, workers=art.workers)
    ok = sym.holds and tri.holds
    return (
        ok,
        "symmetrized space passes symmetry and triangle",
        f"symmetry={sym.verdict} triangle={tri.verdict}",
    )


def _asymmetry_outcome(art, expect_pair, expect_values):
    nonneg, sep, sym = art.core_reports
    ok = (
        nonneg.holds
        and sep.holds
        and not sym.holds
        and sym.witness == expect_pair
        and sym.witness_values == expect_values
    )
    expected = (
        "nonneg+separation hold; symmetry breaks first at "
        f"({expect_pair[0].label()},{expect_pair[1].label()}) with "
        f"{_frac(expect_values[0])} vs {_frac(expect_values[1])}"
    )
    actual = (
        f"nonneg={nonneg.verdict} separation={sep.verdict} symmetry={sym.verdict}"
        + (
            f" witness=({sym.witness[0].label()},{sym.witness[1].label()})"
            f" values=({_frac(sym.witness_values[0])},{_frac(sym.witness_values[1])})"
            if sym.witness
            else ""
        )
    )
    return ok, expected, actual


def _h_decay_outcome(art, pair, full_expect, half_expect):
    full, half = art.h_floor(pair)
    ok = full.extremal == full_expect and half.extremal == half_expect
    return (
        ok,
        f"joint-approach floor {_frac(half_expect)} -> {_frac(full_expect)} as the window doubles",
        f"half={_frac(half.extremal)} full={_frac(full.extremal)}",
    )


# ---------------------------------------------------------------------------
# instance 3.1


def example_3_1(nat_max: int = 64) -> GalleryInstance:
    """Beacons a, b over the dyadic tail 2^-n: complete but only one-way."""
    domain = Domain("naturals", atoms=("a", "b"), nat_start=1)

    def dist(x: Point, y: Point) -> Fraction:
        if x == y:
            return ZERO
        if x.kind == "nat" and y.kind == "nat":
            return abs(Fraction(1, 2**x.n) - Fraction(1, 2**y.n))
        if x.kind == "atom" and y.kind == "nat":
            return Fraction(1, 2**y.n)
        return ONE  # toward an atom, and between the two atoms

    def step(p: Point) -> Point:
        if p.kind == "atom":
            return Point.atom("b" if p.name == "a" else "a")
        return Point.nat(p.n + 1)

    space = DistanceSpace("gallery-3.1", domain, dist, completeness="assumed_complete")
    window = enumerate_window(space, nat_max=nat_max)
    half = enumerate_window(space, nat_max=nat_max // 2)
    a, b, one = Point.atom("a"), Point.atom("b"), Point.nat(1)

    full_floor = Fraction(2, 2**nat_max)
    half_floor = Fraction(2, 2 ** (nat_max // 2))

    def chk_orbit(art):
        v = art.verdict()
        ok = (
            v.cauchy
            and a in v.limits
            and b in v.limits
            and not v.dislocated_limits
        )
        return (
            ok,
            "orbit from 1: Cauchy; plain limits include both beacons; no dislocated limit",
            f"cauchy={v.cauchy} limits={_pts(v.limits)} dislocated={_pts(v.dislocated_limits)}",
        )

    def chk_swap(art):
        ok = art.fixed.fixed == () and art.fixed.periodic == ((a, 2), (b, 2))
        return (
            ok,
            "no fixed points; beacons are 2-periodic",
            f"fixed={_pts(art.fixed.fixed)} periodic={[(p.label(), k) for p, k in art.fixed.periodic]}",
        )

    def chk_symmetrized(art):
        sym_space = art.symmetrized
        expect = all(
            sym_space.distance(a, Point.nat(n)) == 1 + Fraction(1, 2**n)
            for n in range(1, 9)
        )
        ok_reg, _, reg_actual = _symmetrized_regular(art)
        return (
            expect and ok_reg,
            "round-trip distance to beacon a is 1 + 2^-n; symmetrized space is a metric",
            f"formula={'exact' if expect else 'off'} {reg_actual}",
        )

    checks = (
        PropertyCheck(
            "3.1/axioms",
            "nonnegativity and separation hold; distances to beacons are one-way",
            lambda art: _asymmetry_outcome(art, (a, one), (Fraction(1, 2), ONE)),
        ),
        PropertyCheck(
            "3.1/P1-triangle",
            "the directed triangle inequality holds on the whole window",
            lambda art: (
                art.triangle.holds,
                "triangle holds",
                f"{art.triangle.verdict} extremal={_frac(art.triangle.extremal)}",
            ),
        ),
        PropertyCheck(
            "3.1/P2-h-refutation",
            "the joint-approach floor for (a,b) decays as the window grows",
            lambda art: _h_decay_outcome(art, (a, b), full_floor, half_floor),
        ),
        PropertyCheck("3.1/P3-orbit", "Cauchy orbit with two plain limits", chk_orbit),
        PropertyCheck("3.1/P4-swap", "the beacon swap leaves nothing fixed", chk_swap),
        PropertyCheck(
            "3.1/P5-symmetrized",
            "symmetrizing restores a metric but pushes the beacons out of reach",
            chk_symmetrized,
        ),
        PropertyCheck(
            "3.1/harness", "no statement is flagged inconsistent", _harness_all_ok
        ),
    )
    return GalleryInstance(
        key="3.1",
        title="two beacons over a dyadic tail",
        space=space,
        self_map=SelfMap("swap_and_shift", step),
        window=window,
        triple_window=window,
        half_window=half,
        starts=(one, a),
        primary_start=one,
        h_probe_pairs=((a, b),),
        n_probe_points=(a, one),
        checks=checks,
    )


# ---------------------------------------------------------------------------
# instance 3.2


def example_3_2(nat_max: int = 64) -> GalleryInstance:
    """Target-only distance 2^-m on naturals: a fixed-point-free contraction."""
    domain = Domain("naturals", nat_start=0)

    def dist(x: Point, y: Point) -> Fraction:
        if x == y:
            return ZERO
        return Fraction(1, 2**y.n)

    space = DistanceSpace("gallery-3.2", domain, dist, completeness="assumed_complete")
    window = enumerate_window(space, nat_max=nat_max)
    half = enumerate_window(space, nat_max=nat_max // 2)
    zero, one = Point.nat(0), Point.nat(1)

    full_floor = Fraction(2, 2**nat_max)
    half_floor = Fraction(2, 2 ** (nat_max // 2))

    def chk_contraction(art):
        rep = art.lipschitz
        ok = rep.value == Fraction(1, 2) and rep.witness == (zero, one)
        return (
            ok,
            "exact contraction constant 1/2, first attained at (0,1)",
            f"value={_frac(rep.value)} witness={_pts(rep.witness)}",
        )

    def chk_limits(art):
        v = art.verdict()
        ok = (
            v.cauchy
            and len(v.limits) == len(window)
            and not v.dislocated_limits
        )
        return (
            ok,
            "every window point is a plain limit of the orbit; none is dislocated",
            f"cauchy={v.cauchy} limits={len(v.limits)}/{len(window)} "
            f"dislocated={_pts(v.dislocated_limits)}",
        )

    def chk_negative_record(art):
        rep = art.report("T2.3")
        hyp = {e.name: e.status for e in rep.hypotheses}
        con = {e.name: e.status for e in rep.conclusions}
        ok = (
            hyp["contraction"] == "holds"
            and hyp["h_distance_evidence"] == "fails"
            and con["unique_fixed_point"] == "fails"
            and rep.consistency == "ok"
        )
        return (
            ok,
            "contraction holds, the joint-approach hypothesis fails, no fixed point: "
            "the statement's premises never bind",
            f"hypotheses={hyp} conclusions={con} consistency={rep.consistency}",
        )

    checks = (
        PropertyCheck(
            "3.2/axioms",
            "nonnegativity and separation hold; the distance only sees its target",
            lambda art: _asymmetry_outcome(art, (zero, one), (Fraction(1, 2), ONE)),
        ),
        PropertyCheck(
            "3.2/P2-triangle",
            "the directed triangle inequality holds on the whole window",
            lambda art: (
                art.triangle.holds,
                "triangle holds",
                f"{art.triangle.verdict} extremal={_frac(art.triangle.extremal)}",
            ),
        ),
        PropertyCheck("3.2/P4-contraction", "the shift halves every distance", chk_contraction),
        PropertyCheck(
            "3.2/P3-fix-free",
            "no fixed and no periodic points",
            lambda art: (
                art.fixed.fixed == () and art.fixed.periodic == (),
                "both empty",
                f"fixed={_pts(art.fixed.fixed)} periodic={[(p.label(), k) for p, k in art.fixed.periodic]}",
            ),
        ),
        PropertyCheck("3.2/P1-limits", "limits are everywhere, dislocated nowhere", chk_limits),
        PropertyCheck(
            "3.2/P5-h-refutation",
            "the joint-approach floor for (0,1) decays as the window grows",
            lambda art: _h_decay_outcome(art, (zero, one), full_floor, half_floor),
        ),
        PropertyCheck(
            "3.2/negative-record",
            "why a contraction can be fixed-point free here",
            chk_negative_record,
        ),
        PropertyCheck(
            "3.2/harness", "no statement is flagged inconsistent", _harness_all_ok
        ),
    )
    return GalleryInstance(
        key="3.2",
        title="fixed-point-free exact contraction",
        space=space,
        self_map=SelfMap("shift", lambda p: Point.nat(p.n + 1)),
        window=window,
        triple_window=window,
        half_window=half,
        starts=(zero, Point.nat(5)),
        primary_start=zero,
        h_probe_pairs=((zero, one),),
        n_probe_points=(zero, one),
        checks=checks,
    )


# ---------------------------------------------------------------------------
# instance 3.3


def example_3_3(count: int = 3) -> GalleryInstance:
    """Two beacons fed by harmonic interval windows; the all-green showcase.

    The naturals are capped one short of the table's final cut so every
    distance is defined by the table; the analysis tolerance is harmonic
    scale (1/k_2), since the orbit's gaps decay like 1/n rather than
    geometrically.
    """
    if count < 2:
        raise ValueError("need at least 2 blocks for the recurrence evidence")
    table = build_intervals(count)
    starts, mids = table.starts, table.mids
    cap = starts[-1] - 1
    domain = Domain("naturals", atoms=("mu", "nu"), nat_start=1, nat_stop=cap)

    def dist(x: Point, y: Point) -> Fraction:
        if x == y:
            return ZERO
        if x.kind == "nat" and y.kind == "nat":
            gap = abs(_harmonic_prefix(x.n) - _harmonic_prefix(y.n))
            return gap if gap < 1 else ONE
        if x.kind == "atom" and y.kind == "nat":
            n = table.block_of(y.n)
            i, k, nxt = starts[n], mids[n], starts[n + 1]
            if x.name == "mu":
                s = harmonic_sum(i, y.n) if y.n < k else harmonic_sum(y.n + 1, nxt)
            else:
                s = harmonic_sum(y.n + 1, k) if y.n < k else harmonic_sum(k, y.n)
            return s if s < 1 else ONE
        return ONE  # toward a beacon, and between the beacons

    def step(p: Point) -> Point:
        return p if p.kind == "atom" else Point.nat(p.n + 1)

    space = DistanceSpace("gallery-3.3", domain, dist, completeness="assumed_complete")
    window = enumerate_window(space, nat_max=cap)
    triple = enumerate_window(space, nat_max=starts[-2])
    half = enumerate_window(space, nat_max=starts[-2] - 1)
    mu, nu, one = Point.atom("mu"), Point.atom("nu"), Point.nat(1)
    tol = Fraction(1, mids[-2])
    last_mid = mids[-1]
    lipschitz_expect = Fraction(2 * last_mid + 1, last_mid + 1)

    def chk_intervals(art):
        try:
            table.validate()
            ok, note = True, "valid"
        except ValueError as exc:
            ok, note = False, str(exc)
        return (
            ok,
            "each block's harmonic runs land just past 1 on both sides",
            f"starts={list(starts)} mids={list(mids)} ({note})",
        )

    def chk_lipschitz(art):
        rep = art.lipschitz
        ok = (
            rep.value == lipschitz_expect
            and rep.value < 2
            and rep.witness == (nu, Point.nat(last_mid))
            and rep.skipped == (Point.nat(cap),)
        )
        return (
            ok,
            f"bound {_frac(lipschitz_expect)} < 2, attained leaving the nu dip at {last_mid}",
            f"value={_frac(rep.value)} witness={_pts(rep.witness)} "
            f"skipped={_pts(rep.skipped)}",
        )

    def chk_gaps(art):
        trace = art.trace()
        ok = all(g == Fraction(1, j + 2) for j, g in enumerate(trace.gaps))
        head = [scalar_to_text(g) for g in trace.gaps[:5]]
        return (
            ok and art.verdict().gaps_vanish,
            "gap after point m is exactly 1/(m+1); tail gaps sit under the tolerance",
            f"first_gaps={head} gaps_vanish={art.verdict().gaps_vanish}",
        )

    def chk_fixed(art):
        ok = (
            art.fixed.fixed == (mu, nu)
            and art.fixed.periodic == ((mu, 1), (nu, 1))
            and art.fixed.escaped == (Point.nat(cap),)
        )
        return (
            ok,
            "exactly the beacons are fixed; the capped endpoint escapes",
            f"fixed={_pts(art.fixed.fixed)} escaped={_pts(art.fixed.escaped)}",
        )

    def chk_h_floor(art):
        full, halfrep = art.h_floor((mu, nu))
        ok = full.extremal == ONE and halfrep.extremal == ONE
        return (
            ok,
            "joint-approach floor for (mu,nu) is exactly 1 on both windows",
            f"half={_frac(halfrep.extremal)} full={_frac(full.extremal)}",
        )

    def chk_accumulation(art):
        v = art.verdict()
        ok = mu in v.accumulation and nu in v.accumulation and art.recurrent == (mu, nu)
        return (
            ok,
            "the orbit keeps revisiting both beacons and nothing else",
            f"ladder_hits={_pts(v.accumulation)} recurrent={_pts(art.recurrent)}",
        )

    def chk_wandering(art):
        v = art.verdict()
        ok = not v.limits and not v.cauchy and not v.dislocated_limits
        return (
            ok,
            "the orbit never settles: no plain, no dislocated limit, not Cauchy",
            f"cauchy={v.cauchy} limits={_pts(v.limits)} dislocated={_pts(v.dislocated_limits)}",
        )

    def chk_dips(art):
        trace = art.trace()
        best_mu = min(space.distance(mu, p) for p in trace.points)
        best_nu = min(space.distance(nu, p) for p in trace.points)
        ok = best_mu == Fraction(1, starts[-1]) and best_nu == Fraction(1, last_mid)
        return (
            ok,
            f"closest approach 1/{starts[-1]} to mu and 1/{last_mid} to nu",
            f"mu={_frac(best_mu)} nu={_frac(best_nu)}",
        )

    def chk_n_evidence(art):
        rep_mu, rep_one = art.n_delta(mu), art.n_delta(one)
        ok = (
            rep_mu.holds
            and rep_mu.extremal == Fraction(1, 8)
            and rep_one.holds
            and rep_one.extremal == Fraction(1, 4)
        )
        return (
            ok,
            "merge bound holds with delta 1/8 at mu and 1/4 at 1",
            f"mu={_frac(rep_mu.extremal) if rep_mu.holds else rep_mu.verdict} "
            f"1={_frac(rep_one.extremal) if rep_one.holds else rep_one.verdict}",
        )

    def chk_showcase(art):
        rep = art.report("T2.2")
        flagged = [r.theorem for r in art.harness if r.consistency != "ok"]
        contraction = {e.name: e.status for e in art.report("T2.3").hypotheses}
        ok = rep.all_green and not flagged and contraction["contraction"] == "fails"
        return (
            ok,
            "the accumulation statement is fully green; the strict-contraction "
            "statement loses only its contraction hypothesis",
            f"T2.2_green={rep.all_green} flagged={flagged or 'none'} "
            f"T2.3_contraction={contraction['contraction']}",
        )

    checks = (
        PropertyCheck(
            "3.3/intervals", "the greedy cut table is minimal on both sides", chk_intervals
        ),
        PropertyCheck(
            "3.3/axioms",
            "nonnegativity and separation hold; beacon distances are one-way",
            lambda art: _asymmetry_outcome(
                art, (mu, Point.nat(3)), (harmonic_sum(4, starts[1]), ONE)
            ),
        ),
        PropertyCheck(
            "3.3/P2-triangle",
            "the directed triangle inequality holds (cubic scan on the capped window)",
            lambda art: (
                art.triangle.holds,
                "triangle holds",
                f"{art.triangle.verdict} extremal={_frac(art.triangle.extremal)}",
            ),
        ),
        PropertyCheck("3.3/P3-lipschitz", "the shift is 2-Lipschitz but no better", chk_lipschitz),
        PropertyCheck("3.3/P4-gaps", "orbit gaps are the harmonic tail exactly", chk_gaps),
        PropertyCheck("3.3/P5-fixed", "the beacons and only the beacons are fixed", chk_fixed),
        PropertyCheck("3.3/P6-h-floor", "a persistent unit floor for the beacon pair", chk_h_floor),
        PropertyCheck(
            "3.3/P7-accumulation", "both beacons are genuine cluster points", chk_accumulation
        ),
        PropertyCheck("3.3/P8-wandering", "the orbit itself never converges", chk_wandering),
        PropertyCheck("3.3/orbit-dips", "closest approaches match the table", chk_dips),
        PropertyCheck("3.3/n-evidence", "the per-point merge bound holds", chk_n_evidence),
        PropertyCheck("3.3/harness", "the all-green showcase", chk_showcase),
    )
    return GalleryInstance(
        key="3.3",
        title="harmonic beacons with a recurrent orbit",
        space=space,
        self_map=SelfMap("anchored_shift", step),
        window=window,
        triple_window=triple,
        half_window=half,
        starts=(one, mu, nu),
        primary_start=one,
        h_probe_pairs=((mu, nu),),
        n_probe_points=(mu, one),
        checks=checks,
        horizon=cap - 1,
        tol=tol,
        ladder=(0, starts[1] - 1, starts[2] - 1),
    )


# ---------------------------------------------------------------------------
# instance 3.4


def example_3_4(q_max: int = 4, r_max: int = 12) -> GalleryInstance:
    """Two-level ordinal grid: strict contraction, no fixed point anywhere."""
    domain = Domain("ordinal_grid")

    def dist(x: Point, y: Point) -> Fraction:
        if x == y:
            return ZERO
        ry = Fraction(1, 2**y.r)
        if x.q == y.q:
            return abs(Fraction(1, 2**x.r) - ry)
        if x.q > y.q:
            return ry
        return ONE + ry

    space = DistanceSpace("gallery-3.4", domain, dist, completeness="assumed_complete")
    window = enumerate_window(space, q_max=q_max, r_max=r_max)
    half = enumerate_window(space, q_max=q_max, r_max=r_max // 2)
    origin = Point.ordinal(0, 0)
    probe_pair = (Point.ordinal(1, 0), Point.ordinal(2, 0))

    lipschitz_expect = Fraction(2 ** (r_max + 1) + 1, 2 ** (r_max + 1) + 2)

    def chk_strict(art):
        rep = art.lipschitz
        ok = (
            rep.value == lipschitz_expect
            and rep.value < 1
            and rep.witness == (origin, Point.ordinal(1, r_max))
            and rep.skipped == ()
        )
        return (
            ok,
            f"every pair strictly contracts; worst ratio {_frac(lipschitz_expect)}",
            f"value={_frac(rep.value)} witness={_pts(rep.witness)}",
        )

    def chk_halving(art):
        g = art.instance.self_map.apply
        ok = all(
            space.distance(g(x), g(y)) * 2 == space.distance(x, y)
            for x in window.points
            for y in window.points
            if x != y and x.q == y.q
        )
        return (
            ok,
            "same-level pairs halve exactly under the shift",
            "exact halving" if ok else "some pair deviates",
        )

    def chk_orbit(art):
        v = art.verdict()
        upper = tuple(p for p in window.points if p.q >= 1)
        ok = v.cauchy and v.limits == upper and not v.dislocated_limits
        return (
            ok,
            "orbit from 0:0 is Cauchy; its plain limits are every higher-level point",
            f"cauchy={v.cauchy} limits={len(v.limits)} (expected {len(upper)}) "
            f"dislocated={_pts(v.dislocated_limits)}",
        )

    def chk_values(art):
        ok = (
            space.distance(Point.ordinal(0, 3), Point.ordinal(0, 1)) == Fraction(3, 8)
            and space.distance(Point.ordinal(0, 4), Point.ordinal(1, 2)) == Fraction(5, 4)
        )
        return (
            ok,
            "spot values: d(0:3,0:1)=3/8 and d(0:4,1:2)=5/4",
            "match" if ok else "mismatch",
        )

    def chk_essential_floor(art):
        rep = art.report("T2.3")
        hyp = {e.name: e.status for e in rep.hypotheses}
        ok = (
            hyp["contraction"] == "holds"
            and hyp["h_distance_evidence"] == "fails"
            and rep.consistency == "ok"
        )
        return (
            ok,
            "strict contraction with a decaying joint-approach floor stays unflagged",
            f"hypotheses={hyp} consistency={rep.consistency}",
        )

    checks = (
        PropertyCheck(
            "3.4/axioms",
            "nonnegativity and separation hold; level jumps are one-way",
            lambda art: _asymmetry_outcome(
                art, (origin, Point.ordinal(1, 0)), (Fraction(2), ONE)
            ),
        ),
        PropertyCheck(
            "3.4/P1-triangle",
            "the directed triangle inequality holds on the whole grid window",
            lambda art: (
                art.triangle.holds,
                "triangle holds",
                f"{art.triangle.verdict} extremal={_frac(art.triangle.extremal)}",
            ),
        ),
        PropertyCheck("3.4/P2-strict", "strict contraction on every distinct pair", chk_strict),
        PropertyCheck("3.4/P3-halving", "exact halving within a level", chk_halving),
        PropertyCheck(
            "3.4/P4-fix-free",
            "no fixed or periodic points, and the shift never leaves the grid",
            lambda art: (
                art.fixed.fixed == ()
                and art.fixed.periodic == ()
                and art.fixed.escaped == (),
                "all empty",
                f"fixed={_pts(art.fixed.fixed)} periodic={len(art.fixed.periodic)} "
                f"escaped={_pts(art.fixed.escaped)}",
            ),
        ),
        PropertyCheck(
            "3.4/P5-h-refutation",
            "the joint-approach floor decays as the r-range grows",
            lambda art: _h_decay_outcome(
                art,
                probe_pair,
                Fraction(2, 2**r_max),
                Fraction(2, 2 ** (r_max // 2)),
            ),
        ),
        PropertyCheck("3.4/P6-orbit", "limits are exactly the higher levels", chk_orbit),
        PropertyCheck("3.4/values", "frozen spot distances", chk_values),
        PropertyCheck("3.4/essential-floor", "the floor hypothesis is the one that fails", chk_essential_floor),
        PropertyCheck(
            "3.4/harness", "no statement is flagged inconsistent", _harness_all_ok
        ),
    )
    return GalleryInstance(
        key="3.4",
        title="ordinal grid with strict contraction and no fixed point",
        space=space,
        self_map=SelfMap("level_shift", lambda p: Point.ordinal(p.q, p.r + 1)),
        window=window,
        triple_window=window,
        half_window=half,
        starts=(origin, Point.ordinal(2, 3)),
        primary_start=origin,
        h_probe_pairs=(probe_pair,),
        n_probe_points=(origin, Point.ordinal(1, 0)),
        checks=checks,
    )


# ---------------------------------------------------------------------------
# positive control


def contraction_control() -> GalleryInstance:
    """A 14-point dyadic metric with a quartering map: everything is green.

    The map sends v to v/4, flushing anything below the grid to 0, so the
    contraction constant is exactly 1/2 (attained where quartering lands on
    the 0 flush) and 0 is the unique fixed point.
    """
    values = [ZERO] + [Fraction(1, 2**j) for j in range(12, -1, -1)]
    members = tuple(Point.atom(str(v)) for v in values)
    value_of = dict(zip(members, values))
    value_set = set(values)
    domain = Domain("finite", members=members)

    def dist(x: Point, y: Point) -> Fraction:
        return abs(value_of[x] - value_of[y])

    def quarter(p: Point) -> Point:
        v = value_of[p] / 4
        return Point.atom(str(v)) if v in value_set else members[0]

    space = DistanceSpace(
        "gallery-control", domain, dist, completeness="assumed_complete"
    )
    window = enumerate_window(space)
    half = Window(members[:7], "smallest 7 listed points")
    zero = members[0]
    one = members[-1]
    tiny = members[1]  # 1/4096

    def chk_axioms(art):
        nonneg, sep, sym = art.core_reports
        ok = nonneg.holds and sep.holds and sym.holds and art.triangle.holds
        return (
            ok,
            "a genuine metric: all four axioms hold",
            f"nonneg={nonneg.verdict} separation={sep.verdict} "
            f"symmetry={sym.verdict} triangle={art.triangle.verdict}",
        )

    def chk_contraction(art):
        rep = art.lipschitz
        witness = (Point.atom("1/2048"), Point.atom("1/1024"))
        ok = rep.value == Fraction(1, 2) and rep.witness == witness and not rep.skipped
        return (
            ok,
            "contraction constant exactly 1/2, attained at (1/2048,1/1024)",
            f"value={_frac(rep.value)} witness={_pts(rep.witness)}",
        )

    def chk_fixed(art):
        ok = art.fixed.fixed == (zero,) and art.fixed.periodic == ((zero, 1),)
        return (
            ok,
            "0 is the unique fixed point and the only periodic point",
            f"fixed={_pts(art.fixed.fixed)} periodic={[(p.label(), k) for p, k in art.fixed.periodic]}",
        )

    def chk_orbits(art):
        detail = []
        ok = True
        for start in art.instance.starts:
            v = art.verdict(start)
            good = v.cauchy and zero in v.limits and v.dislocated_limits == (zero,)
            ok = ok and good
            detail.append(f"{start.label()}:{'ok' if good else 'bad'}")
        return (
            ok,
            "every configured orbit is Cauchy and lands exactly on 0",
            " ".join(detail),
        )

    def chk_all_green(art):
        not_green = [r.theorem for r in art.harness if not r.all_green]
        return (
            not not_green,
            "all six statements have every hypothesis and conclusion green",
            "all green" if not not_green else "not green: " + ",".join(not_green),
        )

    checks = (
        PropertyCheck("control/axioms", "a plain finite metric space", chk_axioms),
        PropertyCheck("control/contraction", "quartering is a 1/2-contraction", chk_contraction),
        PropertyCheck("control/fixed", "unique fixed point 0", chk_fixed),
        PropertyCheck("control/orbits", "all orbits collapse onto 0", chk_orbits),
        PropertyCheck(
            "control/h-floor",
            "the joint-approach floor persists at the smallest grid distance",
            lambda art: _h_decay_outcome(
                art, (zero, tiny), Fraction(1, 4096), Fraction(1, 4096)
            ),
        ),
        PropertyCheck("control/harness", "the fully green reference run", chk_all_green),
    )
    return GalleryInstance(
        key="control",
        title="dyadic quartering control",
        space=space,
        self_map=SelfMap("quarter", quarter),
        window=window,
        triple_window=window,
        half_window=half,
        starts=(one, tiny, zero),
        primary_start=one,
        h_probe_pairs=((zero, tiny),),
        n_probe_points=(zero, one),
        checks=checks,
    )


# ---------------------------------------------------------------------------
# registry

GALLERY_KEYS = ("3.1", "3.2", "3.3", "3.4", "control")

_CONSTRUCTORS = {
    "3.1": example_3_1,
    "3.2": example_3_2,
    "3.3": example_3_3,
    "3.4": example_3_4,
    "control": contraction_control,
}


@lru_cache(maxsize=None)
def gallery_instance(key: str) -> GalleryInstance:
    """The default-parameter instance for a catalog key."""
    try:
        constructor = _CONSTRUCTORS[key]
    except KeyError:
        raise KeyError(
            f"unknown gallery key {key!r}; choose from {', '.join(GALLERY_KEYS)}"
        ) from None
    return constructor()


def default_instances() -> tuple[GalleryInstance, ...]:
    return tuple(gallery_instance(key) for key in GALLERY_KEYS)
