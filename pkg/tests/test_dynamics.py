from fractions import Fraction

import pytest

from quasifix import (
    DomainError,
    Point,
    SelfMap,
    TheoremReport,
    VerdictEntry,
    Window,
    analyze_convergence,
    enumerate_window,
    fixed_and_periodic_points,
    gallery_instance,
    lipschitz_estimate,
    picard_orbit,
    recurrent_orbit_points,
    space_from_dict,
    theorem_harness,
)

import oracles


def test_picard_orbit_records_exact_gaps():
    inst = gallery_instance("control")
    trace = picard_orbit(inst.space, inst.self_map, inst.primary_start, 4)
    assert [p.label() for p in trace.points] == ["1", "1/4", "1/16", "1/64", "1/256"]
    assert trace.gaps == (
        Fraction(3, 4),
        Fraction(3, 16),
        Fraction(3, 64),
        Fraction(3, 256),
    )
    assert trace.horizon == 4
    payload = trace.to_json_dict()
    assert payload["schema"] == "orbit-trace/1"
    assert payload["gaps"][0] == "3/4"


def test_picard_orbit_validates_inputs():
    inst = gallery_instance("control")
    with pytest.raises(ValueError):
        picard_orbit(inst.space, inst.self_map, inst.primary_start, 0)
    with pytest.raises(DomainError):
        picard_orbit(inst.space, inst.self_map, Point.atom("3/5"), 4)


def test_picard_orbit_reports_domain_escape():
    inst = gallery_instance("3.3")
    cap = inst.space.domain.nat_stop
    with pytest.raises(DomainError, match=f"{cap} -> {cap + 1}"):
        picard_orbit(inst.space, inst.self_map, Point.nat(cap), 1)


def test_convergence_on_absorbing_orbit():
    inst = gallery_instance("control")
    trace = picard_orbit(inst.space, inst.self_map, inst.primary_start, 16)
    verdict = analyze_convergence(inst.space, trace, inst.window, tol=inst.tol)
    assert verdict.cauchy
    assert verdict.cauchy_extremal == 0  # the tail is constantly zero
    zero = Point.atom("0")
    assert zero in verdict.limits
    assert verdict.dislocated_limits == (zero,)
    assert verdict.gaps_vanish and verdict.max_tail_gap == 0
    payload = verdict.to_json_dict()
    assert payload["schema"] == "orbit-analysis/1"
    assert payload["dislocated_limits"] == ["0"]


def test_convergence_parameter_validation():
    inst = gallery_instance("control")
    trace = picard_orbit(inst.space, inst.self_map, inst.primary_start, 8)
    with pytest.raises(ValueError):
        analyze_convergence(inst.space, trace, inst.window, tol=Fraction(0))
    with pytest.raises(ValueError):
        analyze_convergence(inst.space, trace, inst.window, tail=0)
    with pytest.raises(ValueError):
        analyze_convergence(inst.space, trace, inst.window, tail=9)
    with pytest.raises(ValueError):
        analyze_convergence(inst.space, trace, inst.window, ladder=(0, 99))
    with pytest.raises(ValueError):
        analyze_convergence(
            inst.space, trace, inst.window, dislocated_tol=Fraction(-1)
        )


LINE = space_from_dict(
    {
        "name": "line",
        "points": ["1", "2", "3", "4", "5", "b", "c"],
        "matrix": [
            ["0/1", "1/8", "2/8", "3/8", "4/8", "1/1", "1/1"],
            ["1/8", "0/1", "1/8", "2/8", "3/8", "1/1", "1/1"],
            ["2/8", "1/8", "0/1", "1/8", "2/8", "1/1", "1/1"],
            ["3/8", "2/8", "1/8", "0/1", "1/8", "1/1", "1/1"],
            ["4/8", "3/8", "2/8", "1/8", "0/1", "1/1", "1/1"],
            ["1/1", "1/1", "1/1", "1/1", "1/1", "0/1", "1/1"],
            ["1/1", "1/1", "1/1", "1/1", "1/1", "1/1", "0/1"],
        ],
    }
)

_STEP = {
    "1": "2", "2": "3", "3": "4", "4": "5", "5": "5",  # march, then park
    "b": "c", "c": "b",  # a genuine 2-cycle
}
MARCH = SelfMap("march", lambda p: Point.atom(_STEP[p.name]))


def test_recurrence_latch_separates_drive_by_from_revisits():
    window = enumerate_window(LINE)
    tol = Fraction(1, 8)

    parked = picard_orbit(LINE, MARCH, Point.atom("1"), 8)
    recurrent = recurrent_orbit_points(LINE, parked, window, tol)
    # "3" gets one drive-by dip; "5" is parked on through both horizons
    assert [p.label() for p in recurrent] == ["4", "5"]

    cycling = picard_orbit(LINE, MARCH, Point.atom("b"), 8)
    recurrent = recurrent_orbit_points(LINE, cycling, window, tol)
    # each cycle endpoint is revisited with a full excursion in between
    assert [p.label() for p in recurrent] == ["b", "c"]


def test_recurrence_requires_two_horizon_checkpoints():
    # parking only after the halfway mark fails the stay-put clause and
    # there is no second cluster, so nothing recurs
    window = enumerate_window(LINE)
    trace = picard_orbit(LINE, MARCH, Point.atom("1"), 5)
    half = 5 // 2
    assert trace.points[half].label() != "5"
    recurrent = recurrent_orbit_points(LINE, trace, window, Fraction(1, 16))
    assert recurrent == ()


def test_lipschitz_matches_division_oracle():
    for key, expected in (("control", Fraction(1, 2)), ("3.4", Fraction(8193, 8194))):
        inst = gallery_instance(key)
        report = lipschitz_estimate(inst.space, inst.self_map, inst.window)
        assert report.value == expected
        assert report.value == oracles.max_stretch(
            inst.space, inst.window, inst.self_map.apply
        )
        assert report.skipped == ()


def test_lipschitz_witness_and_skips():
    inst = gallery_instance("control")
    report = lipschitz_estimate(inst.space, inst.self_map, inst.window)
    assert [p.label() for p in report.witness] == ["1/2048", "1/1024"]
    assert report.witness_values[1] / report.witness_values[0] == report.value

    capped = gallery_instance("3.3")
    capped_report = lipschitz_estimate(capped.space, capped.self_map, capped.window)
    assert [p.label() for p in capped_report.skipped] == ["392"]
    payload = capped_report.to_json_dict()
    assert payload["schema"] == "lipschitz/1"
    assert payload["value"] == "289/145"


def test_lipschitz_needs_a_positive_pair(trio):
    lonely = Window(trio.domain.members[:1], "p alone")
    identity = SelfMap("identity", lambda p: p)
    with pytest.raises(ValueError):
        lipschitz_estimate(trio, identity, lonely)


def test_fixed_and_periodic_points_shapes():
    control = gallery_instance("control")
    report = fixed_and_periodic_points(control.space, control.self_map, control.window)
    assert [p.label() for p in report.fixed] == ["0"]
    assert [(p.label(), n) for p, n in report.periodic] == [("0", 1)]
    assert report.periodic_nonfixed == ()

    swap = gallery_instance("3.1")
    small = enumerate_window(swap.space, nat_max=4)
    report = fixed_and_periodic_points(swap.space, swap.self_map, small)
    assert report.fixed == ()
    assert [(p.label(), n) for p, n in report.periodic] == [("a", 2), ("b", 2)]
    # a tighter period bound hides the swap cycle
    short = fixed_and_periodic_points(swap.space, swap.self_map, small, max_period=1)
    assert short.periodic == ()
    payload = report.to_json_dict()
    assert payload["schema"] == "fixed-points/1"
    assert payload["periodic"] == [["a", 2], ["b", 2]]


def test_harness_failed_hypothesis_never_flags():
    inst = gallery_instance("3.1")
    reports = theorem_harness(inst.space, inst.self_map, inst.harness_config())
    by_name = {r.theorem: r for r in reports}
    assert set(by_name) == {"P2.1", "T2.2", "T2.3", "C2.5", "T2.4", "L4.1"}
    p21 = by_name["P2.1"]
    statuses = {e.name: e.status for e in p21.hypotheses + p21.conclusions}
    assert statuses["h_distance_evidence"] == "fails"
    assert statuses["fixed_point_exists"] == "fails"
    assert p21.consistency == "ok"  # broken hypothesis, so nothing is flagged
    assert by_name["L4.1"].all_green


def test_consistency_flag_semantics():
    holds = VerdictEntry("hyp", "holds", {})
    assumed = VerdictEntry("assumed", "assumed", {})
    broken = VerdictEntry("concl", "fails", {"why": "synthetic"})
    fine = VerdictEntry("concl", "holds", {})

    assert TheoremReport("T", (holds, assumed), (broken,)).consistency == "counterexample"
    assert TheoremReport("T", (holds,), (fine,)).consistency == "ok"
    skipped = VerdictEntry("hyp", "skipped", {})
    assert TheoremReport("T", (skipped,), (broken,)).consistency == "ok"
    report = TheoremReport("T", (holds,), (fine,))
    assert report.all_green
    assert report.to_json_dict()["consistency"] == "ok"
