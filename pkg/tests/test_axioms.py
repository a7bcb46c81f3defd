from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasifix import (
    DEFAULT_DELTA_GRID,
    FAILS,
    HOLDS,
    Point,
    associated_functional,
    check_core_axioms,
    check_F,
    check_H,
    check_N,
    check_relaxed_triangle,
    check_triangle,
    enumerate_window,
    gallery_instance,
    matrix_space,
    space_from_dict,
    symmetrize,
)

import oracles


def test_default_delta_grid_descends_by_halving():
    assert DEFAULT_DELTA_GRID[0] == Fraction(1, 2)
    assert DEFAULT_DELTA_GRID[-1] == Fraction(1, 2**24)
    assert all(b == a / 2 for a, b in zip(DEFAULT_DELTA_GRID, DEFAULT_DELTA_GRID[1:]))


def test_core_axioms_on_symmetric_trio(trio):
    w = enumerate_window(trio)
    nonneg, separation, symmetry = check_core_axioms(trio, w)
    assert nonneg.holds and separation.holds and symmetry.holds
    assert nonneg.checked == 9
    assert separation.extremal == 2  # smallest round trip between distinct points


def test_symmetry_witness_is_first_in_window_order(one_way):
    w = enumerate_window(one_way)
    *_, symmetry = check_core_axioms(one_way, w)
    assert symmetry.verdict == FAILS
    assert [p.label() for p in symmetry.witness] == ["p", "q"]
    assert symmetry.witness_values == (Fraction(0), Fraction(1))
    assert symmetry.extremal == 1  # the worst asymmetry gap


def test_triangle_failure_matches_oracle(trio):
    w = enumerate_window(trio)
    report = check_triangle(trio, w)
    assert report.verdict == FAILS
    assert report.checked == 27
    assert report.witness == oracles.first_triangle_violation(trio, w)
    assert report.witness_values == (Fraction(1), Fraction(1), Fraction(10))
    # worst overshoot ratio d(x,z) / (d(x,y) + d(y,z)) = 10 / 2
    assert report.extremal == 5


def test_relaxed_triangle_gate_and_constant(trio):
    w = enumerate_window(trio)
    ok = check_relaxed_triangle(trio, w, a=Fraction(5), delta=Fraction(1))
    assert ok.holds
    bad = check_relaxed_triangle(trio, w, a=Fraction(4), delta=Fraction(1))
    assert bad.verdict == FAILS
    assert [p.label() for p in bad.witness] == ["p", "q", "r"]
    # a tight gate hides the long edge: only zero-legged triples qualify
    vacuous = check_relaxed_triangle(trio, w, a=Fraction(1), delta=Fraction(1, 2))
    assert vacuous.holds


def test_relaxed_triangle_validates_parameters(trio):
    w = enumerate_window(trio)
    with pytest.raises(ValueError):
        check_relaxed_triangle(trio, w, a=Fraction(1, 2), delta=Fraction(1))
    with pytest.raises(ValueError):
        check_relaxed_triangle(trio, w, a=Fraction(1), delta=Fraction(0))


def test_merge_bound_on_shift_space_probes():
    inst = gallery_instance("3.2")
    for probe, expected_delta in ((Point.nat(0), Fraction(1, 4)),
                                  (Point.nat(1), Fraction(1, 2))):
        report = check_N(inst.space, inst.window, probe, Fraction(1, 4))
        assert report.holds
        assert report.extremal == expected_delta
        assert f"probe={probe.label()}" in report.note


def test_merge_bound_fails_on_zero_hop_chain():
    # d(x,y) = d(y,z) = 0 but d(x,z) = 1: no delta on the grid can help
    space = space_from_dict(
        {
            "name": "zero-hops",
            "points": ["x", "y", "z"],
            "matrix": [
                ["0/1", "0/1", "1/1"],
                ["1/1", "0/1", "0/1"],
                ["1/1", "1/1", "0/1"],
            ],
        }
    )
    w = enumerate_window(space)
    report = check_N(space, w, space.domain.members[0], Fraction(1, 2))
    assert report.verdict == FAILS
    assert report.extremal is None
    assert [p.label() for p in report.witness] == ["y", "z"]
    assert report.witness_values == (Fraction(0), Fraction(0), Fraction(1))
    assert "smallest_delta=" in report.note


def test_uniform_merge_bound_on_control_space():
    inst = gallery_instance("control")
    report = check_F(inst.space, inst.window, Fraction(1, 4))
    assert report.holds
    assert report.extremal == Fraction(1, 8)  # 2*delta <= epsilon via triangle


def test_merge_bounds_validate_epsilon(trio):
    w = enumerate_window(trio)
    with pytest.raises(ValueError):
        check_N(trio, w, trio.domain.members[0], Fraction(0))
    with pytest.raises(ValueError):
        check_F(trio, w, Fraction(-1))


def test_joint_floor_positive_and_zero(trio, one_way):
    w = enumerate_window(trio)
    p, q, r = trio.domain.members
    report = check_H(trio, w, p, r)
    assert report.holds
    assert report.extremal == 2 == oracles.joint_floor(trio, w, p, r)
    assert report.witness == (q,)

    w2 = enumerate_window(one_way)
    p2, q2 = one_way.domain.members
    refuted = check_H(one_way, w2, p2, q2)
    assert refuted.verdict == FAILS
    assert refuted.extremal == 0
    with pytest.raises(ValueError):
        check_H(one_way, w2, p2, p2)


def test_reports_are_worker_invariant(trio):
    inst = gallery_instance("3.2")
    for space, window in ((trio, enumerate_window(trio)), (inst.space, inst.window)):
        base = check_triangle(space, window, 1)
        assert check_triangle(space, window, 4) == base
        core1 = check_core_axioms(space, window, 1)
        assert check_core_axioms(space, window, 4) == core1


def test_axiom_report_serializes_rationals_as_text(trio):
    w = enumerate_window(trio)
    payload = check_triangle(trio, w).to_json_dict()
    assert payload["verdict"] == FAILS
    assert payload["witness"] == ["p", "q", "r"]
    assert payload["witness_values"] == ["1/1", "1/1", "10/1"]
    assert payload["extremal"] == "5/1"


# --- randomized spaces -----------------------------------------------------


@st.composite
def finite_spaces(draw, max_size=4):
    """Random finite spaces with positive off-diagonal entries."""
    n = draw(st.integers(min_value=2, max_value=max_size))
    labels = [f"x{i}" for i in range(n)]
    matrix = [
        [
            "0/1" if i == j else f"{draw(st.integers(1, 9))}/{draw(st.integers(1, 9))}"
            for j in range(n)
        ]
        for i in range(n)
    ]
    return space_from_dict({"name": "random", "points": labels, "matrix": matrix})


@settings(max_examples=40, deadline=None)
@given(finite_spaces())
def test_capped_prefix_spaces_obey_checks(space):
    # nonnegativity and separation hold for every ingested space by schema
    w = enumerate_window(space)
    nonneg, separation, _ = check_core_axioms(space, w)
    assert nonneg.holds and separation.holds


@settings(max_examples=25, deadline=None)
@given(finite_spaces())
def test_symmetrized_closure_is_a_metric(space):
    w = enumerate_window(space)
    closed = matrix_space(associated_functional(space, w))
    sym = symmetrize(closed)
    nonneg, separation, symmetry = check_core_axioms(sym, w)
    assert nonneg.holds and separation.holds and symmetry.holds
    assert check_triangle(sym, w).holds


@settings(max_examples=20, deadline=None)
@given(finite_spaces(), st.integers(min_value=1, max_value=8))
def test_triangle_verdicts_ignore_worker_count(space, workers):
    w = enumerate_window(space)
    assert check_triangle(space, w, workers) == check_triangle(space, w, 1)
