from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpart.equipart import EquipartingMatrix, ParamTriple, enumerate_classes, validate
from hyperpart.errors import DegeneracyError, ParameterError
from hyperpart.moment import (
    ArrangementSpec,
    HyperplaneSpec,
    IntervalLayout,
    arrangement_to_matrix,
    curve_eval,
    det,
    layout_points,
    matrix_to_arrangement,
    rational,
    side,
    side_by_det,
    verify_equipartition,
)

EXAMPLE = ["00110011 11110000", "00011110 01100011", "01111000 00111001"]


def test_curve_eval():
    assert curve_eval(0, 4) == (0, 0, 0, 0)
    assert curve_eval(2, 3) == (2, 1, 0)
    assert curve_eval(Fraction(1, 2), 2) == (Fraction(1, 2), Fraction(-1, 8))
    for t in range(6):
        pt = curve_eval(t, 6)
        assert all(isinstance(c, Fraction) and c.denominator == 1 for c in pt)
        assert all(c != 0 for c in pt[:t]) and all(c == 0 for c in pt[t:])
    with pytest.raises(ParameterError):
        curve_eval(1, 0)


def test_rational_rejects_floats():
    assert rational("3/6") == Fraction(1, 2)
    with pytest.raises(ParameterError):
        rational(0.5)


def test_det_matches_expansion():
    m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert det(m) == 2 * (12 - 1) - 1 * (4 - 0)
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2], [2, 4]]) == 0


def test_layouts():
    lay = layout_points(ParamTriple(1, 2, 2, 1))
    assert lay.prescribed == (0,)
    lay = layout_points(ParamTriple(2, 2, 3, 0))
    assert lay.grid[0] == tuple(range(5))
    lay = layout_points(ParamTriple(2, 3, 5, 1))
    assert lay.prescribed == (0,)
    assert lay.grid == (tuple(range(1, 10)), tuple(range(10, 19)))
    assert max(lay.prescribed) < min(lay.grid[0])


def test_layout_validation():
    p = ParamTriple(1, 1, 1, 0)
    IntervalLayout(p, (), ((0, 1, 2),))
    with pytest.raises(ParameterError):
        IntervalLayout(p, (), ((0, 1, 3),))
    with pytest.raises(ParameterError):
        IntervalLayout(p, (), ((2, 1, 0),))
    with pytest.raises(ParameterError):
        IntervalLayout(p, (Fraction(-1),), ((0, 1, 2),))


def test_side_one_dimensional():
    h = HyperplaneSpec((1,))
    if side(h, curve_eval(0, 1)) < 0:
        h = h.flipped()
    assert side(h, curve_eval(0, 1)) == 1
    assert side(h, curve_eval(2, 1)) == -1
    assert side(h, curve_eval(1, 1)) == 0


def test_side_on_defining_point_is_zero():
    h = HyperplaneSpec((0, 2, 5))
    for t in h.through:
        assert side(h, curve_eval(t, 3)) == 0


def test_hyperplane_needs_distinct_points():
    with pytest.raises(ParameterError):
        HyperplaneSpec((1, 1, 2))
    with pytest.raises(ParameterError):
        HyperplaneSpec((1, 2), orientation=0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4, unique=True),
       st.fractions(min_value=-30, max_value=30, max_denominator=7))
def test_side_agrees_with_full_determinant(pts, t):
    h = HyperplaneSpec(tuple(pts))
    x = curve_eval(t, h.d)
    assert side(h, x) == side_by_det(h, x)


def test_example_matrix_geometry():
    p = ParamTriple(2, 3, 5, 1)
    m = EquipartingMatrix(p, EXAMPLE)
    lay = layout_points(p)
    a = matrix_to_arrangement(m, lay)
    # the row with 4 transitions is first and also passes through the prescribed point
    assert a.rows[0] == 0
    assert a.hyperplanes[0].through == (0, 3, 5, 7, 14)
    assert all(h.d == 5 for h in a.hyperplanes)
    assert verify_equipartition(a, lay, m)
    assert arrangement_to_matrix(a, lay) == m


def test_flipped_orientation_is_caught():
    p = ParamTriple(2, 3, 5, 1)
    m = EquipartingMatrix(p, EXAMPLE)
    lay = layout_points(p)
    a = matrix_to_arrangement(m, lay)
    bad = a.replace(1, a.hyperplanes[1].flipped())
    check = verify_equipartition(bad, lay, m)
    assert not check
    assert check.witness.startswith("block 1 subinterval 1")


def test_ham_sandwich_row():
    p = ParamTriple(1, 1, 1, 0)
    lay = layout_points(p)
    m = EquipartingMatrix(p, ["01"])
    a = matrix_to_arrangement(m, lay)
    assert a.hyperplanes[0].through == (1,)
    assert arrangement_to_matrix(a, lay) == m
    assert arrangement_to_matrix(a.replace(0, a.hyperplanes[0].flipped()), lay).rows == ((1, 0),)


def test_perturbed_arrangement_rejected():
    p = ParamTriple(2, 3, 5, 1)
    m = EquipartingMatrix(p, EXAMPLE)
    lay = layout_points(p)
    a = matrix_to_arrangement(m, lay)
    h = a.hyperplanes[1]
    # move one cut to the prescribed point, left of every interval: the row loses a transition
    moved = HyperplaneSpec((Fraction(-1, 2),) + h.through[1:], h.orientation)
    out = arrangement_to_matrix(a.replace(1, moved), lay)
    assert not validate(out)


def test_cut_inside_subinterval_is_caught():
    p = ParamTriple(1, 1, 1, 0)
    lay = layout_points(p)
    m = EquipartingMatrix(p, ["01"])
    a = ArrangementSpec(1, (HyperplaneSpec((Fraction(1, 2),)),))
    assert not verify_equipartition(a, lay, m)


def test_degenerate_midpoint():
    p = ParamTriple(1, 1, 1, 0)
    lay = layout_points(p)
    a = ArrangementSpec(1, (HyperplaneSpec((Fraction(1, 2),)),))
    with pytest.raises(DegeneracyError):
        arrangement_to_matrix(a, lay)


def test_arrangement_json():
    p = ParamTriple(2, 3, 5, 1)
    a = matrix_to_arrangement(EquipartingMatrix(p, EXAMPLE), layout_points(p))
    b = ArrangementSpec.from_json(a.to_json())
    assert a == b
    assert '"0/1"' in a.to_json()


ROUND_TRIP = [(2, 2, 3, 0), (3, 2, 5, 1), (2, 3, 5, 1), (1, 4, 4, 1), (1, 3, 3, 2), (4, 2, 6, 0)]


@pytest.mark.parametrize("p", ROUND_TRIP)
def test_round_trip_all_classes(p):
    p = ParamTriple(*p)
    lay = layout_points(p)
    q = lay.prescribed
    for m in enumerate_classes(p):
        a = matrix_to_arrangement(m, lay)
        assert verify_equipartition(a, lay, m)
        assert arrangement_to_matrix(a, lay) == m
        for h in a.hyperplanes:
            assert len(h.through) == p.d
        # prescribed points lie on the first hyperplane only
        for t in q:
            assert side(a.hyperplanes[0], curve_eval(t, p.d)) == 0
        if q:
            for h in a.hyperplanes[1:]:
                assert side(h, curve_eval(q[0], p.d)) != 0
