import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regiongen import random_region, resplit

from nba_lab import Box, GeometryError, Region, SlopeTriangle, make_dyadic_cube, measure
from nba_lab.geometry import (
    box_difference,
    clipped_measure,
    grid_boxes,
    halfplane_box_area,
    intersection_measure,
    symdiff_measure,
)
from nba_lab.oracle import jordan_bounds

UNIT = Box.from_bounds((0, 1), (0, 1))
seeds = st.integers(min_value=0, max_value=10**6)


@pytest.mark.parametrize(
    "c, area",
    [(-2, 0), (-1, 0), (F(-1, 4), F(9, 32)), (0, F(1, 2)), (F(1, 4), F(23, 32)), (1, 1), (5, 1)],
)
def test_halfplane_area_unit_square(c, area):
    assert halfplane_box_area(UNIT, c) == area


def test_halfplane_area_rectangle():
    # 2 x 1 box cut by y <= x: everything except the corner triangle of area 1/2
    assert halfplane_box_area(Box.from_bounds((0, 2), (0, 1)), 0) == F(3, 2)
    assert halfplane_box_area(Box.from_bounds((0, 2), (0, 1)), -1) == F(1, 2)


def test_dyadic_cube():
    cube = make_dyadic_cube(3, (1, 5))
    assert cube.intervals == ((F(1, 8), F(1, 4)), (F(5, 8), F(3, 4)))
    with pytest.raises(GeometryError):
        make_dyadic_cube(-1, (0,))


def test_overlap_rejected():
    with pytest.raises(GeometryError):
        Region(2, [UNIT, Box.from_bounds((F(1, 2), 2), (0, 1))])
    with pytest.raises(GeometryError):
        Region(2, [SlopeTriangle(UNIT, 0), Box.from_bounds((F(1, 2), 1), (0, F(1, 4)))])
    # touching along an edge is fine
    Region(2, [UNIT, Box.from_bounds((1, 2), (0, 1))])


def test_bad_boxes():
    with pytest.raises(GeometryError):
        Box.from_bounds((1, 0))
    with pytest.raises(GeometryError):
        SlopeTriangle(Box.from_bounds((0, 1)), 0)


def test_box_difference_tiles():
    outer = Box.from_bounds((0, 3), (0, 3))
    inner = Box.from_bounds((1, 2), (1, 2))
    pieces = box_difference(outer, inner)
    assert sum(p.measure for p in pieces) == 8
    Region(2, pieces + [inner])


def test_grid_boxes_cover():
    box = Box.from_bounds((F(1, 3), 1), (0, F(1, 2)))
    cells = list(grid_boxes(2, box))
    assert len(cells) == 6
    assert clipped_measure(Region(2, cells), box) == box.measure


def test_intersection_of_triangles():
    a = Region(2, [SlopeTriangle(UNIT, 0)])
    b = Region(2, [SlopeTriangle(UNIT, F(-1, 2))])
    assert intersection_measure(a, b) == F(1, 8)
    assert symdiff_measure(a, b) == F(1, 2) - F(1, 8)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_symdiff_identities(seed):
    rng = random.Random(seed)
    a, b = random_region(rng), random_region(rng)
    inter = intersection_measure(a, b)
    assert inter == intersection_measure(b, a)
    assert symdiff_measure(a, b) == measure(a) + measure(b) - 2 * inter
    assert symdiff_measure(a, a) == 0
    assert symdiff_measure(a, resplit(rng, a)) == 0
    assert 0 <= inter <= min(measure(a), measure(b))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=6))
def test_measure_inside_jordan_bracket(seed, level):
    region = random_region(random.Random(seed))
    assert jordan_bounds(region, level).brackets(measure(region))


def test_three_dimensional_boxes():
    r = Region(3, [Box.from_bounds((0, 1), (0, 1), (0, F(1, 2))), Box.from_bounds((0, 1), (0, 1), (F(1, 2), 2))])
    assert measure(r) == 2
    assert clipped_measure(r, Box.from_bounds((0, 1), (0, 1), (0, 1))) == 1
