from fractions import Fraction as F

from nba_lab import Box, Region, SlopeTriangle, make_Tm
from nba_lab.svg import polygon_of, render


def test_polygon_of_triangle():
    tri = SlopeTriangle(Box.from_bounds((0, 1), (0, 1)), 0)
    assert polygon_of(tri) == [(0, 0), (1, 0), (1, 1)]
    cut = SlopeTriangle(Box.from_bounds((0, 1), (0, 1)), F(1, 2))
    assert len(polygon_of(cut)) == 5


def test_render_is_deterministic():
    layers = [(make_Tm(2), None), (Region(2, [Box.from_bounds((0, F(1, 2)), (0, 1))]), "#000000")]
    a = render(layers, grid_level=2)
    assert a == render(layers, grid_level=2)
    assert a.count("<polygon") == 17
    assert a.count("<line") == 10
