"""Exact Lebesgue measure on a closed family of regions in R^d.

The family consists of finite disjoint unions of

* half-open rational boxes ``[a_1, b_1) x ... x [a_d, b_d)``, and
* planar slope-1 pieces ``box ∩ {(x, y) : y <= x + c}`` (d = 2 only).

Every quantity is a :class:`fractions.Fraction`; no floating point is used
anywhere on a measure path.  Intersections stay inside the family because
two slope-1 pieces with offsets ``c1``, ``c2`` meet in a slope-1 piece with
offset ``min(c1, c2)``.
"""
from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import FamilyError, GeometryError

__all__ = [
    "Box",
    "SlopeTriangle",
    "Region",
    "Primitive",
    "make_dyadic_cube",
    "halfplane_box_area",
    "measure",
    "intersection_measure",
    "symdiff_measure",
    "clipped_measure",
    "box_difference",
]


@dataclass(frozen=True)
class Box:
    """Half-open box; ``intervals[k] = (a_k, b_k)`` with ``a_k <= b_k``."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if not self.intervals:
            raise GeometryError("a box needs at least one interval")
        clean = []
        for lo, hi in self.intervals:
            lo, hi = Fraction(lo), Fraction(hi)
            if lo > hi:
                raise GeometryError(f"interval [{lo}, {hi}) has lo > hi")
            clean.append((lo, hi))
        object.__setattr__(self, "intervals", tuple(clean))

    @classmethod
    def from_bounds(cls, *bounds) -> Box:
        """``Box.from_bounds((0, 1), (0, "1/2"))``."""
        return cls(tuple((Fraction(lo), Fraction(hi)) for lo, hi in bounds))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    @property
    def measure(self) -> Fraction:
        out = Fraction(1)
        for lo, hi in self.intervals:
            out *= hi - lo
        return out

    @property
    def is_empty(self) -> bool:
        return any(lo == hi for lo, hi in self.intervals)

    @property
    def bbox(self) -> Box:
        return self

    def intersect(self, other: Box) -> Box | None:
        """Box intersection, or ``None`` when it has no interior."""
        if other.dim != self.dim:
            raise FamilyError(f"dimension mismatch: {self.dim} vs {other.dim}")
        out = []
        for (a, b), (c, d) in zip(self.intervals, other.intervals):
            lo, hi = max(a, c), min(b, d)
            if lo >= hi:
                return None
            out.append((lo, hi))
        return Box(tuple(out))

    def contains_box(self, other: Box) -> bool:
        return all(a <= c and d <= b for (a, b), (c, d) in zip(self.intervals, other.intervals))


@dataclass(frozen=True)
class SlopeTriangle:
    """``box ∩ {(x, y) : y <= x + offset}`` for a planar box.

    The name follows the common case in which the line runs through two
    opposite corners of a square and cuts out a right triangle; in general
    the piece is any convex polygon of that form.
    """

    box: Box
    offset: Fraction

    def __post_init__(self):
        if self.box.dim != 2:
            raise GeometryError("slope-1 pieces only exist in the plane")
        object.__setattr__(self, "offset", Fraction(self.offset))

    @property
    def dim(self) -> int:
        return 2

    @property
    def measure(self) -> Fraction:
        return halfplane_box_area(self.box, self.offset)

    @property
    def bbox(self) -> Box:
        return self.box


Primitive = Union[Box, SlopeTriangle]


def make_dyadic_cube(level: int, index: Sequence[int], dim: int | None = None) -> Box:
    """The cube ``prod_k [i_k / 2^level, (i_k + 1) / 2^level)``."""
    if level < 0:
        raise GeometryError("level must be nonnegative")
    if dim is not None and len(index) != dim:
        raise GeometryError(f"index has length {len(index)}, expected dimension {dim}")
    if not index:
        raise GeometryError("empty index")
    side = Fraction(1, 2**level)
    return Box(tuple((i * side, (i + 1) * side) for i in index))


def _ramp(t: Fraction) -> Fraction:
    return t * t / 2 if t > 0 else Fraction(0)


def halfplane_box_area(box: Box, c) -> Fraction:
    """Area of ``box ∩ {y <= x + c}``, exactly.

    The indicator of ``y - x <= c`` integrated over a rectangle is a second
    difference of the ramp ``t -> max(t, 0)^2 / 2`` taken at the four
    corners.

    >>> halfplane_box_area(Box.from_bounds((0, 1), (0, 1)), 0)
    Fraction(1, 2)
    """
    if box.dim != 2:
        raise GeometryError("halfplane_box_area needs a planar box")
    c = Fraction(c)
    (x0, x1), (y0, y1) = box.intervals
    return (
        _ramp(c - y0 + x1)
        - _ramp(c - y0 + x0)
        - _ramp(c - y1 + x1)
        + _ramp(c - y1 + x0)
    )


def _primitive_intersection_measure(p: Primitive, q: Primitive, within: Box | None = None) -> Fraction:
    common = p.bbox.intersect(q.bbox)
    if common is not None and within is not None:
        common = common.intersect(within)
    if common is None:
        return Fraction(0)
    offsets = [s.offset for s in (p, q) if isinstance(s, SlopeTriangle)]
    if not offsets:
        return common.measure
    return halfplane_box_area(common, min(offsets))


class Region:
    """A finite union of pairwise disjoint primitives in R^d.

    Disjointness means "no overlap of positive measure" and is checked
    exactly when the region is built; overlapping input is rejected.
    """

    __slots__ = ("dim", "primitives", "_index")

    def __init__(self, dim: int, primitives: Iterable[Primitive] = (), *, check: bool = True):
        if dim < 1:
            raise GeometryError("dimension must be positive")
        prims = tuple(primitives)
        for p in prims:
            if not isinstance(p, (Box, SlopeTriangle)):
                raise GeometryError(f"not a primitive: {p!r}")
            if p.dim != dim:
                raise GeometryError(f"primitive of dimension {p.dim} in a {dim}-dimensional region")
        self.dim = dim
        self.primitives = prims
        self._index = None
        if check:
            self._check_disjoint()

    @classmethod
    def empty(cls, dim: int) -> Region:
        return cls(dim, ())

    @classmethod
    def from_boxes(cls, *boxes: Box) -> Region:
        if not boxes:
            raise GeometryError("use Region.empty(dim) for the empty region")
        return cls(boxes[0].dim, boxes)

    def __repr__(self) -> str:
        return f"Region(dim={self.dim}, primitives={len(self.primitives)})"

    def __eq__(self, other):
        if not isinstance(other, Region):
            return NotImplemented
        return self.dim == other.dim and self.primitives == other.primitives

    def __hash__(self):
        return hash((self.dim, self.primitives))

    def __len__(self) -> int:
        return len(self.primitives)

    def __iter__(self):
        return iter(self.primitives)

    @property
    def is_empty(self) -> bool:
        return measure(self) == 0

    def bounding_box(self) -> Box | None:
        if not self.primitives:
            return None
        lows = [min(p.bbox.intervals[k][0] for p in self.primitives) for k in range(self.dim)]
        highs = [max(p.bbox.intervals[k][1] for p in self.primitives) for k in range(self.dim)]
        return Box(tuple(zip(lows, highs)))

    def union(self, other: Region) -> Region:
        """Disjoint union; raises if the two regions overlap."""
        _same_dim(self, other)
        return Region(self.dim, self.primitives + other.primitives)

    # Sweep index on the first coordinate, used to prune pairwise tests.
    def _sweep(self):
        if self._index is None:
            prims = sorted(self.primitives, key=lambda p: p.bbox.intervals[0][0])
            los = [p.bbox.intervals[0][0] for p in prims]
            widest = max((p.bbox.intervals[0][1] - p.bbox.intervals[0][0] for p in prims), default=0)
            self._index = (prims, los, widest)
        return self._index

    def candidates(self, box: Box) -> list[Primitive]:
        """Primitives whose bounding box can overlap ``box`` with positive measure."""
        prims, los, widest = self._sweep()
        lo0, hi0 = box.intervals[0]
        start = bisect.bisect_right(los, lo0 - widest)
        stop = bisect.bisect_left(los, hi0)
        out = []
        for p in prims[start:stop]:
            if p.bbox.intersect(box) is not None:
                out.append(p)
        return out

    def _check_disjoint(self) -> None:
        prims, los, widest = self._sweep()
        for i, p in enumerate(prims):
            hi0 = p.bbox.intervals[0][1]
            stop = bisect.bisect_left(los, hi0)
            for q in prims[i + 1 : stop]:
                if _primitive_intersection_measure(p, q) != 0:
                    raise GeometryError(f"overlapping primitives: {p!r} and {q!r}")


def _same_dim(a: Region, b: Region) -> None:
    if a.dim != b.dim:
        raise FamilyError(f"dimension mismatch: {a.dim} vs {b.dim}")


def measure(region: Region) -> Fraction:
    """Lebesgue measure of a region: the sum over its disjoint primitives."""
    return sum((p.measure for p in region.primitives), Fraction(0))


def intersection_measure(a: Region, b: Region, within: Box | None = None) -> Fraction:
    """Exact ``λ(a ∩ b)``, or ``λ(a ∩ b ∩ within)``, from pairwise primitive intersections."""
    _same_dim(a, b)
    if len(a.primitives) > len(b.primitives):
        a, b = b, a
    total = Fraction(0)
    for p in a.primitives:
        reach = p.bbox if within is None else p.bbox.intersect(within)
        if reach is None:
            continue
        for q in b.candidates(reach):
            total += _primitive_intersection_measure(p, q, within)
    return total


def clipped_measure(region: Region, window: Box | None) -> Fraction:
    """``λ(region ∩ window)``; the plain measure when ``window`` is None."""
    if window is None:
        return measure(region)
    total = Fraction(0)
    for p in region.primitives:
        common = p.bbox.intersect(window)
        if common is None:
            continue
        total += halfplane_box_area(common, p.offset) if isinstance(p, SlopeTriangle) else common.measure
    return total


def symdiff_measure(a: Region, b: Region) -> Fraction:
    """``λ(a Δ b) = λ(a) + λ(b) - 2 λ(a ∩ b)``."""
    return measure(a) + measure(b) - 2 * intersection_measure(a, b)


def box_difference(outer: Box, inner: Box) -> list[Box]:
    """Split ``outer \\ inner`` into at most ``2 * dim`` disjoint boxes."""
    common = outer.intersect(inner)
    if common is None:
        return [] if outer.is_empty else [outer]
    pieces = []
    rest = list(outer.intervals)
    for k, (lo, hi) in enumerate(common.intervals):
        a, b = rest[k]
        if a < lo:
            pieces.append(Box(tuple(rest[:k]) + ((a, lo),) + tuple(rest[k + 1 :])))
        if hi < b:
            pieces.append(Box(tuple(rest[:k]) + ((hi, b),) + tuple(rest[k + 1 :])))
        rest[k] = (lo, hi)
    return pieces


def dyadic_indices(level: int, low: Fraction, high: Fraction) -> range:
    """Indices ``i`` of level-``level`` dyadic intervals meeting ``[low, high)``."""
    scale = 2**level
    first = (low * scale).__floor__()
    last = -((-high * scale).__floor__())  # ceil
    return range(first, last)


def grid_boxes(level: int, box: Box) -> Iterable[Box]:
    """Level-``level`` dyadic cubes meeting ``box``, in lexicographic index order."""
    ranges = [dyadic_indices(level, lo, hi) for lo, hi in box.intervals]
    for index in itertools.product(*ranges):
        yield make_dyadic_cube(level, index)
