"""The measure-algebra distance ``d(A, B) = sqrt(mu(A Δ B))``.

Only the squared distance is manipulated; it is an exact value in
``[0, inf]``.  The real square root appears in :func:`display_distance`
and nowhere else.
"""
from __future__ import annotations

from decimal import Decimal, localcontext

from .extended import ExtendedRational, ext
from .geometry import Region, clipped_measure, intersection_measure
from .measures import AtomSet, MeasureModel, as_mixed

__all__ = ["dist_sq", "in_closed_ball", "triangle_holds", "display_distance", "symdiff_components"]


def _region_symdiff(model: MeasureModel, a: Region | None, b: Region | None) -> ExtendedRational:
    if model.continuous is None:
        return ExtendedRational(0)
    a = a if a is not None else Region.empty(model.dim)
    b = b if b is not None else Region.empty(model.dim)
    window = model.continuous.window
    both = intersection_measure(a, b, within=window)
    return ExtendedRational(clipped_measure(a, window) + clipped_measure(b, window) - 2 * both)


def symdiff_components(model: MeasureModel, a, b):
    """The atomic parts ``(A \\ B, B \\ A)`` of a symmetric difference, or ``(None, None)``."""
    _, atoms_a = as_mixed(model, a)
    _, atoms_b = as_mixed(model, b)
    if model.atomic is None:
        return None, None
    empty = AtomSet.finite(model.atomic)
    atoms_a = atoms_a if atoms_a is not None else empty
    atoms_b = atoms_b if atoms_b is not None else empty
    return atoms_a.symdiff(atoms_b)


def dist_sq(model: MeasureModel, a, b) -> ExtendedRational:
    """Exact ``mu(A Δ B)``; may be ``INF``."""
    region_a, _ = as_mixed(model, a)
    region_b, _ = as_mixed(model, b)
    total = _region_symdiff(model, region_a, region_b)
    left, right = symdiff_components(model, a, b)
    if left is not None:
        total = total + left.mass() + right.mass()
    return total


def in_closed_ball(model: MeasureModel, center, radius_sq, x) -> bool:
    """``dist_sq(center, x) <= radius_sq``, decided exactly."""
    radius_sq = ext(radius_sq)
    if radius_sq.is_infinite:
        raise ValueError("balls need a finite radius")
    return dist_sq(model, center, x) <= radius_sq


def triangle_holds(a_sq, b_sq, c_sq) -> bool:
    """Exactly decide ``sqrt(c_sq) <= sqrt(a_sq) + sqrt(b_sq)``.

    Squaring once gives ``c <= a + b + 2 sqrt(ab)``; when ``c > a + b`` both
    sides of ``c - a - b <= 2 sqrt(ab)`` are positive, so squaring again is
    an equivalence.  Infinite values follow the usual order on ``[0, inf]``.
    """
    a, b, c = (ext(v) for v in (a_sq, b_sq, c_sq))
    if c.is_infinite:
        return a.is_infinite or b.is_infinite
    if a.is_infinite or b.is_infinite:
        return True
    a, b, c = a.value, b.value, c.value
    if c <= a + b:
        return True
    gap = c - a - b
    return gap * gap <= 4 * a * b


def display_distance(value, digits: int = 12) -> str:
    """Decimal rendering of ``sqrt(value)`` to ``digits`` significant digits (display only)."""
    value = ext(value)
    if value.is_infinite:
        return "inf"
    q = value.value
    with localcontext() as ctx:
        ctx.prec = digits + 10
        root = (Decimal(q.numerator) / Decimal(q.denominator)).sqrt()
        ctx.prec = digits
        return format(+root, f".{digits}g") if root != 0 else "0"
