"""Brute-force oracles, kept independent of the fast paths they check.

* :func:`jordan_bounds` brackets a region's measure with inner and outer
  dyadic grid mass, classifying cells by corner predicates only.
* :func:`exhaustive_best_approx` enumerates all ``2^k`` unions of a small
  partition.
* :func:`exhaustive_net_check` tests a finite net against every subset of
  a bounded atom universe.

Cost guards are hard errors (:class:`~nba_lab.errors.CostGuardError`).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CostGuardError, FamilyError
from .extended import ExtendedRational, ext
from .geometry import Box, Region, SlopeTriangle
from .measures import AtomSet, MeasureModel
from .metric import dist_sq

__all__ = [
    "JordanBounds",
    "jordan_bounds",
    "exhaustive_best_approx",
    "exhaustive_net_check",
    "net_check_candidates",
    "MAX_JORDAN_LEVEL",
    "MAX_EXHAUSTIVE_CELLS",
    "MAX_NET_UNIVERSE",
]

MAX_JORDAN_LEVEL = 14
MAX_EXHAUSTIVE_CELLS = 16
MAX_NET_UNIVERSE = 12


@dataclass(frozen=True)
class JordanBounds:
    level: int
    lower: Fraction
    upper: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def brackets(self, value) -> bool:
        return self.lower <= Fraction(value) <= self.upper


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _box_ranges(box: Box, scale: int):
    """Per-axis index ranges of cells inside the box and of cells meeting it."""
    inside, meeting = [], []
    for lo, hi in box.intervals:
        a, b = lo * scale, hi * scale
        inside.append(range(_ceil(a), _floor(b)))
        meeting.append(range(_floor(a), _ceil(b)))
    return inside, meeting


def _box_cells(box: Box, scale: int):
    """``(number of inside cells, set of boundary cells)`` for an axis-aligned box."""
    inside, meeting = _box_ranges(box, scale)
    count = math.prod(len(r) for r in inside)
    boundary = set()
    if any(len(r) == 0 for r in meeting):
        return count, boundary
    for k in range(len(meeting)):
        edge = set(meeting[k]) - set(inside[k])
        if not edge:
            continue
        axes = list(meeting)
        axes[k] = sorted(edge)
        boundary.update(itertools.product(*axes))
    return count, boundary


def _triangle_cells(tri: SlopeTriangle, scale: int):
    """Inside count and boundary cells of ``box ∩ {y <= x + c}``.

    A cell ``[x0, x1) x [y0, y1)`` lies inside iff it lies in the box and its
    upper-left corner satisfies ``y1 - x0 <= c``; it meets the piece in
    positive area iff it meets the box and ``y0 - x1 < c``.
    """
    (xr_in, yr_in), (xr_meet, yr_meet) = _box_ranges(tri.box, scale)
    c = tri.offset * scale  # in cell units
    count = 0
    boundary = set()
    for i in xr_meet:
        # rows j meeting: j - (i + 1) < c  <=>  j < c + i + 1
        top_meet = min(yr_meet.stop, _ceil(c + i + 1))
        meet_rows = range(yr_meet.start, top_meet)
        if i in xr_in:
            # rows j inside: (j + 1) - i <= c  <=>  j <= c + i - 1
            top_in = min(yr_in.stop, _floor(c + i - 1) + 1)
            in_rows = range(yr_in.start, max(yr_in.start, top_in))
        else:
            in_rows = range(0)
        count += len(in_rows)
        for j in meet_rows:
            if j not in in_rows:
                boundary.add((i, j))
    return count, boundary


def jordan_bounds(region, level: int) -> JordanBounds:
    """Inner and outer dyadic Jordan mass of ``region`` at grid level ``level``.

    ``lower`` counts cells lying inside a single primitive; ``upper`` adds
    every other cell that meets the region in positive measure.  Because
    primitives are disjoint, a cell on the boundary of one primitive is
    never inside another.
    """
    if not isinstance(region, Region):
        raise FamilyError("jordan_bounds needs a bounded region")
    if level < 0:
        raise ValueError("level must be nonnegative")
    if level > MAX_JORDAN_LEVEL:
        raise CostGuardError(f"jordan_bounds level {level} exceeds the guard {MAX_JORDAN_LEVEL}")
    scale = 2**level
    inside = 0
    boundary = set()
    for p in region.primitives:
        if isinstance(p, SlopeTriangle):
            count, edge = _triangle_cells(p, scale)
        else:
            count, edge = _box_cells(p, scale)
        inside += count
        boundary |= edge
    cell = Fraction(1, scale**region.dim)
    lower = inside * cell
    return JordanBounds(level, lower, lower + len(boundary) * cell)


# ---------------------------------------------------------------------------
# best approximation by enumeration


def exhaustive_best_approx(model: MeasureModel, partition, target):
    """Minimise ``mu(A Δ target)`` over all ``2^k`` unions of partition cells.

    Each union's error is the sum over cells of ``mu(P \\ B)`` (cell taken)
    or ``mu(P ∩ B)`` (cell left out), with per-cell masses from the region
    and atom arithmetic.  Returns ``(A_min, error)``; among equal minima the
    first in binary mask order wins.
    """
    from .approx import cell_split, union_of_cells

    cells = list(partition.cells)
    k = len(cells)
    if k > MAX_EXHAUSTIVE_CELLS:
        raise CostGuardError(f"partition has {k} cells; enumeration is capped at {MAX_EXHAUSTIVE_CELLS}")
    taken, left = [], []
    for cell in cells:
        inside, outside = cell_split(model, cell, target)
        taken.append(outside)
        left.append(inside)
    finite = [v.value for v in taken + left if v.is_finite]
    denom = math.lcm(*(q.denominator for q in finite)) if finite else 1

    def scaled(v: ExtendedRational):
        return (1, 0) if v.is_infinite else (0, int(v.value * denom))

    # errs[mask] as (number of infinite terms, scaled finite sum), built by doubling
    errs = [(0, 0)]
    for i in range(k):
        ti, tv = scaled(taken[i])
        li, lv = scaled(left[i])
        errs = [(a + li, b + lv) for a, b in errs] + [(a + ti, b + tv) for a, b in errs]
    best_mask = min(range(len(errs)), key=lambda m: (errs[m][0] > 0, errs[m][1], m))
    inf_terms, value = errs[best_mask]
    error = ExtendedRational(None) if inf_terms else ExtendedRational(Fraction(value, denom))
    chosen = [cells[i] for i in range(k) if best_mask >> i & 1]
    return union_of_cells(model, target, chosen), error


# ---------------------------------------------------------------------------
# nets by enumeration


def net_check_candidates(model: MeasureModel, bound: int):
    """Every subset of the first ``bound`` finite atoms, with tail patterns and E_inf subsets.

    Tail patterns are "nothing" and "every finite atom beyond the first
    ``bound``"; the second is skipped when the universe has no such atoms.
    """
    u = model.atomic
    if u is None:
        yield None
        return
    head = list(itertools.islice(u.finite_atoms(), bound))
    infinite = list(u.infinite_explicit())
    patterns = [AtomSet.finite(u)]
    beyond = AtomSet.everything(u).minus(AtomSet.finite(u, head + infinite)) if u.is_countable else None
    if beyond is not None and not beyond.is_empty:
        patterns.append(beyond)
    for r in range(len(infinite) + 1):
        for inf_part in itertools.combinations(infinite, r):
            for mask in range(1 << len(head)):
                ids = [a for i, a in enumerate(head) if mask >> i & 1] + list(inf_part)
                base = AtomSet.finite(u, ids)
                for tail in patterns:
                    yield base.union(tail)


def exhaustive_net_check(model: MeasureModel, net, eps_sq, universe_bound: int) -> bool:
    """True iff every enumerated candidate lies within ``dist_sq < eps_sq`` of some net element."""
    if universe_bound > MAX_NET_UNIVERSE:
        raise CostGuardError(f"universe bound {universe_bound} exceeds the guard {MAX_NET_UNIVERSE}")
    eps_sq = ext(eps_sq)
    elements = list(getattr(net, "elements", net))
    if model.atomic is None:
        if model.continuous is not None:
            raise FamilyError("net checks enumerate atom sets; this model has a continuous part")
        return True
    for cand in net_check_candidates(model, universe_bound):
        if not any(dist_sq(model, cand, e) < eps_sq for e in elements):
            return False
    return True

