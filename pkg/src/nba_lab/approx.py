"""Finite filtrations and best approximation inside a finite sigma-algebra.

For a partition ``P_1, ..., P_k`` of the space, the union of cells that is
closest to a target ``B`` in ``mu(. Δ B)`` keeps exactly the cells where
``B`` holds the strict majority of the mass:

    include P  iff  mu(P \\ B) < mu(P ∩ B),
    error      =    sum_P min(mu(P ∩ B), mu(P \\ B)).

Ties are excluded.  Infinite masses are compared in the extended order.

The standard filtration of a Lebesgue model at level ``n`` is the dyadic
grid of side ``2^-n`` on ``[-n, n)^d`` (clipped to the window) plus one
outside cell; for a countable atomic universe it is the singletons of the
first ``n`` finite-mass atoms (and of every explicit infinite atom) plus
one residual cell.  Dyadic grids are never materialised for the search:
best approximation walks a quadtree (2^d-tree) and only descends into
cubes that the target splits.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import FamilyError, NotFoundError, PreconditionError
from .extended import INF, ZERO, ExtendedRational, ext, ext_min
from .geometry import (
    Box,
    Region,
    SlopeTriangle,
    box_difference,
    clipped_measure,
    grid_boxes,
    intersection_measure,
    measure,
)
from .measures import AtomSet, MeasureModel, MixedSet, as_mixed, mu
from .metric import dist_sq

__all__ = [
    "Complement",
    "Partition",
    "ApproxReport",
    "SetProbe",
    "ProbeReport",
    "standard_filtration",
    "best_approximation",
    "approx_error",
    "find_level",
    "uniform_error",
    "probe_approximability",
    "refines",
    "default_n_max",
    "cell_split",
    "union_of_cells",
]

DEFAULT_N_MAX = 24
MATERIALIZE_LIMIT = 1 << 16

# result tags used when a construction is refused
UNCOUNTABLE_FILTRATION = "ATOMIC_SEPARABILITY_B"


def default_n_max() -> int:
    """Search depth: ``NBA_LAB_NMAX`` when set, else 24."""
    raw = os.environ.get("NBA_LAB_NMAX")
    if raw is None or raw.strip() == "":
        return DEFAULT_N_MAX
    value = int(raw)
    if value < 1:
        raise ValueError("NBA_LAB_NMAX must be a positive integer")
    return value


@dataclass(frozen=True)
class Complement:
    """``R^d`` minus a box (the whole space when ``excluded`` is None); infinite Lebesgue mass."""

    dim: int
    excluded: Box | None = None


Cell = Union[Region, Complement, AtomSet]


def _cube(n: int, dim: int) -> Box:
    return Box(tuple((Fraction(-n), Fraction(n)) for _ in range(dim)))


class Partition:
    """A finite measurable partition of a model's space at filtration level ``level``.

    Cells are materialised on first access to :attr:`cells`.  Partitions
    built by :func:`standard_filtration` also carry their dyadic structure
    (``dyadic_level``) so that best approximation can avoid the cell list.
    """

    def __init__(
        self,
        model: MeasureModel,
        level: int,
        cells: Sequence[Cell] | None = None,
        *,
        dyadic_level: int | None = None,
        atomic_cells: Sequence[AtomSet] = (),
    ):
        self.model = model
        self.level = level
        self.dyadic_level = dyadic_level
        self.atomic_cells = tuple(atomic_cells)
        self._cells = tuple(cells) if cells is not None else None
        if cells is None and dyadic_level is None:
            self._cells = self.atomic_cells

    def __repr__(self):
        return f"Partition(level={self.level}, kind={self.model.kind})"

    @property
    def cells(self) -> tuple[Cell, ...]:
        if self._cells is None:
            self._cells = tuple(_dyadic_cells(self.model, self.dyadic_level)) + self.atomic_cells
        return self._cells

    def __len__(self):
        return len(self.cells)

    def cell_mass(self, cell: Cell) -> ExtendedRational:
        return _cell_mass(self.model, cell)

    def verify(self) -> bool:
        """Exact check that the cells are disjoint and cover the space."""
        model = self.model
        regions = [c for c in self.cells if isinstance(c, Region)]
        comps = [c for c in self.cells if isinstance(c, Complement)]
        atoms = [c for c in self.cells if isinstance(c, AtomSet)]
        if model.continuous is not None:
            Region(model.dim, [p for r in regions for p in r.primitives])  # raises on overlap
            window = model.continuous.window
            if window is None:
                if len(comps) != 1:
                    return False
                inner = comps[0].excluded
                covered = sum((measure(r) for r in regions), Fraction(0))
                if inner is None:
                    if covered != 0:
                        return False
                else:
                    if covered != inner.measure:
                        return False
                    if any(intersection_measure(r, Region(model.dim, (inner,))) != measure(r) for r in regions):
                        return False
            else:
                if comps:
                    return False
                covered = sum((clipped_measure(r, window) for r in regions), Fraction(0))
                if covered != window.measure or sum(measure(r) for r in regions) != covered:
                    return False
        if model.atomic is not None:
            union = AtomSet.finite(model.atomic)
            for a in atoms:
                if not union.intersect(a).is_empty:
                    return False
                union = union.union(a)
            if model.atomic.is_countable:
                if not AtomSet.everything(model.atomic).minus(union).is_empty:
                    return False
        return True


def _dyadic_cells(model: MeasureModel, n: int):
    """Materialise the continuous cells of the level-``n`` standard partition."""
    cont = model.continuous
    dim = cont.dim
    cube = _cube(n, dim)
    window = cont.window
    reach = cube if window is None else cube.intersect(window)
    count = 0
    if n > 0 and reach is not None:
        for cell in grid_boxes(n, reach):
            clip = cell if window is None else cell.intersect(window)
            if clip is None:
                continue
            count += 1
            if count > MATERIALIZE_LIMIT:
                raise PreconditionError(
                    f"level-{n} partition has more than {MATERIALIZE_LIMIT} cells; "
                    "use best_approximation on the partition object instead of listing cells"
                )
            yield Region(dim, (clip,), check=False)
    if window is None:
        yield Complement(dim, cube if n > 0 else None)
    else:
        rest = box_difference(window, cube) if n > 0 else [window]
        if rest and not all(b.is_empty for b in rest):
            yield Region(dim, rest, check=False)


def standard_filtration(model: MeasureModel, n: int) -> Partition:
    """Level ``n`` of the standard filtration of ``model``.

    Lebesgue part: dyadic cubes of side ``2^-n`` inside ``[-n, n)^d``, clipped
    to the window, plus the outside cell.  Atomic part: singletons of the
    explicit infinite atoms and of the first ``n`` finite atoms, plus the
    residual cell.  Mixtures get both lists side by side.
    """
    if n < 0:
        raise ValueError("filtration levels are nonnegative")
    atomic_cells: list[AtomSet] = []
    u = model.atomic
    if u is not None:
        if not u.is_countable:
            raise PreconditionError(
                "an uncountable atom universe has no filtration by finitely many singletons; "
                "no finite filtration approximates every finite-measure set",
                citation=UNCOUNTABLE_FILTRATION,
            )
        chosen = list(u.infinite_explicit()) + list(itertools.islice(u.finite_atoms(), n))
        atomic_cells = [AtomSet.finite(u, [a]) for a in chosen]
        residual = AtomSet.everything(u).minus(AtomSet.finite(u, chosen))
        if not residual.is_empty:
            atomic_cells.append(residual)
    if model.continuous is None:
        return Partition(model, n, atomic_cells=atomic_cells)
    return Partition(model, n, dyadic_level=n, atomic_cells=atomic_cells)


def refines(fine: Partition, coarse: Partition) -> bool:
    """Every cell of ``fine`` lies inside a single cell of ``coarse`` (up to null sets)."""
    for cell in fine.cells:
        hits = [c for c in coarse.cells if _cell_inside(fine.model, cell, c)]
        if len(hits) != 1 and _cell_mass(fine.model, cell) != 0:
            return False
    return True


def _cell_inside(model, small: Cell, big: Cell) -> bool:
    if isinstance(small, AtomSet) or isinstance(big, AtomSet):
        if not (isinstance(small, AtomSet) and isinstance(big, AtomSet)):
            return False
        return small.minus(big).is_empty
    if isinstance(small, Region) and isinstance(big, Region):
        return intersection_measure(small, big) == measure(small)
    if isinstance(small, Region) and isinstance(big, Complement):
        if big.excluded is None:
            return True
        return intersection_measure(small, Region(small.dim, (big.excluded,))) == 0
    if isinstance(small, Complement) and isinstance(big, Complement):
        if big.excluded is None:
            return True
        if small.excluded is None:
            return False
        return small.excluded.contains_box(big.excluded)
    return False


# ---------------------------------------------------------------------------
# per-cell masses


def _cell_mass(model: MeasureModel, cell: Cell) -> ExtendedRational:
    if isinstance(cell, Complement):
        return INF
    return mu(model, cell)


def cell_split(model: MeasureModel, cell: Cell, target) -> tuple[ExtendedRational, ExtendedRational]:
    """``(mu(cell ∩ target), mu(cell \\ target))``."""
    region_t, atoms_t = as_mixed(model, target)
    if isinstance(cell, AtomSet):
        if atoms_t is None:
            return ZERO, cell.mass()
        return cell.intersect(atoms_t).mass(), cell.minus(atoms_t).mass()
    cont = model.continuous
    if cont is None:
        raise FamilyError("continuous cell in a model without a continuous part")
    if isinstance(cell, Complement):
        if region_t is None:
            return ZERO, INF
        inside = clipped_measure(region_t, cont.window)
        if cell.excluded is not None:
            inside -= clipped_measure(region_t, cell.excluded)
        return ExtendedRational(inside), INF
    total = clipped_measure(cell, cont.window)
    if region_t is None:
        return ZERO, ExtendedRational(total)
    inside = intersection_measure(cell, region_t, within=cont.window)
    return ExtendedRational(inside), ExtendedRational(total - inside)


# ---------------------------------------------------------------------------
# dyadic quadtree walk


def _lcm_denominators(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def _scaled_primitives(region: Region, scale: int):
    """Primitives in integer coordinates ``x * scale``: ``(lo, hi, offset-or-None)``."""
    out = []
    for p in region.primitives:
        box = p.bbox
        lo = tuple(int(a * scale) for a, _ in box.intervals)
        hi = tuple(int(b * scale) for _, b in box.intervals)
        c = int(p.offset * scale) if isinstance(p, SlopeTriangle) else None
        out.append((lo, hi, c))
    return out


def _ramp2(t: int) -> int:
    return t * t if t > 0 else 0


def _doubled_mass(prim, lo, hi) -> int:
    """Twice the measure of ``prim`` inside the integer box ``[lo, hi)``; 0 if disjoint."""
    plo, phi, c = prim
    a = [max(x, y) for x, y in zip(plo, lo)]
    b = [min(x, y) for x, y in zip(phi, hi)]
    if any(u >= v for u, v in zip(a, b)):
        return 0
    if c is None:
        out = 2
        for u, v in zip(a, b):
            out *= v - u
        return out
    (x0, y0), (x1, y1) = a, b
    return _ramp2(c - y0 + x1) - _ramp2(c - y0 + x0) - _ramp2(c - y1 + x1) + _ramp2(c - y1 + x0)


def _dyadic_best(model: MeasureModel, n: int, region_t: Region | None):
    """Best approximation of the continuous component on the level-``n`` grid.

    The walk runs in integer coordinates scaled by ``2^n`` times the common
    denominator of the input, and in doubled areas, so it is exact and
    avoids rational arithmetic in the inner loop.  Returns
    ``(boxes, error)`` with ``boxes`` a disjoint list covering the chosen
    cells (and the outside cell when it wins).
    """
    cont = model.continuous
    dim = cont.dim
    window = cont.window
    cube = _cube(n, dim)
    chosen: list[Box] = []
    error2 = 0
    inside2 = 0

    if region_t is not None and region_t.primitives and n > 0:
        coords = [v for p in region_t.primitives for iv in p.bbox.intervals for v in iv]
        coords += [p.offset for p in region_t.primitives if isinstance(p, SlopeTriangle)]
        if window is not None:
            coords += [v for iv in window.intervals for v in iv]
        unit = _lcm_denominators(coords)
        scale = unit * 2**n
        prims = _scaled_primitives(region_t, scale)
        wlo = whi = None
        if window is not None:
            wlo = tuple(int(a * scale) for a, _ in window.intervals)
            whi = tuple(int(b * scale) for _, b in window.intervals)

        def emit(lo, hi):
            chosen.append(Box(tuple((Fraction(a, scale), Fraction(b, scale)) for a, b in zip(lo, hi))))

        def walk(lo, size, depth, cands):
            nonlocal error2, inside2
            hi = tuple(x + size for x in lo)
            clo, chi = lo, hi
            if wlo is not None:
                clo = tuple(max(x, y) for x, y in zip(lo, wlo))
                chi = tuple(min(x, y) for x, y in zip(hi, whi))
                if any(u >= v for u, v in zip(clo, chi)):
                    return
            here = []
            inside = 0
            for p in cands:
                m = _doubled_mass(p, clo, chi)
                if m:
                    here.append(p)
                    inside += m
            if inside == 0:
                return
            total = 2
            for u, v in zip(clo, chi):
                total *= v - u
            if inside == total:
                emit(clo, chi)
                inside2 += inside
                return
            if depth == n:
                inside2 += inside
                rest = total - inside
                if rest < inside:
                    emit(clo, chi)
                    error2 += rest
                else:
                    error2 += inside
                return
            half = size // 2
            for corner in itertools.product((0, half), repeat=dim):
                walk(tuple(x + d for x, d in zip(lo, corner)), half, depth + 1, here)

        reach = region_t.bounding_box().intersect(cube)
        if reach is not None and window is not None:
            reach = reach.intersect(window)
        if reach is not None:
            for root in grid_boxes(0, reach):
                lo = tuple(int(a * scale) for a, _ in root.intervals)
                walk(lo, scale, 0, prims)
        inside_cube = Fraction(inside2, 2 * scale**dim)
        error = Fraction(error2, 2 * scale**dim)
    else:
        inside_cube = Fraction(0)
        error = Fraction(0)

    # the outside cell
    total_t = clipped_measure(region_t, window) if region_t is not None else Fraction(0)
    out_in = ExtendedRational(total_t - inside_cube)
    if window is None:
        out_rest = INF
        outside_boxes: list[Box] = []
    else:
        outside_boxes = box_difference(window, cube) if n > 0 else [window]
        out_rest = ExtendedRational(sum((b.measure for b in outside_boxes), Fraction(0))) - out_in
    if out_rest < out_in:
        if window is None:
            raise FamilyError("the unbounded outside cell is not a representable approximant")
        chosen.extend(b for b in outside_boxes if not b.is_empty)
    return chosen, ExtendedRational(error) + ext_min(out_in, out_rest)


def best_approximation(model: MeasureModel, partition: Partition, target):
    """Closest union of partition cells to ``target``.

    Returns ``(approximant, error)`` with ``error = mu(approximant Δ target)``.
    """
    region_t, atoms_t = as_mixed(model, target)
    error = ZERO
    boxes: list = []
    region_cells: list[Region] = []
    atom_union = AtomSet.finite(model.atomic) if model.atomic is not None else None

    if partition.dyadic_level is not None and partition._cells is None:
        chosen, err = _dyadic_best(model, partition.dyadic_level, region_t)
        boxes.extend(chosen)
        error = error + err
        cells = partition.atomic_cells
    else:
        cells = partition.cells
    for cell in cells:
        inside, outside = cell_split(model, cell, target)
        error = error + ext_min(inside, outside)
        if outside < inside:
            if isinstance(cell, AtomSet):
                atom_union = atom_union.union(cell)
            elif isinstance(cell, Complement):
                raise FamilyError("the unbounded outside cell is not a representable approximant")
            else:
                region_cells.append(cell)
    return _assemble(model, target, boxes, region_cells, atom_union), error


def union_of_cells(model: MeasureModel, target, cells) -> object:
    """The union of the given partition cells, typed like approximants of ``target``."""
    region_cells, atom_union = [], AtomSet.finite(model.atomic) if model.atomic is not None else None
    for cell in cells:
        if isinstance(cell, AtomSet):
            atom_union = atom_union.union(cell)
        elif isinstance(cell, Complement):
            raise FamilyError("the unbounded outside cell is not a representable approximant")
        else:
            region_cells.append(cell)
    return _assemble(model, target, [], region_cells, atom_union)


def _assemble(model, target, boxes, region_cells, atom_union):
    region = None
    if model.dim is not None and (model.continuous is not None or not isinstance(target, AtomSet)):
        prims = list(boxes) + [p for r in region_cells for p in r.primitives]
        region = Region(model.dim, prims, check=False)
    if isinstance(target, MixedSet) or model.kind == "mixture":
        if region is None:
            region = Region.empty(model.dim)
        if atom_union is None:
            raise FamilyError("mixed target in a model without atoms")
        return MixedSet(region, atom_union)
    if isinstance(target, AtomSet):
        return atom_union
    return region


def approx_error(model: MeasureModel, partition: Partition, target) -> ExtendedRational:
    """``min over A in sigma(partition) of mu(A Δ target)``."""
    return best_approximation(model, partition, target)[1]


# ---------------------------------------------------------------------------
# level search and probes


@dataclass
class ApproxReport:
    """Outcome of a level search for a single target."""

    target: object
    level: int
    approximant: object
    error: ExtendedRational
    eps_sq: ExtendedRational
    history: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.error < self.eps_sq


def find_level(model: MeasureModel, target, eps_sq, n_max: int | None = None) -> ApproxReport:
    """Smallest level ``n <= n_max`` at which ``target`` is approximated to within ``eps_sq``.

    Raises :class:`NotFoundError` (carrying the best error seen) when the
    search runs out of levels.
    """
    eps_sq = ext(eps_sq)
    if eps_sq == 0 or eps_sq.is_infinite:
        raise ValueError("eps_sq must be a positive rational")
    if not model.outer_regular:
        raise PreconditionError("level search needs an outer regular model", citation="OUTER_REGULAR_FIN_SEPARABLE")
    if mu(model, target).is_infinite:
        raise PreconditionError("level search needs a target of finite measure")
    n_max = default_n_max() if n_max is None else n_max
    history = []
    for n in range(1, n_max + 1):
        approximant, error = best_approximation(model, standard_filtration(model, n), target)
        history.append(error)
        if error < eps_sq:
            check = dist_sq(model, target, approximant)
            if check != error:
                raise AssertionError(f"approximant error {check} disagrees with the cell sum {error}")
            return ApproxReport(target, n, approximant, error, eps_sq, history)
    best = min(history) if history else None
    raise NotFoundError(f"no level <= {n_max} reaches error < {eps_sq}", best=best, level=n_max)


def uniform_error(model: MeasureModel, partition: Partition, family) -> ExtendedRational:
    """Worst best-approximation error over a finite family."""
    worst = ZERO
    for s in family:
        e = approx_error(model, partition, s)
        if e > worst:
            worst = e
    return worst


@dataclass
class SetProbe:
    index: int
    found: bool
    level: int | None
    error: ExtendedRational | None


@dataclass
class ProbeReport:
    """Per-set level search results plus the single-level (uniform) verdict."""

    eps_sq: ExtendedRational
    n_max: int
    per_set: list
    uniform: bool
    uniform_level: int | None
    uniform_errors: list = field(default_factory=list)

    @property
    def all_found(self) -> bool:
        return all(p.found for p in self.per_set)


def _probe_one(args):
    i, model, s, eps_sq, n_max = args
    try:
        rep = find_level(model, s, eps_sq, n_max)
    except NotFoundError as exc:
        return SetProbe(i, False, None, exc.best)
    return SetProbe(i, True, rep.level, rep.error)


def probe_approximability(model, family, eps_sq, n_max: int | None = None, max_workers: int | None = None) -> ProbeReport:
    """Run :func:`find_level` on every set and look for one level serving them all.

    Results are reported in input order whatever the execution order.
    """
    eps_sq = ext(eps_sq)
    n_max = default_n_max() if n_max is None else n_max
    family = list(family)
    jobs = [(i, model, s, eps_sq, n_max) for i, s in enumerate(family)]
    if max_workers and max_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            per_set = list(pool.map(_probe_one, jobs))
    else:
        per_set = [_probe_one(j) for j in jobs]
    if not family:
        return ProbeReport(eps_sq, n_max, [], True, 1, [])
    uniform_errors = []
    uniform_level = None
    if all(p.found for p in per_set):
        # errors never increase along a refining filtration, so the first
        # level serving every set is the largest individual level
        candidate = max(p.level for p in per_set)
        worst = uniform_error(model, standard_filtration(model, candidate), family)
        uniform_errors.append((candidate, worst))
        if worst < eps_sq:
            uniform_level = candidate
    return ProbeReport(eps_sq, n_max, per_set, uniform_level is not None, uniform_level, uniform_errors)
