"""Explicit witnesses for the positive and negative classification results.

Negative witnesses: the triangle sets ``T_m`` and their thin variants
``T_m^eps`` in the unit square, the fraction-``alpha`` sets that sit at a
fixed distance from every coarse approximant, and families of singletons
that are pairwise far apart.  Positive witness: a finite eps-net for a
purely atomic model whose finite atoms have summable weights.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .approx import Complement, Partition, best_approximation, standard_filtration
from .errors import CostGuardError, FamilyError, InputError, PreconditionError
from .extended import INF, ExtendedRational, ext
from .geometry import Box, Region, SlopeTriangle, measure
from .measures import AtomSet, MeasureModel, MixedSet, UncountableTail, atoms_fin, atoms_inf
from .metric import dist_sq

__all__ = [
    "make_Tm",
    "make_Tm_eps",
    "cell_witness_error",
    "WitnessReport",
    "verify_cell_witness",
    "AlphaWitness",
    "make_alpha_witness",
    "DiscreteFamily",
    "discrete_family",
    "EpsNet",
    "build_net",
    "verify_net",
    "find_uncovered",
]

MAX_NET_LEVEL = 20
UNIT_SQUARE = Box.from_bounds((0, 1), (0, 1))


def _check_m(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    return m


def make_Tm(m: int) -> Region:
    """Lower-right halves of the level-``m`` cells of the unit square.

    Cell ``(i, j)`` (1-based, side ``h = 2^-m``) contributes
    ``{y <= x + (j - i) h}`` inside the cell, which is the triangle below its
    main diagonal.  The total area is 1/2 for every ``m``.
    """
    _check_m(m)
    h = Fraction(1, 2**m)
    prims = []
    for i in range(1, 2**m + 1):
        for j in range(1, 2**m + 1):
            cell = Box((((i - 1) * h, i * h), ((j - 1) * h, j * h)))
            prims.append(SlopeTriangle(cell, (j - i) * h))
    return Region(2, prims, check=False)


def make_Tm_eps(m: int, eps_sq) -> Region:
    """A set of area ``eps_sq`` spread evenly over the level-``m`` cells.

    Each cell receives the sub-box in its lower-right corner of width
    ``h / 2`` and height ``2 eps_sq h``, so every cell carries exactly
    ``eps_sq h^2``.  Requires ``0 < eps_sq <= 1/2``.
    """
    _check_m(m)
    s = ext(eps_sq)
    if s.is_infinite or not (0 < s.value <= Fraction(1, 2)):
        raise InputError(f"eps_sq must satisfy 0 < eps_sq <= 1/2, got {s}")
    s = s.value
    h = Fraction(1, 2**m)
    prims = []
    for i in range(1, 2**m + 1):
        for j in range(1, 2**m + 1):
            x1, y0 = i * h, (j - 1) * h
            prims.append(Box(((x1 - h / 2, x1), (y0, y0 + 2 * s * h))))
    return Region(2, prims, check=False)


def cell_witness_error(m: int, eps_sq, k: int) -> Fraction:
    """``mu(A Δ T_m^eps)`` when ``A`` is a union of ``k`` level-``m`` cells.

    Each chosen cell costs ``(1 - eps_sq) / 4^m`` and each skipped cell
    ``eps_sq / 4^m``.
    """
    s = Fraction(ext(eps_sq).value)
    cells = 4**m
    if not 0 <= k <= cells:
        raise InputError(f"k must lie in 0..{cells}")
    return (k * (1 - s) + (cells - k) * s) / cells


def _require_unit_square(model: MeasureModel) -> None:
    cont = model.continuous
    if model.atomic is not None or cont is None or cont.window != UNIT_SQUARE:
        raise FamilyError("this witness lives in Lebesgue measure on the unit square [0,1)^2")


@dataclass
class WitnessReport:
    witness: Region
    level: int
    eps_sq: ExtendedRational
    error: ExtendedRational
    closed_form: Fraction
    minimizer_cells: int

    @property
    def verdict(self) -> bool:
        """The witness stays at squared distance at least ``eps_sq`` from the level's sigma-algebra."""
        return self.error >= self.eps_sq


def verify_cell_witness(model: MeasureModel, m: int, eps_sq) -> WitnessReport:
    """Best approximation of ``T_m^eps`` by level-``m`` cell unions, with the closed-form check."""
    _require_unit_square(model)
    witness = make_Tm_eps(m, eps_sq)
    partition = standard_filtration(model, m)
    approximant, error = best_approximation(model, partition, witness)
    k = int(measure(approximant) * 4**m)
    closed = min(cell_witness_error(m, eps_sq, j) for j in (0, 4**m))  # affine in k
    if error != closed:
        raise AssertionError(f"best approximation error {error} disagrees with the closed form {closed}")
    return WitnessReport(witness, m, ext(eps_sq), error, closed, k)


@dataclass
class AlphaWitness:
    """A set filling the same fraction ``alpha`` of every finite-mass cell.

    ``error`` is the best-approximation error over the partition's
    sigma-algebra.  When no cell has finite mass the witness is empty and
    ``error`` is infinite: every nonempty union of cells is then at
    infinite distance from it.
    """

    set: object
    alpha: Fraction | None
    mass: ExtendedRational
    error: ExtendedRational


def _sub_box(box: Box, alpha: Fraction) -> Box:
    (lo, hi), rest = box.intervals[0], box.intervals[1:]
    return Box(((lo, lo + alpha * (hi - lo)),) + rest)


def make_alpha_witness(model: MeasureModel, partition: Partition, eps_sq) -> AlphaWitness:
    """A set of mass ``eps_sq`` occupying fraction ``eps_sq / total`` of every finite-mass cell.

    ``total`` is the summed mass of the finite continuous cells, and the
    construction needs ``eps_sq < total / 2`` so that leaving every cell out
    is the unique best choice.
    """
    if not model.has_nonatomic_part:
        raise PreconditionError("alpha witnesses need a non-atomic part", citation="NONATOMIC_NOT_COMPACT")
    s = ext(eps_sq)
    if s.is_infinite or s.value <= 0:
        raise InputError("eps_sq must be a positive rational")
    cells = [c for c in partition.cells if isinstance(c, Region)]
    finite = [c for c in cells if partition.cell_mass(c).is_finite and partition.cell_mass(c) > 0]
    dim = model.dim
    if not finite:
        if not any(isinstance(c, Complement) for c in partition.cells) and not cells:
            raise FamilyError("the partition has no continuous cells")
        return AlphaWitness(_wrap(model, Region.empty(dim)), None, ext(0), INF)
    total = sum((partition.cell_mass(c).value for c in finite), Fraction(0))
    if not s.value < total / 2:
        raise PreconditionError(f"eps_sq must be below half the finite cell mass {total / 2}")
    alpha = s.value / total
    window = model.continuous.window
    prims = []
    for cell in finite:
        for p in cell.primitives:
            box = p if window is None else p.intersect(window)
            if box is not None:
                prims.append(_sub_box(box, alpha))
    witness = _wrap(model, Region(dim, prims, check=False))
    _, error = best_approximation(model, partition, witness)
    return AlphaWitness(witness, alpha, s, error)


def _wrap(model: MeasureModel, region: Region):
    if model.atomic is not None:
        return MixedSet(region, AtomSet.finite(model.atomic))
    return region


@dataclass
class DiscreteFamily:
    sets: list
    delta: ExtendedRational
    min_pairwise: ExtendedRational | None
    radius_sq_bound: ExtendedRational | None
    certifies_not_totally_bounded: bool


def _atom_ids(model: MeasureModel, k: int) -> list[str]:
    u = model.atomic
    ids = list(itertools.islice(u.finite_atoms(), k))
    if len(ids) < k and isinstance(u.tail, UncountableTail):
        taken = set(ids) | {a for a, _ in u.explicit}
        n = 0
        while len(ids) < k:
            cand = f"u{n}"
            if cand not in taken:
                ids.append(cand)
            n += 1
    return ids


def discrete_family(model: MeasureModel, k: int) -> DiscreteFamily:
    """``k`` singletons of finite-mass atoms, pairwise at squared distance at least ``2 delta``.

    ``delta`` is the infimum of the finite atom weights; models where it is
    zero are refused.  Balls of squared radius below a quarter of the
    smallest pairwise squared distance hold at most one member, so an
    infinite supply of atoms rules out finite nets at that radius.
    """
    if model.atomic is None or model.has_nonatomic_part:
        raise PreconditionError("discrete families need a purely atomic model", citation="DISCRETE_BALLS")
    if k < 1:
        raise InputError("k must be at least 1")
    summary = atoms_fin(model)
    delta = summary.infimum_weight
    if delta is None:
        raise InputError("the model has no atoms of finite mass")
    if delta == 0:
        raise PreconditionError("finite atom weights accumulate at 0; there is no uniform delta", citation="DISCRETE_BALLS")
    ids = _atom_ids(model, k)
    if len(ids) < k:
        raise InputError(f"only {len(ids)} finite-mass atoms are available, asked for {k}")
    sets = [AtomSet.finite(model.atomic, [a]) for a in ids]
    pairs = [dist_sq(model, a, b) for a, b in itertools.combinations(sets, 2)]
    low = min(pairs) if pairs else None
    bound = ExtendedRational(low.value / 4) if low is not None else None
    return DiscreteFamily(sets, delta, low, bound, not summary.is_finite)


@dataclass
class EpsNet:
    """All unions of the first ``level`` finite atoms with subsets of the infinite atoms."""

    eps_sq: ExtendedRational
    level: int
    head: tuple
    infinite: tuple
    tail_mass: ExtendedRational
    elements: list

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def without(self, index: int) -> EpsNet:
        """A copy with one element removed (for negative checks)."""
        elems = list(self.elements)
        del elems[index]
        return EpsNet(self.eps_sq, self.level, self.head, self.infinite, self.tail_mass, elems)


def _require_compact(model: MeasureModel) -> None:
    if model.atomic is None and model.continuous is None:
        return
    if model.has_nonatomic_part or model.atomic is None:
        raise PreconditionError("a non-atomic part rules out finite nets", citation="NONATOMIC_NOT_COMPACT")
    fin, inf = atoms_fin(model), atoms_inf(model)
    if not fin.mass.is_finite:
        raise PreconditionError(
            "the finite-mass atoms have infinite total weight, so the space is not compact",
            citation="ATOMIC_COMPACTNESS_A",
        )
    if not inf.is_finite:
        raise PreconditionError(
            "there are infinitely many infinite-mass atoms, so the space is not compact",
            citation="ATOMIC_COMPACTNESS_A",
        )


def build_net(model: MeasureModel, eps_sq) -> EpsNet:
    """Finite net of squared radius ``eps_sq`` for a compact purely atomic model.

    The level is the smallest ``n`` whose tail weight beyond the first ``n``
    finite atoms is below ``eps_sq``.
    """
    s = ext(eps_sq)
    if s.is_infinite or s.value <= 0:
        raise InputError("eps_sq must be a positive rational")
    _require_compact(model)
    u = model.atomic
    if u is None:
        return EpsNet(s, 0, (), (), ext(0), [])
    n = 0
    while not u.finite_mass_after(n) < s:
        n += 1
        if n > MAX_NET_LEVEL:
            raise CostGuardError(f"the net level exceeds {MAX_NET_LEVEL}; the net would have over 2^{MAX_NET_LEVEL} elements")
    head = tuple(itertools.islice(u.finite_atoms(), n))
    infinite = u.infinite_explicit()
    elements = []
    for r in range(len(infinite) + 1):
        for inf_part in itertools.combinations(infinite, r):
            for mask in range(1 << n):
                ids = [a for i, a in enumerate(head) if mask >> i & 1] + list(inf_part)
                elements.append(AtomSet.finite(u, ids))
    return EpsNet(s, n, head, tuple(infinite), u.finite_mass_after(n), elements)


def _candidates(model: MeasureModel, net: EpsNet, trials: int, seed: int):
    u = model.atomic
    finite = atoms_fin(model)
    relevant = net.level + 3
    if finite.is_finite:
        relevant = min(relevant, finite.count)
    infinite = list(net.infinite)
    if relevant <= 12:
        head = list(itertools.islice(u.finite_atoms(), relevant))
        beyond = AtomSet.everything(u).minus(AtomSet.finite(u, head + infinite))
        tails = [AtomSet.finite(u)] + ([beyond] if not beyond.is_empty else [])
        for r in range(len(infinite) + 1):
            for inf_part in itertools.combinations(infinite, r):
                for mask in range(1 << len(head)):
                    ids = [a for i, a in enumerate(head) if mask >> i & 1] + list(inf_part)
                    for tail in tails:
                        yield AtomSet.finite(u, ids).union(tail)
        return
    rng = random.Random(seed)
    head = list(itertools.islice(u.finite_atoms(), relevant))
    for _ in range(trials):
        ids = [a for a in head if rng.random() < 0.5] + [a for a in infinite if rng.random() < 0.5]
        chosen = AtomSet.finite(u, ids)
        if rng.random() < 0.5:
            chosen = chosen.union(AtomSet.everything(u).minus(AtomSet.finite(u, head + infinite)))
        yield chosen


def find_uncovered(model: MeasureModel, net: EpsNet, eps_sq=None, trials: int = 200, seed: int = 0):
    """First tested set with no net element within squared distance ``eps_sq``, or None.

    Each set is first compared with its truncation to the net's atoms,
    which is the element the covering argument predicts; the whole net is
    scanned only when that element is missing or too far.
    """
    s = net.eps_sq if eps_sq is None else ext(eps_sq)
    if model.atomic is None:
        return None
    keep = set(net.head) | set(net.infinite)
    index = {e: i for i, e in enumerate(net.elements)}
    for cand in _candidates(model, net, trials, seed):
        guess = cand.intersect(AtomSet.finite(model.atomic, keep))
        if guess in index and dist_sq(model, cand, guess) < s:
            continue
        if not any(dist_sq(model, cand, e) < s for e in net.elements):
            return cand
    return None


def verify_net(model: MeasureModel, net: EpsNet, eps_sq=None, trials: int = 200, seed: int = 0) -> bool:
    """True iff every tested set has a net element within squared distance ``eps_sq``.

    Testing is exhaustive when the net level plus three (capped by the number
    of finite atoms) is at most 12, using the two tail patterns "nothing"
    and "everything beyond"; otherwise ``trials`` seeded random sets are used.
    """
    return find_uncovered(model, net, eps_sq, trials, seed) is None
