"""Finitely presented measure spaces.

A :class:`MeasureModel` has an optional continuous part (Lebesgue measure
restricted to a box window, or on all of R^d) and an optional atomic part
(an :class:`AtomUniverse`).  Atoms are singletons identified by string ids.

Countable atom universes are an explicit prefix ``x_1, ..., x_N`` followed
by a closed-form tail, so that the two quantities the classification
depends on, the cardinality of the finite-mass atoms and their total
mass, are computable exactly.

Sets are represented per part: a :class:`~nba_lab.geometry.Region` for the
continuous part, an :class:`AtomSet` for the atomic part, and a
:class:`MixedSet` pairing the two for mixtures.  A component the model has
no part for carries zero mass (atoms are Lebesgue-null points and regions
carry no atoms).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .errors import FamilyError, ModelError
from .extended import INF, ZERO, ExtendedRational, ext
from .geometry import Box, Region, clipped_measure

__all__ = [
    "GeometricTail",
    "ConstantTail",
    "UncountableTail",
    "AtomUniverse",
    "AtomSet",
    "MixedSet",
    "LebesgueWindow",
    "MeasureModel",
    "AtomSummary",
    "COUNTABLE",
    "UNCOUNTABLE",
    "mu",
    "atoms_fin",
    "atoms_inf",
    "decompose",
    "as_mixed",
]

COUNTABLE = "countable"
UNCOUNTABLE = "uncountable"

_INDEX_RE = re.compile(r"^(0|[1-9]\d*)$")


# ---------------------------------------------------------------------------
# atom universes


@dataclass(frozen=True)
class GeometricTail:
    """Atoms ``prefix+k`` for ``k >= start`` with weights ``weight * ratio**(k - start)``."""

    start: int
    weight: Fraction
    ratio: Fraction
    prefix: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        if self.weight <= 0:
            raise ModelError("geometric tail weight must be positive and finite")
        if not 0 < self.ratio < 1:
            raise ModelError("geometric tail ratio must lie in (0, 1)")
        if self.start < 0:
            raise ModelError("tail start index must be nonnegative")

    def weight_at(self, k: int) -> ExtendedRational:
        return ExtendedRational(self.weight * self.ratio ** (k - self.start))

    @property
    def total(self) -> ExtendedRational:
        return ExtendedRational(self.weight / (1 - self.ratio))

    def mass_from(self, k: int) -> ExtendedRational:
        """Total weight of the atoms with index ``>= k``."""
        k = max(k, self.start)
        return ExtendedRational(self.weight * self.ratio ** (k - self.start) / (1 - self.ratio))


@dataclass(frozen=True)
class ConstantTail:
    """Countably many atoms ``prefix+k`` (``k >= start``), all of weight ``weight``."""

    start: int
    weight: ExtendedRational
    prefix: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weight", ext(self.weight))
        if self.weight == 0:
            raise ModelError("atom weights must be strictly positive")
        if self.start < 0:
            raise ModelError("tail start index must be nonnegative")

    def weight_at(self, k: int) -> ExtendedRational:
        return self.weight

    @property
    def total(self) -> ExtendedRational:
        return INF

    def mass_from(self, k: int) -> ExtendedRational:
        return INF


@dataclass(frozen=True)
class UncountableTail:
    """Uncountably many atoms of weight ``weight``; any id not listed explicitly is one."""

    weight: ExtendedRational

    def __post_init__(self):
        object.__setattr__(self, "weight", ext(self.weight))
        if self.weight == 0:
            raise ModelError("atom weights must be strictly positive")

    @property
    def total(self) -> ExtendedRational:
        return INF


Tail = Union[GeometricTail, ConstantTail, UncountableTail, None]


@dataclass(frozen=True)
class AtomUniverse:
    """Explicit atoms ``(id, weight)`` followed by an optional symbolic tail."""

    explicit: tuple[tuple[str, ExtendedRational], ...] = ()
    tail: Tail = None
    _weights: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        clean = tuple((str(i), ext(w)) for i, w in self.explicit)
        object.__setattr__(self, "explicit", clean)
        weights = {}
        for atom, w in clean:
            if atom in weights:
                raise ModelError(f"duplicate atom id {atom!r}")
            if w == 0:
                raise ModelError(f"atom {atom!r} has zero weight; weights must be strictly positive")
            weights[atom] = w
        object.__setattr__(self, "_weights", weights)
        if isinstance(self.tail, (GeometricTail, ConstantTail)):
            for atom in weights:
                if self._tail_index(atom) is not None:
                    raise ModelError(f"explicit id {atom!r} collides with the tail")

    # -- membership ---------------------------------------------------------
    def _tail_index(self, atom: str) -> int | None:
        tail = self.tail
        if not isinstance(tail, (GeometricTail, ConstantTail)):
            return None
        if not atom.startswith(tail.prefix):
            return None
        rest = atom[len(tail.prefix) :]
        if not _INDEX_RE.match(rest):
            return None
        k = int(rest)
        return k if k >= tail.start else None

    def __contains__(self, atom: str) -> bool:
        if atom in self._weights:
            return True
        if isinstance(self.tail, UncountableTail):
            return True
        return self._tail_index(atom) is not None

    def weight(self, atom: str) -> ExtendedRational:
        if atom in self._weights:
            return self._weights[atom]
        if isinstance(self.tail, UncountableTail):
            return self.tail.weight
        k = self._tail_index(atom)
        if k is None:
            raise FamilyError(f"{atom!r} is not an atom of this universe")
        return self.tail.weight_at(k)

    # -- structure ------------------------------------------------------------
    @property
    def is_countable(self) -> bool:
        return not isinstance(self.tail, UncountableTail)

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    @property
    def tail_weight_finite(self) -> bool:
        if self.tail is None:
            return False
        if isinstance(self.tail, GeometricTail):
            return True
        return self.tail.weight.is_finite

    def tail_id(self, k: int) -> str:
        return f"{self.tail.prefix}{k}"

    def finite_atoms(self) -> Iterator[str]:
        """Atoms of finite weight in canonical order: explicit ones, then the tail.

        Uncountable tails are not enumerated.
        """
        for atom, w in self.explicit:
            if w.is_finite:
                yield atom
        if isinstance(self.tail, (GeometricTail, ConstantTail)) and self.tail_weight_finite:
            k = self.tail.start
            while True:
                yield self.tail_id(k)
                k += 1

    def infinite_explicit(self) -> tuple[str, ...]:
        return tuple(a for a, w in self.explicit if w.is_infinite)

    def explicit_finite(self) -> tuple[str, ...]:
        return tuple(a for a, w in self.explicit if w.is_finite)

    def finite_mass_after(self, n: int) -> ExtendedRational:
        """Total weight of the finite-mass atoms beyond the first ``n`` in canonical order."""
        fin = [w for _, w in self.explicit if w.is_finite]
        total = ExtendedRational(sum((w.value for w in fin[n:]), Fraction(0)))
        if self.tail is None or not self.tail_weight_finite:
            return total
        if isinstance(self.tail, UncountableTail):
            return INF
        skip = max(0, n - len(fin))
        return total + self.tail.mass_from(self.tail.start + skip)


# ---------------------------------------------------------------------------
# sets


@dataclass(frozen=True)
class AtomSet:
    """A finite set of atoms, or the complement of a finite set in a countable universe."""

    universe: AtomUniverse
    ids: frozenset
    cofinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "ids", frozenset(str(i) for i in self.ids))
        for atom in self.ids:
            if atom not in self.universe:
                raise FamilyError(f"{atom!r} is not an atom of the universe")
        if self.cofinite and not self.universe.is_countable:
            raise FamilyError("cofinite atom sets need a countable universe")

    @classmethod
    def finite(cls, universe: AtomUniverse, ids=()) -> AtomSet:
        return cls(universe, frozenset(ids), False)

    @classmethod
    def cofinite_of(cls, universe: AtomUniverse, excluded=()) -> AtomSet:
        return cls(universe, frozenset(excluded), True)

    @classmethod
    def everything(cls, universe: AtomUniverse) -> AtomSet:
        return cls.cofinite_of(universe, ())

    def __repr__(self):
        mode = "COFINITE" if self.cofinite else "FINITE"
        return f"AtomSet({mode}, {sorted(self.ids)})"

    def _check(self, other: AtomSet) -> None:
        if other.universe != self.universe:
            raise FamilyError("atom sets from different universes")

    def intersect(self, other: AtomSet) -> AtomSet:
        self._check(other)
        u = self.universe
        if not self.cofinite and not other.cofinite:
            return AtomSet(u, self.ids & other.ids)
        if not self.cofinite:
            return AtomSet(u, self.ids - other.ids)
        if not other.cofinite:
            return AtomSet(u, other.ids - self.ids)
        return AtomSet(u, self.ids | other.ids, True)

    def minus(self, other: AtomSet) -> AtomSet:
        self._check(other)
        u = self.universe
        if not self.cofinite and not other.cofinite:
            return AtomSet(u, self.ids - other.ids)
        if not self.cofinite:
            return AtomSet(u, self.ids & other.ids)
        if not other.cofinite:
            return AtomSet(u, self.ids | other.ids, True)
        return AtomSet(u, other.ids - self.ids)

    def union(self, other: AtomSet) -> AtomSet:
        self._check(other)
        u = self.universe
        if not self.cofinite and not other.cofinite:
            return AtomSet(u, self.ids | other.ids)
        if not self.cofinite:
            return AtomSet(u, other.ids - self.ids, True)
        if not other.cofinite:
            return AtomSet(u, self.ids - other.ids, True)
        return AtomSet(u, self.ids & other.ids, True)

    def symdiff(self, other: AtomSet) -> tuple[AtomSet, AtomSet]:
        return self.minus(other), other.minus(self)

    def mass(self) -> ExtendedRational:
        u = self.universe
        if not self.cofinite:
            return sum((u.weight(a) for a in self.ids), ZERO)
        # complement of a finite set in a countable universe
        if any(w.is_infinite and a not in self.ids for a, w in u.explicit):
            return INF
        if u.tail is not None and not u.tail_weight_finite:
            return INF
        if isinstance(u.tail, ConstantTail):
            return INF
        total = sum((w for a, w in u.explicit if a not in self.ids), ZERO)
        if isinstance(u.tail, GeometricTail):
            excluded_tail = sum((u.weight(a) for a in self.ids if a not in u._weights), ZERO)
            total = total + (u.tail.total - excluded_tail)
        return total

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.ids


@dataclass(frozen=True)
class MixedSet:
    """A set of a mixture model: its continuous and its atomic component."""

    region: Region
    atoms: AtomSet


RepresentableSet = Union[Region, AtomSet, MixedSet]


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class LebesgueWindow:
    """Lebesgue measure on ``window`` (a box), or on all of R^dim when ``window`` is None."""

    dim: int
    window: Box | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ModelError("dimension must be positive")
        if self.window is not None and self.window.dim != self.dim:
            raise ModelError("window dimension mismatch")

    @property
    def total(self) -> ExtendedRational:
        return INF if self.window is None else ExtendedRational(self.window.measure)

    def measure(self, region: Region) -> Fraction:
        return clipped_measure(region, self.window)


@dataclass(frozen=True)
class MeasureModel:
    """A finitely presented measure space.

    ``outer_regular`` and ``countably_generated`` are declared hypotheses,
    not inferred properties.  ``dim`` is the ambient dimension when the
    space sits in R^d; it defaults to the continuous part's dimension.
    """

    continuous: LebesgueWindow | None = None
    atomic: AtomUniverse | None = None
    outer_regular: bool = True
    countably_generated: bool = True
    dim: int | None = None
    name: str = ""

    def __post_init__(self):
        if self.continuous is not None:
            if self.dim is None:
                object.__setattr__(self, "dim", self.continuous.dim)
            elif self.dim != self.continuous.dim:
                raise ModelError("declared dimension disagrees with the continuous part")

    @classmethod
    def lebesgue(cls, dim: int, window: Box | None = None, **kw) -> MeasureModel:
        return cls(continuous=LebesgueWindow(dim, window), **kw)

    @classmethod
    def atomic_model(cls, universe: AtomUniverse, **kw) -> MeasureModel:
        return cls(atomic=universe, **kw)

    @classmethod
    def mixture(cls, continuous: LebesgueWindow, universe: AtomUniverse, **kw) -> MeasureModel:
        return cls(continuous=continuous, atomic=universe, **kw)

    @property
    def kind(self) -> str:
        if self.continuous is not None and self.atomic is not None:
            return "mixture"
        if self.continuous is not None:
            return "lebesgue"
        if self.atomic is not None:
            return "atomic"
        return "zero"

    @property
    def has_nonatomic_part(self) -> bool:
        return self.continuous is not None and self.continuous.total > 0

    @property
    def is_purely_atomic(self) -> bool:
        return not self.has_nonatomic_part

    def total_mass(self) -> ExtendedRational:
        total = ZERO
        if self.continuous is not None:
            total = total + self.continuous.total
        if self.atomic is not None:
            if not self.atomic.is_countable:
                return INF
            total = total + AtomSet.everything(self.atomic).mass()
        return total

    def universe_set(self) -> RepresentableSet:
        """The whole space as a representable set, when it is one."""
        if self.kind == "atomic":
            return AtomSet.everything(self.atomic)
        raise FamilyError("the whole space is only representable for atomic models")


def as_mixed(model: MeasureModel, s: RepresentableSet) -> tuple[Region | None, AtomSet | None]:
    """Split a set into its (region, atoms) components, validating them against ``model``."""
    if isinstance(s, MixedSet):
        region, atoms = s.region, s.atoms
    elif isinstance(s, Region):
        region, atoms = s, None
    elif isinstance(s, AtomSet):
        region, atoms = None, s
    else:
        raise FamilyError(f"not a representable set: {s!r}")
    if region is not None and model.kind != "zero":
        if model.dim is None:
            raise FamilyError("regions are not sets of a model with no spatial part")
        if region.dim != model.dim:
            raise FamilyError(f"region of dimension {region.dim} in a {model.dim}-dimensional model")
    if atoms is not None and model.atomic is not None and atoms.universe != model.atomic:
        raise FamilyError("atom set belongs to a different universe")
    return region, atoms


def mu(model: MeasureModel, s: RepresentableSet) -> ExtendedRational:
    """Exact measure of a representable set."""
    region, atoms = as_mixed(model, s)
    total = ZERO
    if region is not None and model.continuous is not None:
        total = total + ExtendedRational(model.continuous.measure(region))
    if atoms is not None and model.atomic is not None:
        total = total + atoms.mass()
    return total


@dataclass(frozen=True)
class AtomSummary:
    """Symbolic description of a set of atoms.

    ``count`` is an int, ``COUNTABLE`` or ``UNCOUNTABLE``; ``members`` lists
    the ids when they are finitely many and explicit.
    """

    count: int | str
    mass: ExtendedRational
    members: tuple[str, ...] | None = None
    infimum_weight: ExtendedRational | None = None

    @property
    def is_finite(self) -> bool:
        return isinstance(self.count, int)

    @property
    def is_countable(self) -> bool:
        return self.count != UNCOUNTABLE


def atoms_fin(model: MeasureModel) -> AtomSummary:
    """E_fin: the atoms of finite positive mass, their cardinality and total mass."""
    u = model.atomic
    if u is None:
        return AtomSummary(0, ZERO, (), None)
    explicit = [(a, w) for a, w in u.explicit if w.is_finite]
    mass = sum((w for _, w in explicit), ZERO)
    weights = [w for _, w in explicit]
    tail = u.tail
    if tail is None or not u.tail_weight_finite:
        inf_w = min(weights) if weights else None
        return AtomSummary(len(explicit), mass, tuple(a for a, _ in explicit), inf_w)
    if isinstance(tail, GeometricTail):
        return AtomSummary(COUNTABLE, mass + tail.total, None, ZERO)
    inf_w = min(weights + [tail.weight])
    count = COUNTABLE if isinstance(tail, ConstantTail) else UNCOUNTABLE
    return AtomSummary(count, INF, None, inf_w)


def atoms_inf(model: MeasureModel) -> AtomSummary:
    """E_inf: the atoms of infinite mass."""
    u = model.atomic
    if u is None:
        return AtomSummary(0, ZERO, ())
    members = u.infinite_explicit()
    if u.tail is not None and not u.tail_weight_finite:
        count = COUNTABLE if isinstance(u.tail, ConstantTail) else UNCOUNTABLE
        return AtomSummary(count, INF, None)
    return AtomSummary(len(members), INF if members else ZERO, members)


def decompose(model: MeasureModel) -> tuple[MeasureModel, MeasureModel]:
    """Split into (purely atomic part, non-atomic part).

    The parts keep the ambient dimension so that they measure the same sets
    as ``model``; a missing part is the zero measure.
    """
    if model.kind == "lebesgue":
        return MeasureModel(atomic=AtomUniverse(), dim=model.dim), model
    if model.kind in ("atomic", "zero"):
        return model, MeasureModel(dim=model.dim)
    flags = dict(outer_regular=model.outer_regular, countably_generated=model.countably_generated)
    atomic = MeasureModel(
        atomic=model.atomic,
        dim=model.dim,
        name=f"{model.name}:atomic" if model.name else "",
        **flags,
    )
    nonatomic = MeasureModel(
        continuous=model.continuous,
        dim=model.dim,
        name=f"{model.name}:nonatomic" if model.name else "",
        **flags,
    )
    return atomic, nonatomic
