import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regiongen import UNIT, geometric_mixture, mixed_model, random_atoms, random_mixed

from nba_lab import (
    INF,
    AtomSet,
    AtomUniverse,
    Box,
    ConstantTail,
    ExtendedRational,
    FamilyError,
    GeometricTail,
    MeasureModel,
    MixedSet,
    ModelError,
    Region,
    UncountableTail,
    atoms_fin,
    atoms_inf,
    decompose,
    mu,
)
from nba_lab.catalog import MODELS

geo = AtomUniverse((), GeometricTail(1, F(1, 2), F(1, 2), prefix="x"))


def test_geometric_tail_masses():
    assert geo.weight("x3") == ExtendedRational(F(1, 8))
    assert geo.finite_mass_after(0) == ExtendedRational(1)
    assert geo.finite_mass_after(3) == ExtendedRational(F(1, 8))
    assert AtomSet.cofinite_of(geo, ["x1"]).mass() == ExtendedRational(F(1, 2))
    assert AtomSet.finite(geo, ["x1", "x2"]).mass() == ExtendedRational(F(3, 4))


def test_counting_masses():
    u = MODELS["counting_N"]().atomic
    assert AtomSet.finite(u, ["1", "7"]).mass() == ExtendedRational(2)
    assert AtomSet.cofinite_of(u, ["1"]).mass() == INF
    assert "12" in u and "0" not in u


def test_atom_set_algebra():
    a = AtomSet.finite(geo, ["x1", "x2"])
    b = AtomSet.cofinite_of(geo, ["x2", "x3"])
    assert a.intersect(b) == AtomSet.finite(geo, ["x1"])
    assert a.union(b) == AtomSet.cofinite_of(geo, ["x3"])
    assert b.minus(a) == AtomSet.cofinite_of(geo, ["x1", "x2", "x3"])
    left, right = a.symdiff(b)
    assert left == AtomSet.finite(geo, ["x2"])
    assert right == AtomSet.cofinite_of(geo, ["x1", "x2", "x3"])


def test_model_validation():
    with pytest.raises(ModelError):
        GeometricTail(1, F(1, 2), F(1))
    with pytest.raises(ModelError):
        AtomUniverse((("a", ExtendedRational(0)),))
    with pytest.raises(ModelError):
        AtomUniverse((("a", ExtendedRational(1)), ("a", ExtendedRational(2))))
    with pytest.raises(ModelError):
        AtomUniverse((("x2", ExtendedRational(1)),), GeometricTail(1, F(1, 2), F(1, 2), prefix="x"))
    with pytest.raises(FamilyError):
        AtomSet.finite(geo, ["y"])
    with pytest.raises(FamilyError):
        AtomSet.cofinite_of(AtomUniverse((), UncountableTail(ExtendedRational(1))), [])


def test_summaries():
    fin, inf = atoms_fin(MODELS["geometric_inf"]()), atoms_inf(MODELS["geometric_inf"]())
    assert fin.count == "countable" and fin.mass == ExtendedRational(1)
    assert inf.count == 1 and inf.members == ("y1",)
    fin = atoms_fin(MODELS["counting_R2"]())
    assert fin.count == "uncountable" and not fin.is_countable and fin.infimum_weight == ExtendedRational(1)
    assert atoms_fin(MODELS["leb_unit"]()).count == 0


def test_total_mass_and_kind():
    assert MODELS["leb_unit"]().total_mass() == ExtendedRational(1)
    assert MODELS["leb_R2"]().total_mass() == INF
    assert MODELS["geometric_half"]().total_mass() == ExtendedRational(1)
    assert geometric_mixture().kind == "mixture"
    assert MeasureModel().kind == "zero"


def test_decompose_parts():
    model = geometric_mixture()
    atomic, nonatomic = decompose(model)
    s = MixedSet(Region(2, [Box.from_bounds((0, F(1, 2)), (0, 1))]), AtomSet.finite(model.atomic, ["x1", "p"]))
    assert mu(model, s) == mu(atomic, s) + mu(nonatomic, s)
    assert mu(model, s) == ExtendedRational(F(1, 2) + F(1, 2) + F(3, 2))


def test_lebesgue_window_clips():
    model = MODELS["leb_unit"]()
    assert mu(model, Region(2, [Box.from_bounds((F(1, 2), 3), (0, 1))])) == ExtendedRational(F(1, 2))


def test_dimension_checks():
    with pytest.raises(FamilyError):
        mu(MODELS["leb_unit"](), Region(1, [Box.from_bounds((0, 1))]))
    with pytest.raises(FamilyError):
        mu(MODELS["counting_N"](), AtomSet.finite(geo, ["x1"]))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_additivity(seed):
    rng = random.Random(seed)
    model = mixed_model() if seed % 2 else geometric_mixture()
    a, b = random_atoms(rng, model), random_atoms(rng, model)
    inter = a.intersect(b)
    assert a.union(b).mass() + inter.mass() == a.mass() + b.mass()
    assert a.minus(b).mass() + inter.mass() == a.mass()
    s = random_mixed(rng, model)
    assert mu(model, s) >= mu(model, s.region)


def test_constant_tail_with_prefix():
    u = AtomUniverse((), ConstantTail(3, ExtendedRational(2), prefix="a"))
    assert next(iter(u.finite_atoms())) == "a3"
    assert AtomSet.finite(u, ["a3", "a5"]).mass() == ExtendedRational(4)
    assert UNIT.measure == 1
