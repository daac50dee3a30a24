import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regiongen import geometric_mixture, random_atoms, random_mixed, random_region

from nba_lab import (
    AtomSet,
    Box,
    ExtendedRational,
    NotFoundError,
    PreconditionError,
    Region,
    best_approximation,
    dist_sq,
    find_level,
    make_Tm,
    probe_approximability,
    refines,
    standard_filtration,
    uniform_error,
)
from nba_lab.approx import Complement, approx_error
from nba_lab.catalog import MODELS, unit_square

STRIP = Region(2, [Box.from_bounds((0, F(1, 3)), (0, 1))])


def test_cell_counts():
    assert len(standard_filtration(unit_square(), 1).cells) == 4
    assert len(standard_filtration(unit_square(), 3).cells) == 64
    plane = standard_filtration(MODELS["leb_R2"](), 1)
    assert len(plane.cells) == 17
    assert isinstance(plane.cells[-1], Complement)
    counting = standard_filtration(MODELS["counting_N"](), 3)
    assert [c.ids for c in counting.cells[:3]] == [frozenset({"1"}), frozenset({"2"}), frozenset({"3"})]
    assert counting.cells[3].cofinite


def test_partitions_verify_and_refine():
    for name in ("leb_unit", "leb_R2", "counting_N", "geometric_inf"):
        model = MODELS[name]()
        coarse = standard_filtration(model, 1)
        fine = standard_filtration(model, 2)
        assert coarse.verify() and fine.verify()
        assert refines(fine, coarse)
        assert not refines(coarse, fine)


def test_strip_error_sequence():
    model = unit_square()
    errors = [approx_error(model, standard_filtration(model, n), STRIP) for n in range(1, 5)]
    assert errors == [ExtendedRational(F(1, 6 * 2 ** k)) for k in range(4)]
    rep = find_level(model, STRIP, F(1, 8))
    assert rep.level == 2 and rep.error == ExtendedRational(F(1, 12))
    assert rep.verdict


def test_tm_errors_halve():
    model = unit_square()
    t2 = make_Tm(2)
    errors = [approx_error(model, standard_filtration(model, n), t2) for n in range(1, 8)]
    assert errors == [ExtendedRational(F(1, 2)), ExtendedRational(F(1, 2))] + [
        ExtendedRational(F(1, 2 ** k)) for k in range(2, 7)
    ]
    rep = find_level(model, t2, F(1, 8))
    assert (rep.level, rep.error) == (5, ExtendedRational(F(1, 16)))


def test_ties_are_excluded():
    model = unit_square()
    # the diagonal half of each level-1 cell: inside = outside in every cell
    approx, err = best_approximation(model, standard_filtration(model, 1), make_Tm(1))
    assert approx.is_empty and err == ExtendedRational(F(1, 2))


def test_not_found_carries_best():
    with pytest.raises(NotFoundError) as info:
        find_level(unit_square(), make_Tm(2), F(1, 10**6), n_max=4)
    assert info.value.best == ExtendedRational(F(1, 8))
    assert info.value.level == 4


def test_preconditions():
    ex3 = MODELS["ball_counting_plus_lebesgue"]()
    with pytest.raises(PreconditionError):
        find_level(ex3, STRIP, F(1, 4))
    with pytest.raises(PreconditionError):
        standard_filtration(MODELS["counting_R2"](), 2)
    counting = MODELS["counting_N"]()
    with pytest.raises(PreconditionError):
        find_level(counting, AtomSet.cofinite_of(counting.atomic, []), F(1, 4))


def test_outside_cell_never_chosen_when_infinite():
    plane = MODELS["leb_R2"]()
    part = standard_filtration(plane, 1)
    huge = Region(2, [Box.from_bounds((-100, 100), (-100, 100))])
    approx, err = best_approximation(plane, part, huge)
    # only the 16 cells of [-1, 1)^2 are taken; the rest of the square is error
    assert err == ExtendedRational(200 * 200 - 4)
    assert dist_sq(plane, approx, Region(2, [Box.from_bounds((-1, 1), (-1, 1))])) == 0


def test_atomic_approximation():
    model = MODELS["geometric_half"]()
    target = AtomSet.finite(model.atomic, ["x1", "x4", "x9"])
    rep = find_level(model, target, F(1, 64))
    # x9 weighs 1/512; dropping it is the only error left from level 4 on
    assert rep.level == 4 and rep.error == ExtendedRational(F(1, 512))
    assert rep.approximant == AtomSet.finite(model.atomic, ["x1", "x4"])


def test_probe():
    model = unit_square()
    family = [STRIP, make_Tm(1), Region.empty(2)]
    rep = probe_approximability(model, family, F(1, 8), n_max=8)
    assert [p.level for p in rep.per_set] == [2, 4, 1]
    assert rep.uniform and rep.uniform_level == 4
    assert uniform_error(model, standard_filtration(model, 4), family) < ExtendedRational(F(1, 8))
    parallel = probe_approximability(model, family, F(1, 8), n_max=8, max_workers=2)
    assert parallel.per_set == rep.per_set
    assert probe_approximability(model, [], F(1, 8)).uniform


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=4))
def test_error_matches_distance(seed, level):
    rng = random.Random(seed)
    model = geometric_mixture()
    target = random_mixed(rng, model)
    approx, err = best_approximation(model, standard_filtration(model, level), target)
    assert err == dist_sq(model, approx, target)
    finer = approx_error(model, standard_filtration(model, level + 1), target)
    assert finer <= err


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_errors_monotone_lebesgue(seed):
    rng = random.Random(seed)
    model = unit_square()
    target = random_region(rng)
    errs = [approx_error(model, standard_filtration(model, n), target) for n in range(0, 6)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


def test_atomic_targets_in_counting():
    model = MODELS["counting_N"]()
    rng = random.Random(0)
    for _ in range(20):
        target = random_atoms(rng, model, cofinite_prob=0)
        rep = find_level(model, target, F(1, 2))
        assert rep.error == 0
