import itertools
from fractions import Fraction as F

import pytest

from nba_lab import (
    INF,
    AtomSet,
    ExtendedRational,
    FamilyError,
    InputError,
    MixedSet,
    PreconditionError,
    Region,
    build_net,
    discrete_family,
    dist_sq,
    make_alpha_witness,
    make_Tm,
    make_Tm_eps,
    measure,
    standard_filtration,
    verify_cell_witness,
    verify_net,
)
from nba_lab.catalog import MODELS, unit_square
from nba_lab.geometry import symdiff_measure
from nba_lab.witness import cell_witness_error, find_uncovered

EPS = [F(1, 16), F(1, 8), F(1, 4), F(1, 2)]


@pytest.mark.parametrize("m", range(1, 7))
def test_tm_half(m):
    t = make_Tm(m)
    assert len(t.primitives) == 4**m
    assert measure(t) == F(1, 2)


def test_tm_symdiff_between_levels():
    # in each level-1 cell the two off-diagonal subcells differ by half their area
    assert symdiff_measure(make_Tm(1), make_Tm(2)) == 4 * 2 * F(1, 32)


@pytest.mark.parametrize("m, eps", list(itertools.product((1, 2, 3), EPS)))
def test_tm_eps_measure_and_error(m, eps):
    w = make_Tm_eps(m, eps)
    assert measure(w) == eps
    Region(2, w.primitives)  # pieces are disjoint
    rep = verify_cell_witness(unit_square(), m, eps)
    assert rep.error == ExtendedRational(eps) and rep.minimizer_cells == 0
    assert rep.verdict


def test_cell_witness_closed_form():
    assert cell_witness_error(2, F(1, 8), 0) == F(1, 8)
    assert cell_witness_error(2, F(1, 8), 16) == F(7, 8)
    assert cell_witness_error(1, F(1, 2), 3) == F(1, 2)
    with pytest.raises(InputError):
        cell_witness_error(1, F(1, 4), 5)


def test_tm_eps_bounds():
    with pytest.raises(InputError):
        make_Tm_eps(2, F(3, 4))
    with pytest.raises(InputError):
        make_Tm(0)
    with pytest.raises(FamilyError):
        verify_cell_witness(MODELS["leb_R2"](), 1, F(1, 4))


def test_alpha_witness_square():
    model = unit_square()
    w = make_alpha_witness(model, standard_filtration(model, 2), F(1, 8))
    assert w.alpha == F(1, 8) and w.mass == ExtendedRational(F(1, 8))
    assert w.error == ExtendedRational(F(1, 8))
    assert dist_sq(model, Region.empty(2), w.set) == ExtendedRational(F(1, 8))
    with pytest.raises(PreconditionError):
        make_alpha_witness(model, standard_filtration(model, 2), F(1, 2))


def test_alpha_witness_plane():
    plane = MODELS["leb_R2"]()
    w = make_alpha_witness(plane, standard_filtration(plane, 0), F(1, 4))
    assert w.set.is_empty and w.error == INF
    w = make_alpha_witness(plane, standard_filtration(plane, 1), F(1, 4))
    assert w.alpha == F(1, 16) and w.error == ExtendedRational(F(1, 4))


def test_alpha_witness_mixture():
    model = MODELS["ball_counting_plus_lebesgue"]()
    # the uncountable atom part has no standard filtration
    with pytest.raises(PreconditionError):
        standard_filtration(model, 1)
    mix = MODELS["lebesgue_infinite_origin"]()
    w = make_alpha_witness(mix, standard_filtration(mix, 1), F(1, 4))
    assert isinstance(w.set, MixedSet) and w.error == ExtendedRational(F(1, 4))
    with pytest.raises(PreconditionError):
        make_alpha_witness(MODELS["counting_N"](), standard_filtration(MODELS["counting_N"](), 1), F(1, 4))


def test_discrete_families():
    fam = discrete_family(MODELS["counting_N"](), 5)
    assert fam.delta == ExtendedRational(1) and fam.min_pairwise == ExtendedRational(2)
    assert fam.radius_sq_bound == ExtendedRational(F(1, 2)) and fam.certifies_not_totally_bounded
    fam = discrete_family(MODELS["counting_R2"](), 3)
    assert [s.ids for s in fam.sets] == [frozenset({"u0"}), frozenset({"u1"}), frozenset({"u2"})]


@pytest.mark.parametrize("eps, level", [(F(2), 0), (F(1, 2), 2), (F(1, 4), 3), (F(1, 8), 4)])
def test_net_levels(eps, level):
    model = MODELS["geometric_half"]()
    net = build_net(model, eps)
    assert net.level == level and net.cardinality == 2**level
    assert verify_net(model, net)
    for i in range(net.cardinality):
        assert find_uncovered(model, net.without(i)) is not None


def test_net_with_infinite_atom():
    model = MODELS["geometric_inf"]()
    net = build_net(model, F(1, 4))
    assert net.infinite == ("y1",) and net.cardinality == 2**4
    assert verify_net(model, net)
    # the infinite atom must be matched exactly
    u = model.atomic
    assert dist_sq(model, AtomSet.finite(u, ["y1"]), AtomSet.finite(u, [])) == INF


def test_net_refusals():
    with pytest.raises(PreconditionError) as info:
        build_net(MODELS["counting_N"](), F(1, 4))
    assert info.value.citation == "ATOMIC_COMPACTNESS_A"
    with pytest.raises(PreconditionError) as info:
        build_net(unit_square(), F(1, 4))
    assert info.value.citation == "NONATOMIC_NOT_COMPACT"


def test_uncovered_needs_cofinite_pattern():
    model = MODELS["geometric_half"]()
    net = build_net(model, F(1, 4))
    u = model.atomic
    # a finite set is within 1/8 of its head part, so only tails can be missed
    assert find_uncovered(model, net, trials=50) is None
    head = AtomSet.finite(u, ["x1", "x2", "x3"])
    assert min(dist_sq(model, head, e) for e in net.elements) == 0
