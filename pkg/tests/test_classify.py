import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nba_lab import (
    INF,
    AtomUniverse,
    Box,
    ConstantTail,
    ExtendedRational,
    GeometricTail,
    LebesgueWindow,
    MeasureModel,
    Tri,
    UncountableTail,
    classify,
    justify,
)
from nba_lab.catalog import MODELS

Y, N, U = Tri.YES, Tri.NO, Tri.UNKNOWN


def triple(v):
    return v.separable, v.compact, v.locally_compact


@pytest.mark.parametrize(
    "name, whole, fin",
    [
        ("counting_N", (N, N, Y), (Y, N, Y)),
        ("counting_R2", (N, N, Y), (N, N, Y)),
        ("leb_unit", (Y, N, N), (Y, N, N)),
        ("leb_R2", (N, N, N), (Y, N, N)),
        ("ball_counting_plus_lebesgue", (N, N, N), (N, N, N)),
        ("geometric_half", (Y, Y, Y), (Y, Y, Y)),
        ("geometric_inf", (Y, Y, Y), (Y, Y, Y)),
        ("lebesgue_infinite_origin", (N, N, N), (Y, N, N)),
    ],
)
def test_catalog_verdicts(name, whole, fin):
    w, f = classify(MODELS[name]())
    assert (triple(w), triple(f)) == (whole, fin)
    assert w.complete is Y and f.complete is Y


def test_tags_cited():
    w, f = classify(MODELS["counting_N"]())
    assert any(j.tag == "ATOMIC_SEPARABILITY_B" and "countable" in j.reason for j in f.justifications)
    w, f = classify(MODELS["leb_unit"]())
    assert any(j.tag == "NONATOMIC_NOT_COMPACT" for j in w.justifications)
    text = justify(w)
    assert "[NONATOMIC_NOT_COMPACT]" in text and text.startswith("E_TILDE:")


def test_unknown_when_undecided():
    model = MeasureModel.lebesgue(2, Box.from_bounds((0, 1), (0, 1)), countably_generated=False)
    w, f = classify(model)
    assert w.separable is U and f.separable is U
    assert any(j.tag == "NO_CRITERION" for j in w.justifications)
    assert w.compact is N


def test_uncountable_finite_total_weight_is_impossible_to_declare():
    # an uncountable family of positive weights always sums to infinity
    w, f = classify(MeasureModel.atomic_model(AtomUniverse((), UncountableTail(ExtendedRational(F(1, 5))))))
    assert f.separable is N and w.compact is N


def test_outer_regular_flag_changes_only_fin():
    plane_flagged = MODELS["leb_R2"]()
    plane_plain = MeasureModel.lebesgue(2, outer_regular=False)
    assert classify(plane_flagged)[1].separable is Y
    assert classify(plane_plain)[1].separable is U


def test_mixture_contamination_note():
    w, f = classify(MODELS["ball_counting_plus_lebesgue"]())
    assert any(j.tag == "SUMMAND_CONTAMINATION" for j in f.justifications)
    flagged = MeasureModel.mixture(LebesgueWindow(2), AtomUniverse((), UncountableTail(ExtendedRational(1))))
    w2, f2 = classify(flagged)
    assert triple(w2) == (N, N, N) and triple(f2) == (N, N, N)
    assert any("kept NO" in note for note in f2.notes)


def test_zero_model():
    w, f = classify(MeasureModel())
    assert triple(w) == (Y, Y, Y)


def random_model(rng):
    explicit = []
    for i in range(rng.randint(0, 3)):
        weight = INF if rng.random() < 0.3 else ExtendedRational(F(rng.randint(1, 5), rng.randint(1, 5)))
        explicit.append((f"e{i}", weight))
    tail = rng.choice([
        None,
        GeometricTail(1, F(1, rng.randint(1, 4)), F(1, rng.randint(2, 4)), prefix="g"),
        ConstantTail(1, ExtendedRational(F(1, rng.randint(1, 3))), prefix="c"),
        ConstantTail(1, INF, prefix="c"),
        UncountableTail(ExtendedRational(1)),
    ])
    universe = AtomUniverse(tuple(explicit), tail)
    window = rng.choice([None, Box.from_bounds((0, 1), (0, 2))])
    flags = dict(outer_regular=rng.random() < 0.7, countably_generated=rng.random() < 0.7)
    kind = rng.choice(["lebesgue", "atomic", "mixture"])
    if kind == "lebesgue":
        return MeasureModel.lebesgue(2, window, **flags)
    if kind == "atomic":
        return MeasureModel.atomic_model(universe, **flags)
    return MeasureModel.mixture(LebesgueWindow(2, window), universe, **flags)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_models_consistent(seed):
    model = random_model(random.Random(seed))
    w, f = classify(model)
    for v in (w, f):
        assert v.is_consistent()
        if v.compact is Y:
            assert v.separable is Y and v.locally_compact is Y
    if model.total_mass().is_finite:
        assert triple(w) == triple(f)
    if f.separable is N:
        assert w.separable is N
    if model.has_nonatomic_part:
        assert w.compact is N and f.locally_compact is N


def test_refusal_citations_are_known_tags():
    import re
    from pathlib import Path

    import nba_lab
    from nba_lab.approx import UNCOUNTABLE_FILTRATION
    from nba_lab.classify import TAGS

    src = Path(nba_lab.__file__).parent
    cited = {c for f in src.glob("*.py") for c in re.findall(r'citation="([A-Z_]+)"', f.read_text())}
    assert cited and cited | {UNCOUNTABLE_FILTRATION} <= set(TAGS)
