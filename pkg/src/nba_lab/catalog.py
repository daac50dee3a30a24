"""Named models used by the examples, the tests and ``--model builtin:NAME``."""
from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .extended import INF
from .geometry import Box
from .measures import (
    AtomUniverse,
    ConstantTail,
    GeometricTail,
    LebesgueWindow,
    MeasureModel,
    UncountableTail,
)

__all__ = ["MODELS", "builtin_model", "unit_square", "counting_N", "geometric_half"]

UNIT = Box.from_bounds((0, 1), (0, 1))


def unit_square() -> MeasureModel:
    return MeasureModel.lebesgue(2, UNIT, name="leb_unit")


def lebesgue_plane() -> MeasureModel:
    return MeasureModel.lebesgue(2, name="leb_R2")


def counting_N() -> MeasureModel:
    """Counting measure on the positive integers (ids "1", "2", ...)."""
    return MeasureModel.atomic_model(AtomUniverse((), ConstantTail(1, 1)), name="counting_N")


def counting_plane() -> MeasureModel:
    """Counting measure on an uncountable set of points of the plane."""
    return MeasureModel.atomic_model(AtomUniverse((), UncountableTail(1)), dim=2, name="counting_R2")


def geometric_half() -> MeasureModel:
    """Atoms ``x1, x2, ...`` of weight ``2^-n``."""
    return MeasureModel.atomic_model(
        AtomUniverse((), GeometricTail(1, Fraction(1, 2), Fraction(1, 2), prefix="x")),
        name="geometric_half",
    )


def geometric_with_infinite_atom() -> MeasureModel:
    return MeasureModel.atomic_model(
        AtomUniverse((("y1", INF),), GeometricTail(1, Fraction(1, 2), Fraction(1, 2), prefix="x")),
        name="geometric_inf",
    )


def ball_counting_plus_lebesgue() -> MeasureModel:
    """Counting measure on the points of a ball plus Lebesgue measure on the plane.

    Counting measure on uncountably many points is not outer regular, so the
    flag is off.
    """
    return MeasureModel.mixture(
        LebesgueWindow(2), AtomUniverse((), UncountableTail(1)), outer_regular=False, name="ball_counting_plus_lebesgue"
    )


def lebesgue_with_infinite_origin() -> MeasureModel:
    """Lebesgue measure on the line plus an atom of infinite mass at the origin."""
    return MeasureModel.mixture(LebesgueWindow(1), AtomUniverse((("0", INF),)), name="lebesgue_infinite_origin")


MODELS = {
    "leb_unit": unit_square,
    "leb_R2": lebesgue_plane,
    "counting_N": counting_N,
    "counting_R2": counting_plane,
    "geometric_half": geometric_half,
    "geometric_inf": geometric_with_infinite_atom,
    "ball_counting_plus_lebesgue": ball_counting_plus_lebesgue,
    "lebesgue_infinite_origin": lebesgue_with_infinite_origin,
}


def builtin_model(name: str) -> MeasureModel:
    try:
        return MODELS[name]()
    except KeyError:
        raise InputError(f"unknown builtin model {name!r}; known: {', '.join(sorted(MODELS))}") from None
