"""JSON encoding of regions, atom universes, models, sets and reports.

Rationals are strings ``"p/q"`` (or ``"p"``), the infinite value is
``"inf"``.  :func:`canonical_json` produces the byte-stable text used by the
command line tool (sorted keys, fixed indentation, trailing newline).
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import FamilyError, GeometryError, ModelError
from .extended import ExtendedRational, format_rational, parse_rational
from .geometry import Box, Region, SlopeTriangle
from .measures import (
    AtomSet,
    AtomUniverse,
    ConstantTail,
    GeometricTail,
    LebesgueWindow,
    MeasureModel,
    MixedSet,
    UncountableTail,
)

__all__ = [
    "canonical_json",
    "digest",
    "rat",
    "ext_to_json",
    "ext_from_json",
    "box_to_json",
    "box_from_json",
    "region_to_json",
    "region_from_json",
    "universe_to_json",
    "universe_from_json",
    "model_to_json",
    "model_from_json",
    "set_to_json",
    "set_from_json",
]


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(obj) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def rat(value) -> str:
    return format_rational(Fraction(value))


def _parse(text, what: str, cls=GeometryError) -> Fraction:
    if not isinstance(text, str):
        raise cls(f"{what}: rationals are written as strings 'p/q', got {text!r}")
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise cls(f"{what}: {exc}") from None


def ext_to_json(value: ExtendedRational) -> str:
    return value.to_json()


def ext_from_json(text, what: str = "value") -> ExtendedRational:
    if not isinstance(text, str):
        raise ModelError(f"{what}: expected a string 'p/q' or 'inf', got {text!r}")
    try:
        return ExtendedRational.from_json(text)
    except ValueError as exc:
        raise ModelError(f"{what}: {exc}") from None


def _require(obj, keys, what: str, cls):
    if not isinstance(obj, dict):
        raise cls(f"{what}: expected an object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise cls(f"{what}: missing {', '.join(missing)}")


# ---------------------------------------------------------------------------
# geometry


def _intervals_to_json(box: Box):
    return [[rat(lo), rat(hi)] for lo, hi in box.intervals]


def _intervals_from_json(items, what: str) -> Box:
    if not isinstance(items, list) or not items:
        raise GeometryError(f"{what}: intervals must be a nonempty list")
    out = []
    for pair in items:
        if not isinstance(pair, list) or len(pair) != 2:
            raise GeometryError(f"{what}: each interval is a pair [lo, hi]")
        out.append((_parse(pair[0], what), _parse(pair[1], what)))
    return Box(tuple(out))


def box_to_json(box: Box) -> dict:
    return {"kind": "box", "intervals": _intervals_to_json(box)}


def box_from_json(obj, what: str = "box") -> Box:
    _require(obj, ("intervals",), what, GeometryError)
    if obj.get("kind", "box") != "box":
        raise GeometryError(f"{what}: expected kind 'box'")
    return _intervals_from_json(obj["intervals"], what)


def _primitive_to_json(p) -> dict:
    if isinstance(p, SlopeTriangle):
        return {"kind": "triangle", "box": box_to_json(p.box), "offset": rat(p.offset)}
    return box_to_json(p)


def _primitive_from_json(obj, what: str):
    _require(obj, ("kind",), what, GeometryError)
    kind = obj["kind"]
    if kind == "box":
        return box_from_json(obj, what)
    if kind == "triangle":
        _require(obj, ("box", "offset"), what, GeometryError)
        return SlopeTriangle(box_from_json(obj["box"], what), _parse(obj["offset"], what))
    raise GeometryError(f"{what}: unknown primitive kind {kind!r}")


def region_to_json(region: Region) -> dict:
    return {"dim": region.dim, "primitives": [_primitive_to_json(p) for p in region.primitives]}


def region_from_json(obj) -> Region:
    _require(obj, ("dim", "primitives"), "region", GeometryError)
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise GeometryError("region: dim must be an integer")
    prims = obj["primitives"]
    if not isinstance(prims, list):
        raise GeometryError("region: primitives must be a list")
    return Region(dim, [_primitive_from_json(p, f"primitive {i}") for i, p in enumerate(prims)])


# ---------------------------------------------------------------------------
# models


def _tail_to_json(tail):
    if tail is None:
        return None
    if isinstance(tail, GeometricTail):
        return {"kind": "geometric", "start": tail.start, "weight": rat(tail.weight), "ratio": rat(tail.ratio), "prefix": tail.prefix}
    if isinstance(tail, ConstantTail):
        return {"kind": "constant", "start": tail.start, "weight": tail.weight.to_json(), "prefix": tail.prefix}
    return {"kind": "uncountable", "weight": tail.weight.to_json()}


def _tail_from_json(obj):
    if obj is None:
        return None
    _require(obj, ("kind", "weight"), "tail", ModelError)
    kind = obj["kind"]
    if kind == "geometric":
        _require(obj, ("start", "ratio"), "tail", ModelError)
        return GeometricTail(
            _int(obj["start"], "tail start"),
            _parse(obj["weight"], "tail weight", ModelError),
            _parse(obj["ratio"], "tail ratio", ModelError),
            obj.get("prefix", ""),
        )
    if kind == "constant":
        _require(obj, ("start",), "tail", ModelError)
        return ConstantTail(_int(obj["start"], "tail start"), ext_from_json(obj["weight"], "tail weight"), obj.get("prefix", ""))
    if kind == "uncountable":
        return UncountableTail(ext_from_json(obj["weight"], "tail weight"))
    raise ModelError(f"unknown tail kind {kind!r}")


def _int(value, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ModelError(f"{what} must be an integer")
    return value


def universe_to_json(u: AtomUniverse) -> dict:
    return {
        "explicit": [{"id": a, "weight": w.to_json()} for a, w in u.explicit],
        "tail": _tail_to_json(u.tail),
    }


def universe_from_json(obj) -> AtomUniverse:
    _require(obj, (), "universe", ModelError)
    explicit = obj.get("explicit", [])
    if not isinstance(explicit, list):
        raise ModelError("universe: explicit must be a list")
    atoms = []
    for i, item in enumerate(explicit):
        _require(item, ("id", "weight"), f"atom {i}", ModelError)
        if not isinstance(item["id"], str):
            raise ModelError(f"atom {i}: id must be a string")
        atoms.append((item["id"], ext_from_json(item["weight"], f"atom {item['id']} weight")))
    return AtomUniverse(tuple(atoms), _tail_from_json(obj.get("tail")))


def _window_to_json(window):
    return None if window is None else _intervals_to_json(window)


def _window_from_json(items):
    return None if items is None else _intervals_from_json(items, "window")


def model_to_json(model: MeasureModel) -> dict:
    out = {
        "kind": model.kind,
        "outer_regular": model.outer_regular,
        "countably_generated": model.countably_generated,
    }
    if model.name:
        out["name"] = model.name
    if model.dim is not None:
        out["dim"] = model.dim
    if model.continuous is not None:
        out["window"] = _window_to_json(model.continuous.window)
    if model.atomic is not None:
        out["universe"] = universe_to_json(model.atomic)
    return out


def model_from_json(obj) -> MeasureModel:
    _require(obj, ("kind",), "model", ModelError)
    kind = obj["kind"]
    flags = {}
    for key in ("outer_regular", "countably_generated"):
        if key in obj:
            if not isinstance(obj[key], bool):
                raise ModelError(f"model: {key} must be a boolean")
            flags[key] = obj[key]
    name = obj.get("name", "")
    dim = obj.get("dim")
    if dim is not None:
        dim = _int(dim, "model dim")
    if kind == "lebesgue":
        if dim is None:
            raise ModelError("lebesgue model needs dim")
        return MeasureModel(continuous=LebesgueWindow(dim, _window_from_json(obj.get("window"))), name=name, **flags)
    if kind == "atomic":
        _require(obj, ("universe",), "model", ModelError)
        return MeasureModel(atomic=universe_from_json(obj["universe"]), dim=dim, name=name, **flags)
    if kind == "mixture":
        _require(obj, ("universe",), "model", ModelError)
        if dim is None:
            raise ModelError("mixture model needs dim")
        cont = LebesgueWindow(dim, _window_from_json(obj.get("window")))
        return MeasureModel(continuous=cont, atomic=universe_from_json(obj["universe"]), name=name, **flags)
    if kind == "zero":
        return MeasureModel(dim=dim, name=name, **flags)
    raise ModelError(f"unknown model kind {kind!r}")


# ---------------------------------------------------------------------------
# sets


def set_to_json(s) -> dict:
    if isinstance(s, Region):
        return {"kind": "region", **region_to_json(s)}
    if isinstance(s, AtomSet):
        return {"kind": "atoms", "mode": "cofinite" if s.cofinite else "finite", "ids": sorted(s.ids)}
    if isinstance(s, MixedSet):
        return {"kind": "pair", "region": set_to_json(s.region), "atoms": set_to_json(s.atoms)}
    raise FamilyError(f"not a representable set: {s!r}")


def set_from_json(obj, model: MeasureModel):
    """Decode a set; atom sets are bound to ``model``'s universe."""
    if isinstance(obj, dict) and "kind" not in obj and "primitives" in obj:
        return region_from_json(obj)
    _require(obj, ("kind",), "set", FamilyError)
    kind = obj["kind"]
    if kind == "region":
        return region_from_json(obj)
    if kind == "atoms":
        if model.atomic is None:
            raise FamilyError("atom sets need a model with atoms")
        _require(obj, ("mode", "ids"), "atom set", FamilyError)
        ids = obj["ids"]
        if not isinstance(ids, list) or not all(isinstance(i, str) for i in ids):
            raise FamilyError("atom set: ids must be a list of strings")
        if obj["mode"] == "finite":
            return AtomSet.finite(model.atomic, ids)
        if obj["mode"] == "cofinite":
            return AtomSet.cofinite_of(model.atomic, ids)
        raise FamilyError(f"atom set: unknown mode {obj['mode']!r}")
    if kind == "pair":
        _require(obj, ("region", "atoms"), "pair", FamilyError)
        region = set_from_json(obj["region"], model)
        atoms = set_from_json(obj["atoms"], model)
        if not isinstance(region, Region) or not isinstance(atoms, AtomSet):
            raise FamilyError("pair: expected a region and an atom set")
        return MixedSet(region, atoms)
    raise FamilyError(f"unknown set kind {kind!r}")
