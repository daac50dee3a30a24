"""Command line front end: ``nba-lab <command> ...``.

Every command prints one JSON envelope ``{command, inputs_digest, payload,
status}`` in canonical form.  Exit status: 0 on success (undecided
verdicts included), 1 when a bounded search finds nothing, 2 on malformed
input, 3 when a precondition of the requested construction fails.

``--model``, ``--set``, ``--a`` and ``--b`` take a file path, inline JSON
(starting with ``{``) or, for models, ``builtin:NAME``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .approx import find_level, standard_filtration
from .catalog import builtin_model, unit_square
from .classify import classify, justify
from .codec import (
    canonical_json,
    digest,
    ext_to_json,
    model_from_json,
    model_to_json,
    rat,
    region_to_json,
    set_from_json,
    set_to_json,
)
from .errors import InputError, NotFoundError, PreconditionError
from .extended import ExtendedRational, parse_rational
from .geometry import Region, measure
from .measures import MeasureModel, MixedSet, mu
from .metric import display_distance, dist_sq
from .oracle import exhaustive_best_approx, exhaustive_net_check, jordan_bounds
from .svg import render
from .witness import (
    build_net,
    discrete_family,
    make_alpha_witness,
    make_Tm,
    verify_cell_witness,
    verify_net,
)

__all__ = ["CommandResult", "run", "main", "build_parser"]

EXIT_OK, EXIT_NOT_FOUND, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


@dataclass
class CommandResult:
    command: list
    inputs_digest: str
    payload: dict
    status: int

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "payload": self.payload,
            "status": self.status,
        }


class _Inputs:
    """Loads JSON inputs and remembers them for the digest."""

    def __init__(self):
        self.seen = {}

    def _load(self, name: str, ref: str):
        if ref.startswith("builtin:"):
            obj = model_to_json(builtin_model(ref[len("builtin:"):]))
        else:
            try:
                text = ref if ref.lstrip().startswith("{") else Path(ref).read_text(encoding="utf-8")
            except OSError as exc:
                raise InputError(f"{name}: cannot read {ref}: {exc.strerror}") from None
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InputError(f"{name}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
        self.seen[name] = obj
        return obj

    def model(self, ref: str | None, name: str = "model") -> MeasureModel:
        if ref is None:
            raise InputError(f"--{name} is required for this command")
        return model_from_json(self._load(name, ref))

    def set(self, ref: str | None, model: MeasureModel, name: str = "set"):
        if ref is None:
            raise InputError(f"--{name} is required for this command")
        return set_from_json(self._load(name, ref), model)


def _eps(text: str | None, required: bool = True):
    if text is None:
        if required:
            raise InputError("--eps-sq is required for this command")
        return None
    try:
        value = parse_rational(text)
    except ValueError as exc:
        raise InputError(f"--eps-sq: {exc}") from None
    if value <= 0:
        raise InputError("--eps-sq must be positive")
    return value


def _need(value, flag: str):
    if value is None:
        raise InputError(f"{flag} is required for this command")
    return value


def _write_svg(path: str | None, layers, window=None, grid_level=None) -> str | None:
    if not path:
        return None
    Path(path).write_text(render(layers, window=window, grid_level=grid_level), encoding="utf-8")
    return path


def _region_of(s):
    if isinstance(s, Region):
        return s
    if isinstance(s, MixedSet):
        return s.region
    return None


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args, inputs: _Inputs) -> dict:
    model = inputs.model(args.model)
    whole, fin = classify(model)
    return {
        "verdicts": {whole.space: whole.to_json(), fin.space: fin.to_json()},
        "report": justify(whole) + "\n" + justify(fin),
    }


def cmd_distance(args, inputs: _Inputs) -> dict:
    model = inputs.model(args.model)
    a = inputs.set(args.a, model, "a")
    b = inputs.set(args.b, model, "b")
    d = dist_sq(model, a, b)
    return {"dist_sq": ext_to_json(d), "distance_display": display_distance(d, 12), "display_digits": 12}


def cmd_approximate(args, inputs: _Inputs) -> dict:
    model = inputs.model(args.model)
    target = inputs.set(args.set, model)
    eps = _eps(args.eps_sq)
    try:
        report = find_level(model, target, eps, args.n_max)
    except NotFoundError as exc:
        raise _NotFound({
            "found": False,
            "eps_sq": rat(eps),
            "n_max": exc.level,
            "best_error": ext_to_json(exc.best) if exc.best is not None else None,
        }) from None
    svg = None
    region = _region_of(target)
    if region is not None and model.dim == 2:
        approx_region = _region_of(report.approximant)
        svg = _write_svg(args.svg, [(region, "#1f4e9c"), (approx_region, "#d1495b")], model.continuous.window if model.continuous else None)
    return {
        "found": True,
        "eps_sq": rat(eps),
        "level": report.level,
        "error": ext_to_json(report.error),
        "target_measure": ext_to_json(mu(model, target)),
        "history": [ext_to_json(e) for e in report.history],
        "approximant": set_to_json(report.approximant),
        "svg": svg,
    }


def cmd_witness(args, inputs: _Inputs) -> dict:
    kind = args.kind
    if kind == "tm":
        m = _need(args.m, "--m")
        region = make_Tm(m)
        svg = _write_svg(args.svg, [(region, None)], window=unit_square().continuous.window, grid_level=m)
        return {"kind": kind, "m": m, "region": region_to_json(region), "measure": rat(measure(region)), "svg": svg}
    if kind == "tm-eps":
        m = _need(args.m, "--m")
        eps = _eps(args.eps_sq)
        model = inputs.model(args.model) if args.model else unit_square()
        rep = verify_cell_witness(model, m, eps)
        svg = _write_svg(args.svg, [(rep.witness, None)], window=model.continuous.window, grid_level=m)
        return {
            "kind": kind,
            "m": m,
            "eps_sq": rat(eps),
            "region": region_to_json(rep.witness),
            "measure": rat(measure(rep.witness)),
            "error": ext_to_json(rep.error),
            "closed_form": rat(rep.closed_form),
            "minimizer_cells": rep.minimizer_cells,
            "verdict": rep.verdict,
            "svg": svg,
        }
    if kind == "alpha":
        model = inputs.model(args.model)
        level = _need(args.level, "--level")
        eps = _eps(args.eps_sq)
        w = make_alpha_witness(model, standard_filtration(model, level), eps)
        region = _region_of(w.set)
        svg = None
        if region is not None and model.dim == 2:
            svg = _write_svg(args.svg, [(region, None)], window=model.continuous.window, grid_level=level)
        return {
            "kind": kind,
            "level": level,
            "eps_sq": rat(eps),
            "alpha": rat(w.alpha) if w.alpha is not None else None,
            "mass": ext_to_json(w.mass),
            "error": ext_to_json(w.error),
            "verdict": w.error >= ExtendedRational(eps),
            "set": set_to_json(w.set),
            "svg": svg,
        }
    if kind == "discrete":
        model = inputs.model(args.model)
        fam = discrete_family(model, _need(args.k, "--k"))
        return {
            "kind": kind,
            "sets": [set_to_json(s) for s in fam.sets],
            "delta": ext_to_json(fam.delta),
            "min_pairwise_dist_sq": ext_to_json(fam.min_pairwise) if fam.min_pairwise is not None else None,
            "radius_sq_bound": ext_to_json(fam.radius_sq_bound) if fam.radius_sq_bound is not None else None,
            "certifies_not_totally_bounded": fam.certifies_not_totally_bounded,
        }
    if kind == "net":
        return {"kind": kind, **_net_payload(args, inputs)}
    raise InputError(f"unknown witness kind {kind!r}")


def _net_payload(args, inputs: _Inputs) -> dict:
    model = inputs.model(args.model)
    eps = _eps(args.eps_sq)
    net = build_net(model, eps)
    return {
        "eps_sq": rat(eps),
        "level": net.level,
        "head": list(net.head),
        "infinite": list(net.infinite),
        "tail_mass": ext_to_json(net.tail_mass),
        "cardinality": net.cardinality,
        "elements": [set_to_json(e) for e in net.elements],
        "verified": verify_net(model, net, trials=args.trials, seed=args.seed),
    }


def cmd_net(args, inputs: _Inputs) -> dict:
    return _net_payload(args, inputs)


def cmd_oracle(args, inputs: _Inputs) -> dict:
    op = args.op
    if op == "jordan":
        model = inputs.model(args.model) if args.model else MeasureModel(dim=None)
        target = inputs.set(args.set, model)
        if not isinstance(target, Region):
            raise InputError("jordan bounds need a region")
        jb = jordan_bounds(target, _need(args.level, "--level"))
        return {"op": op, "level": jb.level, "lower": rat(jb.lower), "upper": rat(jb.upper), "width": rat(jb.width)}
    if op == "best-approx":
        model = inputs.model(args.model)
        target = inputs.set(args.set, model)
        level = _need(args.level, "--level")
        approx, error = exhaustive_best_approx(model, standard_filtration(model, level), target)
        return {"op": op, "level": level, "error": ext_to_json(error), "approximant": set_to_json(approx)}
    if op == "net-check":
        model = inputs.model(args.model)
        eps = _eps(args.eps_sq)
        net = build_net(model, eps)
        bound = _need(args.bound, "--bound")
        return {"op": op, "eps_sq": rat(eps), "bound": bound, "level": net.level, "covered": exhaustive_net_check(model, net, eps, bound)}
    raise InputError(f"unknown oracle operation {op!r}")


class _NotFound(Exception):
    def __init__(self, payload):
        super().__init__("not found")
        self.payload = payload


COMMANDS = {
    "classify": cmd_classify,
    "distance": cmd_distance,
    "approximate": cmd_approximate,
    "witness": cmd_witness,
    "net": cmd_net,
    "oracle": cmd_oracle,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON envelope here instead of stdout")
    p = _Parser(prog="nba-lab", description="Exact symmetric-difference metric toolkit.", parents=[common])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("classify", help="separability and compactness verdicts")
    s.add_argument("--model", required=True)

    s = sub.add_parser("distance", help="exact squared distance between two sets")
    s.add_argument("--model", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    s = sub.add_parser("approximate", help="smallest standard filtration level approximating a set")
    s.add_argument("--model", required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--eps-sq", required=True)
    s.add_argument("--n-max", type=int, default=None)
    s.add_argument("--svg")

    s = sub.add_parser("witness", help="build and verify a witness")
    s.add_argument("--kind", required=True, choices=["tm", "tm-eps", "alpha", "discrete", "net"])
    s.add_argument("--m", type=int)
    s.add_argument("--eps-sq")
    s.add_argument("--model")
    s.add_argument("--k", type=int)
    s.add_argument("--level", type=int)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--svg")

    s = sub.add_parser("net", help="finite eps-net for a compact atomic model")
    s.add_argument("--model", required=True)
    s.add_argument("--eps-sq", required=True)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("oracle", help="brute-force checks")
    s.add_argument("op", choices=["jordan", "best-approx", "net-check"])
    s.add_argument("--model")
    s.add_argument("--set")
    s.add_argument("--level", type=int)
    s.add_argument("--eps-sq")
    s.add_argument("--bound", type=int)
    return p


def _scalar_args(args) -> dict:
    skip = {"out", "svg", "model", "set", "a", "b"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv) -> CommandResult:
    """Parse ``argv`` and execute; never raises for user-level errors."""
    argv = list(argv)
    inputs = _Inputs()
    args = None
    try:
        args = build_parser().parse_args(argv)
        payload = COMMANDS[args.command](args, inputs)
        status = EXIT_OK
    except _NotFound as exc:
        payload, status = exc.payload, EXIT_NOT_FOUND
    except ValueError as exc:  # InputError and bad numeric arguments
        payload, status = {"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_INPUT
    except PreconditionError as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc), "citation": exc.citation}}
        status = EXIT_PRECONDITION
    scalars = _scalar_args(args) if args is not None else {}
    return CommandResult(_strip_out(argv), digest({"args": scalars, "inputs": inputs.seen}), payload, status)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help", "--version") for a in argv):
        build_parser().parse_args(argv)  # prints and exits
    result = run(argv)
    text = canonical_json(result.to_json())
    out = _out_path(argv)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if result.status in (EXIT_INPUT, EXIT_PRECONDITION):
        err = result.payload["error"]
        cite = f" [{err['citation']}]" if err.get("citation") else ""
        sys.stderr.write(f"nba-lab: {err['message']}{cite}\n")
    return result.status


def _strip_out(argv) -> list:
    """The command echo leaves out the output destination."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--out":
            skip = True
        elif not a.startswith("--out="):
            out.append(a)
    return out


def _out_path(argv) -> str | None:
    for i, a in enumerate(argv):
        if a == "--out" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--out="):
            return a.split("=", 1)[1]
    return None


if __name__ == "__main__":
    sys.exit(main())
