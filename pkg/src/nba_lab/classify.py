"""Decide separability and compactness of the measure algebra and of its finite-measure part.

Rules are applied in a fixed order and only fill fields that are still
undecided, so structural negative results (which depend only on the atom
structure and the masses) take precedence over declared hypotheses such as
``outer_regular``.  A field that no rule decides stays ``UNKNOWN``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .measures import MeasureModel, atoms_fin, atoms_inf, decompose

__all__ = ["Tri", "Verdict", "Justification", "classify", "justify", "TAGS", "E_TILDE", "E_TILDE_FIN"]

E_TILDE = "E_TILDE"
E_TILDE_FIN = "E_TILDE_FIN"


class Tri(str, Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


TAGS = {
    "COMPLETENESS": "the measure algebra with the symmetric-difference metric is complete, and so is its finite part",
    "OUTER_REGULAR_FIN_SEPARABLE": "outer regular Borel measures on R^d: finite-measure classes are separable",
    "COUNTABLY_GENERATED_FINITE_SEPARABLE": "finite measure on a countably generated sigma-algebra: separable",
    "SUMMAND_CONTAMINATION": "a summand that is not (uniformly) approximable spoils the sum",
    "ATOMIC_DECOMPOSITION": "split into purely atomic and non-atomic parts",
    "NONATOMIC_INFINITE_NOT_SEPARABLE": "non-atomic part of infinite mass: not separable",
    "NONATOMIC_NOT_COMPACT": "non-atomic part: neither compact nor locally compact",
    "ATOMIC_SEPARABILITY_A": "purely atomic: separable iff finite atoms have finite total and infinite atoms are finitely many",
    "ATOMIC_SEPARABILITY_B": "purely atomic, finite part: separable iff the finite atoms are countable",
    "ATOMIC_COMPACTNESS_A": "purely atomic: compact iff finite atoms have finite total and infinite atoms are finitely many",
    "ATOMIC_COMPACTNESS_B": "purely atomic, finite part: compact iff the finite atoms have finite total",
    "DISCRETE_BALLS": "atom weights bounded below: small balls are singletons",
    "COMPACT_METRIC_BASICS": "compact metric spaces are separable and locally compact",
    "SEPARABILITY_OF_SUBSPACE": "a subspace of a separable metric space is separable",
    "FINITE_MEASURE_IDENTIFICATION": "finite total mass: both spaces coincide",
    "NO_CRITERION": "no available result decides this property for this model",
}


@dataclass
class Justification:
    claim: str
    tag: str
    reason: str

    def to_json(self) -> dict:
        return {"claim": self.claim, "tag": self.tag, "reason": self.reason}


@dataclass
class Verdict:
    space: str
    separable: Tri = Tri.UNKNOWN
    compact: Tri = Tri.UNKNOWN
    locally_compact: Tri = Tri.UNKNOWN
    complete: Tri = Tri.YES
    justifications: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def set(self, prop: str, value: Tri, tag: str, reason: str) -> bool:
        """Record ``prop = value`` unless already decided; returns True when it was recorded."""
        current = getattr(self, prop)
        if current is not Tri.UNKNOWN:
            if current is not value:
                self.notes.append(f"{prop}: {tag} would give {value.value}, kept {current.value} ({reason})")
            return False
        setattr(self, prop, value)
        self.justifications.append(Justification(f"{prop}={value.value}", tag, reason))
        return True

    def is_consistent(self) -> bool:
        if self.compact is Tri.YES and (self.separable is not Tri.YES or self.locally_compact is not Tri.YES):
            return False
        if self.separable is Tri.NO and self.compact is Tri.YES:
            return False
        return self.complete is Tri.YES

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "separable": self.separable.value,
            "compact": self.compact.value,
            "locally_compact": self.locally_compact.value,
            "complete": self.complete.value,
            "justifications": [j.to_json() for j in self.justifications],
            "notes": list(self.notes),
        }


def _fmt_count(summary) -> str:
    return str(summary.count)


def _atomic_rules(model: MeasureModel, whole: Verdict, fin_space: Verdict, contaminating: bool) -> None:
    """Purely atomic criteria applied to ``model``'s atomic part.

    With ``contaminating`` set, only negative results are transferred (the
    atomic part is one summand of a mixture).
    """
    fin, inf = atoms_fin(model), atoms_inf(model)
    summable = fin.mass.is_finite
    inf_finite = inf.is_finite
    countable = fin.is_countable
    tag_note = " (atomic summand)" if contaminating else ""

    def put(verdict, prop, value, tag, reason):
        if contaminating:
            if value is not Tri.NO:
                return
            verdict.set(prop, value, "SUMMAND_CONTAMINATION", f"{reason}; {TAGS[tag]}{tag_note}")
        else:
            verdict.set(prop, value, tag, reason)

    fin_desc = f"E_fin count {_fmt_count(fin)}, total weight {fin.mass}"
    inf_desc = f"E_inf count {_fmt_count(inf)}"
    good = summable and inf_finite
    value = Tri.YES if good else Tri.NO
    put(whole, "separable", value, "ATOMIC_SEPARABILITY_A", f"{fin_desc}; {inf_desc}")
    put(whole, "compact", value, "ATOMIC_COMPACTNESS_A", f"{fin_desc}; {inf_desc}")
    put(fin_space, "separable", Tri.YES if countable else Tri.NO, "ATOMIC_SEPARABILITY_B", f"E_fin {'countable' if countable else 'uncountable'}")
    put(fin_space, "compact", Tri.YES if summable else Tri.NO, "ATOMIC_COMPACTNESS_B", fin_desc)


def classify(model: MeasureModel) -> tuple[Verdict, Verdict]:
    """Verdicts for the whole measure algebra and for its finite-measure part."""
    whole, fin_space = Verdict(E_TILDE), Verdict(E_TILDE_FIN)
    for v in (whole, fin_space):
        v.justifications.append(Justification("complete=YES", "COMPLETENESS", TAGS["COMPLETENESS"]))

    atomic_part, nonatomic_part = decompose(model)
    nonatomic = model.has_nonatomic_part
    has_atoms = model.atomic is not None and (
        atoms_fin(model).count != 0 or atoms_inf(model).count != 0
    )
    if nonatomic and has_atoms:
        for v in (whole, fin_space):
            v.notes.append(f"{TAGS['ATOMIC_DECOMPOSITION']}: mixture of a non-atomic and an atomic summand")

    # structural negatives first
    if nonatomic:
        mass = model.continuous.total
        for v in (whole, fin_space):
            reason = f"non-atomic part of mass {mass}"
            v.set("compact", Tri.NO, "NONATOMIC_NOT_COMPACT", reason)
            v.set("locally_compact", Tri.NO, "NONATOMIC_NOT_COMPACT", reason)
        if mass.is_infinite:
            whole.set("separable", Tri.NO, "NONATOMIC_INFINITE_NOT_SEPARABLE", "non-atomic part has infinite mass")

    if not nonatomic:
        _atomic_rules(model, whole, fin_space, contaminating=False)
        _atomic_local_compactness(model, whole, fin_space)
    elif has_atoms:
        _atomic_rules(atomic_part, whole, fin_space, contaminating=True)

    # a non-separable subspace rules out separability of the whole space
    if fin_space.separable is Tri.NO:
        whole.set("separable", Tri.NO, "SEPARABILITY_OF_SUBSPACE", "the finite-measure part is not separable")

    # declared hypotheses
    total = model.total_mass()
    if total.is_finite and model.countably_generated:
        for v in (whole, fin_space):
            v.set("separable", Tri.YES, "COUNTABLY_GENERATED_FINITE_SEPARABLE", f"total mass {total}, countably generated")
    if model.continuous is not None and model.continuous.window is None and model.outer_regular:
        fin_space.set(
            "separable",
            Tri.YES,
            "OUTER_REGULAR_FIN_SEPARABLE",
            f"declared outer regular on R^{model.dim}",
        )

    if total.is_finite:
        _identify(whole, fin_space, total)

    for v in (whole, fin_space):
        if v.compact is Tri.YES:
            v.set("separable", Tri.YES, "COMPACT_METRIC_BASICS", "compact")
            v.set("locally_compact", Tri.YES, "COMPACT_METRIC_BASICS", "compact")
        if v.separable is Tri.NO:
            v.set("compact", Tri.NO, "COMPACT_METRIC_BASICS", "compact metric spaces are separable")
        for prop in ("separable", "compact", "locally_compact"):
            if getattr(v, prop) is Tri.UNKNOWN:
                v.justifications.append(Justification(f"{prop}=UNKNOWN", "NO_CRITERION", TAGS["NO_CRITERION"]))
                v.notes.append(f"{prop} is left undecided")
        if not v.is_consistent():
            raise AssertionError(f"inconsistent verdict for {v.space}: {v.to_json()}")
    return whole, fin_space


def _atomic_local_compactness(model: MeasureModel, whole: Verdict, fin_space: Verdict) -> None:
    fin = atoms_fin(model)
    inf = atoms_inf(model)
    weight = fin.infimum_weight
    bounded_below = fin.count == 0 or (weight is not None and weight > 0)
    if bounded_below:
        floor = "no finite atoms" if fin.count == 0 else f"finite atom weights at least {weight}"
        for v in (whole, fin_space):
            v.set("locally_compact", Tri.YES, "DISCRETE_BALLS", floor)
        return
    # compactness settles local compactness later; flag the remaining gap
    compact_whole = fin.mass.is_finite and inf.is_finite
    compact_fin = fin.mass.is_finite
    for v, compact in ((whole, compact_whole), (fin_space, compact_fin)):
        if not compact:
            v.notes.append("finite atom weights accumulate at 0; no criterion decides local compactness")


def _identify(whole: Verdict, fin_space: Verdict, total) -> None:
    for prop in ("separable", "compact", "locally_compact"):
        a, b = getattr(whole, prop), getattr(fin_space, prop)
        if a is Tri.UNKNOWN and b is not Tri.UNKNOWN:
            whole.set(prop, b, "FINITE_MEASURE_IDENTIFICATION", f"total mass {total}")
        elif b is Tri.UNKNOWN and a is not Tri.UNKNOWN:
            fin_space.set(prop, a, "FINITE_MEASURE_IDENTIFICATION", f"total mass {total}")
        elif a is not b:
            raise AssertionError(f"{prop}: the two spaces coincide but got {a.value} and {b.value}")


def justify(verdict: Verdict) -> str:
    """Plain-text report: one line per claim with its tag and the instantiated hypothesis."""
    lines = [f"{verdict.space}: separable={verdict.separable.value} compact={verdict.compact.value} "
             f"locally_compact={verdict.locally_compact.value} complete={verdict.complete.value}"]
    for j in verdict.justifications:
        lines.append(f"  {j.claim:<24} [{j.tag}] {j.reason}")
    for note in verdict.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)
