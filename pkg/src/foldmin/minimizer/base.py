"""Shared verdict/witness types and the simplification loop common to all
three family drivers.

A driver run alternates cheap local simplifications (fold, spike pruning,
degree-two merges, in that fixed order) with a family-specific relator
scan that either performs a complexity-decreasing surgery or records a
witness: an explicit loop whose label violates a certification
hypothesis.  Every accepted step strictly decreases the family's
lexicographic measure, so runs terminate; iteration caps only convert
engine bugs into an inconclusive outcome, never into a wrong verdict.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..complexity import fine, sigma
from ..fgraph import FGraph
from ..moves import MoveRecord, MoveRejected, fold_step, move_A3
from ..presentations import HypothesisReport
from ..words import Word


class Status(str, enum.Enum):
    FREE_CERTIFIED = "FreeCertified"
    QUASICONVEX_CERTIFIED = "QuasiconvexCertified"
    SEPARABLE_CERTIFIED = "SeparableCertified"
    WITNESSED = "Witnessed"
    HYPOTHESIS_NOT_MET = "HypothesisNotMet"
    INCONCLUSIVE = "Inconclusive"


#: exit codes for the command line: clean certification or witness, parse
#: error, unmet hypothesis, inconclusive
EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_INCONCLUSIVE = 0, 2, 3, 4

STATUS_EXIT_CODES = {
    Status.FREE_CERTIFIED: EXIT_OK,
    Status.QUASICONVEX_CERTIFIED: EXIT_OK,
    Status.SEPARABLE_CERTIFIED: EXIT_OK,
    Status.WITNESSED: EXIT_OK,
    Status.HYPOTHESIS_NOT_MET: EXIT_HYPOTHESIS,
    Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


@dataclass(frozen=True)
class Witness:
    """An explicit hypothesis violation: a loop in the graph whose label the
    family oracle can confirm (torsion element, generator conjugate,
    nontrivial two-generator intersection, or a base/target collision)."""

    kind: str
    label: Word
    params: tuple[tuple[str, int], ...] = ()

    def param(self, name: str) -> Optional[int]:
        for k, v in self.params:
            if k == name:
                return v
        return None

    def key(self) -> tuple:
        return (self.kind, self.params)

    def to_json_dict(self, alphabet) -> dict:
        return {
            "kind": self.kind,
            "label": alphabet.word_to_text(self.label),
            **{k: v for k, v in self.params},
        }


@dataclass
class MinimizeResult:
    graph: FGraph
    witnesses: list[Witness]
    trace: list[MoveRecord]
    complexity_trace: list[tuple[int, ...]]
    iterations: int
    capped: bool
    diagnostics: list[str]


@dataclass
class Verdict:
    status: Status
    hypothesis: HypothesisReport
    witnesses: list[Witness]
    graph: FGraph
    trace: list[MoveRecord]
    complexity_trace: list[tuple[int, ...]]
    iterations: int
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return STATUS_EXIT_CODES[self.status]

    def to_json_dict(self) -> dict:
        a = self.graph.alphabet
        return {
            "status": self.status.value,
            "thresholds": self.hypothesis.to_json_dict(),
            "witnesses": [w.to_json_dict(a) for w in self.witnesses],
            "chi": self.graph.euler_characteristic(),
            "complexity_trace": [list(c) for c in self.complexity_trace],
            "iterations": self.iterations,
            "graph": self.graph.to_json_dict(),
            "notes": list(self.notes),
        }


def default_max_iter() -> int:
    env = os.environ.get("FOLDMIN_MAX_ITER", "")
    if env.strip():
        return int(env)
    return 1_000_000


def prune_one_spike(g: FGraph) -> Optional[MoveRecord]:
    for v in g.vertices():
        if g.degree(v) == 1 and not g.marked(v):
            chi0 = g.euler_characteristic()
            s0 = tuple(sigma(g))
            d = g.out_edges(v)[0]
            g.remove_edge(d)
            g.remove_vertex(v)
            return MoveRecord("Prune", (v, abs(d)), chi0, g.euler_characteristic(),
                              s0, tuple(sigma(g)))
    return None


def simplify_step(g: FGraph) -> Optional[MoveRecord]:
    """One fold, spike-prune, or degree-two merge, in that priority order;
    None when none applies.  Marked vertices are never pruned or merged."""
    pair = g.violating_pair()
    if pair is not None:
        return fold_step(g, *pair)
    rec = prune_one_spike(g)
    if rec is not None:
        return rec
    for v in g.vertices():
        if g.degree(v) == 2 and not g.marked(v):
            da, db = g.out_edges(v)
            if da == -db:
                continue  # a lone loop component stays a loop
            try:
                return move_A3(g, v)
            except MoveRejected:
                continue
    return None


def measure_of(g: FGraph, use_fine: bool) -> tuple[int, ...]:
    return tuple(fine(g)) if use_fine else tuple(sigma(g))


@dataclass
class Driver:
    """Bookkeeping shell for a minimization run: owns the witness set, the
    move trace, the strict-decrease audit and the iteration cap."""

    g: FGraph
    k: int
    use_fine: bool = False
    max_iter: int = field(default_factory=default_max_iter)
    witnesses: list[Witness] = field(default_factory=list)
    trace: list[MoveRecord] = field(default_factory=list)
    complexity_trace: list[tuple[int, ...]] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    iterations: int = 0
    capped: bool = False
    halt_condition: Optional[Callable[["Driver"], bool]] = None
    halted: bool = False

    def __post_init__(self) -> None:
        self.complexity_trace.append(measure_of(self.g, self.use_fine))

    def add_witness(self, w: Witness) -> bool:
        if any(x.key() == w.key() for x in self.witnesses):
            return False
        self.witnesses.append(w)
        return True

    def diagnose(self, msg: str) -> None:
        if msg not in self.diagnostics:
            self.diagnostics.append(msg)

    def record(self, recs) -> None:
        if isinstance(recs, MoveRecord):
            recs = [recs]
        self.trace.extend(recs)
        before = self.complexity_trace[-1]
        after = measure_of(self.g, self.use_fine)
        assert after < before, (
            f"accepted step failed to decrease the measure: {before} -> {after}"
        )
        self.complexity_trace.append(after)
        chi_floor = 1 - self.k
        assert self.g.euler_characteristic() >= chi_floor, (
            "Euler characteristic fell below the rank budget floor"
        )

    def run(self, scan_step: Callable[["Driver"], bool]) -> MinimizeResult:
        """Iterate simplify-then-scan until fixpoint or cap.  ``scan_step``
        must either perform one recorded surgery and return True, or record
        witnesses/diagnostics and return False."""
        while True:
            if self.iterations >= self.max_iter:
                self.capped = True
                self.diagnose("iteration cap reached")
                break
            self.iterations += 1
            rec = simplify_step(self.g)
            if rec is not None:
                self.record(rec)
                if self.halt_condition is not None and self.halt_condition(self):
                    self.halted = True
                    break
                continue
            if scan_step(self):
                if self.halt_condition is not None and self.halt_condition(self):
                    self.halted = True
                    break
                continue
            break
        return MinimizeResult(
            self.g, self.witnesses, self.trace, self.complexity_trace,
            self.iterations, self.capped, self.diagnostics,
        )
