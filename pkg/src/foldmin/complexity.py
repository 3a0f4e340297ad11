"""Lexicographic complexity measures for subgroup graphs.

The coarse measure is (total label length, vertex count); the fine
measure used on the free-group side prepends total syllable length.
Every surgery the minimizers accept must strictly decrease the active
measure, which is what makes the whole procedure terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .fgraph import FGraph
from .words import syllable_count


class Complexity(NamedTuple):
    l: int
    q: int


class FineComplexity(NamedTuple):
    s: int
    l: int
    q: int


Measure = Union[Complexity, FineComplexity]


def sigma(g: FGraph) -> Complexity:
    """Total label length over one orientation per edge, and vertex count.
    Independent of which orientation is chosen since inverse labels have
    equal length."""
    return Complexity(g.total_label_length(), len(g.vertices()))


def fine(g: FGraph) -> FineComplexity:
    """(total syllables, total letters, vertices); free-inverse mode only."""
    if g.alphabet.involutive:
        raise ValueError("fine complexity is defined for free-inverse graphs")
    s = sum(syllable_count(g.label(eid)) for eid in g.edge_ids())
    l, q = sigma(g)
    return FineComplexity(s, l, q)


def compare(x: Measure, y: Measure) -> int:
    """-1, 0, or 1 under the strict lexicographic order."""
    if len(x) != len(y):
        raise ValueError("cannot compare complexities of different kinds")
    if tuple(x) < tuple(y):
        return -1
    if tuple(x) > tuple(y):
        return 1
    return 0


@dataclass(frozen=True)
class PathBoundReport:
    preconditions_ok: bool
    message: str
    bound: int
    longest_simple_path: int
    spanning_tree_edges: int
    ok: bool


def _longest_simple_path(g: FGraph) -> int:
    best = 0
    for start in g.vertices():
        stack = [(start, frozenset([start]), 0)]
        while stack:
            at, seen, depth = stack.pop()
            best = max(best, depth)
            for d in g.out_edges(at):
                nxt = g.dst(d)
                if nxt not in seen:
                    stack.append((nxt, seen | {nxt}, depth + 1))
    return best


def path_bound_check(g: FGraph, k: int) -> PathBoundReport:
    """For a connected graph with every vertex of degree at least three and
    Euler characteristic 1-k (k >= 2), simple paths and maximal subtrees
    have at most 2k-3 edges.  This is a diagnostic over minimizer outputs;
    a violation indicates an engine bug, so failed preconditions are
    reported rather than raised."""
    bound = 2 * k - 3
    problems = []
    if k < 2:
        problems.append(f"k = {k} < 2")
    if not g.is_connected():
        problems.append("graph not connected")
    if g.euler_characteristic() != 1 - k:
        problems.append(f"Euler characteristic {g.euler_characteristic()} != {1 - k}")
    bad_deg = [v for v in g.vertices() if g.degree(v) < 3]
    if bad_deg:
        problems.append(f"vertices of degree < 3: {bad_deg}")
    if problems:
        return PathBoundReport(False, "; ".join(problems), bound, -1, -1, False)
    longest = _longest_simple_path(g)
    tree_edges = len(g.vertices()) - 1
    ok = longest <= bound and tree_edges <= bound
    return PathBoundReport(True, "ok" if ok else "bound violated", bound, longest, tree_edges, ok)
