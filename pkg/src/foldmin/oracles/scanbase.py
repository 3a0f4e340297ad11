"""Decomposition of deterministic trace relations on letter graphs.

Tracing a periodic pattern through a folded letter graph is a partial
map on states (vertex, position-in-pattern), and in a folded graph each
state also has at most one predecessor, so the state graph splits into
disjoint maximal simple arcs and disjoint cycles.  Relator occurrences
along reduced paths live entirely inside these components, which is what
makes the scans exhaustive.
"""

from __future__ import annotations

from typing import Hashable, TypeVar

S = TypeVar("S", bound=Hashable)


def decompose_partial_injection(
    succ: dict[S, tuple[int, S]]
) -> tuple[list[tuple[int, ...]], list[tuple[S, tuple[int, ...]]]]:
    """Split a partial injection (state -> (edge, state)) into cycles and
    maximal arcs.  Returns (cycles, arcs); a cycle is its edge sequence, an
    arc is (start state, edge sequence).  Deterministic given sorted state
    order."""
    preds: dict[S, int] = {}
    for s, (_, t) in succ.items():
        preds[t] = preds.get(t, 0) + 1
    done: set[S] = set()
    arcs: list[tuple[S, tuple[int, ...]]] = []
    for s in sorted(succ):
        if preds.get(s, 0) == 0:
            edges = []
            cur = s
            while cur in succ:
                done.add(cur)
                d, nxt = succ[cur]
                edges.append(d)
                cur = nxt
            done.add(cur)
            arcs.append((s, tuple(edges)))
    cycles: list[tuple[int, ...]] = []
    for s in sorted(succ):
        if s in done:
            continue
        edges = []
        cur = s
        while cur not in done:
            done.add(cur)
            d, nxt = succ[cur]
            edges.append(d)
            cur = nxt
        cycles.append(tuple(edges))
    return cycles, arcs
