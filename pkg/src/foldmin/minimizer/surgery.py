"""Surgery helpers shared by the family drivers: mapping letter-level hits
back to whole-edge paths, isolating a hit by boundary subdivisions, and
the two composite rewrites (delete a group-trivial cycle edge; attach a
short oracle-equal complement and delete a long edge)."""

from __future__ import annotations

from ..fgraph import FGraph, GraphPath
from ..moves import MoveRecord, MoveRejected, move_A0, move_A1, move_A2
from ..words import Word


def letter_path_segments(
    g: FGraph, back: dict[int, tuple[int, int]], letter_edges: tuple[int, ...]
) -> list[list[int]]:
    """Group a letter-subdivision path into traversal segments, one per
    maximal run inside a single original edge: ``[directed original edge,
    low offset, high offset]`` in canonical label coordinates."""
    segs: list[list[int]] = []
    for d in letter_edges:
        eid, off = back[abs(d)]
        direction = 1 if d > 0 else -1
        if segs:
            pd, plo, phi = segs[-1]
            if abs(pd) == eid and (1 if pd > 0 else -1) == direction:
                if direction > 0 and off == phi + 1:
                    segs[-1][2] = off
                    continue
                if direction < 0 and off == plo - 1:
                    segs[-1][1] = off
                    continue
        segs.append([direction * eid, off, off])
    return segs


def isolate_hit(g: FGraph, segs: list[list[int]]) -> tuple[GraphPath, list[MoveRecord]]:
    """Subdivide partial boundary edges so the hit becomes an exact edge
    path.  Interior segments must already cover whole edges; a partial
    boundary edge that reappears elsewhere in the hit is refused (trimming
    it would invalidate the other occurrence)."""
    recs: list[MoveRecord] = []

    def full(seg: list[int]) -> bool:
        d, lo, hi = seg
        return lo == 0 and hi == len(g.label(abs(d))) - 1

    boundary = [0] if len(segs) == 1 else [0, len(segs) - 1]
    for t in range(1, len(segs) - 1):
        if not full(segs[t]):
            raise MoveRejected("interior segment does not cover its edge")
    used = [abs(s[0]) for s in segs]
    for b in boundary:
        if not full(segs[b]) and used.count(abs(segs[b][0])) > 1:
            raise MoveRejected("partial boundary edge reused inside the hit")

    def trim(seg: list[int]) -> None:
        d, lo, hi = seg
        eid = abs(d)
        if lo > 0:
            rec = move_A2(g, eid, lo)
            recs.append(rec)
            _, e2 = rec.data["edges"]
            eid = e2
            hi -= lo
            lo = 0
        if hi < len(g.label(eid)) - 1:
            rec = move_A2(g, eid, hi + 1)
            recs.append(rec)
            e1, _ = rec.data["edges"]
            eid = e1
        seg[0] = (1 if d > 0 else -1) * eid
        seg[1], seg[2] = lo, hi

    for b in boundary:
        if not full(segs[b]):
            trim(segs[b])
    path = GraphPath(g.src(segs[0][0]), tuple(s[0] for s in segs))
    path.validate(g)
    return path, recs


def once_occurring(path: GraphPath) -> dict[int, int]:
    counts: dict[int, int] = {}
    for d in path.edges:
        counts[abs(d)] = counts.get(abs(d), 0) + 1
    return counts


def delete_trivial_cycle_edge(g: FGraph, path: GraphPath, oracle,
                              weight=None) -> MoveRecord:
    """For a closed path with group-trivial label, delete its heaviest
    once-occurring edge, rerouting through the rest of the cycle."""
    counts = once_occurring(path)
    if weight is None:
        weight = lambda d: len(g.label(d))
    candidates = sorted(
        (d for d in path.edges if counts[abs(d)] == 1),
        key=lambda d: (-weight(d), abs(d)),
    )
    if not candidates:
        raise MoveRejected("trivial cycle has no once-occurring edge")
    f = candidates[0]
    pos = path.edges.index(f)
    rest = path.edges[pos + 1:] + path.edges[:pos]
    witness = GraphPath(g.src(f), tuple(-d for d in reversed(rest)))
    return move_A1(g, f, witness, oracle)


def attach_complement_and_delete(
    g: FGraph, path: GraphPath, v_prime: Word, f: int, oracle
) -> list[MoveRecord]:
    """Attach an edge labeled ``v_prime`` parallel to ``path`` (the oracle
    must confirm equality with the path label), then delete the edge ``f``
    of the path, rerouting through the new edge.  ``f`` must occur exactly
    once in the path."""
    recs = []
    rec0 = move_A0(g, path, v_prime, oracle)
    recs.append(rec0)
    e_new = rec0.affected[0]
    pos = path.edges.index(f)
    alpha, beta = path.edges[:pos], path.edges[pos + 1:]
    witness = GraphPath(
        g.src(f),
        tuple(-d for d in reversed(alpha)) + (e_new,) + tuple(-d for d in reversed(beta)),
    )
    recs.append(move_A1(g, f, witness, oracle))
    return recs
