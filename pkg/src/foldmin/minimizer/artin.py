"""Minimization driver and certification for subgroup graphs over Artin
presentations, under the fine (syllable-first) complexity measure.

Relators of the two-generator subgroups are unbounded in length, so the
scan is syllable-based: it looks for path segments supported on a single
related generator pair whose syllable length reaches 2m-3, asks the
bounded completion search for a short closing word, then attaches the
completion's inverse and deletes the syllable-heaviest edge, a strict
fine-complexity win when the exponents clear 5k.  Closed segments are
decided outright by the two-generator solver: group-trivial cycles lose
an edge, nontrivial ones witness an intersection with a conjugate of the
two-generator subgroup, which is exactly what the freeness certificate
must exclude.
"""

from __future__ import annotations

from typing import Optional

from ..fgraph import FGraph, GraphPath
from ..moves import MoveRejected
from ..oracles.artin import DihedralOracle, SearchBounds, artin_relator_search
from ..presentations import ArtinPresentation, hypothesis_thresholds
from ..words import Mode, Word, invert, syllable_count
from .base import Driver, MinimizeResult, Status, Verdict, Witness, default_max_iter
from .surgery import (
    attach_complement_and_delete,
    delete_trivial_cycle_edge,
    isolate_hit,
    once_occurring,
)

Seg = list[int]  # [directed edge, low offset, high offset] in canonical coords


def _pure_edges(g: FGraph, i: int, j: int) -> list[int]:
    letters = {i + 1, j + 1}
    return [
        eid for eid in g.edge_ids()
        if all(abs(x) in letters for x in g.label(eid))
    ]


def _ij_suffix_len(lab: Word, i: int, j: int) -> int:
    letters = {i + 1, j + 1}
    n = 0
    for x in reversed(lab):
        if abs(x) not in letters:
            break
        n += 1
    return n


def _ij_prefix_len(lab: Word, i: int, j: int) -> int:
    letters = {i + 1, j + 1}
    n = 0
    for x in lab:
        if abs(x) not in letters:
            break
        n += 1
    return n


def _cycle_key(edges: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    seqs = [edges, tuple(-d for d in reversed(edges))]
    for seq in seqs:
        for t in range(len(seq)):
            rot = seq[t:] + seq[:t]
            if best is None or rot < best:
                best = rot
    return best  # type: ignore[return-value]


def _enumerate_pure_cycles(g: FGraph, pure: list[int], max_edges: int) -> list[GraphPath]:
    """Closed reduced paths within the pure two-letter subgraph, using each
    unoriented edge at most once, deduplicated up to rotation and
    reversal."""
    pure_set = set(pure)
    out: dict[tuple[int, ...], GraphPath] = {}
    verts = sorted({v for e in pure for v in (g.src(e), g.dst(e))})
    for start in verts:
        stack: list[tuple[int, tuple[int, ...], frozenset[int]]] = [(start, (), frozenset())]
        while stack:
            at, sofar, used = stack.pop()
            for d in g.out_edges(at):
                if abs(d) not in pure_set or abs(d) in used:
                    continue
                nxt = g.dst(d)
                path = sofar + (d,)
                if nxt == start:
                    key = _cycle_key(path)
                    if key not in out:
                        out[key] = GraphPath(start, path)
                if len(path) < max_edges:
                    stack.append((nxt, path, used | {abs(d)}))
    return [out[k] for k in sorted(out)]


def _enumerate_core_paths(g: FGraph, pure: list[int], max_edges: int) -> list[GraphPath]:
    pure_set = set(pure)
    out: list[GraphPath] = []
    verts = sorted({v for e in pure for v in (g.src(e), g.dst(e))})
    for start in verts:
        stack: list[tuple[int, tuple[int, ...], frozenset[int]]] = [(start, (), frozenset())]
        while stack:
            at, path, used = stack.pop()
            if path:
                out.append(GraphPath(start, path))
            if len(path) >= max_edges:
                continue
            for d in g.out_edges(at):
                if abs(d) not in pure_set or abs(d) in used:
                    continue
                stack.append((g.dst(d), path + (d,), used | {abs(d)}))
    return out


def _boundary_seg(g: FGraph, d: int, take: int, side: str) -> Seg:
    L = len(g.label(abs(d)))
    if side == "suffix":
        return [d, L - take, L - 1] if d > 0 else [d, 0, take - 1]
    return [d, 0, take - 1] if d > 0 else [d, L - take, L - 1]


def _candidates(g: FGraph, i: int, j: int, k: int, pure: list[int]):
    """Deterministically ordered (v, segments) candidates: maximal
    two-letter runs inside single edges, and pure-edge core paths with
    optional impure-boundary extensions."""
    letters = {i + 1, j + 1}
    cands: list[tuple[tuple, Word, list[Seg]]] = []
    pure_set = set(pure)
    for eid in g.edge_ids():
        if eid in pure_set:
            continue
        lab = g.label(eid)
        t = 0
        while t < len(lab):
            if abs(lab[t]) not in letters:
                t += 1
                continue
            u = t
            while u < len(lab) and abs(lab[u]) in letters:
                u += 1
            cands.append(((0, eid, t), lab[t:u], [[eid, t, u - 1]]))
            t = u
    # segments straddling one vertex with no full edge in between
    for vtx in g.vertices():
        for d_in in sorted(g.out_edges(vtx), key=abs):
            dp = -d_in
            if abs(dp) in pure_set:
                continue
            sfx = _ij_suffix_len(g.label(dp), i, j)
            if not sfx:
                continue
            for dq in sorted(g.out_edges(vtx), key=abs):
                if abs(dq) in pure_set or dq == -dp or abs(dq) == abs(dp):
                    continue
                pfx = _ij_prefix_len(g.label(dq), i, j)
                if not pfx:
                    continue
                v = g.label(dp)[-sfx:] + g.label(dq)[:pfx]
                segs = [_boundary_seg(g, dp, sfx, "suffix"),
                        _boundary_seg(g, dq, pfx, "prefix")]
                cands.append(((2, tuple(tuple(s) for s in segs)), v, segs))
    for core in _enumerate_core_paths(g, pure, 2 * k + 1):
        base_v: Word = ()
        for d in core.edges:
            base_v = base_v + g.label(d)
        core_segs: list[Seg] = [
            [d, 0, len(g.label(abs(d))) - 1] for d in core.edges
        ]
        pres: list[tuple[Optional[int], int]] = [(None, 0)]
        for d in sorted(g.out_edges(core.start), key=abs):
            dp = -d  # an edge arriving at the core's start
            if abs(dp) in pure_set or abs(dp) in {abs(x) for x in core.edges}:
                continue
            if dp == -core.edges[0]:
                continue
            sfx = _ij_suffix_len(g.label(dp), i, j)
            if sfx:
                pres.append((dp, sfx))
        end = core.end(g)
        posts: list[tuple[Optional[int], int]] = [(None, 0)]
        for d in sorted(g.out_edges(end), key=abs):
            if abs(d) in pure_set or abs(d) in {abs(x) for x in core.edges}:
                continue
            if d == -core.edges[-1]:
                continue
            pfx = _ij_prefix_len(g.label(d), i, j)
            if pfx:
                posts.append((d, pfx))
        for dp, sfx in pres:
            for dq, pfx in posts:
                v = base_v
                segs = [list(s) for s in core_segs]
                if dp is not None:
                    v = g.label(dp)[-sfx:] + v
                    segs.insert(0, _boundary_seg(g, dp, sfx, "suffix"))
                if dq is not None:
                    v = v + g.label(dq)[:pfx]
                    segs.append(_boundary_seg(g, dq, pfx, "prefix"))
                key = (1, tuple(tuple(s) for s in segs))
                cands.append((key, v, segs))
    cands.sort(key=lambda c: c[0])
    return [(v, segs) for _, v, segs in cands]


def _trim_tail(segs: list[Seg], v: Word, t: int) -> tuple[list[Seg], Word]:
    segs = [list(s) for s in segs]
    v = v[:len(v) - t]
    while t > 0 and segs:
        d, lo, hi = segs[-1]
        take = min(hi - lo + 1, t)
        if d > 0:
            hi -= take
        else:
            lo += take
        t -= take
        if hi < lo:
            segs.pop()
        else:
            segs[-1] = [d, lo, hi]
    return segs, v


def _segment_surgery(drv: Driver, P: ArtinPresentation, i: int, j: int,
                     m: int, v: Word, segs: list[Seg], oracle: DihedralOracle) -> bool:
    g = drv.g
    for trim in range(4):
        if trim:
            segs, v = _trim_tail(segs, v, 1)
        if not v or syllable_count(v) < 2 * m - 3:
            return False
        u = artin_relator_search(v, i, j, P, SearchBounds())
        if u is None:
            return False
        if u == ():
            continue  # the segment itself closes a relator; shorten and retry
        snapshot = g.copy()
        try:
            path, recs = isolate_hit(g, segs)
            counts = once_occurring(path)
            margin = len(recs) + syllable_count(u) + 1
            candidates = sorted(
                (d for d in path.edges
                 if counts[abs(d)] == 1 and syllable_count(g.label(d)) >= margin),
                key=lambda d: (-syllable_count(g.label(d)), abs(d)),
            )
            if not candidates:
                raise MoveRejected("no syllable-heavy once-occurring edge in the hit")
            y_h = candidates[0]
            v_prime = invert(u, Mode.FREE_INVERSE)
            recs.extend(attach_complement_and_delete(g, path, v_prime, y_h, oracle))
        except MoveRejected as exc:
            g.assign_from(snapshot)
            drv.diagnose(f"segment surgery rolled back ({i},{j}): {exc}")
            return False
        drv.record(recs)
        return True
    return False


def _artin_scan(drv: Driver, P: ArtinPresentation, k: int) -> bool:
    g = drv.g
    for i, j, m in P.exponents.pairs():
        oracle = DihedralOracle(P, i, j)
        pure = _pure_edges(g, i, j)
        if pure:
            for cyc in _enumerate_pure_cycles(g, pure, 2 * k + 2):
                u = cyc.label(g)
                if oracle.is_trivial(u):
                    try:
                        rec = delete_trivial_cycle_edge(
                            g, cyc, oracle,
                            weight=lambda d: syllable_count(g.label(d)),
                        )
                    except MoveRejected as exc:
                        drv.diagnose(f"trivial pure cycle kept ({i},{j}): {exc}")
                        continue
                    drv.record(rec)
                    return True
                drv.add_witness(
                    Witness("ArtinParabolicIntersection", u, (("i", i), ("j", j)))
                )
        for v, segs in _candidates(g, i, j, k, pure):
            if syllable_count(v) < 2 * m - 3:
                continue
            if _segment_surgery(drv, P, i, j, m, v, segs, oracle):
                return True
    return False


def minimize_artin(
    g0: FGraph, P: ArtinPresentation, k: int, max_iter: Optional[int] = None
) -> MinimizeResult:
    if g0.euler_characteristic() < 1 - k:
        raise ValueError("graph exceeds the rank budget")
    drv = Driver(g0.copy(), k, use_fine=True,
                 max_iter=max_iter if max_iter is not None else default_max_iter())
    return drv.run(lambda d: _artin_scan(d, P, k))


def audit_artin_completions(g: FGraph, P: ArtinPresentation, k: int) -> list[dict]:
    """Fixpoint audit: no two-letter segment of the final graph may admit a
    bounded short completion, and no pure cycle may remain undecided."""
    violations: list[dict] = []
    for i, j, m in P.exponents.pairs():
        oracle = DihedralOracle(P, i, j)
        pure = _pure_edges(g, i, j)
        if pure:
            for cyc in _enumerate_pure_cycles(g, pure, 2 * k + 2):
                u = cyc.label(g)
                violations.append(
                    {"kind": "pure-cycle", "pair": [i, j],
                     "trivial": oracle.is_trivial(u)}
                )
        for v, _segs in _candidates(g, i, j, k, pure):
            if syllable_count(v) < 2 * m - 3:
                continue
            u = artin_relator_search(v, i, j, P, SearchBounds())
            if u is not None:
                violations.append(
                    {"kind": "segment", "pair": [i, j],
                     "syllables": syllable_count(v)}
                )
    return violations


def certify_artin(result: MinimizeResult, P: ArtinPresentation, k: int) -> Verdict:
    report = hypothesis_thresholds(P, k)
    notes: list[str] = list(result.diagnostics)

    def verdict(status: Status) -> Verdict:
        return Verdict(status, report, result.witnesses, result.graph,
                       result.trace, result.complexity_trace, result.iterations, notes)

    if not report.check("artin-free").satisfied:
        notes.append(f"exponent threshold for rank {k} not met")
        return verdict(Status.HYPOTHESIS_NOT_MET)
    if result.capped:
        return verdict(Status.INCONCLUSIVE)
    if any(w.kind == "ArtinParabolicIntersection" for w in result.witnesses):
        return verdict(Status.WITNESSED)
    leftovers = audit_artin_completions(result.graph, P, k)
    if leftovers:
        notes.append(f"completion audit failed: {leftovers[:3]}")
        return verdict(Status.INCONCLUSIVE)
    notes.append("free: fine-complexity fixpoint with a clean completion audit")
    return verdict(Status.FREE_CERTIFIED)


def artin_verdict(
    g0: FGraph, P: ArtinPresentation, k: int, max_iter: Optional[int] = None
) -> Verdict:
    result = minimize_artin(g0, P, k, max_iter=max_iter)
    return certify_artin(result, P, k)
