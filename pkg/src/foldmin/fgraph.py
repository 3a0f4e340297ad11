"""Word-labeled subgroup graphs.

An ``FGraph`` is a finite directed graph whose edges carry nonempty
reduced word labels and come in inverse pairs: edge ids are positive
integers, ``+e`` and ``-e`` denote the two directions, and the label of
``-e`` is the formal inverse of the label of ``+e``.  A base vertex
(and, in pair mode, a second marked target vertex) makes the loop
labels at the base generate a subgroup of whatever quotient group the
labels are read in.

Ids are never reused and iteration is always in id order, so every
operation downstream is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .words import (
    Alphabet,
    Word,
    invert,
    is_reduced,
    reduce_letters,
)


class LoopLanguageCapExceeded(Exception):
    """Raised when bounded loop enumeration would exceed its search cap;
    signals that the caller asked for an oracle-scale computation on too
    large a graph."""


def _dir_key(d: int) -> tuple[int, int]:
    return (abs(d), 0 if d > 0 else 1)


class FGraph:
    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._verts: set[int] = set()
        self._edges: dict[int, tuple[int, int, Word]] = {}
        self._out: dict[int, set[int]] = {}
        self._next_vid = 0
        self._next_eid = 1
        self.base: int = self.add_vertex()
        self.target: Optional[int] = None

    # -- construction / mutation ------------------------------------------

    def add_vertex(self) -> int:
        vid = self._next_vid
        self._next_vid += 1
        self._verts.add(vid)
        self._out[vid] = set()
        return vid

    def add_edge(self, src: int, dst: int, label: Word) -> int:
        if src not in self._verts or dst not in self._verts:
            raise ValueError("edge endpoint not in graph")
        self.alphabet.check_word(label)
        if not label:
            raise ValueError("edge labels must be nonempty")
        if not is_reduced(label, self.alphabet):
            raise ValueError("edge labels must be reduced")
        eid = self._next_eid
        self._next_eid += 1
        self._edges[eid] = (src, dst, label)
        self._out[src].add(eid)
        self._out[dst].add(-eid)
        return eid

    def remove_edge(self, eid: int) -> None:
        eid = abs(eid)
        src, dst, _ = self._edges.pop(eid)
        self._out[src].discard(eid)
        self._out[dst].discard(-eid)

    def remove_vertex(self, v: int) -> None:
        if self._out[v]:
            raise ValueError("can only remove isolated vertices")
        if v == self.base or v == self.target:
            raise ValueError("cannot remove a marked vertex")
        self._verts.remove(v)
        del self._out[v]

    def merge_vertices(self, keep: int, lose: int) -> None:
        """Identify ``lose`` into ``keep``, re-pointing all incident edges."""
        if keep == lose:
            return
        for d in list(self._out[lose]):
            eid = abs(d)
            src, dst, lab = self._edges[eid]
            if src == lose:
                src = keep
            if dst == lose:
                dst = keep
            self._edges[eid] = (src, dst, lab)
            self._out[lose].discard(d)
            self._out[keep].add(d)
        self._verts.remove(lose)
        del self._out[lose]
        if self.base == lose:
            self.base = keep
        if self.target == lose:
            self.target = keep

    def copy(self) -> "FGraph":
        g = FGraph.__new__(FGraph)
        g.alphabet = self.alphabet
        g._verts = set(self._verts)
        g._edges = dict(self._edges)
        g._out = {v: set(s) for v, s in self._out.items()}
        g._next_vid = self._next_vid
        g._next_eid = self._next_eid
        g.base = self.base
        g.target = self.target
        return g

    def assign_from(self, other: "FGraph") -> None:
        self.alphabet = other.alphabet
        self._verts = set(other._verts)
        self._edges = dict(other._edges)
        self._out = {v: set(s) for v, s in other._out.items()}
        self._next_vid = other._next_vid
        self._next_eid = other._next_eid
        self.base = other.base
        self.target = other.target

    # -- inspection ---------------------------------------------------------

    def vertices(self) -> list[int]:
        return sorted(self._verts)

    def edge_ids(self) -> list[int]:
        return sorted(self._edges)

    def has_edge(self, d: int) -> bool:
        return abs(d) in self._edges

    def src(self, d: int) -> int:
        s, t, _ = self._edges[abs(d)]
        return s if d > 0 else t

    def dst(self, d: int) -> int:
        s, t, _ = self._edges[abs(d)]
        return t if d > 0 else s

    def label(self, d: int) -> Word:
        _, _, lab = self._edges[abs(d)]
        return lab if d > 0 else invert(lab, self.alphabet.mode)

    def relabel(self, eid: int, label: Word) -> None:
        if not label or not is_reduced(label, self.alphabet):
            raise ValueError("edge labels must be nonempty and reduced")
        src, dst, _ = self._edges[abs(eid)]
        self._edges[abs(eid)] = (src, dst, label)

    def out_edges(self, v: int) -> list[int]:
        return sorted(self._out[v], key=_dir_key)

    def degree(self, v: int) -> int:
        return len(self._out[v])

    def marked(self, v: int) -> bool:
        return v == self.base or v == self.target

    def euler_characteristic(self) -> int:
        return len(self._verts) - len(self._edges)

    def total_label_length(self) -> int:
        return sum(len(lab) for _, _, lab in self._edges.values())

    def component_of(self, v: int) -> set[int]:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for d in self._out[u]:
                w = self.dst(d)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def is_connected(self) -> bool:
        return len(self.component_of(self.base)) == len(self._verts)

    def validate(self) -> None:
        """Internal-consistency audit; raises on any broken invariant."""
        for eid, (src, dst, lab) in self._edges.items():
            assert src in self._verts and dst in self._verts
            assert lab and is_reduced(lab, self.alphabet)
            assert eid in self._out[src] and -eid in self._out[dst]
        for v, outs in self._out.items():
            for d in outs:
                assert self.src(d) == v
        assert self.base in self._verts
        assert self.target is None or self.target in self._verts
        if self.target is not None and self.target == self.base:
            raise AssertionError("pair mode requires target distinct from base")

    # -- foldedness ---------------------------------------------------------

    def violating_pair(self) -> Optional[tuple[int, int]]:
        """A pair of distinct directed edges at a common origin whose labels
        share a nonempty initial segment, or None if the graph is folded.
        A single length-one loop traversed both ways is exempt."""
        for v in self.vertices():
            groups: dict[int, list[int]] = {}
            for d in self.out_edges(v):
                groups.setdefault(self.label(d)[0], []).append(d)
            for first in sorted(groups):
                ds = groups[first]
                if len(ds) < 2:
                    continue
                for i in range(len(ds)):
                    for j in range(i + 1, len(ds)):
                        d1, d2 = ds[i], ds[j]
                        if (
                            d1 == -d2
                            and len(self.label(d1)) == 1
                            and len(self.label(d2)) == 1
                        ):
                            continue
                        return (d1, d2)
        return None

    def is_folded(self) -> bool:
        return self.violating_pair() is None

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        d: dict = {
            "vertices": self.vertices(),
            "base": self.base,
            "edges": [
                {
                    "id": eid,
                    "from": self._edges[eid][0],
                    "to": self._edges[eid][1],
                    "label": self.alphabet.word_to_text(self._edges[eid][2]),
                }
                for eid in self.edge_ids()
            ],
        }
        if self.target is not None:
            d["target"] = self.target
        return d

    @staticmethod
    def from_json_dict(d: dict, alphabet: Alphabet) -> "FGraph":
        g = FGraph.__new__(FGraph)
        g.alphabet = alphabet
        g._verts = set(d["vertices"])
        g._edges = {}
        g._out = {v: set() for v in g._verts}
        for e in d["edges"]:
            lab = alphabet.word_from_text(e["label"])
            g._edges[e["id"]] = (e["from"], e["to"], lab)
            g._out[e["from"]].add(e["id"])
            g._out[e["to"]].add(-e["id"])
        g._next_vid = max(g._verts, default=-1) + 1
        g._next_eid = max(g._edges, default=0) + 1
        g.base = d["base"]
        g.target = d.get("target")
        g.validate()
        return g

    def export_dot(self) -> str:
        lines = ["digraph fgraph {"]
        for v in self.vertices():
            if v == self.base:
                shape = "doublecircle"
            elif v == self.target:
                shape = "diamond"
            else:
                shape = "circle"
            lines.append(f'  v{v} [shape={shape}];')
        for eid in self.edge_ids():
            src, dst, lab = self._edges[eid]
            text = self.alphabet.word_to_text(lab)
            lines.append(f'  v{src} -> v{dst} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GraphPath:
    """An edge path: a start vertex and a sequence of directed edge ids with
    matching consecutive endpoints."""

    start: int
    edges: tuple[int, ...]

    def validate(self, g: FGraph) -> None:
        at = self.start
        for d in self.edges:
            if not g.has_edge(d):
                raise ValueError(f"path uses missing edge {d}")
            if g.src(d) != at:
                raise ValueError("path edges do not chain")
            at = g.dst(d)

    def end(self, g: FGraph) -> int:
        at = self.start
        for d in self.edges:
            at = g.dst(d)
        return at

    def label(self, g: FGraph) -> Word:
        out: list[int] = []
        for d in self.edges:
            out.extend(g.label(d))
        return tuple(out)

    def is_reduced(self, g: FGraph) -> bool:
        for a, b in zip(self.edges, self.edges[1:]):
            if b == -a:
                return False
            if g.alphabet.involutive and b == a and len(g.label(a)) == 1:
                return False
        return True

    def reverse(self, g: FGraph) -> "GraphPath":
        return GraphPath(self.end(g), tuple(-d for d in reversed(self.edges)))

    def uses_edge(self, eid: int) -> bool:
        eid = abs(eid)
        return any(abs(d) == eid for d in self.edges)


def path_label(p: GraphPath, g: FGraph) -> Word:
    """Concatenation of edge labels along the path, unreduced.  In a folded
    graph the label of any reduced path is a reduced word."""
    p.validate(g)
    return p.label(g)


def bouquet(generator_words: Iterable[Word], a: Alphabet) -> tuple[FGraph, list[int]]:
    """One base vertex with one loop per nontrivial generator word.  Words
    that reduce to nothing are dropped; their indices are returned so the
    caller can flag them."""
    g = FGraph(a)
    dropped: list[int] = []
    for idx, w in enumerate(generator_words):
        r = reduce_letters(a.check_word(w), a.involutive)
        if not r:
            dropped.append(idx)
            continue
        g.add_edge(g.base, g.base, r)
    return g, dropped


def euler_characteristic(g: FGraph) -> int:
    return g.euler_characteristic()


def letter_subdivision(g: FGraph) -> tuple[FGraph, dict[int, tuple[int, int]]]:
    """Replace every edge with label length L > 1 by a chain of L length-one
    edges.  Original vertices keep their ids.  The back-map sends each new
    edge id to ``(original directed edge, offset)`` so surgery positions can
    be recovered."""
    sub = FGraph.__new__(FGraph)
    sub.alphabet = g.alphabet
    sub._verts = set()
    sub._edges = {}
    sub._out = {}
    sub._next_vid = g._next_vid
    sub._next_eid = 1
    for v in g.vertices():
        sub._verts.add(v)
        sub._out[v] = set()
    sub.base = g.base
    sub.target = g.target
    back: dict[int, tuple[int, int]] = {}
    for eid in g.edge_ids():
        src, dst, lab = g._edges[eid]
        at = src
        for off, letter in enumerate(lab):
            if off == len(lab) - 1:
                nxt = dst
            else:
                nxt = sub._next_vid
                sub._next_vid += 1
                sub._verts.add(nxt)
                sub._out[nxt] = set()
            new_eid = sub._next_eid
            sub._next_eid += 1
            sub._edges[new_eid] = (at, nxt, (letter,))
            sub._out[at].add(new_eid)
            sub._out[nxt].add(-new_eid)
            back[new_eid] = (eid, off)
            at = nxt
    return sub, back


class LetterIndex:
    """Deterministic per-letter adjacency of a folded graph whose labels all
    have length one.  ``step(v, letter)`` is the unique directed edge out of
    ``v`` reading that letter (the positive direction of a length-one loop
    is preferred; its two directions read the same letter)."""

    def __init__(self, g: FGraph):
        self.g = g
        self._step: dict[tuple[int, int], int] = {}
        for v in g.vertices():
            for d in g.out_edges(v):
                lab = g.label(d)
                if len(lab) != 1:
                    raise ValueError("letter index needs a letter graph")
                key = (v, lab[0])
                if key in self._step:
                    other = self._step[key]
                    if other == -d and g.src(d) == g.dst(d):
                        continue  # involutive loop read both ways
                    raise ValueError(f"graph not folded at vertex {v}")
                self._step[key] = d

    def step(self, v: int, letter: int) -> Optional[int]:
        return self._step.get((v, letter))


def trace(g: FGraph, v: int, w: Word, index: Optional[LetterIndex] = None) -> tuple[GraphPath, int]:
    """Read as long a prefix of ``w`` as possible from ``v`` in a folded
    letter graph; deterministic by foldedness."""
    idx = index if index is not None else LetterIndex(g)
    at = v
    edges: list[int] = []
    consumed = 0
    for letter in w:
        d = idx.step(at, letter)
        if d is None:
            break
        edges.append(d)
        at = g.dst(d)
        consumed += 1
    return GraphPath(v, tuple(edges)), consumed


def degree(g: FGraph, v: int) -> int:
    return g.degree(v)


def prune_spikes(g: FGraph) -> list[tuple[int, int]]:
    """Iteratively delete degree-one vertices and their edges, never touching
    the base or target.  Returns the removed (vertex, edge) pairs."""
    removed: list[tuple[int, int]] = []
    while True:
        victim = None
        for v in g.vertices():
            if g.degree(v) == 1 and not g.marked(v):
                victim = v
                break
        if victim is None:
            return removed
        d = g.out_edges(victim)[0]
        g.remove_edge(d)
        g.remove_vertex(victim)
        removed.append((victim, abs(d)))


def parity_double_cover(g: FGraph, exponents) -> tuple[FGraph, bool]:
    """Fiber product with the two-state parity automaton that sends every
    generator to the flip.

    Only defined when every finite pairwise exponent is even (otherwise the
    flip map does not factor through the group).  Returns the component of
    the lifted base and a flag: True when the cover splits into two copies,
    i.e. every loop at the base already has even length and the subgroup
    lies in the even-length kernel.
    """
    for i, j, m in exponents.pairs():
        if m % 2:
            raise ValueError(f"parity cover needs even exponents; m[{i},{j}] = {m}")
    if g.target is not None:
        raise ValueError("parity cover is a subgroup-mode construction")
    cover = FGraph(g.alphabet)
    vmap: dict[tuple[int, int], int] = {}
    for v in g.vertices():
        for p in (0, 1):
            if (v, p) == (g.base, 0):
                vmap[(v, p)] = cover.base
            else:
                vmap[(v, p)] = cover.add_vertex()
    for eid in g.edge_ids():
        src, dst, lab = g._edges[eid]
        flip = len(lab) % 2
        for p in (0, 1):
            cover.add_edge(vmap[(src, p)], vmap[(dst, p ^ flip)], lab)
    comp = cover.component_of(cover.base)
    split = vmap[(g.base, 1)] not in comp
    for eid in cover.edge_ids():
        if cover._edges[eid][0] not in comp:
            cover.remove_edge(eid)
    for v in cover.vertices():
        if v not in comp:
            cover.remove_vertex(v)
    return cover, split


def loop_language(g: FGraph, L: int, cap: int = 500_000) -> set[Word]:
    """Freely reduced labels of all reduced base loops with at most ``L``
    edges in the letter subdivision.  A strictly bounded enumeration meant
    for audits; raises :class:`LoopLanguageCapExceeded` past the cap."""
    if not g.is_connected():
        raise ValueError("loop language needs a connected graph")
    sub, _ = letter_subdivision(g)
    inv_mode = g.alphabet.involutive
    out: set[Word] = {()}
    visited = 0
    # iterative DFS over (vertex, last directed edge, depth, label list)
    stack: list[tuple[int, int, int, tuple[int, ...]]] = [(sub.base, 0, 0, ())]
    while stack:
        at, last, depth, lab = stack.pop()
        visited += 1
        if visited > cap:
            raise LoopLanguageCapExceeded(f"loop enumeration cap {cap} exceeded")
        if depth >= L:
            continue
        for d in reversed(sub.out_edges(at)):
            if last != 0:
                if d == -last:
                    continue
                if inv_mode and d == last:
                    continue
            letter = sub.label(d)[0]
            nlab = lab + (letter,)
            nxt = sub.dst(d)
            if nxt == sub.base:
                out.add(reduce_letters(nlab, inv_mode))
            stack.append((nxt, d, depth + 1, nlab))
    return out
