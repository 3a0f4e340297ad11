"""Word problem and relator scanning for extra-large Coxeter presentations.

Everything rests on the shape of the symmetrized relators: they are the
alternating words ``(a_i a_j)^m`` and their rotations, so any subword of a
relator is a maximal alternating run over one generator pair.  Dehn
reduction replaces a run longer than half a relator by the shorter
complement; a word is trivial exactly when this reaches the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .. import backend
from ..fgraph import FGraph, LetterIndex, letter_subdivision
from ..presentations import CoxeterPresentation
from ..words import Word, cyclic_reduce, is_reduced, reduce_letters
from .hit import RelatorHit, TorsionClass
from .scanbase import decompose_partial_injection


class CoxeterOracle:
    """Dehn-algorithm triviality oracle for one presentation; precomputes
    the exponent matrix once in kernel form."""

    def __init__(self, P: CoxeterPresentation):
        if not P.extra_large:
            raise ValueError("Dehn reduction needs an extra-large presentation")
        self.P = P
        self._mmat = P.exponents.as_array()

    def reduce(self, w: Word) -> Word:
        self.P.alphabet.check_word(w)
        return backend.dehn_fixpoint(w, self._mmat)

    def is_trivial(self, w: Word) -> bool:
        return not self.reduce(w)


def coxeter_dehn_reduce(w: Word, P: CoxeterPresentation) -> Word:
    return CoxeterOracle(P).reduce(w)


def coxeter_is_trivial(w: Word, P: CoxeterPresentation) -> bool:
    return not coxeter_dehn_reduce(w, P)


def _alternating_runs(w: Word):
    """Maximal alternating runs (two letters minimum); consecutive runs
    overlap in exactly one letter."""
    i = 0
    while i < len(w) - 1:
        j = i + 1
        while j + 1 < len(w) and w[j + 1] == w[j - 1]:
            j += 1
        yield i, j
        i = j


def _alternating(first: int, second: int, length: int) -> Word:
    return tuple(first if t % 2 == 0 else second for t in range(length))


def weakly_dehn_reduced(w: Word, P: CoxeterPresentation) -> Optional[RelatorHit]:
    """Leftmost-longest subword that is a relator subword missing at most
    three letters, or None when the word contains no such subword."""
    if not is_reduced(w, P.alphabet):
        raise ValueError("scan expects a reduced word")
    for i, j in _alternating_runs(w):
        g0, g1 = w[i], w[i + 1]
        m = P.exponents.get(g0 - 1, g1 - 1)
        if m is None:
            continue
        run = j - i + 1
        if run < 2 * m - 3:
            continue
        if run >= 2 * m:
            matched = w[i:i + 2 * m]
            complement: Word = ()
        else:
            matched = w[i:j + 1]
            complement = _alternating(w[j - 1], w[j], 2 * m - run)
        # runs are scanned left to right, so the first hit is leftmost (and,
        # runs being maximal, the longest at its position)
        return RelatorHit(f"pair({g0 - 1},{g1 - 1})", matched, complement, position=i)
    return None


def _cyclic_dehn_fixpoint(w: Word, oracle: CoxeterOracle) -> Word:
    """Dehn-reduce every cyclic conjugate until none reduces further."""
    a = oracle.P.alphabet
    w = oracle.reduce(w)
    w, _ = cyclic_reduce(w, a)
    changed = True
    while changed and w:
        changed = False
        for t in range(len(w)):
            rot = w[t:] + w[:t]
            red = oracle.reduce(rot)
            if len(red) < len(rot):
                w, _ = cyclic_reduce(red, a)
                changed = True
                break
    return w


def coxeter_torsion_classify(w: Word, P: CoxeterPresentation) -> TorsionClass:
    """Classify the cyclic Dehn fixpoint: empty, a single generator, an
    alternating power (a_i a_j)^d with 0 < d < m_ij, or none of these."""
    oracle = CoxeterOracle(P)
    core = _cyclic_dehn_fixpoint(reduce_letters(w, True), oracle)
    if not core:
        return TorsionClass("Trivial")
    if len(core) == 1:
        return TorsionClass("ConjGenerator", i=core[0] - 1)
    if len(core) % 2 == 0:
        g0, g1 = core[0], core[1]
        if core == _alternating(g0, g1, len(core)):
            m = P.exponents.get(g0 - 1, g1 - 1)
            d = len(core) // 2
            if m is not None and 0 < d < m:
                i, j = sorted((g0 - 1, g1 - 1))
                return TorsionClass("ConjRotationPower", i=i, j=j, d=d)
    return TorsionClass("NotShortTorsionForm")


# -- alternating trace structure on letter graphs ---------------------------

@dataclass(frozen=True)
class AltComponents:
    """Decomposition of the alternating {a_i, a_j} trace relation on a folded
    letter graph.  States are (vertex, next letter); stepping is a partial
    injection, so components are disjoint simple arcs and cycles."""

    cycles: tuple[tuple[int, ...], ...]  # edge sequences around each cycle
    arcs: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]  # (start state, edges)


def alternating_components(sub: FGraph, idx: LetterIndex, i: int, j: int) -> AltComponents:
    a, b = i + 1, j + 1
    succ: dict[tuple[int, int], tuple[int, tuple[int, int]]] = {}
    for v in sub.vertices():
        for x, y in ((a, b), (b, a)):
            d = idx.step(v, x)
            if d is not None:
                succ[(v, x)] = (d, (sub.dst(d), y))
    cycles, arcs = decompose_partial_injection(succ)
    return AltComponents(tuple(cycles), tuple(arcs))


def relator_path_property(g: FGraph, P: CoxeterPresentation) -> tuple[bool, list[dict]]:
    """Check that every path reading a relator subword missing at most three
    letters lies on a full relator cycle.

    On the letter subdivision, paths reading alternating {a_i, a_j} words
    decompose into disjoint maximal arcs and cycles.  A cycle of alternating
    length 2z admits a closed full-relator window exactly when z divides
    m_ij; an arc admits none, so any arc of at least 2m_ij - 3 letters is a
    violation.
    """
    if not g.is_folded():
        raise ValueError("relator path property is defined for folded graphs")
    sub, _ = letter_subdivision(g)
    idx = LetterIndex(sub)
    violations: list[dict] = []
    for i, j, m in P.exponents.pairs():
        comp = alternating_components(sub, idx, i, j)
        for cyc in comp.cycles:
            if len(cyc) % 2:
                raise AssertionError("alternating cycle of odd length in a folded graph")
            z = len(cyc) // 2
            if m % z:
                violations.append(
                    {"pair": [i, j], "kind": "circuit", "z": z, "m": m}
                )
        for (start, edges) in comp.arcs:
            if len(edges) >= 2 * m - 3:
                violations.append(
                    {
                        "pair": [i, j],
                        "kind": "arc",
                        "letters": len(edges),
                        "start_vertex": start[0],
                    }
                )
    return (not violations), violations
