"""Word problem machinery for one-relator presentations with torsion.

Triviality detection rests on the spelling property of such presentations:
a freely reduced trivial word contains, for some rotation s of the relator
root or its inverse, the subword ``s^(m-1) x`` where ``x`` is an initial
segment of s containing every generator of the root.  Replacing that
subword by the inverse of the remaining segment strictly shortens the word,
so iterating decides triviality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import backend
from ..presentations import OneRelatorPresentation
from ..words import (
    Alphabet,
    Mode,
    Word,
    cyclic_reduce,
    invert,
    is_cyclically_reduced,
    is_proper_power,
    is_reduced,
    reduce_letters,
)
from .hit import RelatorHit, TorsionClass


def _support_prefix_len(rot: Word, support: frozenset[int]) -> int:
    need = set(support)
    for t, x in enumerate(rot):
        need.discard(abs(x))
        if not need:
            return t + 1
    raise AssertionError("rotation does not cover the root's support")


def relator_rotations(P: OneRelatorPresentation) -> list[Word]:
    """All distinct rotations of the relator root and of its inverse, in
    rotation order (root first)."""
    r = P.relator
    out: list[Word] = []
    for base in (r, invert(r, Mode.FREE_INVERSE)):
        for t in range(len(base)):
            rot = base[t:] + base[:t]
            if rot not in out:
                out.append(rot)
    return out


class OneRelatorOracle:
    """Spelling-reduction oracle for one presentation; rotation tables are
    precomputed in kernel form."""

    def __init__(self, P: OneRelatorPresentation):
        self.P = P
        self.rotations = relator_rotations(P)
        support = frozenset(abs(x) for x in P.relator)
        self.xlens = [_support_prefix_len(rot, support) for rot in self.rotations]
        self._rots_arr = np.array(self.rotations, dtype=np.int64)
        self._xlens_arr = np.array(self.xlens, dtype=np.int64)

    def reduce(self, w: Word) -> Word:
        self.P.alphabet.check_word(w)
        return backend.newman_fixpoint(w, self._rots_arr, self._xlens_arr, self.P.exponent)

    def is_trivial(self, w: Word) -> bool:
        return not self.reduce(w)


def newman_scan(w: Word, P: OneRelatorPresentation) -> Optional[RelatorHit]:
    """Leftmost spelling hit in a freely reduced word: a subword
    ``s^(m-1) x`` as above.  The complement is the rest of the relator
    power, so matched + complement spells the full ``s^m``."""
    if not is_reduced(w, P.alphabet):
        raise ValueError("scan expects a freely reduced word")
    oracle = OneRelatorOracle(P)
    m = P.exponent
    rl = len(P.relator)
    for p in range(len(w)):
        for ri, rot in enumerate(oracle.rotations):
            plen = (m - 1) * rl + oracle.xlens[ri]
            if p + plen > len(w):
                continue
            if all(w[p + t] == rot[t % rl] for t in range(plen)):
                xl = oracle.xlens[ri]
                matched = w[p:p + plen]
                complement = rot[xl:]  # the unread tail of s^m
                return RelatorHit(f"rot({ri})", matched, complement, position=p)
    return None


def one_relator_is_trivial(w: Word, P: OneRelatorPresentation) -> bool:
    return OneRelatorOracle(P).is_trivial(w)


def _cyclic_newman_fixpoint(w: Word, oracle: OneRelatorOracle) -> Word:
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


def one_relator_torsion_classify(w: Word, P: OneRelatorPresentation) -> TorsionClass:
    """Classify the cyclic spelling fixpoint: empty, a rotation of ``r^d``
    with 0 < |d| < m (reported with the sign), or neither."""
    oracle = OneRelatorOracle(P)
    core = _cyclic_newman_fixpoint(reduce_letters(w, False), oracle)
    if not core:
        return TorsionClass("Trivial")
    r = P.relator
    rl = len(r)
    if len(core) % rl == 0:
        d = len(core) // rl
        head = core[:rl]
        if core == head * d:
            for t in range(rl):
                if head == r[t:] + r[:t]:
                    if 0 < d < P.exponent:
                        return TorsionClass("ConjPower", d=d)
            rinv = invert(r, Mode.FREE_INVERSE)
            for t in range(rl):
                if head == rinv[t:] + rinv[:t]:
                    if 0 < d < P.exponent:
                        return TorsionClass("ConjPower", d=-d)
    return TorsionClass("NotShortTorsionForm")


@dataclass(frozen=True)
class PeriodicityReport:
    occurrences: tuple[int, ...]
    case: str  # "no-occurrence" | "single-occurrence" | "repeated-power"
    z: Optional[int] = None
    rotation_offset: Optional[int] = None
    verified: bool = False

    def to_json_dict(self) -> dict:
        return {
            "occurrences": list(self.occurrences),
            "case": self.case,
            "z": self.z,
            "rotation_offset": self.rotation_offset,
            "verified": self.verified,
        }


def periodicity_check(u: Word, r: Word, d: int, a: Alphabet) -> PeriodicityReport:
    """Occurrence structure of ``u`` inside ``r^d`` for a primitive
    cyclically reduced root.

    With ``|u| >= |r|``, two distinct occurrences force ``u`` to be a power
    of a rotation of ``r`` (reported and verified); the inverse of ``r``
    never occurs at all.
    """
    if d < 1:
        raise ValueError("power must be positive")
    if len(u) < len(r):
        raise ValueError("periodicity check needs |u| >= |r|")
    if not is_cyclically_reduced(r, a):
        raise ValueError("root must be cyclically reduced")
    if len(r) > 1 and is_proper_power(r) is not None:
        raise ValueError("root must not be a proper power")
    big = r * d
    occ = tuple(
        o for o in range(len(big) - len(u) + 1) if big[o:o + len(u)] == u
    )
    if not occ:
        return PeriodicityReport(occ, "no-occurrence")
    if len(occ) == 1:
        return PeriodicityReport(occ, "single-occurrence")
    o = occ[0] % len(r)
    rot = r[o:] + r[:o]
    if len(u) % len(r) == 0:
        z = len(u) // len(r)
        return PeriodicityReport(occ, "repeated-power", z=z, rotation_offset=o,
                                 verified=(u == rot * z))
    return PeriodicityReport(occ, "repeated-power", verified=False)
