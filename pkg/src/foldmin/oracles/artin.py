"""Two-generator Artin group solver in Garside left normal form, plus the
bounded relator-completion search.

For generators a, b with the relation equating the two alternating words
of length m, the simple elements form two chains joined at bottom and top:
the alternating positive words of length 0..m, where both length-m words
represent the same element (the Garside element).  Every element has a
unique left-greedy form ``Delta^p s_1 ... s_q`` with each ``s_t`` a proper
nonempty simple and each adjacent pair left-weighted; equality of normal
forms is equality in the group, and the empty form is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..presentations import ArtinPresentation
from ..words import Word, reduce_letters, syllable_count


@dataclass(frozen=True)
class Simple:
    """A proper simple element: the alternating positive word on the two
    local generators 0 and 1 that starts with ``start`` and has ``length``
    letters, 1 <= length <= m-1."""

    start: int
    length: int


NormalForm = tuple[int, tuple[Simple, ...]]

IDENTITY_NF: NormalForm = (0, ())


class DihedralGarside:
    def __init__(self, m: int):
        if m < 2:
            raise ValueError("relation length must be at least 2")
        self.m = m

    # -- simple-element combinatorics --------------------------------------

    def letter_at(self, s: Simple, pos: int) -> int:
        return s.start if pos % 2 == 0 else 1 - s.start

    def last_letter(self, s: Simple) -> int:
        return self.letter_at(s, s.length - 1)

    def next_letter(self, s: Simple) -> int:
        """The letter extending the alternation of ``s`` by one."""
        return 1 - self.last_letter(s)

    def tau(self, s: Simple) -> Simple:
        """Conjugation by the Garside element; swaps the two generators
        exactly when m is odd.  An involution."""
        return Simple(s.start if self.m % 2 == 0 else 1 - s.start, s.length)

    def word_of(self, s: Simple) -> tuple[int, ...]:
        return tuple(self.letter_at(s, t) for t in range(s.length))

    def _meld(self, a: Simple, b: Simple) -> tuple[Simple, Optional[Simple]]:
        """Slide as much of ``b`` as possible into ``a`` (left-greedy local
        normalization).  The result may have ``a.length == m``, i.e. be the
        Garside element; the caller extracts it."""
        if self.next_letter(a) == b.start and a.length < self.m:
            take = min(b.length, self.m - a.length)
            a2 = Simple(a.start, a.length + take)
            if take == b.length:
                return a2, None
            return a2, Simple(self.letter_at(b, take), b.length - take)
        return a, b

    # -- normal form arithmetic --------------------------------------------

    def rmul_simple(self, nf: NormalForm, t: Simple) -> NormalForm:
        delta, fs = nf
        factors = list(fs)
        factors.append(t)
        p = len(factors) - 2
        while p >= 0:
            if p + 1 >= len(factors):
                p -= 1
                continue
            a, b = self._meld(factors[p], factors[p + 1])
            if a == factors[p]:
                break
            if b is None:
                factors[p:p + 2] = [a]
            else:
                factors[p] = a
                factors[p + 1] = b
            if a.length == self.m:
                delta += 1
                factors = [self.tau(f) for f in factors[:p]] + factors[p + 1:]
            p -= 1
        return delta, tuple(factors)

    def lmul_simple(self, nf: NormalForm, t: Simple) -> NormalForm:
        # t . Delta^d = Delta^d . tau^d(t), so prepending twists t by the
        # power parity.  Only the front factor can grow, and a partial
        # absorption always tops it out at the Garside element.
        delta, fs = nf
        if delta % 2:
            t = self.tau(t)
        factors = [t] + list(fs)
        while True:
            if factors[0].length == self.m:
                delta += 1
                factors = factors[1:]
                break
            if len(factors) < 2:
                break
            a, b = self._meld(factors[0], factors[1])
            if a == factors[0]:
                break
            if b is None:
                factors[0:2] = [a]
            else:
                factors[0] = a
                factors[1] = b
        return delta, tuple(factors)

    def rmul_gen(self, nf: NormalForm, g: int, sign: int) -> NormalForm:
        if sign > 0:
            return self.rmul_simple(nf, Simple(g, 1))
        delta, fs = nf
        shifted = (delta - 1, tuple(self.tau(f) for f in fs))
        x0 = (1 - g) if self.m % 2 == 0 else g
        return self.rmul_simple(shifted, Simple(x0, self.m - 1))

    def lmul_gen(self, nf: NormalForm, g: int, sign: int) -> NormalForm:
        if sign > 0:
            return self.lmul_simple(nf, Simple(g, 1))
        delta, fs = nf
        return self.lmul_simple((delta - 1, fs), Simple(1 - g, self.m - 1))

    def nf_of(self, local_word: tuple[int, ...], signs: tuple[int, ...]) -> NormalForm:
        nf = IDENTITY_NF
        for g, s in zip(local_word, signs):
            nf = self.rmul_gen(nf, g, s)
        return nf

    def nf_of_letters(self, letters: tuple[tuple[int, int], ...]) -> NormalForm:
        nf = IDENTITY_NF
        for g, s in letters:
            nf = self.rmul_gen(nf, g, s)
        return nf

    def is_trivial_letters(self, letters: tuple[tuple[int, int], ...]) -> bool:
        return self.nf_of_letters(letters) == IDENTITY_NF

    def validate_nf(self, nf: NormalForm) -> None:
        _, fs = nf
        for s in fs:
            assert 1 <= s.length < self.m, "factor out of the proper simple range"
        for a, b in zip(fs, fs[1:]):
            melded, _ = self._meld(a, b)
            assert melded == a, "adjacent factors not left-weighted"


def _local_letters(w: Word, i: int, j: int) -> tuple[tuple[int, int], ...]:
    """Map global letters to (local generator, sign) pairs; rejects letters
    outside the {a_i, a_j} subalphabet."""
    out = []
    for x in w:
        if abs(x) == i + 1:
            out.append((0, 1 if x > 0 else -1))
        elif abs(x) == j + 1:
            out.append((1, 1 if x > 0 else -1))
        else:
            raise ValueError(f"letter {x} outside the two-generator subalphabet")
    return tuple(out)


def artin_dihedral_normal_form(w: Word, i: int, j: int, m: int) -> NormalForm:
    """Canonical form of a word in generators a_i, a_j under the length-m
    alternating relation."""
    return DihedralGarside(m).nf_of_letters(_local_letters(w, i, j))


def artin_dihedral_is_trivial(w: Word, i: int, j: int, m: int) -> bool:
    return artin_dihedral_normal_form(w, i, j, m) == IDENTITY_NF


class DihedralOracle:
    """Triviality oracle for words supported on one related generator pair."""

    def __init__(self, P: ArtinPresentation, i: int, j: int):
        m = P.exponents.get(i, j)
        if m is None:
            raise ValueError(f"generators {i}, {j} are unrelated")
        self.i, self.j = i, j
        self.solver = DihedralGarside(m)

    def is_trivial(self, w: Word) -> bool:
        return self.solver.is_trivial_letters(_local_letters(w, self.i, self.j))


@dataclass(frozen=True)
class SearchBounds:
    exponent_cap: Optional[int] = None  # default |v| + 2 m


def artin_relator_search(
    v: Word,
    i: int,
    j: int,
    P: ArtinPresentation,
    bounds: SearchBounds = SearchBounds(),
) -> Optional[Word]:
    """Bounded completion search: a word u on {a_i, a_j} with at most three
    syllables and capped exponents such that v.u is nonempty, freely
    reduced to something, and trivial in the two-generator group.

    The exponent sums of any completion are pinned by the abelianization
    (one constraint per generator for even m, their sum for odd m), which
    collapses the search to at most two free exponents.  Candidates are
    tried by total letter count, so the returned witness is shortest.
    Absence is a legitimate outcome of the bounded sweep.
    """
    a = P.alphabet
    m = P.exponents.get(i, j)
    if m is None:
        raise ValueError(f"generators {i}, {j} are unrelated")
    local = _local_letters(v, i, j)
    if syllable_count(v) < 2 * m - 3:
        raise ValueError("completion search expects a long two-letter segment")
    solver = DihedralGarside(m)
    nf_v = solver.nf_of_letters(local)
    if nf_v == IDENTITY_NF:
        return ()
    cap = bounds.exponent_cap if bounds.exponent_cap is not None else len(v) + 2 * m
    sa = sum(s for g, s in local if g == 0)
    sb = sum(s for g, s in local if g == 1)

    def glob(g: int, e: int) -> Word:
        letter = (i + 1) if g == 0 else (j + 1)
        return (letter if e > 0 else -letter,) * abs(e)

    candidates: list[tuple[int, int, tuple[tuple[int, int], ...]]] = []

    def consider(order: int, sylls: list[tuple[int, int]]) -> None:
        if any(e == 0 or abs(e) > cap for _, e in sylls):
            return
        total = sum(abs(e) for _, e in sylls)
        candidates.append((total, order, tuple(sylls)))

    patterns = [(0,), (1,), (0, 1), (1, 0), (0, 1, 0), (1, 0, 1)]
    for order, pat in enumerate(patterns):
        if m % 2 == 0:
            # per-generator exponent sums are invariants
            ta = -sa
            tb = -sb
            if pat == (0,):
                if tb == 0:
                    consider(order, [(0, ta)])
            elif pat == (1,):
                if ta == 0:
                    consider(order, [(1, tb)])
            elif pat == (0, 1):
                consider(order, [(0, ta), (1, tb)])
            elif pat == (1, 0):
                consider(order, [(1, tb), (0, ta)])
            elif pat == (0, 1, 0):
                for e1 in range(-cap, cap + 1):
                    consider(order, [(0, e1), (1, tb), (0, ta - e1)])
            else:
                for e1 in range(-cap, cap + 1):
                    consider(order, [(1, e1), (0, ta), (1, tb - e1)])
        else:
            # only the total exponent sum survives abelianization
            tt = -(sa + sb)
            if len(pat) == 1:
                consider(order, [(pat[0], tt)])
            elif len(pat) == 2:
                for e1 in range(-cap, cap + 1):
                    consider(order, [(pat[0], e1), (pat[1], tt - e1)])
            else:
                for e1 in range(-cap, cap + 1):
                    for e2 in range(-cap, cap + 1):
                        consider(order, [(pat[0], e1), (pat[1], e2), (pat[2], tt - e1 - e2)])

    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    for _total, _order, sylls in candidates:
        u: Word = ()
        for g, e in sylls:
            u = u + glob(g, e)
        if not reduce_letters(v + u, False):
            continue
        nf = nf_v
        for g, e in sylls:
            sign = 1 if e > 0 else -1
            for _ in range(abs(e)):
                nf = solver.rmul_gen(nf, g, sign)
        if nf == IDENTITY_NF:
            w = reduce_letters(v + u, False)
            if len(w) < 2 or w[0] != -w[-1]:
                # nonempty cyclically reduced words trivial in the
                # two-generator group have at least 2m syllables; anything
                # shorter would mean the solver returned a bad witness
                assert syllable_count(w) >= 2 * m, "completion violates the syllable floor"
            return u
    return None
