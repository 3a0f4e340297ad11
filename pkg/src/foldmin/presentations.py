"""Group presentations for the three supported families, their symmetrized
relator sets, small cancellation diagnostics, and the rank-dependent
exponent thresholds under which the certification routes apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .words import (
    Alphabet,
    Mode,
    Word,
    cyclic_permutations,
    invert,
    is_cyclically_reduced,
    is_proper_power,
    letter_bound,
)


@dataclass(frozen=True)
class ExponentMatrix:
    """Symmetric exponent data for pairs of generators.

    Only finite entries are stored, as ``(i, j, m)`` with ``i < j``; a
    missing pair means there is no relation between those generators.
    No sentinel integers stand in for infinity anywhere downstream.
    """

    n: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for i, j, m in self.entries:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad generator pair ({i}, {j})")
            if m < 2:
                raise ValueError(f"exponent below 2 for pair ({i}, {j})")
            if (i, j) in seen:
                raise ValueError(f"duplicate pair ({i}, {j})")
            seen.add((i, j))

    @staticmethod
    def from_dict(n: int, finite: dict[tuple[int, int], int]) -> "ExponentMatrix":
        entries = tuple(sorted((min(i, j), max(i, j), m) for (i, j), m in finite.items()))
        return ExponentMatrix(n, entries)

    def get(self, i: int, j: int) -> Optional[int]:
        if i > j:
            i, j = j, i
        for a, b, m in self.entries:
            if (a, b) == (i, j):
                return m
        return None

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        return iter(self.entries)

    @property
    def finite_values(self) -> tuple[int, ...]:
        return tuple(m for _, _, m in self.entries)

    @property
    def extra_large(self) -> bool:
        return all(m >= 4 for m in self.finite_values)

    def as_array(self) -> np.ndarray:
        """Dense symmetric matrix for the scanning kernels, 0 meaning
        no relation."""
        arr = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j, m in self.entries:
            arr[i, j] = m
            arr[j, i] = m
        return arr


@dataclass(frozen=True)
class CoxeterPresentation:
    """Generators of order two with pairwise relations ``(a_i a_j)^m_ij``."""

    alphabet: Alphabet
    exponents: ExponentMatrix

    def __post_init__(self) -> None:
        if self.alphabet.mode is not Mode.INVOLUTIVE:
            raise ValueError("Coxeter presentations live over an involutive alphabet")
        if self.exponents.n != self.alphabet.n:
            raise ValueError("exponent matrix size does not match alphabet")

    @property
    def extra_large(self) -> bool:
        return self.exponents.extra_large

    def relator_word(self, i: int, j: int) -> Word:
        m = self.exponents.get(i, j)
        if m is None:
            raise ValueError(f"no relation between generators {i} and {j}")
        return (i + 1, j + 1) * m


@dataclass(frozen=True)
class ArtinPresentation:
    """Relations equating the two alternating words ``a_i a_j a_i ...`` and
    ``a_j a_i a_j ...`` of common length ``m_ij``."""

    alphabet: Alphabet
    exponents: ExponentMatrix

    def __post_init__(self) -> None:
        if self.alphabet.mode is not Mode.FREE_INVERSE:
            raise ValueError("Artin presentations live over a free-inverse alphabet")
        if self.exponents.n != self.alphabet.n:
            raise ValueError("exponent matrix size does not match alphabet")

    @property
    def extra_large(self) -> bool:
        return self.exponents.extra_large

    def defining_relator(self, i: int, j: int) -> Word:
        """The word ``u_ij u_ji^-1``, trivial in the group."""
        m = self.exponents.get(i, j)
        if m is None:
            raise ValueError(f"no relation between generators {i} and {j}")
        u_ij = artin_side(i, j, m)
        u_ji = artin_side(j, i, m)
        return u_ij + invert(u_ji, Mode.FREE_INVERSE)


@dataclass(frozen=True)
class OneRelatorPresentation:
    """A single proper-power relation ``r^m = 1`` over a free group."""

    alphabet: Alphabet
    relator: Word
    exponent: int

    def __post_init__(self) -> None:
        if self.alphabet.mode is not Mode.FREE_INVERSE:
            raise ValueError("one-relator presentations live over a free-inverse alphabet")
        if self.exponent < 2:
            raise ValueError("exponent must be at least 2")
        r = self.relator
        self.alphabet.check_word(r)
        if not r:
            raise ValueError("relator must be nonempty")
        if not is_cyclically_reduced(r, self.alphabet):
            raise ValueError("relator must be cyclically reduced")
        if len(r) > 1 and is_proper_power(r) is not None:
            raise ValueError("relator must not be a proper power")

    @property
    def b(self) -> int:
        return letter_bound(self.relator)


Presentation = CoxeterPresentation | ArtinPresentation | OneRelatorPresentation


def artin_side(i: int, j: int, length: int) -> Word:
    """Alternating positive word ``a_i a_j a_i ...`` with the given number
    of letters."""
    if i == j:
        raise ValueError("alternating word needs two distinct generators")
    if length < 1:
        raise ValueError("alternating word needs positive length")
    return tuple((i + 1) if t % 2 == 0 else (j + 1) for t in range(length))


def coxeter_symmetrized_relators(P: CoxeterPresentation) -> list[Word]:
    """The distinct words in the symmetrized relator set: for every related
    pair, all rotations of ``(a_i a_j)^m_ij`` (which include the rotations
    of ``(a_j a_i)^m_ij``, and in involutive mode the set is closed under
    inversion)."""
    if not P.extra_large:
        raise ValueError("refusing non-extra-large presentation (some finite exponent < 4)")
    out: list[Word] = []
    for i, j, _m in P.exponents.pairs():
        r = P.relator_word(i, j)
        for rot in cyclic_permutations(r, P.alphabet):
            if rot not in out:
                out.append(rot)
    return out


@dataclass(frozen=True)
class SmallCancellationReport:
    """Piece statistics of a finite symmetrized relator set.

    ``c_condition`` is the largest p such that no relator is a product of
    fewer than p pieces (None when no relator factors into pieces at all,
    in which case every C(p) holds).  ``c_prime_lambda`` is the critical
    ratio: C'(lam) holds exactly for lam strictly above it.
    """

    max_piece_length: int
    c_condition: Optional[int]
    c_prime_lambda: Fraction
    relator_count: int = 0

    def satisfies_c(self, p: int) -> bool:
        return self.c_condition is None or self.c_condition >= p

    def satisfies_c_prime(self, lam: Fraction) -> bool:
        return lam > self.c_prime_lambda


def _common_prefix_len(u: Word, v: Word) -> int:
    t = 0
    for a, b in zip(u, v):
        if a != b:
            break
        t += 1
    return t


def compute_pieces(relators: Sequence[Word], a: Optional[Alphabet] = None) -> SmallCancellationReport:
    """Piece analysis of a symmetrized set (closed under rotations and
    inversion; checked when an alphabet is supplied).

    A piece is a common initial segment of two distinct set elements.
    Because the set is rotation-closed, a subword of a relator at offset t
    is a piece exactly when it is a shared prefix of two distinct elements,
    one of which is the rotation starting at t.
    """
    words = []
    for w in relators:
        if w not in words:
            words.append(w)
    if a is not None:
        for w in words:
            for t in range(len(w)):
                if w[t:] + w[:t] not in words:
                    raise ValueError("relator set is not rotation-closed")
            if invert(w, a.mode) not in words:
                raise ValueError("relator set is not inversion-closed")
    if not words:
        return SmallCancellationReport(0, None, Fraction(0), 0)

    max_piece = 0
    piece_ratio = Fraction(0)
    min_factor: Optional[int] = None
    for r in words:
        # longest piece readable from each offset of r (rotation closure makes
        # the subword at offset t a prefix of the rotation starting there)
        maxp = []
        for t in range(len(r)):
            rot = r[t:] + r[:t]
            best = 0
            for other in words:
                if other != rot:
                    best = max(best, _common_prefix_len(rot, other))
            maxp.append(best)
            if best:
                max_piece = max(max_piece, best)
                piece_ratio = max(piece_ratio, Fraction(best, len(r)))
        # fewest pieces multiplying out to r (factors cannot wrap the end)
        INF = len(r) + 1
        f = [INF] * (len(r) + 1)
        f[0] = 0
        for t in range(len(r)):
            if f[t] >= INF:
                continue
            for ell in range(1, min(maxp[t], len(r) - t) + 1):
                if f[t] + 1 < f[t + ell]:
                    f[t + ell] = f[t] + 1
        if f[len(r)] < INF:
            min_factor = f[len(r)] if min_factor is None else min(min_factor, f[len(r)])
    return SmallCancellationReport(max_piece, min_factor, piece_ratio, len(words))


def check_separability_condition(P: CoxeterPresentation) -> tuple[bool, list[str]]:
    """Even extra-large exponents, and in every fully related generator
    triangle all three exponents divisible by 6."""
    violations: list[str] = []
    for i, j, m in P.exponents.pairs():
        if m < 4:
            violations.append(f"m[{i},{j}] = {m} < 4")
        if m % 2:
            violations.append(f"m[{i},{j}] = {m} is odd")
    n = P.alphabet.n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ms = (P.exponents.get(i, j), P.exponents.get(i, k), P.exponents.get(j, k))
                if all(m is not None for m in ms):
                    for (p, q), m in zip(((i, j), (i, k), (j, k)), ms):
                        assert m is not None
                        if m % 6:
                            violations.append(
                                f"triangle ({i},{j},{k}): m[{p},{q}] = {m} not divisible by 6"
                            )
    return (not violations), violations


@dataclass(frozen=True)
class ThresholdCheck:
    certificate: str
    required: int
    satisfied: bool
    limiting: Optional[str]
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "certificate": self.certificate,
            "required": self.required,
            "satisfied": self.satisfied,
            "limiting": self.limiting,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class HypothesisReport:
    family: str
    k: int
    checks: tuple[ThresholdCheck, ...]
    notes: tuple[str, ...] = ()

    def check(self, certificate: str) -> ThresholdCheck:
        for c in self.checks:
            if c.certificate == certificate:
                return c
        raise KeyError(certificate)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "checks": [c.to_json_dict() for c in self.checks],
            "notes": list(self.notes),
        }


def _matrix_threshold(M: ExponentMatrix, certificate: str, required: int,
                      extra_notes: tuple[str, ...] = ()) -> ThresholdCheck:
    worst: Optional[tuple[int, int, int]] = None
    for i, j, m in M.pairs():
        if worst is None or m < worst[2]:
            worst = (i, j, m)
    if worst is None:
        return ThresholdCheck(certificate, required, True, None, extra_notes)
    i, j, m = worst
    return ThresholdCheck(
        certificate, required, m >= required, f"m[{i},{j}] = {m}", extra_notes
    )


def hypothesis_thresholds(P: Presentation, k: int) -> HypothesisReport:
    """Which certificates are reachable at subgroup rank budget ``k``.

    The exponent bounds per certificate: quasiconvexity/freeness needs every
    finite exponent at least 3k+1; separability needs 3k+7 together with
    the separability condition; the Artin freeness route needs 5k; the
    one-relator route needs ``m >= b(6k-2)+2`` for letter bound b.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    notes: tuple[str, ...] = ()
    if k == 1:
        notes = ("k=1: below stated rank range; rank-one subgroups are cyclic",)
    if isinstance(P, CoxeterPresentation):
        a = _matrix_threshold(P.exponents, "free-quasiconvex", 3 * k + 1)
        sep_ok, sep_viol = check_separability_condition(P)
        b = _matrix_threshold(
            P.exponents, "separable", 3 * k + 7,
            tuple(["separability condition holds"] if sep_ok else sep_viol),
        )
        if not sep_ok:
            b = ThresholdCheck(b.certificate, b.required, False, b.limiting, b.notes)
        return HypothesisReport("coxeter", k, (a, b), notes)
    if isinstance(P, ArtinPresentation):
        c = _matrix_threshold(P.exponents, "artin-free", 5 * k)
        return HypothesisReport("artin", k, (c,), notes)
    if isinstance(P, OneRelatorPresentation):
        required = P.b * (6 * k - 2) + 2
        d = ThresholdCheck(
            "one-relator-free", required, P.exponent >= required,
            f"m = {P.exponent} (letter bound {P.b})",
        )
        return HypothesisReport("one-relator", k, (d,), notes)
    raise TypeError(f"unknown presentation type: {type(P)!r}")
