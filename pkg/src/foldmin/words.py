"""Alphabets and word arithmetic.

Two ambient structures are supported: the free group on the generators
(``Mode.FREE_INVERSE``) and the free product of order-two cyclic groups
(``Mode.INVOLUTIVE``), where every generator is its own inverse.

Letters are signed integers: generator ``i`` (zero-based) is encoded as
``i + 1`` and its formal inverse as ``-(i + 1)``.  Involutive-mode words
contain positive letters only; inversion is reversal.  Words are plain
tuples of letters, so they hash, compare and slice cheaply; scanning
over them dominates the runtime of everything built on top.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

Word = tuple[int, ...]
SyllableForm = tuple[tuple[int, int], ...]

EMPTY: Word = ()


class Mode(enum.Enum):
    FREE_INVERSE = "free-inverse"
    INVOLUTIVE = "involutive"


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator symbols plus the ambient mode.

    ``names`` must be distinct, nonempty, and free of whitespace and the
    apostrophe (which the text syntax reserves for inverses).
    """

    names: tuple[str, ...]
    mode: Mode

    def __post_init__(self) -> None:
        if len(self.names) < 1:
            raise ValueError("alphabet needs at least one generator")
        seen = set()
        for name in self.names:
            if not name or "'" in name or any(c.isspace() for c in name):
                raise ValueError(f"bad generator name: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name: {name!r}")
            seen.add(name)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def involutive(self) -> bool:
        return self.mode is Mode.INVOLUTIVE

    def letter(self, gen: int, sign: int = 1) -> int:
        if not 0 <= gen < self.n:
            raise ValueError(f"generator index out of range: {gen}")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if sign == -1 and self.involutive:
            raise ValueError("involutive mode has no inverse letters")
        return sign * (gen + 1)

    def check_word(self, w: Word) -> Word:
        for x in w:
            if x == 0 or abs(x) > self.n:
                raise ValueError(f"letter out of range: {x}")
            if x < 0 and self.involutive:
                raise ValueError("inverse letter in involutive mode")
        return w

    # Text syntax shared by the whole artifact: whitespace-separated
    # generator names, apostrophe suffix for the inverse (`a b' a`).
    def word_from_text(self, text: str) -> Word:
        letters = []
        for tok in text.split():
            if tok.endswith("'"):
                if self.involutive:
                    raise ValueError("apostrophe (inverse) not allowed in involutive mode")
                name, sign = tok[:-1], -1
            else:
                name, sign = tok, 1
            try:
                gen = self.names.index(name)
            except ValueError:
                raise ValueError(f"unknown generator: {name!r}") from None
            letters.append(sign * (gen + 1))
        return tuple(letters)

    def word_to_text(self, w: Word) -> str:
        self.check_word(w)
        return " ".join(
            self.names[abs(x) - 1] + ("'" if x < 0 else "") for x in w
        )


def gen_index(letter: int) -> int:
    """Zero-based generator index of a signed letter."""
    return abs(letter) - 1


def inverse_letter(letter: int, mode: Mode) -> int:
    return letter if mode is Mode.INVOLUTIVE else -letter


def _cancels(x: int, y: int, mode: Mode) -> bool:
    return x == y if mode is Mode.INVOLUTIVE else x == -y


def free_reduce(w: Word, a: Alphabet) -> Word:
    """The unique reduced form of ``w``: no ``x x^-1`` (free-inverse) and
    no ``x x`` (involutive) remains.  Idempotent."""
    a.check_word(w)
    return reduce_letters(w, a.involutive)


def reduce_letters(w: Word, involutive: bool) -> Word:
    out: list[int] = []
    if involutive:
        for x in w:
            if out and out[-1] == x:
                out.pop()
            else:
                out.append(x)
    else:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def is_reduced(w: Word, a: Alphabet) -> bool:
    a.check_word(w)
    if a.involutive:
        return all(w[t] != w[t + 1] for t in range(len(w) - 1))
    return all(w[t] != -w[t + 1] for t in range(len(w) - 1))


def invert(w: Word, mode: Mode) -> Word:
    """Formal inverse: reverse and flip signs, or just reverse when every
    generator is an involution."""
    if mode is Mode.INVOLUTIVE:
        return w[::-1]
    return tuple(-x for x in reversed(w))


def concat(a: Alphabet, *ws: Word) -> Word:
    """Concatenate then reduce."""
    out: list[int] = []
    for w in ws:
        for x in w:
            if out and _cancels(out[-1], x, a.mode):
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def cyclic_reduce(w: Word, a: Alphabet) -> tuple[Word, Word]:
    """Split a reduced word as conjugator . core . conjugator^-1 with the
    core cyclically reduced.  Returns ``(core, conjugator)``."""
    if not is_reduced(w, a):
        raise ValueError("cyclic_reduce expects a reduced word")
    lo, hi = 0, len(w)
    while hi - lo >= 2 and _cancels(w[hi - 1], w[lo], a.mode):
        lo += 1
        hi -= 1
    return w[lo:hi], w[:lo]


def is_cyclically_reduced(w: Word, a: Alphabet) -> bool:
    if not is_reduced(w, a):
        return False
    if len(w) < 2:
        return True
    return not _cancels(w[-1], w[0], a.mode)


def cyclic_permutations(w: Word, a: Alphabet) -> list[Word]:
    """All rotations of a cyclically reduced word, in rotation order,
    deduplicated on exact equality only."""
    if not is_cyclically_reduced(w, a):
        raise ValueError("cyclic_permutations expects a cyclically reduced word")
    if not w:
        return [()]
    seen = set()
    out = []
    for t in range(len(w)):
        r = w[t:] + w[:t]
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def syllable_form(w: Word, a: Alphabet) -> SyllableForm:
    """Run-length form by generator: ``a1 a1 a2 -> ((0, 2), (1, 1))`` as
    (generator index, exponent) pairs.  Free groups only; the involutive
    world has no exponent normal form."""
    if a.involutive:
        raise ValueError("syllable form is defined for free-inverse mode only")
    if not is_reduced(w, a):
        raise ValueError("syllable_form expects a reduced word")
    out: list[tuple[int, int]] = []
    for x in w:
        g = abs(x) - 1
        s = 1 if x > 0 else -1
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + s)
        else:
            out.append((g, s))
    return tuple(out)


def syllable_length(w: Word, a: Alphabet) -> int:
    return len(syllable_form(w, a))


def syllable_count(w: Word) -> int:
    """Number of maximal single-generator blocks, without validation.
    On reduced free-inverse words this equals ``len(syllable_form(w, a))``."""
    count = 0
    prev = 0
    for x in w:
        if prev == 0 or abs(x) != abs(prev):
            count += 1
        prev = x
    return count


def letter_bound(w: Word) -> int:
    """Maximum number of occurrences of any single signed letter
    (a generator and its inverse are counted separately)."""
    counts: dict[int, int] = {}
    for x in w:
        counts[x] = counts.get(x, 0) + 1
    return max(counts.values(), default=0)


def is_proper_power(w: Word) -> Optional[tuple[Word, int]]:
    """Maximal-root decomposition ``w = root^e`` with ``e >= 2``, or None.

    Tries divisors of ``len(w)`` in increasing order, so the first match
    is the primitive root.
    """
    n = len(w)
    if n == 0:
        raise ValueError("is_proper_power expects a nonempty word")
    for d in range(1, n // 2 + 1):
        if n % d:
            continue
        if w[:d] * (n // d) == w:
            return w[:d], n // d
    return None


def power(w: Word, e: int, mode: Mode) -> Word:
    if e >= 0:
        return w * e
    return invert(w, mode) * (-e)
