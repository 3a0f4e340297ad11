"""Shared result types for relator detection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..words import Word


@dataclass(frozen=True)
class RelatorHit:
    """A near-relator occurrence: ``matched`` is a subword of a symmetrized
    relator and ``matched + complement`` is the full relator (so the matched
    piece equals the inverse of the complement in the group).

    ``position`` is the start index for word scans; graph scans carry their
    own path data instead.
    """

    relator_id: str
    matched: Word
    complement: Word
    position: Optional[int] = None

    @property
    def span(self) -> tuple[int, int]:
        p = self.position if self.position is not None else 0
        return (p, p + len(self.matched))

    def to_json_dict(self, alphabet) -> dict:
        return {
            "relator": self.relator_id,
            "matched": alphabet.word_to_text(self.matched),
            "complement": alphabet.word_to_text(self.complement),
            "position": self.position,
        }


@dataclass(frozen=True)
class TorsionClass:
    """Short-torsion classification of a word up to conjugacy.

    ``kind`` is one of Trivial, ConjGenerator, ConjRotationPower, ConjPower,
    NotShortTorsionForm.  NotShortTorsionForm makes no claim of infinite
    order; it only says the reduced shape is not one of the certified
    torsion forms."""

    kind: str
    i: Optional[int] = None
    j: Optional[int] = None
    d: Optional[int] = None

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        for k in ("i", "j", "d"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        return out
