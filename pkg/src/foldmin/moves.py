"""Elementary graph transformations: the fold and the four auxiliary moves,
plus the gcd wrapping composite.

Folds, subdivisions (A2) and degree-two merges (A3) preserve the subgroup
over the ambient free structure outright.  Attaching an equivalent edge
(A0) and deleting an edge with an equivalent witness path (A1) are only
sound relative to the group's defining relations, so both require an
explicit triviality oracle and refuse to act when the oracle denies the
claimed equality.  Every move records its Euler characteristic and
complexity deltas and asserts the invariant for its kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Protocol

from .complexity import sigma
from .fgraph import FGraph, GraphPath
from .words import Word, inverse_letter, invert, reduce_letters


class MoveRejected(Exception):
    """A move precondition failed or the oracle denied the required
    equality; the graph is unchanged."""


class TrivialityOracle(Protocol):
    def is_trivial(self, w: Word) -> bool: ...


@dataclass
class MoveRecord:
    kind: str
    affected: tuple[int, ...]
    chi_before: int
    chi_after: int
    sigma_before: tuple[int, ...]
    sigma_after: tuple[int, ...]
    data: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "affected": list(self.affected),
            "chi_before": self.chi_before,
            "chi_after": self.chi_after,
            "complexity_before": list(self.sigma_before),
            "complexity_after": list(self.sigma_after),
            "data": {k: v for k, v in self.data.items() if not k.startswith("_")},
        }


_CHI_DELTA = {"Fold": None, "A0": -1, "A1": 1, "A2": 0, "A3": 0, "Prune": 0}


def _record(kind: str, g: FGraph, chi0: int, s0, affected, data=None) -> MoveRecord:
    chi1 = g.euler_characteristic()
    if kind == "Fold":
        assert chi1 >= chi0, "fold decreased the Euler characteristic"
    elif kind in _CHI_DELTA and _CHI_DELTA[kind] is not None:
        assert chi1 - chi0 == _CHI_DELTA[kind], f"{kind} changed chi by {chi1 - chi0}"
    return MoveRecord(kind, tuple(affected), chi0, chi1, tuple(s0), tuple(sigma(g)), data or {})


def _common_prefix(w1: Word, w2: Word) -> int:
    t = 0
    for a, b in zip(w1, w2):
        if a != b:
            break
        t += 1
    return t


def fold_step(g: FGraph, d1: int, d2: int) -> MoveRecord:
    """Fold two distinct directed edges with a common origin along the
    maximal common initial segment of their labels.

    A loop folded against its own reverse direction wraps onto itself:
    the label splits as x . mid . x^-1 and the two x-copies are
    identified, producing a spur carrying the mid loop.
    """
    if d1 == d2 or not g.has_edge(d1) or not g.has_edge(d2):
        raise MoveRejected("fold needs two distinct existing edges")
    if g.src(d1) != g.src(d2):
        raise MoveRejected("fold needs a common origin")
    w1, w2 = g.label(d1), g.label(d2)
    if d1 == -d2 and len(w1) == 1:
        raise MoveRejected("a length-one loop and its reverse are exempt")
    chi0 = g.euler_characteristic()
    s0 = sigma(g)
    mode = g.alphabet.mode

    if d1 == -d2:
        # self-inverse wrap: w = x . mid . x^-1 with maximal x
        w = w1
        n = len(w)
        t = 0
        while t < (n - 1) // 2 and w[t] == inverse_letter(w[n - 1 - t], mode):
            t += 1
        if t == 0:
            raise MoveRejected("labels share no initial segment")
        v = g.src(d1)
        x, mid = w[:t], w[t:n - t]
        g.remove_edge(d1)
        p = g.add_vertex()
        e_x = g.add_edge(v, p, x)
        e_mid = g.add_edge(p, p, mid)
        return _record("Fold", g, chi0, s0, (abs(d1), e_x, e_mid), {"wrap": True})

    t = _common_prefix(w1, w2)
    if t == 0:
        raise MoveRejected("labels share no initial segment")
    x, u1, u2 = w1[:t], w1[t:], w2[t:]
    v = g.src(d1)
    y1, y2 = g.dst(d1), g.dst(d2)
    if not u1 and not u2:
        g.remove_edge(d2)
        if y1 != y2:
            keep, lose = min(y1, y2), max(y1, y2)
            if g.marked(lose) and not g.marked(keep):
                keep, lose = lose, keep
            g.merge_vertices(keep, lose)
        return _record("Fold", g, chi0, s0, (abs(d1), abs(d2)), {"identified": True})
    if not u1:
        g.remove_edge(d2)
        e_new = g.add_edge(y1, y2, u2)
        return _record("Fold", g, chi0, s0, (abs(d1), abs(d2), e_new))
    if not u2:
        g.remove_edge(d1)
        e_new = g.add_edge(y2, y1, u1)
        return _record("Fold", g, chi0, s0, (abs(d1), abs(d2), e_new))
    g.remove_edge(d1)
    g.remove_edge(d2)
    z = g.add_vertex()
    e_x = g.add_edge(v, z, x)
    e_1 = g.add_edge(z, y1, u1)
    e_2 = g.add_edge(z, y2, u2)
    return _record("Fold", g, chi0, s0, (abs(d1), abs(d2), e_x, e_1, e_2))


def fold_all(g: FGraph) -> list[MoveRecord]:
    """Fold until folded.  Terminates: every fold strictly shrinks the total
    label length."""
    records = []
    while True:
        pair = g.violating_pair()
        if pair is None:
            return records
        records.append(fold_step(g, *pair))


def move_A0(g: FGraph, p: GraphPath, v_prime: Word, oracle: TrivialityOracle) -> MoveRecord:
    """Attach a new edge parallel to the path ``p``, labeled by a reduced
    word the oracle confirms equal to the path label in the group."""
    p.validate(g)
    if not v_prime:
        raise MoveRejected("A0 label must be nonempty")
    inv = g.alphabet.involutive
    if reduce_letters(v_prime, inv) != v_prime:
        raise MoveRejected("A0 label must be reduced")
    quotient = reduce_letters(p.label(g) + invert(v_prime, g.alphabet.mode), inv)
    if not oracle.is_trivial(quotient):
        raise MoveRejected("oracle denies path label = attached label")
    chi0 = g.euler_characteristic()
    s0 = sigma(g)
    e_new = g.add_edge(p.start, p.end(g), v_prime)
    return _record("A0", g, chi0, s0, (e_new,), {"label_len": len(v_prime)})


def move_A1(g: FGraph, d: int, witness: GraphPath, oracle: TrivialityOracle) -> MoveRecord:
    """Delete an edge whose label the oracle confirms equal to the label of a
    witness path between the same endpoints that avoids the edge."""
    if not g.has_edge(d):
        raise MoveRejected("A1 target edge missing")
    witness.validate(g)
    if witness.uses_edge(d):
        raise MoveRejected("witness path may not use the deleted edge")
    if witness.start != g.src(d) or witness.end(g) != g.dst(d):
        raise MoveRejected("witness endpoints do not match the edge")
    inv = g.alphabet.involutive
    quotient = reduce_letters(g.label(d) + invert(witness.label(g), g.alphabet.mode), inv)
    if not oracle.is_trivial(quotient):
        raise MoveRejected("oracle denies edge label = witness label")
    chi0 = g.euler_characteristic()
    s0 = sigma(g)
    g.remove_edge(d)
    return _record("A1", g, chi0, s0, (abs(d),))


def move_A2(g: FGraph, eid: int, split: int) -> MoveRecord:
    """Subdivide an edge at a position of its canonical label."""
    eid = abs(eid)
    if not g.has_edge(eid):
        raise MoveRejected("A2 target edge missing")
    w = g.label(eid)
    if not 1 <= split < len(w):
        raise MoveRejected(f"split {split} out of range for label length {len(w)}")
    chi0 = g.euler_characteristic()
    s0 = sigma(g)
    src, dst = g.src(eid), g.dst(eid)
    g.remove_edge(eid)
    z = g.add_vertex()
    e1 = g.add_edge(src, z, w[:split])
    e2 = g.add_edge(z, dst, w[split:])
    return _record("A2", g, chi0, s0, (eid, e1, e2), {"vertex": z, "edges": (e1, e2)})


def move_A3(g: FGraph, z: int) -> MoveRecord:
    """Remove an unmarked degree-two vertex, concatenating its two edge
    labels.  Refused when the concatenation cancels completely (that
    configuration is a fold, not a merge)."""
    if g.marked(z):
        raise MoveRejected("A3 may not remove a marked vertex")
    if g.degree(z) != 2:
        raise MoveRejected("A3 needs a degree-two vertex")
    da, db = g.out_edges(z)
    if da == -db:
        raise MoveRejected("A3 does not apply to a loop vertex")
    u = reduce_letters(g.label(-da) + g.label(db), g.alphabet.involutive)
    if not u:
        raise MoveRejected("full cancellation; fold instead")
    x, y = g.dst(da), g.dst(db)
    chi0 = g.euler_characteristic()
    s0 = sigma(g)
    g.remove_edge(da)
    g.remove_edge(db)
    g.remove_vertex(z)
    e_new = g.add_edge(x, y, u)
    return _record("A3", g, chi0, s0, (abs(da), abs(db), e_new), {"vertex": z})


def gcd_wrap(
    g: FGraph,
    circuit: GraphPath,
    i: int,
    j: int,
    z: int,
    m: int,
    oracle: TrivialityOracle,
) -> MoveRecord:
    """Collapse a simple closed circuit reading ``(a_i a_j)^z`` onto a fresh
    loop reading ``(a_i a_j)^gcd(z, m)``.

    The loop is attached by a genuine A0: with d = gcd(z, m) there is an
    alpha with alpha * z = d (mod m), so the circuit traversed alpha times
    is oracle-equal to the d-loop.  Folding then wraps the circuit onto the
    new loop.  The composite must strictly decrease complexity and must not
    drop the Euler characteristic; otherwise it is rolled back.
    """
    circuit.validate(g)
    lab = circuit.label(g)
    if circuit.end(g) != circuit.start:
        raise MoveRejected("gcd wrap needs a closed circuit")
    expected = ((i + 1, j + 1) * z)
    if lab != expected:
        raise MoveRejected("circuit label is not the expected alternating power")
    if z < 1:
        raise MoveRejected("power out of range")
    if m % z == 0 or z % m == 0:
        raise MoveRejected("power divides (or is a multiple of) the exponent; nothing to wrap")
    d = math.gcd(z, m)
    alpha = pow(z // d, -1, m // d)  # m // d >= 2 because z does not divide m
    snapshot = g.copy()
    chi0 = g.euler_characteristic()
    s0 = sigma(g)
    try:
        wrapped = GraphPath(circuit.start, circuit.edges * alpha)
        move_A0(g, wrapped, (i + 1, j + 1) * d, oracle)
        fold_all(g)
    except MoveRejected:
        g.assign_from(snapshot)
        raise
    if g.euler_characteristic() < chi0 or not tuple(sigma(g)) < tuple(s0):
        g.assign_from(snapshot)
        raise MoveRejected("gcd wrap failed its complexity/characteristic audit")
    rec = MoveRecord(
        "GcdWrap", (i, j, z, d), chi0, g.euler_characteristic(),
        tuple(s0), tuple(sigma(g)),
        {"alpha": alpha, "d": d,
         "_circuit_start": circuit.start, "_circuit_edges": list(circuit.edges)},
    )
    return rec
